//! Builtin references such as `koszul(x; k[x]/(x^2))` or `M_of(3)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use dgres_core::builtins;
use dgres_core::dgcore::{direct_sum, dualize, shift, DgAlgebra, DgModule};
use dgres_core::exactla::Field;

/// Error inside a reference string; `offset` counts characters from its start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefError {
    pub offset: usize,
    pub message: String,
}

type Res<T> = std::result::Result<T, RefError>;

/// Parsed reference term: `name`, `name(args)` with `;` splitting argument groups.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Term {
    Int(i64, usize),
    Word(String, usize),
    Call(String, Vec<Vec<Term>>, usize),
    /// `k[x]/(x^m)`
    Truncated(usize, usize),
    /// polynomial in `x` as coefficients from the constant term up
    Poly(Vec<i64>, usize),
}

impl Term {
    fn at(&self) -> usize {
        match self {
            Term::Int(_, p) | Term::Word(_, p) | Term::Call(_, _, p) | Term::Truncated(_, p) | Term::Poly(_, p) => *p,
        }
    }
}

struct Cursor {
    s: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Cursor {
        Cursor { s: src.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Res<T> {
        Err(RefError { offset: at, message: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Res<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let at = self.pos;
            match self.peek() {
                Some(d) => self.err(at, format!("expected '{c}', found '{d}'")),
                None => self.err(at, format!("expected '{c}' at end of reference")),
            }
        }
    }

    fn int(&mut self) -> Res<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().or_else(|_| self.err(start, "expected an integer"))
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    fn at_truncated(&mut self) -> bool {
        self.skip_ws();
        let rest: String = self.s[self.pos..].iter().take(2).collect();
        rest == "k["
    }

    /// `k[x]/(x^m)`, also accepting `k[x]/x^m` and `k[x]/(x)`.
    fn truncated(&mut self) -> Res<Term> {
        let at = self.pos;
        self.pos += 1;
        self.expect('[')?;
        self.skip_ws();
        let var = self.pos;
        if self.word() != "x" {
            return self.err(var, "only the variable x is supported in k[x]");
        }
        self.expect(']')?;
        self.expect('/')?;
        let paren = self.eat('(');
        if self.word() != "x" {
            return self.err(at, "base must be k[x]/(x^m)");
        }
        let m = if self.eat('^') { self.int()? } else { 1 };
        if paren {
            self.expect(')')?;
        }
        if m < 1 {
            return self.err(at, "k[x]/(x^m) needs m >= 1");
        }
        Ok(Term::Truncated(m as usize, at))
    }

    /// Polynomial in `x`: terms `c`, `x`, `c*x^a`, `cx^a`.
    fn poly(&mut self) -> Res<Term> {
        let at = self.pos;
        let mut coeffs: Vec<i64> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1;
            match self.peek() {
                Some('+') if !first => {
                    self.pos += 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ if !first => break,
                _ => {}
            }
            self.skip_ws();
            let mut c = 1;
            let mut have_coeff = false;
            if self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                c = self.int()?;
                have_coeff = true;
                self.eat('*');
            }
            let mut exp = 0;
            if self.peek() == Some('x') {
                self.pos += 1;
                exp = if self.eat('^') { self.int()? } else { 1 };
            } else if !have_coeff {
                let p = self.pos;
                return self.err(p, "expected a polynomial term in x");
            }
            if exp < 0 {
                return self.err(at, "negative exponent");
            }
            let e = exp as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += sign * c;
            first = false;
        }
        Ok(Term::Poly(coeffs, at))
    }

    fn term(&mut self) -> Res<Term> {
        self.skip_ws();
        let at = self.pos;
        match self.s.get(self.pos).copied() {
            None => self.err(at, "unexpected end of reference"),
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => {
                let save = self.pos;
                let n = self.int()?;
                // `2x` or `2*x^2` is a polynomial
                if matches!(self.peek(), Some('x') | Some('*')) {
                    self.pos = save;
                    return self.poly();
                }
                Ok(Term::Int(n, at))
            }
            Some('k') if self.at_truncated() => self.truncated(),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let w = self.word();
                if w == "x" {
                    self.pos = at;
                    return self.poly();
                }
                if self.eat('(') {
                    let mut groups = vec![Vec::new()];
                    if !self.eat(')') {
                        loop {
                            let t = self.term()?;
                            groups.last_mut().unwrap().push(t);
                            if self.eat(',') {
                                continue;
                            }
                            if self.eat(';') {
                                groups.push(Vec::new());
                                continue;
                            }
                            self.expect(')')?;
                            break;
                        }
                    }
                    Ok(Term::Call(w, groups, at))
                } else {
                    Ok(Term::Word(w, at))
                }
            }
            Some(c) => self.err(at, format!("unexpected character '{c}'")),
        }
    }
}

fn parse_term(src: &str) -> Res<Term> {
    let mut c = Cursor::new(src);
    let t = c.term()?;
    c.skip_ws();
    if c.pos < c.s.len() {
        return c.err(c.pos, "trailing characters after reference");
    }
    Ok(t)
}

fn err<T>(at: usize, msg: impl Into<String>) -> Res<T> {
    Err(RefError { offset: at, message: msg.into() })
}

fn core<T>(at: usize, r: dgres_core::Result<T>) -> Res<T> {
    r.map_err(|e| RefError { offset: at, message: e.to_string() })
}

fn single(args: &[Vec<Term>], name: &str, at: usize) -> Res<Vec<Term>> {
    if args.len() != 1 {
        return err(at, format!("{name} takes comma-separated arguments"));
    }
    Ok(args[0].clone())
}

fn int_arg(t: &Term) -> Res<i64> {
    match t {
        Term::Int(n, _) => Ok(*n),
        other => err(other.at(), "expected an integer argument"),
    }
}

fn size_arg(t: &Term) -> Res<usize> {
    let n = int_arg(t)?;
    if n < 1 {
        return err(t.at(), "expected a positive integer");
    }
    Ok(n as usize)
}

fn poly_arg(t: &Term) -> Res<Vec<i64>> {
    match t {
        Term::Poly(c, _) => Ok(c.clone()),
        Term::Int(n, _) => Ok(vec![*n]),
        other => err(other.at(), "expected a polynomial in x"),
    }
}

/// Build the algebra named by a reference.
pub fn algebra(src: &str, field: Field) -> Res<DgAlgebra> {
    algebra_term(&parse_term(src)?, field)
}

fn algebra_term(t: &Term, field: Field) -> Res<DgAlgebra> {
    match t {
        Term::Word(w, at) => match w.as_str() {
            "field" | "k" => core(*at, builtins::field_algebra(field)),
            "R_K" | "rk" => core(*at, builtins::koszul_rk(field)),
            _ => err(*at, format!("unknown algebra '{w}'")),
        },
        Term::Truncated(m, at) => core(*at, builtins::nilpotent(field, *m)),
        Term::Call(name, args, at) => match name.as_str() {
            "field" => core(*at, builtins::field_algebra(field)),
            "nilpotent" => {
                let a = single(args, name, *at)?;
                match a.as_slice() {
                    [Term::Truncated(m, p)] => core(*p, builtins::nilpotent(field, *m)),
                    [n] => core(*at, builtins::nilpotent(field, size_arg(n)?)),
                    _ => err(*at, "nilpotent takes one argument"),
                }
            }
            "triangular" | "matrix" => {
                let a = single(args, name, *at)?;
                let [n] = a.as_slice() else { return err(*at, format!("{name} takes one argument")) };
                let n = size_arg(n)?;
                if name == "triangular" {
                    core(*at, builtins::triangular(field, n))
                } else {
                    core(*at, builtins::matrix(field, n))
                }
            }
            "product" => {
                let a = single(args, name, *at)?;
                if a.len() < 2 {
                    return err(*at, "product needs at least two factors");
                }
                let mut acc = algebra_term(&a[0], field)?;
                for f in &a[1..] {
                    acc = core(f.at(), builtins::product(&acc, &algebra_term(f, field)?))?;
                }
                Ok(acc)
            }
            "koszul" => {
                if args.len() != 2 {
                    return err(*at, "koszul takes elements; base");
                }
                let elems = args[0].iter().map(poly_arg).collect::<Res<Vec<_>>>()?;
                let m = match args[1].as_slice() {
                    [Term::Truncated(m, _)] => *m,
                    [Term::Word(w, _)] if w == "field" || w == "k" => 1,
                    [Term::Call(n, a, p)] if n == "nilpotent" => size_arg(single(a, n, *p)?.first().ok_or(RefError {
                        offset: *p,
                        message: "nilpotent takes one argument".into(),
                    })?)?,
                    _ => return err(*at, "koszul base must be k[x]/(x^m)"),
                };
                core(*at, builtins::koszul(field, &elems, m))
            }
            _ => err(*at, format!("unknown algebra '{name}'")),
        },
        other => err(other.at(), "expected an algebra name"),
    }
}

/// Build a module over `r`; `named` holds modules defined earlier in a document.
pub fn module(src: &str, r: &Arc<DgAlgebra>, named: &BTreeMap<String, Arc<DgModule>>) -> Res<DgModule> {
    module_term(&parse_term(src)?, r, named)
}

fn simple_index(t: &Term) -> Res<Option<usize>> {
    // heart(S_2), heart(2), heart(H0)
    match t {
        Term::Int(n, _) if *n >= 0 => Ok(Some(*n as usize)),
        Term::Word(w, at) => {
            if w == "H0" || w == "h0" {
                return Ok(None);
            }
            match w.strip_prefix("S_").or_else(|| w.strip_prefix('S')).and_then(|s| s.parse().ok()) {
                Some(i) => Ok(Some(i)),
                None => err(*at, format!("expected S_i or H0, found '{w}'")),
            }
        }
        other => err(other.at(), "expected a simple index"),
    }
}

fn module_term(t: &Term, r: &Arc<DgAlgebra>, named: &BTreeMap<String, Arc<DgModule>>) -> Res<DgModule> {
    match t {
        Term::Word(w, at) => match w.as_str() {
            "regular" | "R" => Ok(builtins::regular(r)),
            "zero" => Ok(DgModule::zero(r.clone())),
            "h0" | "H0" => core(*at, builtins::heart_h0(r)),
            _ => match named.get(w) {
                Some(m) => Ok((**m).clone()),
                None => err(*at, format!("unknown module '{w}'")),
            },
        },
        Term::Call(name, args, at) => {
            let a = single(args, name, *at)?;
            match (name.as_str(), a.as_slice()) {
                ("free", [n]) => Ok(builtins::free(r, int_arg(n)?.max(0) as usize, 0)),
                ("free", [n, s]) => {
                    let k = int_arg(n)?;
                    if k < 0 {
                        return err(n.at(), "free(n, shift) needs n >= 0");
                    }
                    Ok(builtins::free(r, k as usize, int_arg(s)? as i32))
                }
                ("M_of", [n]) => Ok(builtins::m_of(r, int_arg(n)? as i32)),
                ("heart", [s]) => match simple_index(s)? {
                    Some(i) => core(*at, builtins::heart_simple(r, i)),
                    None => core(*at, builtins::heart_h0(r)),
                },
                ("psi", [s]) => match simple_index(s)? {
                    Some(i) => core(*at, builtins::psi_simple(r, i)),
                    None => err(s.at(), "psi takes a simple index"),
                },
                ("shift", [m, n]) => Ok(shift(&module_term(m, r, named)?, int_arg(n)? as i32)),
                ("sum", ms) if !ms.is_empty() => {
                    let parts = ms.iter().map(|m| module_term(m, r, named)).collect::<Res<Vec<_>>>()?;
                    let refs: Vec<&DgModule> = parts.iter().collect();
                    Ok(direct_sum(&refs))
                }
                ("dual", [m]) => {
                    // a module over the opposite algebra, dualized back
                    let inner = module_term(m, &r.opposite(), &BTreeMap::new())?;
                    let d = dualize(&inner);
                    Ok(retarget(&d, r))
                }
                _ => err(*at, format!("unknown module '{name}' with {} argument(s)", a.len())),
            }
        }
        other => err(other.at(), "expected a module name"),
    }
}

/// Rebuild `m` over a structurally equal algebra handle.
fn retarget(m: &DgModule, r: &Arc<DgAlgebra>) -> DgModule {
    use dgres_core::dgcore::DgModuleBuilder;
    let mut b = DgModuleBuilder::new(r.clone(), m.lo(), m.dims().to_vec());
    for i in m.degrees() {
        b.set_diff(i, m.d(i).into_owned());
        for j in r.degrees() {
            for e in 0..r.dim(j) {
                b.set_act(i, j, e, m.act(i, j, e).into_owned());
            }
        }
    }
    b.build_unchecked()
}
