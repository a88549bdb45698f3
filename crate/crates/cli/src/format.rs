//! Plain-text instance documents.
//!
//! ```text
//! prime 32003
//! algebra
//!   degree -1: e xe
//!   degree 0: 1 x
//!   unit 1
//!   mul x e = xe
//!   mul e x = xe
//!   diff e = x
//! end
//! module M
//!   degree 0: m
//!   act m x = 0
//! end
//! module N = M_of(3)
//! ```
//!
//! `algebra = <builtin>` may replace the block. Products and actions not listed
//! are zero, except that a unit basis element acts as the identity unless told
//! otherwise. Coefficients are integers reduced mod p, written `3*x`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use dgres_core::dgcore::{DgAlgebra, DgAlgebraBuilder, DgModule, DgModuleBuilder};
use dgres_core::exactla::{Field, DEFAULT_PRIME};

use crate::refs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

type Res<T> = std::result::Result<T, ParseError>;

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Res<T> {
    Err(ParseError { line, col, message: msg.into() })
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: Arc<DgModule>,
    /// builtin reference the module came from, if any
    pub source: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub prime: u32,
    pub algebra: Arc<DgAlgebra>,
    pub algebra_source: Option<String>,
    pub modules: Vec<NamedModule>,
}

impl Document {
    pub fn module(&self, name: &str) -> Option<&Arc<DgModule>> {
        self.modules.iter().find(|m| m.name == name).map(|m| &m.module)
    }

    pub fn named(&self) -> BTreeMap<String, Arc<DgModule>> {
        self.modules.iter().map(|m| (m.name.clone(), m.module.clone())).collect()
    }
}

/// Settings that apply when the document is silent.
#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub seed: u64,
    pub prime: Option<u32>,
    /// builtin reference used when there is no algebra block
    pub algebra: Option<String>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { seed: dgres_core::dgcore::DEFAULT_SEED, prime: None, algebra: None }
    }
}

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    col: usize,
}

const PUNCT: &[char] = &[':', '=', '+', '-', '*'];

fn tokenize(line: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (k, c) in line.chars().enumerate() {
        if c == '#' {
            break;
        }
        if c.is_whitespace() || PUNCT.contains(&c) {
            if !cur.is_empty() {
                out.push(Tok { text: std::mem::take(&mut cur), col: start + 1 });
            }
            if !c.is_whitespace() {
                out.push(Tok { text: c.to_string(), col: k + 1 });
            }
        } else {
            if cur.is_empty() {
                start = k;
            }
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(Tok { text: cur, col: start + 1 });
    }
    out
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

/// Basis names safe to print: the algebra's own when they are valid and
/// distinct, generated ones otherwise.
pub fn algebra_names(r: &DgAlgebra) -> Vec<(i32, Vec<String>)> {
    let mut seen = HashSet::new();
    let ok = r.degrees().all(|i| r.names(i).iter().all(|n| valid_name(n) && seen.insert(n.clone())));
    r.degrees()
        .map(|i| {
            let names = if ok {
                r.names(i).to_vec()
            } else {
                (0..r.dim(i)).map(|b| format!("r{}_{b}", i.unsigned_abs())).collect()
            };
            (i, names)
        })
        .collect()
}

struct Line {
    no: usize,
    toks: Vec<Tok>,
}

/// Lookup from basis name to `(degree, index)`.
struct Names {
    map: HashMap<String, (i32, usize)>,
    dims: BTreeMap<i32, usize>,
}

impl Names {
    fn get(&self, line: usize, t: &Tok, what: &str) -> Res<(i32, usize)> {
        match self.map.get(&t.text) {
            Some(&x) => Ok(x),
            None => perr(line, t.col, format!("unknown {what}basis name '{}'", t.text)),
        }
    }

    fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }
}

fn parse_int(line: usize, t: &Tok) -> Res<i64> {
    t.text.parse().or_else(|_| perr(line, t.col, format!("expected an integer, found '{}'", t.text)))
}

/// Linear combination of basis vectors of degree `deg`: `x - 2*y + z`, or `0`.
fn parse_expr(line: usize, toks: &[Tok], names: &Names, deg: i32, field: Field, end_col: usize) -> Res<Vec<u32>> {
    let dim = names.dim(deg);
    let mut v = vec![0u32; dim];
    if toks.is_empty() {
        return perr(line, end_col, "expected an expression");
    }
    if toks.len() == 1 && toks[0].text == "0" && !names.map.contains_key("0") {
        return Ok(v);
    }
    let mut k = 0;
    let mut first = true;
    while k < toks.len() {
        let mut sign = 1i64;
        match toks[k].text.as_str() {
            "+" if !first => k += 1,
            "-" => {
                sign = -1;
                k += 1;
            }
            _ if !first => return perr(line, toks[k].col, format!("expected '+' or '-', found '{}'", toks[k].text)),
            _ => {}
        }
        let Some(t) = toks.get(k) else { return perr(line, end_col, "expression ends after a sign") };
        let mut coeff = 1i64;
        let name = if toks.get(k + 1).is_some_and(|n| n.text == "*") {
            coeff = parse_int(line, t)?;
            k += 2;
            match toks.get(k) {
                Some(n) => n,
                None => return perr(line, end_col, "expected a basis name after '*'"),
            }
        } else {
            t
        };
        let (d, idx) = names.get(line, name, "")?;
        if d != deg {
            return perr(line, name.col, format!("'{}' has degree {d}, expected degree {deg}", name.text));
        }
        v[idx] = field.add(v[idx], field.from_i64(sign * coeff));
        k += 1;
        first = false;
    }
    Ok(v)
}

fn expect_tok(line: usize, toks: &[Tok], k: usize, want: &str, end_col: usize) -> Res<()> {
    match toks.get(k) {
        Some(t) if t.text == want => Ok(()),
        Some(t) => perr(line, t.col, format!("expected '{want}', found '{}'", t.text)),
        None => perr(line, end_col, format!("expected '{want}'")),
    }
}

fn end_col(toks: &[Tok]) -> usize {
    toks.last().map_or(1, |t| t.col + t.text.chars().count())
}

/// `degree d: a b c` lines of a block.
fn degree_lines(lines: &[Line], max_deg: Option<i32>) -> Res<(Vec<(i32, Vec<String>)>, HashMap<String, (i32, usize)>)> {
    let mut degs: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut map = HashMap::new();
    for l in lines {
        if l.toks[0].text != "degree" {
            continue;
        }
        let t = &l.toks;
        let ec = end_col(t);
        let (deg, colon) = match t.get(1).map(|x| x.text.as_str()) {
            Some("-") => {
                let n = t.get(2).map_or(perr(l.no, ec, "expected a degree"), |x| parse_int(l.no, x))?;
                (-n, 3)
            }
            Some(_) => (parse_int(l.no, &t[1])?, 2),
            None => return perr(l.no, ec, "expected a degree"),
        };
        expect_tok(l.no, t, colon, ":", ec)?;
        let deg = i32::try_from(deg).or_else(|_| perr(l.no, t[1].col, "degree out of range"))?;
        if max_deg.is_some_and(|m| deg > m) {
            return perr(l.no, t[1].col, format!("degree {deg} is above {}", max_deg.unwrap()));
        }
        if degs.contains_key(&deg) {
            return perr(l.no, t[0].col, format!("degree {deg} listed twice"));
        }
        let mut names = Vec::new();
        for (k, n) in t[colon + 1..].iter().enumerate() {
            if !valid_name(&n.text) {
                return perr(l.no, n.col, format!("invalid basis name '{}'", n.text));
            }
            if map.insert(n.text.clone(), (deg, k)).is_some() {
                return perr(l.no, n.col, format!("basis name '{}' used twice", n.text));
            }
            names.push(n.text.clone());
        }
        degs.insert(deg, names);
    }
    Ok((degs.into_iter().collect(), map))
}

fn parse_algebra_block(start: usize, lines: &[Line], field: Field) -> Res<DgAlgebra> {
    let (degs, map) = degree_lines(lines, Some(0))?;
    let low = degs.first().map_or(0, |(d, _)| *d).min(0);
    let dims_map: BTreeMap<i32, usize> = degs.iter().map(|(d, n)| (*d, n.len())).collect();
    let names = Names { map, dims: dims_map };
    let total: usize = (low..=0).map(|i| names.dim(i)).sum();
    if u64::from(field.p()) <= total as u64 {
        return perr(start, 1, format!("prime {} must exceed the total dimension {total}", field.p()));
    }
    let mut b = DgAlgebraBuilder::new(field, low, (low..=0).map(|i| names.dim(i)).collect());
    for (d, n) in &degs {
        b.set_names(*d, n.clone());
    }
    let mut unit: Option<(Vec<u32>, usize)> = None;
    let mut mul: Vec<(usize, i32, usize, i32, usize, Vec<u32>)> = Vec::new();
    let mut seen = HashSet::new();
    for l in lines {
        let t = &l.toks;
        let ec = end_col(t);
        match t[0].text.as_str() {
            "degree" => {}
            "unit" => {
                if unit.is_some() {
                    return perr(l.no, t[0].col, "unit given twice");
                }
                unit = Some((parse_expr(l.no, &t[1..], &names, 0, field, ec)?, l.no));
            }
            "mul" => {
                let (Some(x), Some(y)) = (t.get(1), t.get(2)) else {
                    return perr(l.no, ec, "expected 'mul a b = expression'");
                };
                let (i, a) = names.get(l.no, x, "algebra ")?;
                let (j, c) = names.get(l.no, y, "algebra ")?;
                expect_tok(l.no, t, 3, "=", ec)?;
                if !seen.insert(("mul", i, a, j, c)) {
                    return perr(l.no, t[0].col, format!("duplicate product {} {}", x.text, y.text));
                }
                // below the lowest degree only `0` parses
                let v = parse_expr(l.no, &t[4..], &names, i + j, field, ec)?;
                mul.push((l.no, i, a, j, c, v));
            }
            "diff" => {
                let Some(x) = t.get(1) else { return perr(l.no, ec, "expected 'diff a = expression'") };
                let (i, a) = names.get(l.no, x, "algebra ")?;
                expect_tok(l.no, t, 2, "=", ec)?;
                if !seen.insert(("diff", i, a, 0, 0)) {
                    return perr(l.no, t[0].col, format!("duplicate differential of {}", x.text));
                }
                let v = parse_expr(l.no, &t[3..], &names, i + 1, field, ec)?;
                if i < 0 {
                    b.set_diff_column(i, a, &v);
                } else if v.iter().any(|&c| c != 0) {
                    return perr(l.no, t[3].col, "the differential vanishes on degree 0");
                }
            }
            other => return perr(l.no, t[0].col, format!("unknown algebra entry '{other}'")),
        }
    }
    let (u, _) = match unit {
        Some(u) => u,
        None => match names.map.get("1") {
            Some(&(0, k)) => {
                let mut v = vec![0; names.dim(0)];
                v[k] = 1;
                (v, start)
            }
            _ => return perr(start, 1, "algebra has no unit line"),
        },
    };
    let nonzero: Vec<usize> = (0..u.len()).filter(|&k| u[k] != 0).collect();
    if nonzero.len() == 1 && u[nonzero[0]] == 1 {
        b.unit_basis_products(nonzero[0]);
    } else {
        b.set_unit(u);
    }
    for (_, i, a, j, c, v) in mul {
        b.set_product(i, a, j, c, v);
    }
    b.build().or_else(|e| perr(start, 1, format!("algebra {e}")))
}

fn parse_module_block(start: usize, lines: &[Line], r: &Arc<DgAlgebra>) -> Res<DgModule> {
    let field = r.field();
    let (degs, map) = degree_lines(lines, None)?;
    let alg = algebra_names(r);
    let anames = Names {
        map: alg.iter().flat_map(|(i, ns)| ns.iter().enumerate().map(move |(k, n)| (n.clone(), (*i, k)))).collect(),
        dims: alg.iter().map(|(i, ns)| (*i, ns.len())).collect(),
    };
    let nonempty: Vec<&(i32, Vec<String>)> = degs.iter().filter(|(_, n)| !n.is_empty()).collect();
    if nonempty.is_empty() {
        for l in lines {
            if l.toks[0].text != "degree" {
                return perr(l.no, l.toks[0].col, "entries in a module with an empty basis");
            }
        }
        return Ok(DgModule::zero(r.clone()));
    }
    let lo = nonempty.first().unwrap().0;
    let hi = nonempty.last().unwrap().0;
    let dims_map: BTreeMap<i32, usize> = degs.iter().map(|(d, n)| (*d, n.len())).collect();
    let names = Names { map, dims: dims_map };
    let mut b = DgModuleBuilder::new(r.clone(), lo, (lo..=hi).map(|i| names.dim(i)).collect());
    let mut seen = HashSet::new();
    let unit = {
        let u = r.unit();
        let nz: Vec<usize> = (0..u.len()).filter(|&k| u[k] != 0).collect();
        (nz.len() == 1 && u[nz[0]] == 1).then(|| nz[0])
    };
    let mut unit_set: HashSet<(i32, usize)> = HashSet::new();
    for l in lines {
        let t = &l.toks;
        let ec = end_col(t);
        match t[0].text.as_str() {
            "degree" => {}
            "act" => {
                let (Some(x), Some(y)) = (t.get(1), t.get(2)) else {
                    return perr(l.no, ec, "expected 'act v a = expression'");
                };
                let (i, v) = names.get(l.no, x, "module ")?;
                let (j, a) = anames.get(l.no, y, "algebra ")?;
                expect_tok(l.no, t, 3, "=", ec)?;
                if !seen.insert(("act", i, v, j, a)) {
                    return perr(l.no, t[0].col, format!("duplicate action {} {}", x.text, y.text));
                }
                let w = parse_expr(l.no, &t[4..], &names, i + j, field, ec)?;
                let m = b.act_mut(i, j, a);
                for (row, &c) in w.iter().enumerate() {
                    m.set(row, v, c);
                }
                if j == 0 && Some(a) == unit {
                    unit_set.insert((i, v));
                }
            }
            "diff" => {
                let Some(x) = t.get(1) else { return perr(l.no, ec, "expected 'diff v = expression'") };
                let (i, v) = names.get(l.no, x, "module ")?;
                expect_tok(l.no, t, 2, "=", ec)?;
                if !seen.insert(("diff", i, v, 0, 0)) {
                    return perr(l.no, t[0].col, format!("duplicate differential of {}", x.text));
                }
                let w = parse_expr(l.no, &t[3..], &names, i + 1, field, ec)?;
                let m = b.diff_mut(i);
                for (row, &c) in w.iter().enumerate() {
                    m.set(row, v, c);
                }
            }
            other => return perr(l.no, t[0].col, format!("unknown module entry '{other}'")),
        }
    }
    if let Some(u) = unit {
        for i in lo..=hi {
            for v in 0..names.dim(i) {
                if !unit_set.contains(&(i, v)) {
                    b.act_mut(i, 0, u).set(v, v, 1);
                }
            }
        }
    }
    b.build().or_else(|e| perr(start, 1, format!("module {e}")))
}

/// Text after `=` on a line, with its 1-based column.
fn rest_after_eq(raw: &str) -> Option<(String, usize)> {
    let chars: Vec<char> = raw.chars().collect();
    let eq = chars.iter().position(|&c| c == '=')?;
    let mut k = eq + 1;
    while k < chars.len() && chars[k].is_whitespace() {
        k += 1;
    }
    let end = chars.iter().position(|&c| c == '#').unwrap_or(chars.len());
    let s: String = chars[k..end.max(k)].iter().collect();
    Some((s.trim_end().to_string(), k + 1))
}

enum Pending {
    Algebra(usize, Vec<Line>),
    Module(usize, String, Vec<Line>),
}

pub fn parse(text: &str, opts: &ParseOptions) -> Res<Document> {
    let mut prime: Option<u32> = None;
    let mut algebra: Option<(Arc<DgAlgebra>, Option<String>)> = None;
    let mut modules: Vec<NamedModule> = Vec::new();
    let mut pending: Option<Pending> = None;
    let mut named: BTreeMap<String, Arc<DgModule>> = BTreeMap::new();

    let field_of = |prime: Option<u32>, line: usize| -> Res<Field> {
        let p = prime.or(opts.prime).unwrap_or(DEFAULT_PRIME);
        Field::new(p).or_else(|e| perr(line, 1, e.to_string()))
    };
    let seeded = |a: DgAlgebra| Arc::new(a.with_seed(opts.seed));

    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        last_line = no;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        if let Some(p) = pending.as_mut() {
            if toks[0].text == "end" {
                if toks.len() > 1 {
                    return perr(no, toks[1].col, "unexpected text after 'end'");
                }
                match pending.take().unwrap() {
                    Pending::Algebra(start, lines) => {
                        let f = field_of(prime, start)?;
                        algebra = Some((seeded(parse_algebra_block(start, &lines, f)?), None));
                    }
                    Pending::Module(start, name, lines) => {
                        let r = &algebra.as_ref().unwrap().0;
                        let m = Arc::new(parse_module_block(start, &lines, r)?);
                        named.insert(name.clone(), m.clone());
                        modules.push(NamedModule { name, module: m, source: None });
                    }
                }
            } else {
                match p {
                    Pending::Algebra(_, l) | Pending::Module(_, _, l) => l.push(Line { no, toks }),
                }
            }
            continue;
        }
        match toks[0].text.as_str() {
            "prime" => {
                if algebra.is_some() {
                    return perr(no, toks[0].col, "prime must come before the algebra");
                }
                if prime.is_some() {
                    return perr(no, toks[0].col, "prime given twice");
                }
                let Some(t) = toks.get(1) else { return perr(no, end_col(&toks), "expected a prime") };
                let p = parse_int(no, t)?;
                if toks.len() > 2 {
                    return perr(no, toks[2].col, "unexpected text after the prime");
                }
                let p = u32::try_from(p).or_else(|_| perr(no, t.col, "prime out of range"))?;
                Field::new(p).or_else(|e| perr(no, t.col, e.to_string()))?;
                prime = Some(p);
            }
            "algebra" => {
                if opts.algebra.is_some() {
                    return perr(no, toks[0].col, "algebra given both in the document and as an option");
                }
                if algebra.is_some() {
                    return perr(no, toks[0].col, "only one algebra per document");
                }
                if toks.len() == 1 {
                    pending = Some(Pending::Algebra(no, Vec::new()));
                } else {
                    expect_tok(no, &toks, 1, "=", end_col(&toks))?;
                    let (src, col) = rest_after_eq(raw).unwrap();
                    let f = field_of(prime, no)?;
                    let a = refs::algebra(&src, f)
                        .map_err(|e| ParseError { line: no, col: col + e.offset, message: e.message })?;
                    if u64::from(f.p()) <= a.total_dim() as u64 {
                        return perr(no, col, format!("prime {} must exceed the total dimension {}", f.p(), a.total_dim()));
                    }
                    algebra = Some((seeded(a), Some(src)));
                }
            }
            "module" => {
                let Some(name) = toks.get(1) else { return perr(no, end_col(&toks), "expected a module name") };
                if !valid_name(&name.text) {
                    return perr(no, name.col, format!("invalid module name '{}'", name.text));
                }
                if named.contains_key(&name.text) {
                    return perr(no, name.col, format!("module '{}' defined twice", name.text));
                }
                if algebra.is_none() {
                    let f = field_of(prime, no)?;
                    match &opts.algebra {
                        Some(src) => {
                            let a = refs::algebra(src, f)
                                .map_err(|e| ParseError { line: no, col: 1, message: format!("--algebra: {}", e.message) })?;
                            algebra = Some((seeded(a), Some(src.clone())));
                        }
                        None => return perr(no, toks[0].col, "module before any algebra"),
                    }
                }
                if toks.len() == 2 {
                    pending = Some(Pending::Module(no, name.text.clone(), Vec::new()));
                } else {
                    expect_tok(no, &toks, 2, "=", end_col(&toks))?;
                    let (src, col) = rest_after_eq(raw).unwrap();
                    let r = &algebra.as_ref().unwrap().0;
                    let m = refs::module(&src, r, &named)
                        .map_err(|e| ParseError { line: no, col: col + e.offset, message: e.message })?;
                    let m = Arc::new(m);
                    named.insert(name.text.clone(), m.clone());
                    modules.push(NamedModule { name: name.text.clone(), module: m, source: Some(src) });
                }
            }
            other => return perr(no, toks[0].col, format!("unknown section '{other}'")),
        }
    }
    match pending {
        Some(Pending::Algebra(s, _)) => return perr(s, 1, "algebra block is missing 'end'"),
        Some(Pending::Module(s, _, _)) => return perr(s, 1, "module block is missing 'end'"),
        None => {}
    }
    let (algebra, algebra_source) = match algebra {
        Some(a) => a,
        None => {
            let f = field_of(prime, 1)?;
            match &opts.algebra {
                Some(src) => {
                    let a = refs::algebra(src, f)
                        .map_err(|e| ParseError { line: last_line.max(1), col: 1, message: format!("--algebra: {}", e.message) })?;
                    (seeded(a), Some(src.clone()))
                }
                None => return perr(last_line.max(1), 1, "document has no algebra"),
            }
        }
    };
    Ok(Document { prime: algebra.field().p(), algebra, algebra_source, modules })
}

fn emit_expr(v: &[u32], names: &[String], field: Field) -> String {
    let mut out = String::new();
    for (k, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = field.centered(c);
        let (neg, a) = (c < 0, c.unsigned_abs());
        if out.is_empty() {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if a != 1 {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&names[k]);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn emit_algebra(r: &DgAlgebra) -> String {
    let f = r.field();
    let names: BTreeMap<i32, Vec<String>> = algebra_names(r).into_iter().collect();
    let mut s = String::from("algebra\n");
    for (i, ns) in &names {
        s.push_str(&format!("  degree {i}:"));
        for n in ns {
            s.push_str(&format!(" {n}"));
        }
        s.push('\n');
    }
    s.push_str(&format!("  unit {}\n", emit_expr(r.unit(), &names[&0], f)));
    for i in r.degrees() {
        for j in r.degrees() {
            if i + j < r.low() {
                continue;
            }
            for a in 0..r.dim(i) {
                for b in 0..r.dim(j) {
                    let v = r.product(i, a, j, b);
                    if v.iter().any(|&c| c != 0) {
                        s.push_str(&format!("  mul {} {} = {}\n", names[&i][a], names[&j][b], emit_expr(&v, &names[&(i + j)], f)));
                    }
                }
            }
        }
    }
    for i in r.low()..0 {
        let d = r.diff(i);
        for a in 0..r.dim(i) {
            let v = d.col(a);
            if v.iter().any(|&c| c != 0) {
                s.push_str(&format!("  diff {} = {}\n", names[&i][a], emit_expr(&v, &names[&(i + 1)], f)));
            }
        }
    }
    s.push_str("end\n");
    s
}

pub fn emit_module(name: &str, m: &DgModule) -> String {
    let r = m.algebra();
    let f = r.field();
    let anames: BTreeMap<i32, Vec<String>> = algebra_names(r).into_iter().collect();
    let mut s = format!("module {name}\n");
    if m.is_zero() {
        s.push_str("end\n");
        return s;
    }
    let mut mnames: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut next = 0;
    for i in m.degrees() {
        let ns: Vec<String> = (0..m.dim(i)).map(|k| format!("b{}", next + k)).collect();
        next += m.dim(i);
        s.push_str(&format!("  degree {i}:"));
        for n in &ns {
            s.push_str(&format!(" {n}"));
        }
        s.push('\n');
        mnames.insert(i, ns);
    }
    let empty = Vec::new();
    let target = |i: i32| mnames.get(&i).unwrap_or(&empty);
    for i in m.degrees() {
        for j in r.degrees() {
            for b in 0..r.dim(j) {
                let a = m.act(i, j, b);
                for v in 0..m.dim(i) {
                    let col = a.col(v);
                    if col.iter().any(|&c| c != 0) {
                        let e = emit_expr(&col, target(i + j), f);
                        s.push_str(&format!("  act {} {} = {e}\n", mnames[&i][v], anames[&j][b]));
                    }
                }
            }
        }
    }
    for i in m.degrees() {
        let d = m.d(i);
        for v in 0..m.dim(i) {
            let col = d.col(v);
            if col.iter().any(|&c| c != 0) {
                s.push_str(&format!("  diff {} = {}\n", mnames[&i][v], emit_expr(&col, target(i + 1), f)));
            }
        }
    }
    s.push_str("end\n");
    s
}

/// Canonical text with every table spelled out.
pub fn emit(doc: &Document) -> String {
    let mut s = format!("prime {}\n", doc.prime);
    s.push_str(&emit_algebra(&doc.algebra));
    for m in &doc.modules {
        s.push_str(&emit_module(&m.name, &m.module));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgres_core::builtins;

    const RK: &str = "\
prime 32003
algebra
  degree -1: e xe
  degree 0: 1 x
  mul x x = 0
  mul x e = xe
  mul e x = xe
  diff e = x
end
module k
  degree 0: m
end
module Z
end
";

    #[test]
    fn hand_written_rk_matches_the_builtin() {
        let d = parse(RK, &ParseOptions::default()).unwrap();
        assert_eq!(*d.algebra, builtins::koszul_rk(d.algebra.field()).unwrap());
        let k = builtins::heart_simple(&d.algebra, 0).unwrap();
        assert_eq!(d.module("k").unwrap().cohomology().summary(), k.cohomology().summary());
        assert!(d.module("Z").unwrap().is_zero());
    }

    #[test]
    fn round_trip() {
        let d = parse(RK, &ParseOptions::default()).unwrap();
        let t = emit(&d);
        let e = parse(&t, &ParseOptions::default()).unwrap();
        assert_eq!(*d.algebra, *e.algebra);
        for (a, b) in d.modules.iter().zip(&e.modules) {
            assert_eq!(a.name, b.name);
            assert_eq!(*a.module, *b.module);
        }
        assert_eq!(emit(&e), t);
    }

    #[test]
    fn malformed_coefficient_is_located() {
        let bad = RK.replace("mul x e = xe", "mul x e = 3q*xe");
        let e = parse(&bad, &ParseOptions::default()).unwrap_err();
        assert_eq!((e.line, e.col), (6, 13));
        let bad = RK.replace("diff e = x", "diff e = y");
        let e = parse(&bad, &ParseOptions::default()).unwrap_err();
        assert_eq!((e.line, e.col), (8, 12));
        assert!(e.message.contains("unknown"));
    }

    #[test]
    fn prime_must_exceed_total_dimension() {
        let small = RK.replace("prime 32003", "prime 3");
        let e = parse(&small, &ParseOptions::default()).unwrap_err();
        assert!(e.message.contains("exceed"), "{e}");
    }

    #[test]
    fn validation_failures_are_reported() {
        // x nilpotent cannot act invertibly
        let bad = RK.replace("  degree 0: m\nend", "  degree 0: m\n  act m x = m\nend");
        let e = parse(&bad, &ParseOptions::default()).unwrap_err();
        assert_eq!(e.line, 10);
    }
}
