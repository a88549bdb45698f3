use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{quotient_basis, Field, Mat, Subspace};

use super::chop;
use super::module::FdModule;

/// Associative unital algebra given by structure constants:
/// `mul[a * dim + b]` holds the coordinates of `e_a e_b`.
pub struct OrdinaryAlgebra {
    field: Field,
    dim: usize,
    mul: Vec<Vec<u32>>,
    unit: Vec<u32>,
    seed: u64,
    generators: OnceLock<Vec<usize>>,
    structure: OnceLock<Result<Structure>>,
    opposite: OnceLock<Arc<OrdinaryAlgebra>>,
}

/// Cached decomposition data.
#[derive(Clone, Debug)]
pub(crate) struct Structure {
    pub radical: Subspace,
    /// Action matrices of each simple, sorted by (dimension, character).
    pub simples: Vec<Vec<Mat>>,
    /// A primitive idempotent `e_i` with `S_j e_i` of dimension `δ_ij`.
    pub idempotents: Vec<Vec<u32>>,
}

impl PartialEq for OrdinaryAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.dim == o.dim && self.mul == o.mul && self.unit == o.unit
    }
}

impl fmt::Debug for OrdinaryAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrdinaryAlgebra(dim={})", self.dim)
    }
}

impl OrdinaryAlgebra {
    pub fn new(field: Field, dim: usize, mul: Vec<Vec<u32>>, unit: Vec<u32>, seed: u64) -> Result<OrdinaryAlgebra> {
        if mul.len() != dim * dim || mul.iter().any(|v| v.len() != dim) || unit.len() != dim {
            return Err(Error::Invalid("structure constants have the wrong shape".into()));
        }
        let a = OrdinaryAlgebra::new_unchecked(field, dim, mul, unit, seed);
        a.check()?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(field: Field, dim: usize, mul: Vec<Vec<u32>>, unit: Vec<u32>, seed: u64) -> OrdinaryAlgebra {
        OrdinaryAlgebra {
            field,
            dim,
            mul,
            unit,
            seed,
            generators: OnceLock::new(),
            structure: OnceLock::new(),
            opposite: OnceLock::new(),
        }
    }

    fn check(&self) -> Result<()> {
        let f = self.field;
        for a in 0..self.dim {
            let ea = self.basis(a);
            if self.multiply(&self.unit, &ea) != ea || self.multiply(&ea, &self.unit) != ea {
                return Err(Error::Validation(format!("unit fails on basis element {a}")));
            }
            for b in 0..self.dim {
                let ab = self.product(a, b);
                for c in 0..self.dim {
                    let x = self.multiply(&ab, &self.basis(c));
                    let y = self.multiply(&ea, &self.product(b, c));
                    if x != y {
                        return Err(Error::Validation(format!("associativity fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        let _ = f;
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn basis(&self, a: usize) -> Vec<u32> {
        let mut e = vec![0; self.dim];
        e[a] = 1;
        e
    }

    pub fn product(&self, a: usize, b: usize) -> Vec<u32> {
        self.mul[a * self.dim + b].clone()
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let c = f.mul(xa, yb);
                for (o, &v) in out.iter_mut().zip(&self.mul[a * self.dim + b]) {
                    *o = f.mul_add(*o, c, v);
                }
            }
        }
        out
    }

    /// `x -> x e_b`
    pub fn right_mult(&self, b: usize) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|a| self.product(a, b)).collect();
        Mat::from_cols(self.field, self.dim, &cols)
    }

    /// `x -> e_a x`
    pub fn left_mult(&self, a: usize) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|b| self.product(a, b)).collect();
        Mat::from_cols(self.field, self.dim, &cols)
    }

    pub fn right_mult_elem(&self, y: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|a| self.multiply(&self.basis(a), y)).collect();
        Mat::from_cols(self.field, self.dim, &cols)
    }

    /// Basis elements generating the algebra with the unit.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut span = self.closure(&gens);
            for b in 0..self.dim {
                if !span.contains(&self.basis(b)) {
                    gens.push(b);
                    span = self.closure(&gens);
                }
            }
            gens
        })
    }

    fn closure(&self, gens: &[usize]) -> Subspace {
        let mut span = Subspace::from_vectors(self.field, self.dim, std::slice::from_ref(&self.unit));
        loop {
            let mut next = span.clone();
            for &g in gens {
                next = next.sum(&span.map(&self.right_mult(g)));
            }
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn opposite(self: &Arc<Self>) -> Arc<OrdinaryAlgebra> {
        self.opposite
            .get_or_init(|| {
                let d = self.dim;
                let mul = (0..d * d).map(|k| self.product(k % d, k / d)).collect();
                Arc::new(OrdinaryAlgebra::new_unchecked(self.field, d, mul, self.unit.clone(), self.seed))
            })
            .clone()
    }

    /// The algebra as a right module over itself.
    pub fn regular_module(self: &Arc<Self>) -> FdModule {
        let act = (0..self.dim).map(|b| self.right_mult(b)).collect();
        FdModule::new_unchecked(self.clone(), self.dim, act)
    }

    /// `D(A) = Hom_k(A, k)` as a right module, `(f a)(x) = f(a x)`.
    pub fn dual_regular_module(self: &Arc<Self>) -> FdModule {
        let act = (0..self.dim).map(|b| self.left_mult(b).transpose()).collect();
        FdModule::new_unchecked(self.clone(), self.dim, act)
    }

    /// Quotient by a two-sided ideal, with the projection and a section.
    pub fn quotient(&self, ideal: &Subspace) -> (OrdinaryAlgebra, Mat, Mat) {
        let (q, s) = quotient_basis(ideal);
        let n = q.rows();
        let cols = s.col_vecs();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(q.mul_vec(&self.multiply(&cols[a], &cols[b])));
            }
        }
        let unit = q.mul_vec(&self.unit);
        (OrdinaryAlgebra::new_unchecked(self.field, n, mul, unit, self.seed), q, s)
    }

    fn trace_form(&self) -> Mat {
        let f = self.field;
        let tr: Vec<u32> = (0..self.dim)
            .map(|c| {
                let m = self.right_mult(c);
                (0..self.dim).fold(0, |acc, i| f.add(acc, m.get(i, i)))
            })
            .collect();
        Mat::from_fn(f, self.dim, self.dim, |a, b| {
            self.product(a, b).iter().zip(&tr).fold(0, |acc, (&x, &t)| f.mul_add(acc, x, t))
        })
    }

    fn compute_radical(&self) -> Result<Subspace> {
        if (self.field.p() as usize) <= self.dim {
            return Err(Error::Config(format!(
                "prime {} must exceed algebra dimension {}",
                self.field.p(),
                self.dim
            )));
        }
        // Dickson: rad = kernel of the trace form; repeat on the quotient until
        // the quotient form is nondegenerate.
        let mut rad = self.trace_form().kernel();
        for _ in 0..=self.dim {
            let (quot, q, _) = self.quotient(&rad);
            let k = quot.trace_form().kernel();
            if k.is_zero() {
                break;
            }
            rad = k.preimage(&q);
        }
        // nilpotency
        let mut power = rad.clone();
        let mut steps = 0;
        while !power.is_zero() {
            steps += 1;
            if steps > self.dim + 1 {
                return Err(Error::Internal("radical candidate is not nilpotent".into()));
            }
            let mut vs = Vec::new();
            for x in power.vectors() {
                for y in rad.vectors() {
                    vs.push(self.multiply(&x, &y));
                }
            }
            power = Subspace::from_vectors(self.field, self.dim, &vs);
        }
        Ok(rad)
    }

    pub(crate) fn structure(&self) -> Result<&Structure> {
        self.structure.get_or_init(|| self.compute_structure()).as_ref().map_err(|e| e.clone())
    }

    fn compute_structure(&self) -> Result<Structure> {
        let f = self.field;
        let radical = self.compute_radical()?;
        let (quot, q, _) = self.quotient(&radical);
        let quot = Arc::new(quot);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let found = chop::simples_of_semisimple(&quot, &mut rng)?;
        // pull back along A -> A/rad
        let mut simples: Vec<Vec<Mat>> = found
            .iter()
            .map(|s| {
                (0..self.dim)
                    .map(|b| {
                        let mut m = Mat::zeros(f, s.dim(), s.dim());
                        for c in 0..quot.dim() {
                            m.add_scaled(s.action(c), q.get(c, b));
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let total: usize = simples.iter().map(|s| s[0].rows().pow(2)).sum();
        if total != quot.dim() {
            return Err(Error::UnsplitFactor(format!(
                "simple dimensions squared sum to {total}, quotient has dimension {}",
                quot.dim()
            )));
        }
        let key = |s: &Vec<Mat>| -> (usize, Vec<u32>) {
            let n = s[0].rows();
            (n, s.iter().map(|m| (0..n).fold(0, |acc, i| f.add(acc, m.get(i, i)))).collect())
        };
        simples.sort_by_key(key);
        let idempotents = (0..simples.len()).map(|i| self.primitive_idempotent(&simples, i)).collect::<Result<_>>()?;
        Ok(Structure { radical, simples, idempotents })
    }

    fn primitive_idempotent(&self, simples: &[Vec<Mat>], i: usize) -> Result<Vec<u32>> {
        let f = self.field;
        // rows: every entry of every simple's action, columns: coefficients of a
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (j, s) in simples.iter().enumerate() {
            let n = s[0].rows();
            for r in 0..n {
                for c in 0..n {
                    rows.push((0..self.dim).map(|b| s[b].get(r, c)).collect::<Vec<u32>>());
                    rhs.push((j == i && r == 0 && c == 0) as u32);
                }
            }
        }
        let m = Mat::from_row_vecs(f, self.dim, &rows);
        let mut e = m
            .solve(&rhs)
            .ok_or_else(|| Error::UnsplitFactor("simple actions are not jointly surjective".into()))?;
        // lift modulo the radical: e <- 3e^2 - 2e^3
        for _ in 0..64 {
            let e2 = self.multiply(&e, &e);
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.multiply(&e2, &e);
            e = e2.iter().zip(&e3).map(|(&a, &b)| f.sub(f.mul(3, a), f.mul(2, b))).collect();
        }
        Err(Error::Internal("idempotent lifting did not converge".into()))
    }

    pub fn radical(&self) -> Result<Subspace> {
        Ok(self.structure()?.radical.clone())
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.structure()?.radical.is_zero())
    }

    /// Simple right modules, sorted by dimension and character.
    pub fn simples(self: &Arc<Self>) -> Result<Vec<FdModule>> {
        let s = self.structure()?;
        Ok(s.simples.iter().map(|act| FdModule::new_unchecked(self.clone(), act[0].rows(), act.clone())).collect())
    }

    pub fn num_simples(&self) -> Result<usize> {
        Ok(self.structure()?.simples.len())
    }

    pub fn idempotents(&self) -> Result<Vec<Vec<u32>>> {
        Ok(self.structure()?.idempotents.clone())
    }

    /// Indecomposable projective `e_i A` covering simple `i`, with the basis of
    /// the right ideal as columns (elements of `A`).
    pub fn indecomposable_projective(self: &Arc<Self>, i: usize) -> Result<(FdModule, Mat)> {
        let e = &self.structure()?.idempotents[i];
        let vs: Vec<Vec<u32>> = (0..self.dim).map(|b| self.multiply(e, &self.basis(b))).collect();
        let sub = Subspace::from_vectors(self.field, self.dim, &vs);
        let inc = sub.inclusion();
        let coords = sub.coord_map();
        let act = (0..self.dim).map(|b| coords.mul(&self.right_mult(b)).mul(&inc)).collect();
        Ok((FdModule::new_unchecked(self.clone(), sub.dim(), act), inc))
    }
}
