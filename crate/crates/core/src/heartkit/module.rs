use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{quotient_basis, Field, Mat, Subspace};

use super::algebra::OrdinaryAlgebra;

/// Finite-dimensional right module: `act[b]` is the matrix of `v -> v e_b`,
/// so `act(xy) = act(y) act(x)`.
#[derive(Clone, PartialEq)]
pub struct FdModule {
    algebra: Arc<OrdinaryAlgebra>,
    dim: usize,
    act: Vec<Mat>,
}

impl fmt::Debug for FdModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdModule(dim={}, {:?})", self.dim, self.act)
    }
}

/// Matrices `X` (`target x source`) with `X s_g = t_g X` for every pair.
pub fn intertwiners(field: Field, src: &[Mat], tgt: &[Mat], ns: usize, nt: usize) -> Vec<Mat> {
    let n = ns * nt;
    if n == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (s, t) in src.iter().zip(tgt) {
        // (X s)_{r,c} - (t X)_{r,c} with X_{r,k} at r * ns + k
        for r in 0..nt {
            for c in 0..ns {
                let mut row = vec![0u32; n];
                for k in 0..ns {
                    let v = s.get(k, c);
                    if v != 0 {
                        row[r * ns + k] = field.add(row[r * ns + k], v);
                    }
                }
                for k in 0..nt {
                    let v = t.get(r, k);
                    if v != 0 {
                        row[k * ns + c] = field.sub(row[k * ns + c], v);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Mat::from_row_vecs(field, n, &rows);
    sys.kernel().vectors().into_iter().map(|v| Mat::from_data(field, nt, ns, v)).collect()
}

impl FdModule {
    pub fn new(algebra: Arc<OrdinaryAlgebra>, dim: usize, act: Vec<Mat>) -> Result<FdModule> {
        if act.len() != algebra.dim() || act.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Invalid("module action has the wrong shape".into()));
        }
        let m = FdModule { algebra, dim, act };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: Arc<OrdinaryAlgebra>, dim: usize, act: Vec<Mat>) -> FdModule {
        FdModule { algebra, dim, act }
    }

    pub fn zero(algebra: Arc<OrdinaryAlgebra>) -> FdModule {
        let f = algebra.field();
        let act = (0..algebra.dim()).map(|_| Mat::zeros(f, 0, 0)).collect();
        FdModule { algebra, dim: 0, act }
    }

    fn check(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.action_elem(a.unit()).is_identity() {
            return Err(Error::Validation("unit does not act as the identity".into()));
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                if self.action_elem(&a.product(x, y)) != self.act[y].mul(&self.act[x]) {
                    return Err(Error::Validation(format!("action fails on the product ({x},{y})")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<OrdinaryAlgebra> {
        &self.algebra
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn action(&self, b: usize) -> &Mat {
        &self.act[b]
    }
    pub fn actions(&self) -> &[Mat] {
        &self.act
    }

    pub fn action_elem(&self, x: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim, self.dim);
        for (b, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.act[b], c);
            }
        }
        m
    }

    /// Same tables over a structurally equal algebra handle.
    pub fn with_algebra(&self, algebra: Arc<OrdinaryAlgebra>) -> FdModule {
        assert!(*algebra == *self.algebra, "module moved to a different algebra");
        FdModule { algebra, dim: self.dim, act: self.act.clone() }
    }

    fn generator_actions(&self) -> Vec<Mat> {
        self.algebra.generators().iter().map(|&g| self.act[g].clone()).collect()
    }

    /// Basis of `Hom_A(self, other)` as `other.dim x self.dim` matrices.
    pub fn hom_space(&self, other: &FdModule) -> Vec<Mat> {
        intertwiners(self.field(), &self.generator_actions(), &other.generator_actions(), self.dim, other.dim)
    }

    pub fn hom_dim(&self, other: &FdModule) -> usize {
        self.hom_space(other).len()
    }

    pub fn is_hom(&self, other: &FdModule, g: &Mat) -> bool {
        (0..self.algebra.dim()).all(|b| g.mul(&self.act[b]) == other.act[b].mul(g))
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, vs: &[Vec<u32>]) -> Subspace {
        let gens = self.generator_actions();
        let mut span = Subspace::from_vectors(self.field(), self.dim, vs);
        loop {
            let mut next = span.clone();
            for g in &gens {
                next = next.sum(&span.map(g));
            }
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        self.act.iter().all(|m| sub.contains_space(&sub.map(m)))
    }

    /// Submodule on an invariant subspace, with its inclusion.
    pub fn submodule(&self, sub: &Subspace) -> (FdModule, Mat) {
        debug_assert!(self.is_submodule(sub));
        let inc = sub.inclusion();
        let c = sub.coord_map();
        let act = self.act.iter().map(|m| c.mul(m).mul(&inc)).collect();
        (FdModule::new_unchecked(self.algebra.clone(), sub.dim(), act), inc)
    }

    /// Quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, sub: &Subspace) -> (FdModule, Mat) {
        debug_assert!(self.is_submodule(sub));
        let (q, s) = quotient_basis(sub);
        let act = self.act.iter().map(|m| q.mul(m).mul(&s)).collect();
        (FdModule::new_unchecked(self.algebra.clone(), q.rows(), act), q)
    }

    pub fn direct_sum(ms: &[&FdModule]) -> FdModule {
        let alg = ms[0].algebra.clone();
        let f = alg.field();
        let dim = ms.iter().map(|m| m.dim).sum();
        let act = (0..alg.dim())
            .map(|b| {
                let mut x = Mat::zeros(f, dim, dim);
                let mut off = 0;
                for m in ms {
                    x.set_block(off, off, &m.act[b]);
                    off += m.dim;
                }
                x
            })
            .collect();
        FdModule::new_unchecked(alg, dim, act)
    }

    /// `D(M) = Hom_k(M, k)` over the opposite algebra, `(φ a)(m) = φ(m a)`.
    pub fn dual(&self) -> FdModule {
        let op = self.algebra.opposite();
        FdModule::new_unchecked(op, self.dim, self.act.iter().map(|m| m.transpose()).collect())
    }

    /// `M rad(A)`.
    pub fn radical_submodule(&self) -> Result<Subspace> {
        let rad = self.algebra.radical()?;
        let mut vs = Vec::new();
        for r in rad.vectors() {
            let m = self.action_elem(&r);
            vs.extend(m.col_vecs());
        }
        Ok(Subspace::from_vectors(self.field(), self.dim, &vs))
    }

    /// `M / M rad(A)` with the projection.
    pub fn top(&self) -> Result<(FdModule, Mat)> {
        Ok(self.quotient(&self.radical_submodule()?))
    }

    /// `{v : v rad(A) = 0}`.
    pub fn socle(&self) -> Result<Subspace> {
        let rad = self.algebra.radical()?;
        let mut s = Subspace::full(self.field(), self.dim);
        for r in rad.vectors() {
            s = s.intersect(&self.action_elem(&r).kernel());
        }
        Ok(s)
    }

    /// Pull back along an algebra map `B -> A` given as a `dim A x dim B` matrix.
    pub fn restrict(&self, to: Arc<OrdinaryAlgebra>, map: &Mat) -> FdModule {
        let act = (0..to.dim()).map(|b| self.action_elem(&map.col(b))).collect();
        FdModule::new_unchecked(to, self.dim, act)
    }

    /// Multiplicities of the simples as composition factors, in the algebra's simple order.
    pub fn composition_multiplicities(&self) -> Result<Vec<usize>> {
        let idem = self.algebra.idempotents()?;
        let simples = self.algebra.structure()?.simples.clone();
        Ok(idem
            .iter()
            .zip(&simples)
            .map(|(e, _)| self.action_elem(e).rank())
            .collect())
    }

    /// Fewest free generators needed: `max_i ceil(m_i / d_i)` for `m_i` the
    /// multiplicity of `S_i` in the top and `d_i` its multiplicity in `A / rad A`.
    pub fn free_rank_of_top(&self) -> Result<usize> {
        let (t, _) = self.top()?;
        let (ta, _) = self.algebra.regular_module().top()?;
        let m = t.composition_multiplicities()?;
        let d = ta.composition_multiplicities()?;
        Ok(m.iter().zip(&d).map(|(&x, &y)| x.div_ceil(y.max(1))).max().unwrap_or(0))
    }

    /// A generating set of the smallest possible size, by seeded random search;
    /// falls back to lifting a basis of the top.
    pub fn generating_set(&self) -> Result<Vec<Vec<u32>>> {
        let f = self.field();
        let (_, proj) = self.top()?;
        let (_, pivots) = proj.rref();
        let lift = |k: usize| {
            let mut e = vec![0; self.dim];
            e[k] = 1;
            e
        };
        let n = self.free_rank_of_top()?;
        if n < pivots.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(self.algebra.seed() ^ 0x67656e73);
            for _ in 0..64 {
                let vs: Vec<Vec<u32>> =
                    (0..n).map(|_| (0..self.dim).map(|_| rng.gen_range(0..f.p())).collect()).collect();
                if self.spin(&vs).dim() == self.dim {
                    return Ok(vs);
                }
            }
        }
        Ok(pivots.into_iter().map(lift).collect())
    }

    pub fn is_simple(&self) -> Result<bool> {
        if self.dim == 0 {
            return Ok(false);
        }
        let m = self.composition_multiplicities()?;
        Ok(m.iter().sum::<usize>() == 1)
    }
}

/// `X ⊗_A T` for `T` a left module stored as a right module over `A^op`:
/// `V = X ⊗ T` with `x ⊗ t` at `x * dim T + t`, modulo `x a ⊗ t - x ⊗ a t`.
#[derive(Clone, Debug)]
pub struct TensorFd {
    pub dim: usize,
    /// `V -> X ⊗_A T`
    pub proj: Mat,
    /// `X ⊗_A T -> V`
    pub sect: Mat,
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let f = a.field();
    let mut out = Mat::zeros(f, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b.get(k, l)));
                }
            }
        }
    }
    out
}

/// Tensor product over `A` of a right module `x` and a left module `t` given by
/// its action matrices `left[b]` of `t -> e_b t`.
pub fn tensor_with_left(x: &FdModule, left: &[Mat], tdim: usize) -> TensorFd {
    let f = x.field();
    let a = x.algebra();
    let n = x.dim() * tdim;
    let ix = Mat::identity(f, x.dim());
    let it = Mat::identity(f, tdim);
    let mut rel = Subspace::zero(f, n);
    for &g in a.generators() {
        let r = kron(x.action(g), &it).sub(&kron(&ix, &left[g]));
        rel = rel.sum(&r.image());
    }
    let (proj, sect) = quotient_basis(&rel);
    TensorFd { dim: proj.rows(), proj, sect }
}

/// `x ⊗_A t` with `t` a right `A^op`-module.
pub fn tensor_over(x: &FdModule, t: &FdModule) -> TensorFd {
    assert!(**t.algebra() == *x.algebra().opposite(), "tensor needs a module over the opposite algebra");
    tensor_with_left(x, t.actions(), t.dim())
}

/// Matrix of `g ⊗ id: X ⊗ T -> X' ⊗ T`.
pub fn tensor_map(src: &TensorFd, tgt: &TensorFd, g: &Mat, tdim: usize) -> Mat {
    let it = Mat::identity(g.field(), tdim);
    tgt.proj.mul(&kron(g, &it)).mul(&src.sect)
}
