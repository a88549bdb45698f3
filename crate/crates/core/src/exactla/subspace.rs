use super::field::Field;
use super::mat::Mat;

/// A subspace of `GF(p)^n`, stored as its canonical RREF basis. Two subspaces
/// are equal iff their bases are bit-identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Mat) -> Subspace {
        let (mut r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        r = r.select_rows(&keep);
        Subspace { ambient: m.cols(), basis: r, pivots }
    }

    pub fn from_vectors(field: Field, ambient: usize, vs: &[Vec<u32>]) -> Subspace {
        Subspace::row_space(&Mat::from_row_vecs(field, ambient, vs))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }
    /// Basis vectors as rows, canonical RREF.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }
    /// Basis vectors as the columns of an `ambient x dim` matrix, i.e. the
    /// inclusion map.
    pub fn inclusion(&self) -> Mat {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        let back = self.basis.transpose().mul_vec(&c);
        (back == v).then_some(c)
    }

    /// The `dim x ambient` matrix reading off pivot entries; a left inverse of
    /// `inclusion()` valid on vectors of the subspace.
    pub fn coord_map(&self) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim(), self.ambient);
        for (k, &p) in self.pivots.iter().enumerate() {
            m.set(k, p, 1);
        }
        m
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x in both: x = A^T a = B^T b, solve [A^T | -B^T] (a,b) = 0
        let f = self.field();
        let at = self.inclusion();
        let bt = other.inclusion().scale(f.neg(1));
        let k = at.hstack(&bt).kernel();
        let vs: Vec<Vec<u32>> = k.vectors().iter().map(|ab| at.mul_vec(&ab[..self.dim()])).collect();
        Subspace::from_vectors(f, self.ambient, &vs)
    }

    /// Image of this subspace under the linear map `m`.
    pub fn map(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::row_space(&m.mul(&self.inclusion()).transpose())
    }

    /// Preimage of this subspace under `m`.
    pub fn preimage(&self, m: &Mat) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let (proj, _) = quotient_basis(self);
        proj.mul(m).kernel()
    }
}

/// Complement basis from the non-pivot columns: returns `(projection, section)`
/// with `projection: ambient -> ambient/sub` killing `sub` and `section` the
/// inclusion of the complement, so `projection * section = id`.
pub fn quotient_basis(sub: &Subspace) -> (Mat, Mat) {
    let f = sub.field();
    let n = sub.ambient_dim();
    let mut is_pivot = vec![false; n];
    for &p in sub.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut proj = Mat::zeros(f, free.len(), n);
    let mut sect = Mat::zeros(f, n, free.len());
    for (j, &c) in free.iter().enumerate() {
        proj.set(j, c, 1);
        sect.set(c, j, 1);
        for (k, &p) in sub.pivots().iter().enumerate() {
            let s = sub.basis().get(k, c);
            if s != 0 {
                proj.set(j, p, f.neg(s));
            }
        }
    }
    (proj, sect)
}
