use std::borrow::Cow;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::heartkit::FdModule;

use super::algebra::DgAlgebra;
use super::cohomology::{complex_cohomology, CohomologySummary, HDegree};
use super::validate::{ValidationReport, Violation};

/// Right DG-module over a [`DgAlgebra`], concentrated in `[lo, lo + dims.len())`.
///
/// `act[k][j - low][b]` is the matrix of `m -> m * e_b` from degree `lo + k`
/// to degree `lo + k + j`, for `e_b` the `b`-th basis element of `R^j`.
pub struct DgModule {
    algebra: Arc<DgAlgebra>,
    lo: i32,
    dims: Vec<usize>,
    diff: Vec<Mat>,
    act: Vec<Vec<Vec<Mat>>>,
    cohomology: OnceLock<ModuleCohomology>,
}

impl Clone for DgModule {
    fn clone(&self) -> Self {
        DgModule {
            algebra: self.algebra.clone(),
            lo: self.lo,
            dims: self.dims.clone(),
            diff: self.diff.clone(),
            act: self.act.clone(),
            cohomology: OnceLock::new(),
        }
    }
}

impl PartialEq for DgModule {
    fn eq(&self, o: &Self) -> bool {
        same_algebra(&self.algebra, &o.algebra)
            && self.lo == o.lo
            && self.dims == o.dims
            && self.diff == o.diff
            && self.act == o.act
    }
}

impl fmt::Debug for DgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DgModule(lo={}, dims={:?})", self.lo, self.dims)
    }
}

pub fn same_algebra(a: &Arc<DgAlgebra>, b: &Arc<DgAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub struct DgModuleBuilder {
    algebra: Arc<DgAlgebra>,
    lo: i32,
    dims: Vec<usize>,
    diff: Vec<Mat>,
    act: Vec<Vec<Vec<Mat>>>,
}

impl DgModuleBuilder {
    pub fn new(algebra: Arc<DgAlgebra>, lo: i32, dims: Vec<usize>) -> DgModuleBuilder {
        let f = algebra.field();
        let n = dims.len();
        let dim = |i: i32| -> usize {
            if i < lo || i >= lo + n as i32 {
                0
            } else {
                dims[(i - lo) as usize]
            }
        };
        let diff = (0..n).map(|k| Mat::zeros(f, dim(lo + k as i32 + 1), dims[k])).collect();
        let act = (0..n)
            .map(|k| {
                let i = lo + k as i32;
                algebra
                    .degrees()
                    .map(|j| (0..algebra.dim(j)).map(|_| Mat::zeros(f, dim(i + j), dims[k])).collect())
                    .collect()
            })
            .collect();
        DgModuleBuilder { algebra, lo, dims, diff, act }
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i >= self.lo + self.dims.len() as i32 {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn set_diff(&mut self, i: i32, m: Mat) {
        if self.dim(i) == 0 {
            return;
        }
        let k = (i - self.lo) as usize;
        assert_eq!((m.rows(), m.cols()), (self.diff[k].rows(), self.diff[k].cols()), "differential shape in degree {i}");
        self.diff[k] = m;
    }

    pub fn diff_mut(&mut self, i: i32) -> &mut Mat {
        let k = (i - self.lo) as usize;
        &mut self.diff[k]
    }

    pub fn set_act(&mut self, i: i32, j: i32, b: usize, m: Mat) {
        if self.dim(i) == 0 {
            return;
        }
        let k = (i - self.lo) as usize;
        let kj = (j - self.algebra.low()) as usize;
        let slot = &mut self.act[k][kj][b];
        assert_eq!((m.rows(), m.cols()), (slot.rows(), slot.cols()), "action shape at degree {i} by ({j},{b})");
        *slot = m;
    }

    pub fn act_mut(&mut self, i: i32, j: i32, b: usize) -> &mut Mat {
        let k = (i - self.lo) as usize;
        let kj = (j - self.algebra.low()) as usize;
        &mut self.act[k][kj][b]
    }

    pub fn build(self) -> Result<DgModule> {
        let m = self.build_unchecked();
        let r = m.validate();
        if r.is_ok() {
            Ok(m)
        } else {
            Err(Error::Validation(r.summary()))
        }
    }

    pub fn build_unchecked(self) -> DgModule {
        DgModule {
            algebra: self.algebra,
            lo: self.lo,
            dims: self.dims,
            diff: self.diff,
            act: self.act,
            cohomology: OnceLock::new(),
        }
        .trimmed()
    }
}

/// Cohomology of a module, degree by degree.
#[derive(Clone, Debug)]
pub struct ModuleCohomology {
    lo: i32,
    degrees: Vec<HDegree>,
}

impl ModuleCohomology {
    pub fn h(&self, i: i32) -> Option<&HDegree> {
        if i < self.lo || i >= self.lo + self.degrees.len() as i32 {
            None
        } else {
            Some(&self.degrees[(i - self.lo) as usize])
        }
    }

    pub fn dim(&self, i: i32) -> usize {
        self.h(i).map_or(0, |h| h.dim())
    }

    pub fn range(&self) -> std::ops::Range<i32> {
        self.lo..self.lo + self.degrees.len() as i32
    }

    /// `None` stands for `-∞` (acyclic module).
    pub fn sup(&self) -> Option<i32> {
        self.range().rev().find(|&i| self.dim(i) > 0)
    }

    /// `None` stands for `+∞` (acyclic module).
    pub fn inf(&self) -> Option<i32> {
        self.range().find(|&i| self.dim(i) > 0)
    }

    pub fn champ(&self) -> Option<i32> {
        Some(self.sup()? - self.inf()?)
    }

    pub fn is_acyclic(&self) -> bool {
        self.sup().is_none()
    }

    pub fn summary(&self) -> CohomologySummary {
        CohomologySummary {
            dims: self.range().filter(|&i| self.dim(i) > 0).map(|i| (i, self.dim(i))).collect(),
            sup: self.sup(),
            inf: self.inf(),
        }
    }
}

impl DgModule {
    pub fn zero(algebra: Arc<DgAlgebra>) -> DgModule {
        DgModuleBuilder::new(algebra, 0, Vec::new()).build_unchecked()
    }

    /// `R` as a right module over itself.
    pub fn regular(algebra: Arc<DgAlgebra>) -> DgModule {
        let low = algebra.low();
        let dims: Vec<usize> = algebra.degrees().map(|i| algebra.dim(i)).collect();
        let mut b = DgModuleBuilder::new(algebra.clone(), low, dims);
        for i in algebra.degrees() {
            b.set_diff(i, algebra.diff(i));
            for j in algebra.degrees() {
                for r in 0..algebra.dim(j) {
                    b.set_act(i, j, r, algebra.right_mult(i, j, r));
                }
            }
        }
        b.build_unchecked()
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with a nonzero component (`lo - 1` for the zero module).
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `d: M^i -> M^{i+1}`.
    pub fn d(&self, i: i32) -> Cow<'_, Mat> {
        if self.dim(i) == 0 {
            Cow::Owned(Mat::zeros(self.field(), self.dim(i + 1), 0))
        } else {
            Cow::Borrowed(&self.diff[(i - self.lo) as usize])
        }
    }

    /// `m -> m * e_b` for `e_b` in `R^j`, from degree `i` to `i + j`.
    pub fn act(&self, i: i32, j: i32, b: usize) -> Cow<'_, Mat> {
        let r = &self.algebra;
        if self.dim(i) == 0 || j < r.low() || j > 0 {
            Cow::Owned(Mat::zeros(self.field(), self.dim(i + j), self.dim(i)))
        } else {
            Cow::Borrowed(&self.act[(i - self.lo) as usize][(j - r.low()) as usize][b])
        }
    }

    /// Action of an arbitrary element `r` of `R^j`.
    pub fn act_elem(&self, i: i32, j: i32, r: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim(i + j), self.dim(i));
        for (b, &c) in r.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.act(i, j, b), c);
            }
        }
        m
    }

    /// Drop empty degrees at both ends of the window.
    pub fn trimmed(mut self) -> DgModule {
        let first = self.dims.iter().position(|&d| d > 0);
        let Some(first) = first else {
            self.lo = 0;
            self.dims.clear();
            self.diff.clear();
            self.act.clear();
            return self;
        };
        let last = self.dims.iter().rposition(|&d| d > 0).unwrap();
        if first == 0 && last + 1 == self.dims.len() {
            return self;
        }
        self.lo += first as i32;
        self.dims = self.dims[first..=last].to_vec();
        self.diff = self.diff[first..=last].to_vec();
        self.act = self.act[first..=last].to_vec();
        self
    }

    pub fn cohomology(&self) -> &ModuleCohomology {
        self.cohomology.get_or_init(|| {
            let diffs: Vec<Mat> = self.degrees().map(|i| self.d(i).into_owned()).collect();
            ModuleCohomology { lo: self.lo, degrees: complex_cohomology(self.field(), &self.dims, &diffs) }
        })
    }

    pub fn sup(&self) -> Option<i32> {
        self.cohomology().sup()
    }

    pub fn inf(&self) -> Option<i32> {
        self.cohomology().inf()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_acyclic()
    }

    pub fn h_dim(&self, i: i32) -> usize {
        self.cohomology().dim(i)
    }

    /// Action of the class `c` of `H^j(R)` on cohomology: `H^i(M) -> H^{i+j}(M)`.
    pub fn h_action(&self, i: i32, j: i32, c: usize) -> Mat {
        let f = self.field();
        let coh = self.cohomology();
        let (src, tgt) = (coh.h(i), coh.h(i + j));
        let (Some(src), Some(tgt)) = (src, tgt) else {
            return Mat::zeros(f, coh.dim(i + j), coh.dim(i));
        };
        let r = self.algebra.h(j).expect("class degree inside the algebra window").rep(c);
        tgt.proj.mul(&self.act_elem(i, j, &r)).mul(&src.reps)
    }

    /// `H^i(M)` as a right module over `H^0(R)`.
    pub fn h_module(&self, i: i32) -> Result<FdModule> {
        let h0 = self.algebra.h0()?;
        let n = self.h_dim(i);
        let act = (0..h0.dim()).map(|c| self.h_action(i, 0, c)).collect();
        FdModule::new(h0, n, act)
    }

    /// Exhaustive axiom check on basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let f = self.field();
        let r = &self.algebra;
        let mut v = Vec::new();
        for i in self.degrees() {
            if !self.d(i + 1).mul(&self.d(i)).is_zero() {
                v.push(Violation::new("d∘d = 0", format!("degree {i}")));
            }
        }
        let unit = r.unit().to_vec();
        for i in self.degrees() {
            if self.dim(i) > 0 && !self.act_elem(i, 0, &unit).is_identity() {
                v.push(Violation::new("unit acts as identity", format!("degree {i}")));
            }
        }
        for i in self.degrees() {
            for j in r.degrees() {
                for b in 0..r.dim(j) {
                    // d(m e_b) = d(m) e_b + (-1)^i m ∂(e_b)
                    let lhs = self.d(i + j).mul(&self.act(i, j, b));
                    let mut rhs = self.act(i + 1, j, b).mul(&self.d(i));
                    let mut eb = vec![0; r.dim(j)];
                    eb[b] = 1;
                    let db = r.diff(j).mul_vec(&eb);
                    if j < 0 {
                        rhs.add_scaled(&self.act_elem(i, j + 1, &db), f.sign(i));
                    }
                    if lhs != rhs {
                        v.push(Violation::new("Leibniz", format!("m in degree {i}, r=({j},{b})")));
                    }
                    // (m e_b) e_c = m (e_b e_c)
                    for l in r.degrees() {
                        if j + l < r.low() {
                            if !(0..r.dim(l)).all(|c| self.act(i + j, l, c).mul(&self.act(i, j, b)).is_zero()) {
                                v.push(Violation::new("associativity", format!("degree {i}, ({j},{b}), degree {l}")));
                            }
                            continue;
                        }
                        for c in 0..r.dim(l) {
                            let x = self.act(i + j, l, c).mul(&self.act(i, j, b));
                            let y = self.act_elem(i, j + l, &r.product(j, b, l, c));
                            if x != y {
                                v.push(Violation::new("associativity", format!("degree {i}, ({j},{b})({l},{c})")));
                            }
                        }
                    }
                }
            }
        }
        ValidationReport::new(v)
    }

    /// Rebuild over an equal algebra handle.
    pub fn with_algebra(&self, algebra: Arc<DgAlgebra>) -> DgModule {
        assert!(same_algebra(&self.algebra, &algebra));
        let mut m = self.clone();
        m.algebra = algebra;
        m
    }

    /// Deconstruct into a builder so callers can adjust tables.
    pub fn to_builder(&self) -> DgModuleBuilder {
        DgModuleBuilder {
            algebra: self.algebra.clone(),
            lo: self.lo,
            dims: self.dims.clone(),
            diff: self.diff.clone(),
            act: self.act.clone(),
        }
    }
}
