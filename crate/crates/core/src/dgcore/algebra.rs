use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};
use crate::heartkit::{OrdinaryAlgebra, Zeroth};

use super::cohomology::{complex_cohomology, HDegree};
use super::validate::{ValidationReport, Violation};

/// Finite-dimensional DG-algebra concentrated in degrees `[low, 0]`.
///
/// `prod[(i,j)]` holds, for basis `a` of degree `i` and `b` of degree `j`, the
/// coordinates of `a*b` in degree `i+j` (flattened as `a * dim_j + b`).
/// `diff[i]` is `∂: R^i -> R^{i+1}`; the degree-0 differential is the empty map.
pub struct DgAlgebra {
    field: Field,
    low: i32,
    dims: Vec<usize>,
    names: Vec<Vec<String>>,
    prod: Vec<Vec<Vec<Vec<u32>>>>,
    diff: Vec<Mat>,
    unit: Vec<u32>,
    seed: u64,
    cache: Cache,
}

#[derive(Default)]
struct Cache {
    cohomology: OnceLock<Vec<HDegree>>,
    generators: OnceLock<Vec<(i32, usize)>>,
    zeroth: OnceLock<Result<Zeroth>>,
    opposite: OnceLock<Arc<DgAlgebra>>,
}

impl PartialEq for DgAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field
            && self.low == o.low
            && self.dims == o.dims
            && self.prod == o.prod
            && self.diff == o.diff
            && self.unit == o.unit
    }
}

impl fmt::Debug for DgAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DgAlgebra(p={}, dims={:?} from degree {})", self.field.p(), self.dims, self.low)
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Incremental construction of a DG-algebra table.
pub struct DgAlgebraBuilder {
    field: Field,
    low: i32,
    dims: Vec<usize>,
    names: Vec<Vec<String>>,
    prod: Vec<Vec<Vec<Vec<u32>>>>,
    diff: Vec<Mat>,
    unit: Vec<u32>,
}

impl DgAlgebraBuilder {
    /// `dims[k]` is the dimension of degree `low + k`; the last entry is degree 0.
    pub fn new(field: Field, low: i32, dims: Vec<usize>) -> DgAlgebraBuilder {
        assert!(low <= 0 && dims.len() == (1 - low) as usize, "dims must cover [low, 0]");
        let n = dims.len();
        let mut prod = vec![vec![Vec::new(); n]; n];
        for ki in 0..n {
            for kj in 0..n {
                let s = ki as i32 + kj as i32 + 2 * low;
                if s >= low {
                    let ks = (s - low) as usize;
                    prod[ki][kj] = vec![vec![0; dims[ks]]; dims[ki] * dims[kj]];
                }
            }
        }
        let diff = (0..n)
            .map(|k| {
                let tgt = if k + 1 < n { dims[k + 1] } else { 0 };
                Mat::zeros(field, tgt, dims[k])
            })
            .collect();
        let names = (0..n)
            .map(|k| (0..dims[k]).map(|b| format!("r{}_{}", low + k as i32, b).replace('-', "m")).collect())
            .collect();
        DgAlgebraBuilder { field, low, unit: vec![0; dims[n - 1]], dims, names, prod, diff }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn set_names(&mut self, deg: i32, names: Vec<String>) {
        let k = (deg - self.low) as usize;
        assert_eq!(names.len(), self.dims[k]);
        self.names[k] = names;
    }

    /// Set `a * b` where `a` has degree `i`, `b` degree `j`.
    pub fn set_product(&mut self, i: i32, a: usize, j: i32, b: usize, value: Vec<u32>) {
        let (ki, kj) = ((i - self.low) as usize, (j - self.low) as usize);
        let slot = &mut self.prod[ki][kj];
        if slot.is_empty() {
            assert!(value.iter().all(|&x| x == 0), "product below the lowest degree must vanish");
            return;
        }
        assert_eq!(value.len(), slot[0].len());
        let dj = self.dims[kj];
        slot[a * dj + b] = value;
    }

    pub fn set_diff(&mut self, i: i32, m: Mat) {
        let k = (i - self.low) as usize;
        assert_eq!((m.rows(), m.cols()), (self.diff[k].rows(), self.diff[k].cols()));
        self.diff[k] = m;
    }

    pub fn set_diff_column(&mut self, i: i32, b: usize, v: &[u32]) {
        let k = (i - self.low) as usize;
        for (r, &x) in v.iter().enumerate() {
            self.diff[k].set(r, b, x);
        }
    }

    pub fn set_unit(&mut self, unit: Vec<u32>) {
        assert_eq!(unit.len(), self.unit.len());
        self.unit = unit;
    }

    /// Fill every product with the unit on either side using the unit vector.
    /// Only valid when the unit is a basis vector.
    pub fn unit_basis_products(&mut self, unit_index: usize) {
        let k0 = (-self.low) as usize;
        let mut u = vec![0; self.dims[k0]];
        u[unit_index] = 1;
        self.unit = u;
        for k in 0..self.dims.len() {
            let d = self.dims[k];
            let deg = self.low + k as i32;
            for b in 0..d {
                let mut e = vec![0; d];
                e[b] = 1;
                self.set_product(0, unit_index, deg, b, e.clone());
                self.set_product(deg, b, 0, unit_index, e);
            }
        }
    }

    pub fn build(self) -> Result<DgAlgebra> {
        let alg = self.build_unchecked();
        let report = alg.validate();
        if report.is_ok() {
            Ok(alg)
        } else {
            Err(Error::Validation(report.summary()))
        }
    }

    pub fn build_unchecked(self) -> DgAlgebra {
        DgAlgebra {
            field: self.field,
            low: self.low,
            dims: self.dims,
            names: self.names,
            prod: self.prod,
            diff: self.diff,
            unit: self.unit,
            seed: DEFAULT_SEED,
            cache: Cache::default(),
        }
    }
}

impl DgAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i32> + Clone {
        self.low..=0
    }

    pub fn dim(&self, i: i32) -> usize {
        if i < self.low || i > 0 {
            0
        } else {
            self.dims[(i - self.low) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn names(&self, i: i32) -> &[String] {
        if i < self.low || i > 0 {
            &[]
        } else {
            &self.names[(i - self.low) as usize]
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same algebra with a different chop seed for the zeroth algebras.
    pub fn with_seed(mut self, seed: u64) -> DgAlgebra {
        self.seed = seed;
        self.cache = Cache::default();
        self
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    /// True when all basis elements live in degree 0.
    pub fn is_ordinary(&self) -> bool {
        self.degrees().all(|i| i == 0 || self.dim(i) == 0)
    }

    pub fn diff(&self, i: i32) -> Mat {
        if i < self.low || i > 0 {
            Mat::zeros(self.field, self.dim(i + 1), self.dim(i))
        } else {
            self.diff[(i - self.low) as usize].clone()
        }
    }

    /// Coordinates of `e_a * e_b` (degrees `i`, `j`) in degree `i+j`.
    pub fn product(&self, i: i32, a: usize, j: i32, b: usize) -> Vec<u32> {
        if i + j < self.low {
            return Vec::new();
        }
        let (ki, kj) = ((i - self.low) as usize, (j - self.low) as usize);
        self.prod[ki][kj][a * self.dims[kj] + b].clone()
    }

    pub fn multiply(&self, i: i32, x: &[u32], j: i32, y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim(i + j)];
        if i + j < self.low {
            return out;
        }
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let c = f.mul(xa, yb);
                let p = &self.prod[(i - self.low) as usize][(j - self.low) as usize][a * self.dim(j) + b];
                for (o, &v) in out.iter_mut().zip(p) {
                    *o = f.mul_add(*o, c, v);
                }
            }
        }
        out
    }

    /// Matrix of `x -> x * e_b` from degree `i` to `i+j`.
    pub fn right_mult(&self, i: i32, j: i32, b: usize) -> Mat {
        let rows = self.dim(i + j);
        let cols = self.dim(i);
        let mut m = Mat::zeros(self.field, rows, cols);
        if i + j < self.low || cols == 0 || rows == 0 {
            return m;
        }
        for a in 0..cols {
            let v = self.product(i, a, j, b);
            for (r, &x) in v.iter().enumerate() {
                m.set(r, a, x);
            }
        }
        m
    }

    /// Matrix of `y -> e_a * y` from degree `j` to `i+j`.
    pub fn left_mult(&self, i: i32, a: usize, j: i32) -> Mat {
        let rows = self.dim(i + j);
        let cols = self.dim(j);
        let mut m = Mat::zeros(self.field, rows, cols);
        if i + j < self.low || cols == 0 || rows == 0 {
            return m;
        }
        for b in 0..cols {
            let v = self.product(i, a, j, b);
            for (r, &x) in v.iter().enumerate() {
                m.set(r, b, x);
            }
        }
        m
    }

    pub fn right_mult_elem(&self, i: i32, j: i32, r: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim(i + j), self.dim(i));
        for (b, &c) in r.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.right_mult(i, j, b), c);
            }
        }
        m
    }

    pub fn left_mult_elem(&self, i: i32, a: &[u32], j: i32) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim(i + j), self.dim(j));
        for (b, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.left_mult(i, b, j), c);
            }
        }
        m
    }

    /// Cohomology of the underlying complex, degree by degree from `low`.
    pub fn cohomology_degrees(&self) -> &[HDegree] {
        self.cache.cohomology.get_or_init(|| {
            let dims: Vec<usize> = self.dims.clone();
            let diffs: Vec<Mat> = self.diff.clone();
            complex_cohomology(self.field, &dims, &diffs)
        })
    }

    pub fn h(&self, i: i32) -> Option<&HDegree> {
        if i < self.low || i > 0 {
            None
        } else {
            Some(&self.cohomology_degrees()[(i - self.low) as usize])
        }
    }

    pub fn h_dim(&self, i: i32) -> usize {
        self.h(i).map_or(0, |h| h.dim())
    }

    /// Lowest degree with nonzero cohomology, `None` if `R` is acyclic.
    pub fn h_inf(&self) -> Option<i32> {
        self.degrees().find(|&i| self.h_dim(i) > 0)
    }

    /// Basis elements generating `R` as a unital algebra, by degree then index.
    pub fn generators(&self) -> &[(i32, usize)] {
        self.cache.generators.get_or_init(|| self.compute_generators())
    }

    fn compute_generators(&self) -> Vec<(i32, usize)> {
        let f = self.field;
        let n = self.dims.len();
        let mut gens: Vec<(i32, usize)> = Vec::new();
        let close = |gens: &[(i32, usize)]| -> Vec<Subspace> {
            let mut span: Vec<Subspace> = (0..n)
                .map(|k| {
                    if self.low + k as i32 == 0 {
                        Subspace::from_vectors(f, self.dims[k], std::slice::from_ref(&self.unit))
                    } else {
                        Subspace::zero(f, self.dims[k])
                    }
                })
                .collect();
            loop {
                let mut grew = false;
                for k in 0..n {
                    let i = self.low + k as i32;
                    for &(j, g) in gens {
                        if i + j < self.low {
                            continue;
                        }
                        let kt = (i + j - self.low) as usize;
                        let img = span[k].map(&self.right_mult(i, j, g));
                        let s = span[kt].sum(&img);
                        if s.dim() > span[kt].dim() {
                            span[kt] = s;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    return span;
                }
            }
        };
        let mut span = close(&gens);
        for i in (self.low..=0).rev() {
            let k = (i - self.low) as usize;
            for b in 0..self.dims[k] {
                let mut e = vec![0; self.dims[k]];
                e[b] = 1;
                if !span[k].contains(&e) {
                    gens.push((i, b));
                    span = close(&gens);
                }
            }
        }
        gens
    }

    /// `R^0`, `H^0` and the projection between them.
    pub fn zeroth(&self) -> Result<&Zeroth> {
        self.cache
            .zeroth
            .get_or_init(|| Zeroth::compute(self))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn h0(&self) -> Result<Arc<OrdinaryAlgebra>> {
        Ok(self.zeroth()?.h0.clone())
    }

    pub fn r0(&self) -> Result<Arc<OrdinaryAlgebra>> {
        Ok(self.zeroth()?.r0.clone())
    }

    /// The opposite algebra with the Koszul sign `(-1)^{ij}`.
    pub fn opposite(&self) -> Arc<DgAlgebra> {
        self.cache
            .opposite
            .get_or_init(|| {
                let f = self.field;
                let mut b = DgAlgebraBuilder::new(f, self.low, self.dims.clone());
                for i in self.degrees() {
                    b.set_names(i, self.names(i).to_vec());
                    b.set_diff(i, self.diff(i));
                    for j in self.degrees() {
                        if i + j < self.low {
                            continue;
                        }
                        let s = f.sign(i * j);
                        for a in 0..self.dim(i) {
                            for c in 0..self.dim(j) {
                                let v = self.product(j, c, i, a).into_iter().map(|x| f.mul(x, s)).collect();
                                b.set_product(i, a, j, c, v);
                            }
                        }
                    }
                }
                b.set_unit(self.unit.clone());
                Arc::new(b.build_unchecked().with_seed(self.seed))
            })
            .clone()
    }

    /// Exhaustive check of the DG-algebra axioms on basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let f = self.field;
        let mut v = Vec::new();
        let total = self.total_dim();
        if (f.p() as usize) <= total {
            v.push(Violation::new("prime exceeds total dimension", format!("p={} dim={}", f.p(), total)));
        }
        if self.dim(0) == 0 && total > 0 {
            v.push(Violation::new("unit", "degree 0 is empty".into()));
        }
        // d∘d = 0
        for i in self.degrees() {
            let dd = self.diff(i + 1).mul(&self.diff(i));
            if !dd.is_zero() {
                v.push(Violation::new("d∘d = 0", format!("degree {i}")));
            }
        }
        // unit
        for i in self.degrees() {
            for b in 0..self.dim(i) {
                let mut e = vec![0; self.dim(i)];
                e[b] = 1;
                if self.multiply(0, &self.unit, i, &e) != e {
                    v.push(Violation::new("left unit", format!("({i},{b})")));
                }
                if self.multiply(i, &e, 0, &self.unit) != e {
                    v.push(Violation::new("right unit", format!("({i},{b})")));
                }
            }
        }
        let basis = |i: i32, a: usize| {
            let mut e = vec![0; self.dim(i)];
            e[a] = 1;
            e
        };
        // Leibniz
        for i in self.degrees() {
            for j in self.degrees() {
                if i + j < self.low - 1 {
                    continue;
                }
                let di = self.diff(i);
                let dj = self.diff(j);
                let dij = self.diff(i + j);
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let ab = self.product(i, a, j, b);
                        let lhs = dij.mul_vec(&ab);
                        let da = di.mul_vec(&basis(i, a));
                        let db = dj.mul_vec(&basis(j, b));
                        let t1 = self.multiply(i + 1, &da, j, &basis(j, b));
                        let t2 = self.multiply(i, &basis(i, a), j + 1, &db);
                        let s = f.sign(i);
                        let rhs: Vec<u32> = t1.iter().zip(&t2).map(|(&x, &y)| f.mul_add(x, s, y)).collect();
                        if lhs != rhs {
                            v.push(Violation::new("Leibniz", format!("({i},{a})·({j},{b})")));
                        }
                    }
                }
            }
        }
        // associativity
        for i in self.degrees() {
            for j in self.degrees() {
                for l in self.degrees() {
                    if i + j + l < self.low {
                        continue;
                    }
                    for a in 0..self.dim(i) {
                        for b in 0..self.dim(j) {
                            let ab = self.product(i, a, j, b);
                            for c in 0..self.dim(l) {
                                let bc = self.product(j, b, l, c);
                                let x = self.multiply(i + j, &ab, l, &basis(l, c));
                                let y = self.multiply(i, &basis(i, a), j + l, &bc);
                                if x != y {
                                    v.push(Violation::new("associativity", format!("({i},{a})({j},{b})({l},{c})")));
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport::new(v)
    }
}
