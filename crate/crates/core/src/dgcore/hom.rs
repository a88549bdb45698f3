use std::sync::Arc;

use crate::exactla::{quotient_basis, Field, Mat, Subspace};
use crate::heartkit::FdModule;

use super::cohomology::{complex_cohomology, HDegree};
use super::module::{same_algebra, DgModule};
use super::morphism::DgMorphism;

/// Bounded complex of vector spaces, `diffs[k]: C^{lo+k} -> C^{lo+k+1}`.
#[derive(Clone, Debug)]
pub struct KComplex {
    pub field: Field,
    pub lo: i32,
    pub dims: Vec<usize>,
    pub diffs: Vec<Mat>,
}

impl KComplex {
    pub fn new(field: Field, lo: i32, dims: Vec<usize>, diffs: Vec<Mat>) -> KComplex {
        KComplex { field, lo, dims, diffs }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn cohomology(&self) -> Vec<HDegree> {
        complex_cohomology(self.field, &self.dims, &self.diffs)
    }

    /// `dim H^n` on every degree of the window, zero outside.
    pub fn h_dims(&self) -> Vec<(i32, usize)> {
        self.cohomology().iter().enumerate().map(|(k, h)| (self.lo + k as i32, h.dim())).collect()
    }

    pub fn h_dim(&self, n: i32) -> usize {
        self.h_dims().into_iter().find(|&(i, _)| i == n).map_or(0, |(_, d)| d)
    }

    pub fn is_acyclic(&self) -> bool {
        self.h_dims().iter().all(|&(_, d)| d == 0)
    }
}

/// `Hom_R(M, N)` as a complex, with the R-linear maps of each degree
/// embedded in the space of all graded maps.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Arc<DgModule>,
    pub target: Arc<DgModule>,
    pub complex: KComplex,
    /// One subspace per degree, inside `⊕_i Hom_k(M^i, N^{i+n})` laid out blockwise.
    pub linear: Vec<Subspace>,
}

fn block_offsets(m: &DgModule, n: &DgModule, deg: i32) -> Vec<(i32, usize)> {
    let mut acc = 0;
    m.degrees()
        .map(|i| {
            let o = acc;
            acc += m.dim(i) * n.dim(i + deg);
            (i, o)
        })
        .collect()
}

fn graded_dim(m: &DgModule, n: &DgModule, deg: i32) -> usize {
    m.degrees().map(|i| m.dim(i) * n.dim(i + deg)).sum()
}

/// Blocks of a degree-`deg` graded map from its flat vector.
fn unflatten(f: Field, m: &DgModule, n: &DgModule, deg: i32, v: &[u32]) -> Vec<(i32, Mat)> {
    block_offsets(m, n, deg)
        .into_iter()
        .map(|(i, o)| {
            let (r, c) = (n.dim(i + deg), m.dim(i));
            (i, Mat::from_data(f, r, c, v[o..o + r * c].to_vec()))
        })
        .collect()
}

fn flatten(m: &DgModule, n: &DgModule, deg: i32, blocks: &dyn Fn(i32) -> Mat) -> Vec<u32> {
    let mut out = Vec::with_capacity(graded_dim(m, n, deg));
    for i in m.degrees() {
        out.extend_from_slice(blocks(i).data());
    }
    out
}

pub fn hom_complex(m: &Arc<DgModule>, n: &Arc<DgModule>) -> HomComplex {
    assert!(same_algebra(m.algebra(), n.algebra()));
    let f = m.field();
    let r = m.algebra();
    if m.is_zero() || n.is_zero() {
        return HomComplex {
            source: m.clone(),
            target: n.clone(),
            complex: KComplex::new(f, 0, Vec::new(), Vec::new()),
            linear: Vec::new(),
        };
    }
    let lo = n.lo() - m.hi();
    let hi = n.hi() - m.lo();
    let gens = r.generators().to_vec();
    let mut linear = Vec::new();
    for deg in lo..=hi {
        let total = graded_dim(m, n, deg);
        let offs = block_offsets(m, n, deg);
        let off = |i: i32| offs.iter().find(|&&(x, _)| x == i).map(|&(_, o)| o);
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for &(j, b) in &gens {
            for i in m.degrees() {
                // φ_{i+j} act_M(i,j,b) - act_N(i+deg,j,b) φ_i = 0, entrywise
                let am = m.act(i, j, b);
                let an = n.act(i + deg, j, b);
                let (rt, ct) = (n.dim(i + j + deg), m.dim(i));
                if rt == 0 || ct == 0 {
                    continue;
                }
                for x in 0..rt {
                    for y in 0..ct {
                        let mut row = vec![0u32; total];
                        if let Some(o) = off(i + j) {
                            let w = m.dim(i + j);
                            for k in 0..w {
                                let v = am.get(k, y);
                                if v != 0 {
                                    row[o + x * w + k] = f.add(row[o + x * w + k], v);
                                }
                            }
                        }
                        if let Some(o) = off(i) {
                            let w = n.dim(i + deg);
                            for k in 0..w {
                                let v = an.get(x, k);
                                if v != 0 {
                                    row[o + k * ct + y] = f.sub(row[o + k * ct + y], v);
                                }
                            }
                        }
                        if row.iter().any(|&v| v != 0) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        linear.push(Mat::from_row_vecs(f, total, &rows).kernel());
    }
    let mut diffs = Vec::new();
    for (k, deg) in (lo..=hi).enumerate() {
        let src = &linear[k];
        let mut cols = Vec::new();
        for v in src.vectors() {
            let blocks = unflatten(f, m, n, deg, &v);
            let get = |i: i32| blocks.iter().find(|(x, _)| *x == i).map(|(_, b)| b.clone());
            let s = f.sign(deg);
            let dv = flatten(m, n, deg + 1, &|i: i32| {
                // (dφ)_i = d_N φ_i - (-1)^deg φ_{i+1} d_M
                let mut out = Mat::zeros(f, n.dim(i + deg + 1), m.dim(i));
                if let Some(p) = get(i) {
                    out = out.add(&n.d(i + deg).mul(&p));
                }
                if let Some(p) = get(i + 1) {
                    out.add_scaled(&p.mul(&m.d(i)), f.neg(s));
                }
                out
            });
            let c = if k + 1 < linear.len() {
                linear[k + 1].coords(&dv).expect("differential of an R-linear map is R-linear")
            } else {
                debug_assert!(dv.iter().all(|&x| x == 0));
                Vec::new()
            };
            cols.push(c);
        }
        let rows = if k + 1 < linear.len() { linear[k + 1].dim() } else { 0 };
        diffs.push(Mat::from_cols(f, rows, &cols));
    }
    let dims = linear.iter().map(|s| s.dim()).collect();
    HomComplex { source: m.clone(), target: n.clone(), complex: KComplex::new(f, lo, dims, diffs), linear }
}

impl HomComplex {
    /// The degree-0 element with coordinates `c` as a morphism.
    pub fn morphism(&self, c: &[u32]) -> DgMorphism {
        let f = self.source.field();
        let k = (0 - self.complex.lo) as usize;
        let v = self.linear[k].inclusion().mul_vec(c);
        let blocks = unflatten(f, &self.source, &self.target, 0, &v);
        DgMorphism::new(self.source.clone(), self.target.clone(), move |i| {
            blocks.iter().find(|(x, _)| *x == i).map(|(_, b)| b.clone()).unwrap()
        })
    }
}

/// `M ⊗_R L` for `L` a left module stored as a right module over `R^op`.
pub fn tensor_complex(m: &DgModule, l: &DgModule) -> KComplex {
    let r = m.algebra();
    let f = m.field();
    assert!(
        same_algebra(&r.opposite(), l.algebra()) || (**r == *l.algebra().opposite()),
        "tensor needs a right module and a left module over the same algebra"
    );
    if m.is_zero() || l.is_zero() {
        return KComplex::new(f, 0, Vec::new(), Vec::new());
    }
    let lo = m.lo() + l.lo();
    let hi = m.hi() + l.hi();
    // V_n = ⊕_i M^i ⊗ L^{n-i}, with m ⊗ l at off + a * dim L^{n-i} + c
    let offs = |n: i32| -> Vec<(i32, usize)> {
        let mut acc = 0;
        m.degrees()
            .map(|i| {
                let o = acc;
                acc += m.dim(i) * l.dim(n - i);
                (i, o)
            })
            .collect()
    };
    let vdim = |n: i32| -> usize { m.degrees().map(|i| m.dim(i) * l.dim(n - i)).sum() };
    let find = |v: &[(i32, usize)], i: i32| v.iter().find(|&&(x, _)| x == i).map(|&(_, o)| o);
    let mut quots = Vec::new();
    for n in lo..=hi {
        let on = offs(n);
        let total = vdim(n);
        let mut rels: Vec<Vec<u32>> = Vec::new();
        for &(j, b) in r.generators() {
            for i in m.degrees() {
                let li = n - i - j;
                if l.dim(li) == 0 || m.dim(i) == 0 {
                    continue;
                }
                let am = m.act(i, j, b);
                // e_b · l = (-1)^{|l| j} l ·' e_b
                let al = l.act(li, j, b);
                let s = f.sign(li * j);
                for a in 0..m.dim(i) {
                    for c in 0..l.dim(li) {
                        let mut row = vec![0u32; total];
                        if let Some(o) = find(&on, i + j) {
                            let w = l.dim(li);
                            for t in 0..m.dim(i + j) {
                                let v = am.get(t, a);
                                if v != 0 {
                                    row[o + t * w + c] = f.add(row[o + t * w + c], v);
                                }
                            }
                        }
                        if let Some(o) = find(&on, i) {
                            let w = l.dim(n - i);
                            for t in 0..w {
                                let v = f.mul(al.get(t, c), s);
                                if v != 0 {
                                    row[o + a * w + t] = f.sub(row[o + a * w + t], v);
                                }
                            }
                        }
                        if row.iter().any(|&v| v != 0) {
                            rels.push(row);
                        }
                    }
                }
            }
        }
        let rel = Subspace::from_vectors(f, total, &rels);
        quots.push(quotient_basis(&rel));
    }
    let mut diffs = Vec::new();
    let mut dims = Vec::new();
    for (k, n) in (lo..=hi).enumerate() {
        let (_, s) = &quots[k];
        dims.push(s.cols());
        let on = offs(n);
        let on1 = offs(n + 1);
        let total1 = vdim(n + 1);
        let mut d = Mat::zeros(f, total1, vdim(n));
        for i in m.degrees() {
            let li = n - i;
            let (dm, dl) = (m.d(i), l.d(li));
            let (Some(o), w) = (find(&on, i), l.dim(li)) else { continue };
            for a in 0..m.dim(i) {
                for c in 0..w {
                    let col = o + a * w + c;
                    // dm ⊗ l
                    if let Some(o1) = find(&on1, i + 1) {
                        let w1 = l.dim(li);
                        for t in 0..m.dim(i + 1) {
                            let v = dm.get(t, a);
                            if v != 0 {
                                d.add_at(o1 + t * w1 + c, col, v);
                            }
                        }
                    }
                    // (-1)^i m ⊗ dl
                    if let Some(o1) = find(&on1, i) {
                        let w1 = l.dim(li + 1);
                        let sg = f.sign(i);
                        for t in 0..w1 {
                            let v = dl.get(t, c);
                            if v != 0 {
                                d.add_at(o1 + a * w1 + t, col, f.mul(v, sg));
                            }
                        }
                    }
                }
            }
        }
        let q1 = if k + 1 < quots.len() { quots[k + 1].0.clone() } else { Mat::zeros(f, 0, total1) };
        diffs.push(q1.mul(&d).mul(s));
    }
    KComplex::new(f, lo, dims, diffs)
}

/// `Hom_{R^0}(M, K)` for `K` an `R^0`-module placed in degree 0: degree `n` is
/// `Hom_{R^0}(M^{-n}, K)` with `dφ = -(-1)^n φ d_M`.
pub fn hom_r0_complex(m: &DgModule, k: &FdModule) -> KComplex {
    let f = m.field();
    if m.is_zero() || k.is_zero() {
        return KComplex::new(f, 0, Vec::new(), Vec::new());
    }
    let r0 = k.algebra();
    let lo = -m.hi();
    let hi = -m.lo();
    let spaces: Vec<Subspace> = (lo..=hi)
        .map(|n| {
            let i = -n;
            let src: Vec<Mat> = r0.generators().iter().map(|&g| m.act(i, 0, g).into_owned()).collect();
            let tgt: Vec<Mat> = r0.generators().iter().map(|&g| k.action(g).clone()).collect();
            let basis = crate::heartkit::intertwiners(f, &src, &tgt, m.dim(i), k.dim());
            let vs: Vec<Vec<u32>> = basis.iter().map(|b| b.data().to_vec()).collect();
            Subspace::from_vectors(f, m.dim(i) * k.dim(), &vs)
        })
        .collect();
    let mut diffs = Vec::new();
    for (idx, n) in (lo..=hi).enumerate() {
        let i = -n;
        let s = f.neg(f.sign(n));
        let cols: Vec<Vec<u32>> = spaces[idx]
            .vectors()
            .iter()
            .map(|v| {
                if idx + 1 >= spaces.len() {
                    return Vec::new();
                }
                let phi = Mat::from_data(f, k.dim(), m.dim(i), v.clone());
                let dphi = phi.mul(&m.d(i - 1)).scale(s);
                spaces[idx + 1].coords(dphi.data()).expect("R0-linear")
            })
            .collect();
        let rows = if idx + 1 < spaces.len() { spaces[idx + 1].dim() } else { 0 };
        diffs.push(Mat::from_cols(f, rows, &cols));
    }
    KComplex::new(f, lo, spaces.iter().map(|s| s.dim()).collect(), diffs)
}
