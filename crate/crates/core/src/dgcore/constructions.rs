use std::sync::Arc;

use crate::exactla::{quotient_basis, Mat};

use super::algebra::DgAlgebra;
use super::module::{DgModule, DgModuleBuilder};
use super::morphism::DgMorphism;

/// `(M[n])^i = M^{i+n}` with differential `(-1)^n d`.
pub fn shift(m: &DgModule, n: i32) -> DgModule {
    if n == 0 || m.is_zero() {
        return m.clone();
    }
    let f = m.field();
    let r = m.algebra().clone();
    let mut b = DgModuleBuilder::new(r.clone(), m.lo() - n, m.dims().to_vec());
    let s = f.sign(n);
    for i in m.degrees() {
        b.set_diff(i - n, m.d(i).scale(s));
        for j in r.degrees() {
            for e in 0..r.dim(j) {
                b.set_act(i - n, j, e, m.act(i, j, e).into_owned());
            }
        }
    }
    b.build_unchecked()
}

/// Shift of a morphism; the blocks are unchanged.
pub fn shift_morphism(f: &DgMorphism, n: i32) -> DgMorphism {
    let s = Arc::new(shift(f.source(), n));
    let t = Arc::new(shift(f.target(), n));
    DgMorphism::new(s, t, |i| f.map(i + n).into_owned())
}

pub fn direct_sum(ms: &[&DgModule]) -> DgModule {
    assert!(!ms.is_empty());
    let r = ms[0].algebra().clone();
    let f = r.field();
    let nonzero: Vec<&&DgModule> = ms.iter().filter(|m| !m.is_zero()).collect();
    if nonzero.is_empty() {
        return DgModule::zero(r);
    }
    let lo = nonzero.iter().map(|m| m.lo()).min().unwrap();
    let hi = nonzero.iter().map(|m| m.hi()).max().unwrap();
    let dims: Vec<usize> = (lo..=hi).map(|i| ms.iter().map(|m| m.dim(i)).sum()).collect();
    let mut b = DgModuleBuilder::new(r.clone(), lo, dims);
    let diag = |blocks: Vec<Mat>| -> Mat {
        let rows = blocks.iter().map(|x| x.rows()).sum();
        let cols = blocks.iter().map(|x| x.cols()).sum();
        let mut out = Mat::zeros(f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for x in &blocks {
            out.set_block(r0, c0, x);
            r0 += x.rows();
            c0 += x.cols();
        }
        out
    };
    for i in lo..=hi {
        b.set_diff(i, diag(ms.iter().map(|m| m.d(i).into_owned()).collect()));
        for j in r.degrees() {
            for e in 0..r.dim(j) {
                b.set_act(i, j, e, diag(ms.iter().map(|m| m.act(i, j, e).into_owned()).collect()));
            }
        }
    }
    b.build_unchecked()
}

/// Inclusion of summand `k` into `direct_sum(ms)`, rebuilt against `sum`.
pub fn summand_inclusion(ms: &[&DgModule], k: usize, sum: &Arc<DgModule>) -> DgMorphism {
    let f = sum.field();
    let src = Arc::new(ms[k].clone());
    let ms: Vec<DgModule> = ms.iter().map(|m| (*m).clone()).collect();
    DgMorphism::new(src, sum.clone(), |i| {
        let off: usize = ms[..k].iter().map(|m| m.dim(i)).sum();
        let mut x = Mat::zeros(f, sum.dim(i), ms[k].dim(i));
        for c in 0..ms[k].dim(i) {
            x.set(off + c, c, 1);
        }
        x
    })
}

/// Mapping cone with its two structure maps.
pub struct Cone {
    pub module: Arc<DgModule>,
    /// `N -> C`
    pub inclusion: DgMorphism,
    /// `C -> M[1]`
    pub projection: DgMorphism,
}

/// `C^i = N^i ⊕ M^{i+1}`, `d(n, m) = (d n + f m, -d m)` for `f: M -> N`.
pub fn cone(f: &DgMorphism) -> Cone {
    let (m, n) = (f.source().clone(), f.target().clone());
    let r = m.algebra().clone();
    let fl = r.field();
    let nz = [!n.is_zero(), !m.is_zero()];
    let lo = match nz {
        [true, true] => n.lo().min(m.lo() - 1),
        [true, false] => n.lo(),
        [false, true] => m.lo() - 1,
        [false, false] => 0,
    };
    let hi = match nz {
        [true, true] => n.hi().max(m.hi() - 1),
        [true, false] => n.hi(),
        [false, true] => m.hi() - 1,
        [false, false] => -1,
    };
    let dims: Vec<usize> = (lo..=hi).map(|i| n.dim(i) + m.dim(i + 1)).collect();
    let mut b = DgModuleBuilder::new(r.clone(), lo, dims);
    for i in lo..=hi {
        let (ni, mi) = (n.dim(i), m.dim(i + 1));
        let (nn, mn) = (n.dim(i + 1), m.dim(i + 2));
        let mut d = Mat::zeros(fl, nn + mn, ni + mi);
        d.set_block(0, 0, &n.d(i));
        d.set_block(0, ni, &f.map(i + 1));
        d.set_block(nn, ni, &m.d(i + 1).scale(fl.neg(1)));
        b.set_diff(i, d);
        for j in r.degrees() {
            for e in 0..r.dim(j) {
                let x = n.act(i, j, e).block_diag(&m.act(i + 1, j, e));
                b.set_act(i, j, e, x);
            }
        }
    }
    let c = Arc::new(b.build_unchecked());
    let (c1, c2) = (c.clone(), c.clone());
    let (n1, m1) = (n.clone(), m.clone());
    let inclusion = DgMorphism::new(n.clone(), c.clone(), move |i| {
        let mut x = Mat::zeros(fl, c1.dim(i), n1.dim(i));
        for k in 0..n1.dim(i) {
            x.set(k, k, 1);
        }
        x
    });
    let m_shift = Arc::new(shift(&m, 1));
    let projection = DgMorphism::new(c.clone(), m_shift, move |i| {
        let mut x = Mat::zeros(fl, m1.dim(i + 1), c2.dim(i));
        let off = n.dim(i);
        for k in 0..m1.dim(i + 1) {
            x.set(k, off + k, 1);
        }
        x
    });
    Cone { module: c, inclusion, projection }
}

/// Cocone `cone(f)[-1]` with `(n, m) -> m` onto the source of `f`.
pub struct Cocone {
    pub module: Arc<DgModule>,
    /// `cocone -> M`
    pub projection: DgMorphism,
}

pub fn cocone(f: &DgMorphism) -> Cocone {
    let c = cone(f);
    let cc = Arc::new(shift(&c.module, -1));
    let src = f.source().clone();
    let fl = src.field();
    let n = f.target().clone();
    let (cc1, src1) = (cc.clone(), src.clone());
    let projection = DgMorphism::new(cc.clone(), src, move |i| {
        let mut x = Mat::zeros(fl, src1.dim(i), cc1.dim(i));
        let off = n.dim(i - 1);
        for k in 0..src1.dim(i) {
            x.set(k, off + k, 1);
        }
        x
    });
    Cocone { module: cc, projection }
}

/// Which half of the truncation to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `σ^{≤n}` as a submodule, with its inclusion.
    Below,
    /// `σ^{>n}` as a quotient, with the projection.
    Above,
}

/// Truncation at `n` with its comparison map (inclusion for `Below`, projection for `Above`).
pub fn truncate(m: &Arc<DgModule>, n: i32, side: Side) -> (Arc<DgModule>, DgMorphism) {
    let r = m.algebra().clone();
    let f = r.field();
    let z = m.d(n).kernel();
    let zin = z.inclusion();
    let zc = z.coord_map();
    match side {
        Side::Below => {
            let lo = m.lo();
            if n < lo {
                let zero = Arc::new(DgModule::zero(r));
                return (zero.clone(), DgMorphism::zero(zero, m.clone()));
            }
            let top = n.min(m.hi().max(lo));
            let dims: Vec<usize> = (lo..=top).map(|i| if i == n { z.dim() } else { m.dim(i) }).collect();
            let mut b = DgModuleBuilder::new(r.clone(), lo, dims);
            for i in lo..=top {
                let d = if i == n {
                    Mat::zeros(f, 0, z.dim())
                } else if i + 1 == n {
                    zc.mul(&m.d(i))
                } else {
                    m.d(i).into_owned()
                };
                b.set_diff(i, d);
                for j in r.degrees() {
                    for e in 0..r.dim(j) {
                        let a = m.act(i, j, e);
                        let x = match (i == n, j == 0) {
                            (true, true) => zc.mul(&a).mul(&zin),
                            (true, false) => a.mul(&zin),
                            _ => a.into_owned(),
                        };
                        b.set_act(i, j, e, x);
                    }
                }
            }
            let t = Arc::new(b.build_unchecked());
            let (t1, m1) = (t.clone(), m.clone());
            let inc = DgMorphism::new(t.clone(), m.clone(), move |i| {
                if i == n {
                    zin.clone()
                } else {
                    debug_assert_eq!(t1.dim(i), m1.dim(i));
                    Mat::identity(f, m1.dim(i))
                }
            });
            (t, inc)
        }
        Side::Above => {
            let hi = m.hi();
            if n >= hi {
                let zero = Arc::new(DgModule::zero(r));
                return (zero.clone(), DgMorphism::zero(m.clone(), zero));
            }
            let (q, s) = quotient_basis(&z);
            let lo = n.max(m.lo());
            let qdim = |i: i32| if i == n { q.rows() } else { m.dim(i) };
            let dims: Vec<usize> = (lo..=hi).map(qdim).collect();
            let mut b = DgModuleBuilder::new(r.clone(), lo, dims);
            for i in lo..=hi {
                let d = if i == n { m.d(i).mul(&s) } else { m.d(i).into_owned() };
                b.set_diff(i, d);
                for j in r.degrees() {
                    for e in 0..r.dim(j) {
                        let a = m.act(i, j, e);
                        let x = if i + j < n {
                            Mat::zeros(f, 0, qdim(i))
                        } else if i + j == n {
                            let y = q.mul(&a);
                            if i == n {
                                y.mul(&s)
                            } else {
                                y
                            }
                        } else {
                            debug_assert!(i != n || j > 0);
                            a.into_owned()
                        };
                        b.set_act(i, j, e, x);
                    }
                }
            }
            let t = Arc::new(b.build_unchecked());
            let m1 = m.clone();
            let proj = DgMorphism::new(m.clone(), t.clone(), move |i| {
                if i < n {
                    Mat::zeros(f, 0, m1.dim(i))
                } else if i == n {
                    q.clone()
                } else {
                    Mat::identity(f, m1.dim(i))
                }
            });
            (t, proj)
        }
    }
}

/// A generator of a semifree module: its degree and `d(g)` written in the
/// basis spanned by the earlier generators (shorter vectors are zero-padded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: i32,
    pub diff: Vec<u32>,
}

/// Semifree module `⊕ g_k R` with `d(g_k e) = d(g_k) e + (-1)^{|g_k|} g_k ∂e`.
///
/// The basis of degree `i` lists `(k, b)` for generators in order and basis
/// elements `b` of `R^{i - |g_k|}`, so appending generators keeps old coordinates.
#[derive(Clone, Debug)]
pub struct Semifree {
    pub generators: Vec<Generator>,
    pub module: Arc<DgModule>,
    lo: i32,
    offsets: Vec<Vec<usize>>,
}

impl Semifree {
    pub fn new(r: Arc<DgAlgebra>, generators: Vec<Generator>) -> Semifree {
        let f = r.field();
        if generators.is_empty() {
            return Semifree { generators, module: Arc::new(DgModule::zero(r)), lo: 0, offsets: Vec::new() };
        }
        let lo = generators.iter().map(|g| g.degree).min().unwrap() + r.low();
        let hi = generators.iter().map(|g| g.degree).max().unwrap();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for i in lo..=hi {
            let mut off = Vec::with_capacity(generators.len() + 1);
            let mut acc = 0;
            for g in &generators {
                off.push(acc);
                acc += r.dim(i - g.degree);
            }
            off.push(acc);
            dims.push(acc);
            offsets.push(off);
        }
        let offset = |i: i32, k: usize| -> usize {
            if i < lo || i > hi {
                0
            } else {
                offsets[(i - lo) as usize][k]
            }
        };
        let dim = |i: i32| -> usize {
            if i < lo || i > hi {
                0
            } else {
                dims[(i - lo) as usize]
            }
        };
        let mut b = DgModuleBuilder::new(r.clone(), lo, dims.clone());
        for i in lo..=hi {
            for j in r.degrees() {
                for e in 0..r.dim(j) {
                    let mut x = Mat::zeros(f, dim(i + j), dim(i));
                    for (k, g) in generators.iter().enumerate() {
                        let jb = i - g.degree;
                        let rm = r.right_mult(jb, j, e);
                        let (c0, r0) = (offset(i, k), offset(i + j, k));
                        for a in 0..r.dim(jb) {
                            for t in 0..r.dim(jb + j) {
                                let v = rm.get(t, a);
                                if v != 0 {
                                    x.set(r0 + t, c0 + a, v);
                                }
                            }
                        }
                    }
                    b.set_act(i, j, e, x);
                }
            }
        }
        // differentials need the action, which does not depend on them
        let act_only = b.build_unchecked();
        let mut b = act_only.to_builder();
        for i in lo..=hi {
            let mut d = Mat::zeros(f, dim(i + 1), dim(i));
            for (k, g) in generators.iter().enumerate() {
                let jb = i - g.degree;
                if r.dim(jb) == 0 {
                    continue;
                }
                let mut dg = g.diff.clone();
                dg.resize(dim(g.degree + 1), 0);
                let dr = r.diff(jb);
                let s = f.sign(g.degree);
                for a in 0..r.dim(jb) {
                    let col = offset(i, k) + a;
                    if g.degree < hi && dg.iter().any(|&x| x != 0) {
                        let img = act_only.act(g.degree + 1, jb, a).mul_vec(&dg);
                        for (t, &v) in img.iter().enumerate() {
                            d.add_at(t, col, v);
                        }
                    }
                    if jb < 0 {
                        for t in 0..r.dim(jb + 1) {
                            let v = dr.get(t, a);
                            if v != 0 {
                                d.add_at(offset(i + 1, k) + t, col, f.mul(v, s));
                            }
                        }
                    }
                }
            }
            b.set_diff(i, d);
        }
        let module = Arc::new(b.build_unchecked());
        Semifree { generators, module, lo, offsets }
    }

    /// Free module with generators in the given degrees.
    pub fn free(r: Arc<DgAlgebra>, degrees: &[i32]) -> Semifree {
        Semifree::new(r, degrees.iter().map(|&d| Generator { degree: d, diff: Vec::new() }).collect())
    }

    /// Index in degree `i` of the basis element `g_k * e_b`.
    pub fn index(&self, i: i32, k: usize, b: usize) -> usize {
        self.offsets[(i - self.lo) as usize][k] + b
    }

    /// Position of `g_k` itself (the unit multiple) in degree `|g_k|`.
    pub fn generator_vector(&self, k: usize) -> Vec<u32> {
        let r = self.module.algebra();
        let d = self.generators[k].degree;
        let mut v = vec![0; self.module.dim(d)];
        let off = self.index(d, k, 0);
        for (b, &u) in r.unit().iter().enumerate() {
            v[off + b] = u;
        }
        v
    }

    /// The map sending `g_k` to `images[k]` (cycles compatible with `d`), extended R-linearly.
    pub fn morphism_to(&self, target: Arc<DgModule>, images: &[Vec<u32>]) -> DgMorphism {
        let r = self.module.algebra().clone();
        let f = r.field();
        let gens = self.generators.clone();
        let src = self.module.clone();
        let t = target.clone();
        let me = self.clone();
        DgMorphism::new(src.clone(), target, move |i| {
            let mut x = Mat::zeros(f, t.dim(i), src.dim(i));
            for (k, g) in gens.iter().enumerate() {
                let jb = i - g.degree;
                if t.dim(g.degree) == 0 {
                    continue;
                }
                for e in 0..r.dim(jb) {
                    let img = t.act(g.degree, jb, e).mul_vec(&images[k]);
                    let col = me.index(i, k, e);
                    for (row, &v) in img.iter().enumerate() {
                        x.set(row, col, v);
                    }
                }
            }
            x
        })
    }
}
