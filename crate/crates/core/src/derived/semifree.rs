use std::sync::Arc;

use serde::Serialize;

use crate::dgcore::{cone, DgModule, DgMorphism, Generator, KComplex, Semifree};
use crate::exactla::Mat;

/// Semifree `F -> M`, a quasi-isomorphism in degrees above `floor`; later
/// generators only ever land in degrees `<= floor`.
#[derive(Clone, Debug)]
pub struct SemifreeResolution {
    pub semifree: Semifree,
    /// `images[k]` is the augmentation value on `g_k`, in `M^{|g_k|}`
    pub images: Vec<Vec<u32>>,
    pub augmentation: DgMorphism,
    pub floor: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemifreeSummary {
    pub floor: i32,
    /// generator count per degree, top down
    pub generators: Vec<(i32, usize)>,
}

impl SemifreeResolution {
    pub fn generators(&self) -> &[Generator] {
        &self.semifree.generators
    }

    pub fn summary(&self) -> SemifreeSummary {
        let mut out: Vec<(i32, usize)> = Vec::new();
        for g in self.generators() {
            match out.last_mut() {
                Some((d, c)) if *d == g.degree => *c += 1,
                _ => out.push((g.degree, 1)),
            }
        }
        SemifreeSummary { floor: self.floor, generators: out }
    }

    /// `d(g_k) = Σ_l g_l r_l` as `(l, |r_l|, r_l)`.
    fn diff_terms(&self, k: usize) -> Vec<(usize, i32, Vec<u32>)> {
        let r = self.semifree.module.algebra();
        let gens = self.generators();
        let dk = gens[k].degree + 1;
        let mut dg = gens[k].diff.clone();
        dg.resize(self.semifree.module.dim(dk), 0);
        let mut out = Vec::new();
        for (l, gl) in gens.iter().enumerate().take(k) {
            let j = dk - gl.degree;
            if r.dim(j) == 0 {
                continue;
            }
            let start = self.semifree.index(dk, l, 0);
            let coef = dg[start..start + r.dim(j)].to_vec();
            if coef.iter().any(|&c| c != 0) {
                out.push((l, j, coef));
            }
        }
        out
    }

    /// `Hom_R(F, N)` on degrees `lo..=hi`: `φ` is determined by its values on generators.
    pub fn hom_into(&self, n: &DgModule, lo: i32, hi: i32) -> KComplex {
        let f = n.field();
        let gens = self.generators();
        let terms: Vec<_> = (0..gens.len()).map(|k| self.diff_terms(k)).collect();
        let offs = |deg: i32| -> Vec<usize> {
            let mut acc = 0;
            let mut v: Vec<usize> = gens
                .iter()
                .map(|g| {
                    let o = acc;
                    acc += n.dim(g.degree + deg);
                    o
                })
                .collect();
            v.push(acc);
            v
        };
        let dims: Vec<usize> = (lo..=hi).map(|deg| *offs(deg).last().unwrap()).collect();
        let diffs = (lo..=hi)
            .map(|deg| {
                let (src, tgt) = (offs(deg), offs(deg + 1));
                let mut d = Mat::zeros(f, *tgt.last().unwrap(), *src.last().unwrap());
                let s = f.neg(f.sign(deg));
                for (k, g) in gens.iter().enumerate() {
                    // d_N φ(g_k)
                    let nd = n.d(g.degree + deg);
                    d.set_block(tgt[k], src[k], &nd);
                    // -(-1)^deg Σ_l φ(g_l) r_l
                    for (l, j, coef) in &terms[k] {
                        let a = n.act_elem(gens[*l].degree + deg, *j, coef).scale(s);
                        let mut blk = d.block(tgt[k], src[*l], a.rows(), a.cols());
                        blk = blk.add(&a);
                        d.set_block(tgt[k], src[*l], &blk);
                    }
                }
                d
            })
            .collect();
        KComplex::new(f, lo, dims, diffs)
    }

    /// `F ⊗_R L` on degrees `lo..=hi` for `L` over `R^op`: degree `n` is `⊕ g_k ⊗ L^{n-|g_k|}`.
    pub fn tensor_with(&self, l: &DgModule, lo: i32, hi: i32) -> KComplex {
        let f = l.field();
        let gens = self.generators();
        let terms: Vec<_> = (0..gens.len()).map(|k| self.diff_terms(k)).collect();
        let offs = |deg: i32| -> Vec<usize> {
            let mut acc = 0;
            let mut v: Vec<usize> = gens
                .iter()
                .map(|g| {
                    let o = acc;
                    acc += l.dim(deg - g.degree);
                    o
                })
                .collect();
            v.push(acc);
            v
        };
        let dims: Vec<usize> = (lo..=hi).map(|deg| *offs(deg).last().unwrap()).collect();
        let diffs = (lo..=hi)
            .map(|deg| {
                let (src, tgt) = (offs(deg), offs(deg + 1));
                let mut d = Mat::zeros(f, *tgt.last().unwrap(), *src.last().unwrap());
                for (k, g) in gens.iter().enumerate() {
                    let ld = deg - g.degree;
                    // (-1)^{|g|} g ⊗ dl
                    d.set_block(tgt[k], src[k], &l.d(ld).scale(f.sign(g.degree)));
                    // g_l r ⊗ x = g_l ⊗ (-1)^{|x||r|} x r
                    for (t, j, coef) in &terms[k] {
                        let a = l.act_elem(ld, *j, coef).scale(f.sign(ld * j));
                        let blk = d.block(tgt[*t], src[k], a.rows(), a.cols()).add(&a);
                        d.set_block(tgt[*t], src[k], &blk);
                    }
                }
                d
            })
            .collect();
        KComplex::new(f, lo, dims, diffs)
    }
}

/// Adjoin generators top-down, each round killing the highest surviving
/// cohomology of the cone, until the cone is acyclic above `floor`.
pub fn semifree(m: &Arc<DgModule>, floor: i32) -> SemifreeResolution {
    let r = m.algebra().clone();
    let f = r.field();
    let mut gens: Vec<Generator> = Vec::new();
    let mut images: Vec<Vec<u32>> = Vec::new();
    loop {
        let sf = Semifree::new(r.clone(), gens.clone());
        let aug = sf.morphism_to(m.clone(), &images);
        let c = cone(&aug);
        let top = c.module.sup();
        let t = match top {
            Some(t) if t > floor => t,
            _ => return SemifreeResolution { semifree: sf, images, augmentation: aug, floor },
        };
        let h = c.module.cohomology().h(t).expect("top cohomology of the cone");
        let q = c.module.h_module(t).expect("H^0 structure");
        let md = m.dim(t);
        for cls in q.generating_set().expect("radical of H^0") {
            let v = h.reps.mul_vec(&cls);
            let x: Vec<u32> = v[md..].iter().map(|&a| f.neg(a)).collect();
            gens.push(Generator { degree: t, diff: x });
            images.push(v[..md].to_vec());
        }
    }
}
