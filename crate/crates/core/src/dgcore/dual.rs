use std::sync::Arc;

use crate::exactla::Mat;

use super::module::{DgModule, DgModuleBuilder};
use super::morphism::DgMorphism;

/// `D(M)^i = Hom_k(M^{-i}, k)` over `R^op`.
///
/// `d_D = -(-1)^i d_M^T` in degree `i`, and `e_b` of degree `j` acts on
/// degree `i` by `(-1)^{ij+j} act_M^T`.
pub fn dualize(m: &DgModule) -> DgModule {
    let r = m.algebra();
    let op = r.opposite();
    let f = m.field();
    if m.is_zero() {
        return DgModule::zero(op);
    }
    let dims: Vec<usize> = m.degrees().rev().map(|i| m.dim(i)).collect();
    let mut b = DgModuleBuilder::new(op.clone(), -m.hi(), dims);
    for i in -m.hi()..=-m.lo() {
        let s = f.neg(f.sign(i));
        b.set_diff(i, m.d(-i - 1).transpose().scale(s));
        for j in r.degrees() {
            let sg = f.sign(i * j + j);
            for e in 0..r.dim(j) {
                b.set_act(i, j, e, m.act(-i - j, j, e).transpose().scale(sg));
            }
        }
    }
    b.build_unchecked()
}

/// The canonical isomorphism `M -> D(D(M))`, `(-1)^i` in degree `i`.
pub fn double_dual_iso(m: &Arc<DgModule>) -> DgMorphism {
    let dd = Arc::new(dualize(&dualize(m)).with_algebra(m.algebra().clone()));
    let f = m.field();
    let mm = m.clone();
    DgMorphism::new(m.clone(), dd, move |i| Mat::scalar(f, mm.dim(i), f.sign(i)))
}
