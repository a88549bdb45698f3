//! Splitting the regular module of a semisimple algebra into simples.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::Mat;

use super::algebra::OrdinaryAlgebra;
use super::module::FdModule;
use super::poly::{minimal_polynomial, roots};

const RETRIES: usize = 64;

/// One representative per isomorphism class of simple modules.
pub(crate) fn simples_of_semisimple(a: &Arc<OrdinaryAlgebra>, rng: &mut impl Rng) -> Result<Vec<FdModule>> {
    if a.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut queue = vec![a.regular_module()];
    let mut found: Vec<FdModule> = Vec::new();
    while let Some(v) = queue.pop() {
        if v.is_zero() {
            continue;
        }
        let end = v.hom_space(&v);
        if end.len() == 1 {
            if !found.iter().any(|s| s.dim() == v.dim() && s.hom_dim(&v) > 0) {
                found.push(v);
            }
            continue;
        }
        let (sub, quot) = split(&v, &end, rng)?;
        queue.push(sub);
        queue.push(quot);
    }
    Ok(found)
}

/// A proper nonzero submodule `ker(φ - λ)` for a random endomorphism `φ`, and the quotient by it.
fn split(v: &FdModule, end: &[Mat], rng: &mut impl Rng) -> Result<(FdModule, FdModule)> {
    let f = v.field();
    for _ in 0..RETRIES {
        let mut phi = Mat::zeros(f, v.dim(), v.dim());
        for e in end {
            phi.add_scaled(e, rng.gen_range(0..f.p()));
        }
        let mp = minimal_polynomial(&phi);
        if mp.len() <= 2 {
            continue;
        }
        let Some(&lambda) = roots(f, &mp, rng).first() else { continue };
        let n = phi.sub(&Mat::scalar(f, v.dim(), lambda));
        let k = n.kernel();
        if k.is_zero() || k.is_full() {
            continue;
        }
        let (sub, _) = v.submodule(&k);
        let (quot, _) = v.quotient(&k);
        return Ok((sub, quot));
    }
    Err(Error::UnsplitFactor(format!(
        "no eigenvalue in GF({}) splits a module of dimension {} after {RETRIES} tries",
        f.p(),
        v.dim()
    )))
}
