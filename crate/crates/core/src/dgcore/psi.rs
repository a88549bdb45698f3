use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::heartkit::{intertwiners, FdModule};

use super::algebra::DgAlgebra;
use super::module::{DgModule, DgModuleBuilder};

/// `ψ_R(K) = Hom_{R^0}(R, K)`: degree `i` is `Hom_{R^0}(R^{-i}, K)`,
/// `(φ r)(s) = φ(r s)` and `(dφ)(s) = -(-1)^i φ(∂s)`.
pub fn psi(r: &Arc<DgAlgebra>, k: &FdModule) -> Result<DgModule> {
    Ok(psi_with_basis(r, k)?.0)
}

/// `ψ_R(K)` together with the subspaces of `dim K x dim R^{-i}` matrices
/// (row-major) whose pivot coordinates are the module coordinates in degree `i`.
pub fn psi_with_basis(r: &Arc<DgAlgebra>, k: &FdModule) -> Result<(DgModule, Vec<Subspace>)> {
    let f = r.field();
    let r0 = r.r0()?;
    if **k.algebra() != *r0 {
        return Err(Error::Invalid("psi needs a module over the degree-0 algebra".into()));
    }
    let spaces = psi_spaces(r, k);
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let top = -r.low();
    let mut b = DgModuleBuilder::new(r.clone(), 0, dims);
    let kd = k.dim();
    for i in 0..=top {
        let src = &spaces[i as usize];
        let basis = src.vectors();
        let as_mat = |v: &Vec<u32>| Mat::from_data(f, kd, r.dim(-i), v.clone());
        // differential into degree i+1
        if i < top {
            let tgt = &spaces[(i + 1) as usize];
            let s = f.neg(f.sign(i));
            let cols: Vec<Vec<u32>> = basis
                .iter()
                .map(|v| tgt.coords(as_mat(v).mul(&r.diff(-i - 1)).scale(s).data()).expect("ψ differential"))
                .collect();
            b.set_diff(i, Mat::from_cols(f, tgt.dim(), &cols));
        }
        for j in r.degrees() {
            let t = i + j;
            if t < 0 {
                continue;
            }
            let tgt = &spaces[t as usize];
            for e in 0..r.dim(j) {
                let lm = r.left_mult(j, e, -t);
                let cols: Vec<Vec<u32>> =
                    basis.iter().map(|v| tgt.coords(as_mat(v).mul(&lm).data()).expect("ψ action")).collect();
                b.set_act(i, j, e, Mat::from_cols(f, tgt.dim(), &cols));
            }
        }
    }
    Ok((b.build_unchecked(), spaces))
}

/// `Hom_{R^0}(R^{-i}, K)` for `i = 0..=-low`, as flattened `dim K x dim R^{-i}` matrices.
fn psi_spaces(r: &DgAlgebra, k: &FdModule) -> Vec<Subspace> {
    let f = r.field();
    let gens = k.algebra().generators().to_vec();
    (0..=-r.low())
        .map(|i| {
            let src: Vec<Mat> = gens.iter().map(|&g| r.right_mult(-i, 0, g)).collect();
            let tgt: Vec<Mat> = gens.iter().map(|&g| k.action(g).clone()).collect();
            let vs: Vec<Vec<u32>> =
                intertwiners(f, &src, &tgt, r.dim(-i), k.dim()).iter().map(|m| m.data().to_vec()).collect();
            Subspace::from_vectors(f, r.dim(-i) * k.dim(), &vs)
        })
        .collect()
}

/// An `H^0`-module as a DG-module in degree 0, with `R` acting through `R -> H^0`.
pub fn heart_embed(r: &Arc<DgAlgebra>, n: &FdModule) -> Result<DgModule> {
    let z = r.zeroth()?;
    if **n.algebra() != *z.h0 {
        return Err(Error::Invalid("heart_embed needs a module over H^0".into()));
    }
    let k = z.inflate(n);
    let mut b = DgModuleBuilder::new(r.clone(), 0, vec![n.dim()]);
    for e in 0..r.dim(0) {
        b.set_act(0, 0, e, k.action(e).clone());
    }
    Ok(b.build_unchecked())
}

/// Degree-`i` component of a DG-module as a module over `R^0`.
pub fn degree_module(m: &DgModule, i: i32) -> Result<FdModule> {
    let r0 = m.algebra().r0()?;
    let act = (0..r0.dim()).map(|b| m.act(i, 0, b).into_owned()).collect();
    FdModule::new(r0, m.dim(i), act)
}
