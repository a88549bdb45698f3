use std::sync::Arc;

use crate::error::Result;
use crate::exactla::{Mat, Subspace};

use super::algebra::OrdinaryAlgebra;
use super::module::FdModule;

/// A projective cover `P -> N` or an injective envelope `N -> E`.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub module: FdModule,
    /// `N.dim x P.dim` for a cover, `E.dim x N.dim` for an envelope.
    pub map: Mat,
    /// Kernel of the structure map (zero for an envelope).
    pub kernel: Subspace,
    /// Which indecomposable summand each block is, in order.
    pub summands: Vec<usize>,
}

/// `⊕ e_i A` with the top multiplicities of `n`.
pub fn projective_cover(n: &FdModule) -> Result<CoverData> {
    let a = n.algebra().clone();
    let f = a.field();
    let idem = a.idempotents()?;
    let (_, tproj) = n.top()?;
    let mut blocks = Vec::new();
    let mut cols: Vec<Mat> = Vec::new();
    let mut summands = Vec::new();
    for (i, e) in idem.iter().enumerate() {
        let rho = n.action_elem(e);
        let mut chosen = Subspace::zero(f, tproj.rows());
        let (pi, inc) = a.indecomposable_projective(i)?;
        for v in rho.col_vecs() {
            let t = tproj.mul_vec(&v);
            if chosen.contains(&t) {
                continue;
            }
            chosen = chosen.sum(&Subspace::from_vectors(f, t.len(), &[t]));
            // x in e_i A goes to v x
            let img: Vec<Vec<u32>> = inc.col_vecs().iter().map(|x| n.action_elem(x).mul_vec(&v)).collect();
            cols.push(Mat::from_cols(f, n.dim(), &img));
            blocks.push(pi.clone());
            summands.push(i);
        }
    }
    let module = if blocks.is_empty() {
        FdModule::zero(a)
    } else {
        FdModule::direct_sum(&blocks.iter().collect::<Vec<_>>())
    };
    let mut map = Mat::zeros(f, n.dim(), module.dim());
    let mut off = 0;
    for c in &cols {
        map.set_block(0, off, c);
        off += c.cols();
    }
    let kernel = map.kernel();
    Ok(CoverData { module, map, kernel, summands })
}

/// `D(P(D n))` over the original algebra.
pub fn injective_envelope(n: &FdModule) -> Result<CoverData> {
    let a: Arc<OrdinaryAlgebra> = n.algebra().clone();
    let dn = n.dual();
    let c = projective_cover(&dn)?;
    let module = c.module.dual().with_algebra(a);
    let map = c.map.transpose();
    let kernel = map.kernel();
    Ok(CoverData { module, map, kernel, summands: c.summands })
}

pub fn is_projective(n: &FdModule) -> Result<bool> {
    Ok(projective_cover(n)?.module.dim() == n.dim())
}

pub fn is_injective(n: &FdModule) -> Result<bool> {
    Ok(injective_envelope(n)?.module.dim() == n.dim())
}

/// Does `g: n -> m` admit an equivariant retraction?
pub fn split_mono_check(n: &FdModule, m: &FdModule, g: &Mat) -> bool {
    let hs = m.hom_space(n);
    let f = n.field();
    let cols: Vec<Vec<u32>> = hs.iter().map(|h| h.mul(g).data().to_vec()).collect();
    let sys = Mat::from_cols(f, n.dim() * n.dim(), &cols);
    sys.solve(Mat::identity(f, n.dim()).data()).is_some()
}

/// Does `g: m -> n` admit an equivariant section?
pub fn split_epi_check(m: &FdModule, n: &FdModule, g: &Mat) -> bool {
    let hs = n.hom_space(m);
    let f = n.field();
    let cols: Vec<Vec<u32>> = hs.iter().map(|h| g.mul(h).data().to_vec()).collect();
    let sys = Mat::from_cols(f, n.dim() * n.dim(), &cols);
    sys.solve(Mat::identity(f, n.dim()).data()).is_some()
}
