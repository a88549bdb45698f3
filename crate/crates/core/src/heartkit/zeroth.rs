use std::sync::Arc;

use crate::error::Result;
use crate::exactla::{Mat, Subspace};

use crate::dgcore::DgAlgebra;

use super::algebra::OrdinaryAlgebra;
use super::cover::{injective_envelope, CoverData};
use super::module::FdModule;

/// `R^0`, `H^0 = R^0 / B^0` and the maps between them.
#[derive(Clone, Debug)]
pub struct Zeroth {
    pub r0: Arc<OrdinaryAlgebra>,
    pub h0: Arc<OrdinaryAlgebra>,
    /// `R^0 -> H^0`
    pub proj: Mat,
    /// a linear section `H^0 -> R^0`
    pub sect: Mat,
    /// `B^0 = ∂(R^{-1})`
    pub boundaries: Subspace,
}

impl Zeroth {
    pub fn compute(r: &DgAlgebra) -> Result<Zeroth> {
        let f = r.field();
        let d = r.dim(0);
        let mul = (0..d * d).map(|k| r.product(0, k / d, 0, k % d)).collect();
        let r0 = OrdinaryAlgebra::new_unchecked(f, d, mul, r.unit().to_vec(), r.seed());
        let boundaries = if r.low() < 0 { r.diff(-1).image() } else { Subspace::zero(f, d) };
        let (h0, proj, sect) = r0.quotient(&boundaries);
        let r0 = Arc::new(r0);
        // force the structure so a bad prime surfaces here
        r0.structure()?;
        let h0 = Arc::new(h0);
        h0.structure()?;
        Ok(Zeroth { r0, h0, proj, sect, boundaries })
    }

    /// An `H^0`-module viewed over `R^0`.
    pub fn inflate(&self, n: &FdModule) -> FdModule {
        n.restrict(self.r0.clone(), &self.proj)
    }

    /// `π^! K = {k : k B^0 = 0}` over `H^0`, with its inclusion into `K`.
    pub fn pi_shriek(&self, k: &FdModule) -> (FdModule, Mat) {
        let f = k.field();
        let mut sub = Subspace::full(f, k.dim());
        for b in self.boundaries.vectors() {
            sub = sub.intersect(&k.action_elem(&b).kernel());
        }
        let inc = sub.inclusion();
        let c = sub.coord_map();
        let act = (0..self.h0.dim()).map(|h| c.mul(&k.action_elem(&self.sect.col(h))).mul(&inc)).collect();
        (FdModule::new_unchecked(self.h0.clone(), sub.dim(), act), inc)
    }

    /// Injective envelope over `R^0` of an `H^0`-module.
    pub fn r0_hull(&self, j: &FdModule) -> Result<CoverData> {
        injective_envelope(&self.inflate(j))
    }
}
