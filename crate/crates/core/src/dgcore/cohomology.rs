use serde::Serialize;

use crate::exactla::{quotient_basis, Field, Mat, Subspace};

/// Cohomology in one degree: `Z/B` with chosen representatives.
///
/// `reps` has the representatives as columns; `proj` sends a cocycle to the
/// coordinates of its class (it is only meaningful on cocycles).
#[derive(Clone, Debug)]
pub struct HDegree {
    pub cocycles: Subspace,
    pub boundaries: Subspace,
    pub reps: Mat,
    pub proj: Mat,
}

impl HDegree {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn rep(&self, k: usize) -> Vec<u32> {
        self.reps.col(k)
    }

    /// Class of a cocycle `z`.
    pub fn class(&self, z: &[u32]) -> Vec<u32> {
        self.proj.mul_vec(z)
    }

    pub fn zero(field: Field, n: usize) -> HDegree {
        HDegree {
            cocycles: Subspace::zero(field, n),
            boundaries: Subspace::zero(field, n),
            reps: Mat::zeros(field, n, 0),
            proj: Mat::zeros(field, 0, n),
        }
    }
}

/// Cohomology of a bounded complex given by `dims[k]` and `diffs[k]: C^k -> C^{k+1}`
/// (the last differential may have zero rows).
pub fn complex_cohomology(field: Field, dims: &[usize], diffs: &[Mat]) -> Vec<HDegree> {
    let n = dims.len();
    (0..n)
        .map(|k| {
            let z = diffs[k].kernel();
            let b = if k == 0 { Subspace::zero(field, dims[0]) } else { diffs[k - 1].image() };
            homology_of(&z, &b)
        })
        .collect()
}

/// `Z/B` for subspaces `B ⊆ Z` of the same ambient space.
pub fn homology_of(z: &Subspace, b: &Subspace) -> HDegree {
    let field = z.field();
    // coordinates of B inside Z via the pivots of Z
    let zc = z.coord_map();
    let bz: Vec<Vec<u32>> = b.vectors().iter().map(|v| zc.mul_vec(v)).collect();
    let bsub = Subspace::from_vectors(field, z.dim(), &bz);
    let (pz, sz) = quotient_basis(&bsub);
    let reps = z.inclusion().mul(&sz);
    let proj = pz.mul(&zc);
    HDegree { cocycles: z.clone(), boundaries: b.clone(), reps, proj }
}

/// Serializable summary: degree and dimension pairs with `sup`/`inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub dims: Vec<(i32, usize)>,
    pub sup: Option<i32>,
    pub inf: Option<i32>,
}
