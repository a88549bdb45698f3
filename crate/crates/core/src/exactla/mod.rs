//! Exact dense linear algebra over a prime field.

mod field;
mod mat;
mod subspace;

pub use field::{Field, DEFAULT_PRIME};
pub use mat::Mat;
pub use subspace::{quotient_basis, Subspace};

/// Free functions mirroring the methods, for callers that prefer them.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    m.rref()
}

pub fn kernel(m: &Mat) -> Subspace {
    m.kernel()
}

pub fn solve(m: &Mat, b: &[u32]) -> Option<Vec<u32>> {
    m.solve(b)
}

#[cfg(test)]
mod tests;
