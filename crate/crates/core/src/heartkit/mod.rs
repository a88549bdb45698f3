//! Ordinary finite-dimensional algebras and their modules: radical, simples,
//! projective covers, injective envelopes and the passage `R^0 -> H^0`.

mod algebra;
mod chop;
mod cover;
mod module;
mod poly;
mod zeroth;

pub use algebra::OrdinaryAlgebra;
pub use cover::{injective_envelope, is_injective, is_projective, projective_cover, split_epi_check, split_mono_check, CoverData};
pub use module::{intertwiners, kron, tensor_map, tensor_over, tensor_with_left, FdModule, TensorFd};
pub use poly::{minimal_polynomial, roots, Poly};
pub use zeroth::Zeroth;
