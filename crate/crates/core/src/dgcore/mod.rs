//! DG-algebras, right DG-modules, strict morphisms and the triangulated toolkit.

mod algebra;
mod cohomology;
mod constructions;
mod dual;
mod hom;
mod module;
mod morphism;
mod psi;
mod validate;

pub use algebra::{DgAlgebra, DgAlgebraBuilder, DEFAULT_SEED};
pub use cohomology::{complex_cohomology, homology_of, CohomologySummary, HDegree};
pub use constructions::{
    cocone, cone, direct_sum, shift, shift_morphism, summand_inclusion, truncate, Cocone, Cone, Generator, Semifree,
    Side,
};
pub use dual::{double_dual_iso, dualize};
pub use hom::{hom_complex, hom_r0_complex, tensor_complex, HomComplex, KComplex};
pub use module::{same_algebra, DgModule, DgModuleBuilder, ModuleCohomology};
pub use morphism::DgMorphism;
pub use psi::{degree_module, heart_embed, psi, psi_with_basis};
pub use validate::{ValidationReport, Violation};

#[cfg(test)]
mod tests;
