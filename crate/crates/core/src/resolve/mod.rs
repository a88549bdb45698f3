//! Resolutions by shifted projectives and injectives, membership in the
//! classes `P[n]`, `F[n]`, `I[n]`, and the dimensions they measure.

mod dims;
mod ifij;
mod membership;
mod report;
mod sppj;

pub use dims::{
    fd, gldim, gorenstein_check, injdim, injdim_with, pd, pd_with, semisimple_zero_check, GldimReport,
    GorensteinReport, SemisimpleZeroReport,
};
pub use ifij::{ifij_step, IfijResolution, IfijStep};
pub use membership::{membership_f, membership_i, membership_p, tor1_dims, ActionMapCheck, MembershipCertificate};
pub use report::{Dim, DimKind, DimensionReport, StageSummary};
pub use sppj::{sppj_step, SppjResolution, SppjStep, StepMode, StopRule};

#[cfg(test)]
mod tests;
