use std::sync::Arc;

use serde::Serialize;

use crate::builtins;
use crate::dgcore::{DgAlgebra, DgModule};
use crate::error::Result;

use super::ifij::IfijResolution;
use super::report::{Dim, DimKind, DimensionReport, StageSummary};
use super::sppj::{SppjResolution, StepMode, StopRule};

fn summary(m: &DgModule, index: usize, anchor: Option<i32>, member: bool) -> StageSummary {
    StageSummary {
        index,
        anchor,
        total_dim: m.total_dim(),
        cohomology: m.cohomology().summary().dims,
        member,
        generators: None,
        free_minimal: None,
    }
}

fn zero_report(kind: DimKind) -> DimensionReport {
    DimensionReport {
        kind,
        status: Dim::ZeroObject,
        stages: Vec::new(),
        terminal_stage: None,
        anchor: None,
        terminal_anchor: None,
        lower_bound: None,
        transcript: vec!["acyclic input: zero object".into()],
    }
}

fn sppj_dimension(m: &Arc<DgModule>, cap: usize, mode: StepMode, kind: DimKind) -> Result<DimensionReport> {
    if m.is_acyclic() {
        return Ok(zero_report(kind));
    }
    let stop = if kind == DimKind::Flat { StopRule::Flat } else { StopRule::Projective };
    // stages 0..cap-1 get tested, so at most cap-1 steps
    let res = SppjResolution::build(m, mode, cap.saturating_sub(1), stop)?;
    let sup0 = m.sup();
    let mut stages = Vec::new();
    let mut transcript = Vec::new();
    for (i, mi) in res.modules.iter().enumerate() {
        let member = res.certificates.get(i).is_some_and(|c| c.member);
        let mut s = summary(mi, i, mi.sup(), member);
        if let Some(st) = res.steps.get(i) {
            s.generators = Some(st.generators);
            s.free_minimal = Some(st.free_minimal);
            transcript.push(format!(
                "stage {i}: sup {} with {} generator(s), next total dim {}",
                st.sup,
                st.generators,
                st.next.total_dim()
            ));
        } else {
            transcript.push(format!("stage {i}: sup {}, member {member}", show(mi.sup())));
        }
        stages.push(s);
    }
    let last = res.modules.len() - 1;
    let sup_e = res.modules[last].sup();
    let (status, terminal_stage, lower_bound) = if res.terminal {
        (Dim::Exact(last as i32 + sup0.unwrap() - sup_e.unwrap()), Some(last), None)
    } else {
        // the next stage would be `cap`, whose sup is at most the sup of the next module
        let next = super::sppj::sppj_step(&res.modules[last], mode)?;
        let bound = cap as i64 + sup0.unwrap() as i64 - next.next.sup().unwrap_or(i32::MIN / 2) as i64;
        (Dim::AtLeast(cap), None, Some(bound.max(cap as i64)))
    };
    Ok(DimensionReport {
        kind,
        status,
        stages,
        terminal_stage,
        anchor: sup0,
        terminal_anchor: if res.terminal { sup_e } else { None },
        lower_bound,
        transcript,
    })
}

/// Projective dimension relative to `sup M`.
pub fn pd(m: &Arc<DgModule>, cap: usize) -> Result<DimensionReport> {
    pd_with(m, cap, StepMode::Minimal)
}

pub fn pd_with(m: &Arc<DgModule>, cap: usize, mode: StepMode) -> Result<DimensionReport> {
    sppj_dimension(m, cap, mode, DimKind::Projective)
}

/// Flat dimension relative to `sup M`.
pub fn fd(m: &Arc<DgModule>, cap: usize) -> Result<DimensionReport> {
    sppj_dimension(m, cap, StepMode::Minimal, DimKind::Flat)
}

/// Injective dimension relative to `inf M`.
pub fn injdim(m: &Arc<DgModule>, cap: usize) -> Result<DimensionReport> {
    injdim_with(m, cap, StepMode::Minimal)
}

pub fn injdim_with(m: &Arc<DgModule>, cap: usize, mode: StepMode) -> Result<DimensionReport> {
    let kind = DimKind::Injective;
    if m.is_acyclic() {
        return Ok(zero_report(kind));
    }
    let res = IfijResolution::build(m, mode, cap.saturating_sub(1), true)?;
    let inf0 = m.inf();
    let mut stages = Vec::new();
    let mut transcript = Vec::new();
    for (i, mi) in res.modules.iter().enumerate() {
        let member = res.certificates.get(i).is_some_and(|c| c.member);
        stages.push(summary(mi, i, mi.inf(), member));
        match res.steps.get(i) {
            Some(st) => transcript.push(format!(
                "stage -{i}: inf {}, injective term dim {}, next total dim {}",
                st.inf,
                st.injective.total_dim(),
                st.next.total_dim()
            )),
            None => transcript.push(format!("stage -{i}: inf {}, member {member}", show(mi.inf()))),
        }
    }
    let last = res.modules.len() - 1;
    let inf_e = res.modules[last].inf();
    let (status, terminal_stage) = if res.terminal {
        (Dim::Exact(last as i32 + inf_e.unwrap() - inf0.unwrap()), Some(last))
    } else {
        (Dim::AtLeast(cap), None)
    };
    Ok(DimensionReport {
        kind,
        status,
        stages,
        terminal_stage,
        anchor: inf0,
        terminal_anchor: if res.terminal { inf_e } else { None },
        lower_bound: None,
        transcript,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GldimReport {
    pub status: Dim,
    /// projective dimensions of the simple `H^0`-modules
    pub projective: Vec<DimensionReport>,
    /// injective dimensions of the same simples
    pub injective: Vec<DimensionReport>,
    pub injective_status: Dim,
    pub sides_agree: bool,
}

/// Global dimension as the largest projective dimension of a simple heart module,
/// cross-checked against injective dimensions of the same simples.
pub fn gldim(r: &Arc<DgAlgebra>, cap: usize) -> Result<GldimReport> {
    let n = r.h0()?.num_simples()?;
    let mut projective = Vec::new();
    let mut injective = Vec::new();
    for i in 0..n {
        let s = Arc::new(builtins::heart_simple(r, i)?);
        projective.push(pd(&s, cap)?);
        injective.push(injdim(&s, cap)?);
    }
    let fold = |v: &[DimensionReport]| v.iter().fold(Dim::ZeroObject, |a, d| a.max(d.status));
    let status = fold(&projective);
    let injective_status = fold(&injective);
    Ok(GldimReport { status, projective, injective, injective_status, sides_agree: status == injective_status })
}

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinReport {
    /// `injdim_R R`
    pub right: DimensionReport,
    /// `injdim_{R^op} R^op`
    pub left: DimensionReport,
    pub gorenstein: bool,
    pub agree: bool,
}

pub fn gorenstein_check(r: &Arc<DgAlgebra>, cap: usize) -> Result<GorensteinReport> {
    let right = injdim(&Arc::new(DgModule::regular(r.clone())), cap)?;
    let left = injdim(&Arc::new(DgModule::regular(r.opposite())), cap)?;
    let gorenstein = right.status.is_exact() && left.status.is_exact();
    let agree = gorenstein && right.status == left.status;
    Ok(GorensteinReport { right, left, gorenstein, agree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleZeroReport {
    pub negative_cohomology: Vec<(i32, usize)>,
    pub h0_radical_dim: usize,
    /// `H^{<0}(R) = 0` and `H^0(R)` semisimple
    pub holds: bool,
}

/// The cohomological test for global dimension zero.
pub fn semisimple_zero_check(r: &Arc<DgAlgebra>) -> Result<SemisimpleZeroReport> {
    let negative_cohomology: Vec<(i32, usize)> =
        (r.low()..0).filter(|&i| r.h_dim(i) > 0).map(|i| (i, r.h_dim(i))).collect();
    let h0_radical_dim = r.h0()?.radical()?.dim();
    let holds = negative_cohomology.is_empty() && h0_radical_dim == 0;
    Ok(SemisimpleZeroReport { negative_cohomology, h0_radical_dim, holds })
}

fn show(x: Option<i32>) -> String {
    x.map_or("none".into(), |v| v.to_string())
}
