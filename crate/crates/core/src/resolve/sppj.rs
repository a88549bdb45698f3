use std::sync::Arc;

use serde::Serialize;

use crate::dgcore::{cocone, DgModule, DgMorphism, Semifree};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::heartkit::projective_cover;

use super::membership::{membership_f, membership_p, MembershipCertificate};

/// How many generators a resolution step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// lift a basis of the top of the extreme cohomology
    Minimal,
    /// one generator per basis vector of the extreme cohomology
    NonMinimal,
    /// minimal, plus this many generators mapped to zero
    Padded(usize),
}

/// One step `P -> M -> M' -> P[1]` with `P = R^n[-sup M]`.
#[derive(Clone, Debug)]
pub struct SppjStep {
    pub sup: i32,
    pub free: Arc<DgModule>,
    /// `P -> M`, surjective on `H^{sup}`
    pub f: DgMorphism,
    pub next: Arc<DgModule>,
    /// `M' -> P`
    pub g: DgMorphism,
    pub generators: usize,
    /// `H^0`-free of the rank of a projective cover
    pub free_minimal: bool,
}

pub fn sppj_step(m: &Arc<DgModule>, mode: StepMode) -> Result<SppjStep> {
    let s = m.sup().ok_or(Error::ZeroModule("sppj"))?;
    let r = m.algebra().clone();
    let h = m.cohomology().h(s).expect("top cohomology");
    let q = m.h_module(s)?;
    let mut images: Vec<Vec<u32>> = match mode {
        StepMode::NonMinimal => (0..q.dim()).map(|k| h.rep(k)).collect(),
        _ => q.generating_set()?.iter().map(|c| h.reps.mul_vec(c)).collect(),
    };
    if let StepMode::Padded(extra) = mode {
        images.extend((0..extra).map(|_| vec![0; m.dim(s)]));
    }
    let n = images.len();
    let sf = Semifree::free(r.clone(), &vec![s; n]);
    let f = sf.morphism_to(m.clone(), &images);
    let cc = cocone(&f);
    let h0 = r.h0()?;
    let cover_dim = projective_cover(&q)?.module.dim();
    Ok(SppjStep {
        sup: s,
        free: sf.module.clone(),
        f,
        next: cc.module,
        g: cc.projection,
        generators: n,
        free_minimal: mode == StepMode::Minimal && n * h0.dim() == cover_dim,
    })
}

/// Which membership decides termination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    Projective,
    Flat,
    /// run exactly `max_steps` steps
    Never,
}

/// `M_0 = M`, steps `P_i -> M_i -> M_{i+1}`; when `terminal` holds the last
/// module is itself the final free term.
#[derive(Clone, Debug)]
pub struct SppjResolution {
    pub modules: Vec<Arc<DgModule>>,
    pub steps: Vec<SppjStep>,
    pub certificates: Vec<MembershipCertificate>,
    pub terminal: bool,
}

impl SppjResolution {
    pub fn build(m: &Arc<DgModule>, mode: StepMode, max_steps: usize, stop: StopRule) -> Result<SppjResolution> {
        let mut modules = vec![m.clone()];
        let mut steps = Vec::new();
        let mut certificates = Vec::new();
        loop {
            let cur = modules.last().unwrap().clone();
            if cur.is_acyclic() {
                return Ok(SppjResolution { modules, steps, certificates, terminal: true });
            }
            let cert = match stop {
                StopRule::Projective => Some(membership_p(&cur)?),
                StopRule::Flat => Some(membership_f(&cur)?),
                StopRule::Never => None,
            };
            let member = cert.as_ref().is_some_and(|c| c.member);
            certificates.extend(cert);
            if member {
                return Ok(SppjResolution { modules, steps, certificates, terminal: true });
            }
            if steps.len() == max_steps {
                return Ok(SppjResolution { modules, steps, certificates, terminal: false });
            }
            let step = sppj_step(&cur, mode)?;
            modules.push(step.next.clone());
            steps.push(step);
        }
    }

    /// Number of stages with a free term.
    pub fn len(&self) -> usize {
        self.steps.len() + self.terminal as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `sup` of the `i`-th free term, with `None` past the end.
    pub fn free_sup(&self, i: usize) -> Option<i32> {
        if i < self.steps.len() {
            Some(self.steps[i].sup)
        } else if i == self.steps.len() && self.terminal {
            self.modules[i].sup()
        } else {
            None
        }
    }

    /// The `i`-th free term (the terminal module itself at the end).
    pub fn free_term(&self, i: usize) -> &Arc<DgModule> {
        if i < self.steps.len() {
            &self.steps[i].free
        } else {
            &self.modules[i]
        }
    }

    /// `H^deg(P_i) -> H^deg(P_{i-1})` induced by `g_{i-1} f_i`.
    pub fn delta_h(&self, i: usize, deg: i32) -> Mat {
        let g = &self.steps[i - 1].g;
        if i < self.steps.len() {
            g.compose(&self.steps[i].f).expect("composable").h_map(deg)
        } else {
            g.h_map(deg)
        }
    }
}
