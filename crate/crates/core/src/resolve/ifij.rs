use std::sync::Arc;

use crate::dgcore::{cone, degree_module, psi_with_basis, shift, DgModule, DgMorphism};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::heartkit::{injective_envelope, FdModule};

use super::membership::{membership_i, MembershipCertificate};
use super::sppj::StepMode;

/// One step `M -> I -> M' -> M[1]` with `I = ψ(K)[-inf M]` and `K` the
/// `R^0`-hull of an injective envelope of `H^{inf}(M)`.
#[derive(Clone, Debug)]
pub struct IfijStep {
    pub inf: i32,
    pub injective: Arc<DgModule>,
    /// `M -> I`, injective on `H^{inf}`
    pub f: DgMorphism,
    pub next: Arc<DgModule>,
    /// `I -> M'`
    pub g: DgMorphism,
}

pub fn ifij_step(m: &Arc<DgModule>, mode: StepMode) -> Result<IfijStep> {
    let t = m.inf().ok_or(Error::ZeroModule("ifij"))?;
    let r = m.algebra().clone();
    let fl = r.field();
    let z = r.zeroth()?;
    let j0 = m.h_module(t)?;
    let env = injective_envelope(&j0)?;
    let (j, iota1) = match mode {
        StepMode::Minimal => (env.module, env.map),
        _ => {
            let extra = z.h0.dual_regular_module();
            let jj = FdModule::direct_sum(&[&env.module, &extra]);
            let map = env.map.vstack(&Mat::zeros(fl, extra.dim(), j0.dim()));
            (jj, map)
        }
    };
    let hull = z.r0_hull(&j)?;
    let k = hull.module;
    let iota = hull.map.mul(&iota1);
    let (p, spaces) = psi_with_basis(&r, &k)?;
    let inj = Arc::new(shift(&p, -t));

    // u in Hom_{R^0}(M^t, K) extending the class map on cocycles
    let mt = degree_module(m, t)?;
    let basis = mt.hom_space(&k);
    let h = m.cohomology().h(t).expect("bottom cohomology");
    let zs = h.cocycles.vectors();
    let kd = k.dim();
    let mut rhs = Vec::with_capacity(zs.len() * kd);
    let mut cols: Vec<Vec<u32>> = vec![Vec::with_capacity(zs.len() * kd); basis.len()];
    for zv in &zs {
        rhs.extend(iota.mul_vec(&h.class(zv)));
        for (a, u) in basis.iter().enumerate() {
            cols[a].extend(u.mul_vec(zv));
        }
    }
    let sys = Mat::from_cols(fl, zs.len() * kd, &cols);
    let coef = if zs.is_empty() { vec![0; basis.len()] } else {
        sys.solve(&rhs).ok_or_else(|| Error::Internal("no R^0-linear extension to the hull".into()))?
    };
    let mut u = Mat::zeros(fl, kd, m.dim(t));
    for (c, b) in coef.iter().zip(&basis) {
        u.add_scaled(b, *c);
    }

    let (src, tgt) = (m.clone(), inj.clone());
    let f = DgMorphism::new(src.clone(), tgt.clone(), |i| {
        let e = i - t;
        let mut x = Mat::zeros(fl, tgt.dim(i), src.dim(i));
        if e < 0 || e > -r.low() || src.dim(i) == 0 {
            return x;
        }
        let rd = r.dim(-e);
        let xs: Vec<Mat> = (0..rd).map(|b| u.mul(&src.act(i, -e, b))).collect();
        for c in 0..src.dim(i) {
            let mut data = vec![0; kd * rd];
            for (b, xb) in xs.iter().enumerate() {
                for kk in 0..kd {
                    data[kk * rd + b] = xb.get(kk, c);
                }
            }
            let v = spaces[e as usize].coords(&data).expect("image lies in Hom_{R^0}");
            for (row, val) in v.into_iter().enumerate() {
                x.set(row, c, val);
            }
        }
        x
    });
    let c = cone(&f);
    Ok(IfijStep { inf: t, injective: inj, f, next: c.module, g: c.inclusion })
}

/// `M_0 = M`, steps `M_{-i} -> I_{-i} -> M_{-i-1}`.
#[derive(Clone, Debug)]
pub struct IfijResolution {
    pub modules: Vec<Arc<DgModule>>,
    pub steps: Vec<IfijStep>,
    pub certificates: Vec<MembershipCertificate>,
    pub terminal: bool,
}

impl IfijResolution {
    pub fn build(m: &Arc<DgModule>, mode: StepMode, max_steps: usize, check: bool) -> Result<IfijResolution> {
        let mut modules = vec![m.clone()];
        let mut steps = Vec::new();
        let mut certificates = Vec::new();
        loop {
            let cur = modules.last().unwrap().clone();
            if cur.is_acyclic() {
                return Ok(IfijResolution { modules, steps, certificates, terminal: true });
            }
            if check {
                let cert = membership_i(&cur)?;
                let member = cert.member;
                certificates.push(cert);
                if member {
                    return Ok(IfijResolution { modules, steps, certificates, terminal: true });
                }
            }
            if steps.len() == max_steps {
                return Ok(IfijResolution { modules, steps, certificates, terminal: false });
            }
            let step = ifij_step(&cur, mode)?;
            modules.push(step.next.clone());
            steps.push(step);
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len() + self.terminal as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `inf` of `I_{-i}`, with `None` past the end.
    pub fn injective_inf(&self, i: usize) -> Option<i32> {
        if i < self.steps.len() {
            Some(self.steps[i].inf)
        } else if i == self.steps.len() && self.terminal {
            self.modules[i].inf()
        } else {
            None
        }
    }

    pub fn injective_term(&self, i: usize) -> &Arc<DgModule> {
        if i < self.steps.len() {
            &self.steps[i].injective
        } else {
            &self.modules[i]
        }
    }

    /// `H^deg(I_{-i}) -> H^deg(I_{-i-1})` induced by `f_{-i-1} g_{-i}`.
    pub fn delta_h(&self, i: usize, deg: i32) -> Mat {
        let g = &self.steps[i].g;
        if i + 1 < self.steps.len() {
            self.steps[i + 1].f.compose(g).expect("composable").h_map(deg)
        } else {
            g.h_map(deg)
        }
    }
}
