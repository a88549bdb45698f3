use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use serde::Serialize;

use crate::dgcore::{DgModule, Semifree};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::heartkit::{is_injective, is_projective, projective_cover, tensor_map, tensor_over, tensor_with_left, FdModule};

use super::ifij::ifij_step;
use super::sppj::StepMode;

/// `Q ⊗_{H^0} H^{-i}(R) -> H^{s-i}(M)` for one `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionMapCheck {
    pub offset: i32,
    pub tensor_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    /// `sup M` for the projective and flat tests, `inf M` for the injective one;
    /// `None` for an acyclic module, which belongs to every class.
    pub degree: Option<i32>,
    pub heart_dim: usize,
    /// projectivity, flatness or injectivity of the extreme cohomology
    pub heart_ok: bool,
    /// `dim Tor_1(Q, T)` over the simple left modules (flat test only)
    pub tor1: Vec<usize>,
    pub action_maps: Vec<ActionMapCheck>,
    /// the comparison map from the free or injective model is a quasi-isomorphism
    pub quasi_iso: Option<bool>,
    pub member: bool,
}

impl MembershipCertificate {
    fn acyclic() -> MembershipCertificate {
        MembershipCertificate {
            degree: None,
            heart_dim: 0,
            heart_ok: true,
            tor1: Vec::new(),
            action_maps: Vec::new(),
            quasi_iso: None,
            member: true,
        }
    }
}

/// Checks that every `Q ⊗_{H^0} H^{-i}(R) -> H^{s-i}(M)` is bijective down to the bottom of `M` and of `R`.
fn action_maps(m: &DgModule, s: i32, q: &FdModule) -> Result<Vec<ActionMapCheck>> {
    let r = m.algebra();
    let f = m.field();
    let coh = m.cohomology();
    let hs = coh.h(s).expect("top cohomology present");
    let h0 = r.h(0).expect("H^0 of the algebra");
    let mut out = Vec::new();
    for i in 0..=(s - m.lo()).max(-r.low()) {
        let target_dim = coh.dim(s - i);
        let hr = if -i >= r.low() { r.h(-i).filter(|h| h.dim() > 0) } else { None };
        let Some(hr) = hr else {
            out.push(ActionMapCheck { offset: i, tensor_dim: 0, target_dim, rank: 0, bijective: target_dim == 0 });
            continue;
        };
        let hd = hr.dim();
        // left H^0 action on H^{-i}(R)
        let left: Vec<Mat> = (0..h0.dim())
            .map(|c| hr.proj.mul(&r.left_mult_elem(0, &h0.rep(c), -i)).mul(&hr.reps))
            .collect();
        let t = tensor_with_left(q, &left, hd);
        let mut cols = Vec::with_capacity(q.dim() * hd);
        let tgt = coh.h(s - i);
        for a in 0..q.dim() {
            let rep = hs.rep(a);
            for h in 0..hd {
                let v = m.act_elem(s, -i, &hr.rep(h)).mul_vec(&rep);
                cols.push(match tgt {
                    Some(tg) => tg.class(&v),
                    None => Vec::new(),
                });
            }
        }
        let big = Mat::from_cols(f, target_dim, &cols);
        debug_assert!(big.mul(&t.sect).mul(&t.proj) == big, "action map ignores the tensor relations");
        let rank = big.mul(&t.sect).rank();
        out.push(ActionMapCheck {
            offset: i,
            tensor_dim: t.dim,
            target_dim,
            rank,
            bijective: t.dim == target_dim && rank == target_dim,
        });
    }
    Ok(out)
}

fn is_free(q: &FdModule) -> Result<bool> {
    let h0 = q.algebra();
    if !q.dim().is_multiple_of(h0.dim()) {
        return Ok(false);
    }
    let n = q.dim() / h0.dim();
    let (tq, _) = q.top()?;
    let (th, _) = h0.regular_module().top()?;
    let a = tq.composition_multiplicities()?;
    let b = th.composition_multiplicities()?;
    Ok(is_projective(q)? && a.iter().zip(&b).all(|(x, y)| *x == n * y))
}

/// Elements `v_1..v_n` with `H^0 -> Q`, `(a_k) -> Σ v_k a_k` bijective, found by seeded search.
pub fn free_basis(q: &FdModule, seed: u64) -> Option<Vec<Vec<u32>>> {
    let h0 = q.algebra();
    let f = q.field();
    let n = q.dim() / h0.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x66726565);
    for _ in 0..64 {
        let vs: Vec<Vec<u32>> = (0..n).map(|_| (0..q.dim()).map(|_| rng.gen_range(0..f.p())).collect()).collect();
        let cols: Vec<Vec<u32>> =
            vs.iter().flat_map(|v| (0..h0.dim()).map(move |b| q.action(b).mul_vec(v))).collect();
        if Mat::from_cols(f, q.dim(), &cols).rank() == q.dim() {
            return Some(vs);
        }
    }
    None
}

/// Is `M` in `P[-sup M]`, with a certificate.
pub fn membership_p(m: &Arc<DgModule>) -> Result<MembershipCertificate> {
    let Some(s) = m.sup() else {
        return Ok(MembershipCertificate::acyclic());
    };
    let q = m.h_module(s)?;
    let heart_ok = is_projective(&q)?;
    let maps = action_maps(m, s, &q)?;
    let member = heart_ok && maps.iter().all(|a| a.bijective);
    let mut quasi_iso = None;
    if member && is_free(&q)? {
        let basis = free_basis(&q, m.algebra().seed())
            .ok_or_else(|| Error::Internal("no free basis found for a free module".into()))?;
        let h = m.cohomology().h(s).expect("top cohomology");
        let images: Vec<Vec<u32>> = basis.iter().map(|v| h.reps.mul_vec(v)).collect();
        let sf = Semifree::free(m.algebra().clone(), &vec![s; images.len()]);
        let ok = sf.morphism_to(m.clone(), &images).is_quasi_iso();
        if !ok {
            return Err(Error::Internal("free model of a P-member is not a quasi-isomorphism".into()));
        }
        quasi_iso = Some(ok);
    }
    Ok(MembershipCertificate { degree: Some(s), heart_dim: q.dim(), heart_ok, tor1: Vec::new(), action_maps: maps, quasi_iso, member })
}

/// `dim Tor_1^{H^0}(Q, T)` for each simple left module `T`.
pub fn tor1_dims(q: &FdModule) -> Result<Vec<usize>> {
    let h0 = q.algebra();
    let lefts = h0.opposite().simples()?;
    let cover = projective_cover(q)?;
    let (omega, inc) = cover.module.submodule(&cover.kernel);
    Ok(lefts
        .iter()
        .map(|t| {
            let to = tensor_over(&omega, t);
            let tp = tensor_over(&cover.module, t);
            to.dim - tensor_map(&to, &tp, &inc, t.dim()).rank()
        })
        .collect())
}

/// Is `M` in `F[-sup M]`: flat top cohomology (by a `Tor_1` test) and bijective action maps.
pub fn membership_f(m: &Arc<DgModule>) -> Result<MembershipCertificate> {
    let Some(s) = m.sup() else {
        return Ok(MembershipCertificate::acyclic());
    };
    let q = m.h_module(s)?;
    let tor1 = tor1_dims(&q)?;
    let heart_ok = tor1.iter().all(|&d| d == 0);
    let maps = action_maps(m, s, &q)?;
    let member = heart_ok && maps.iter().all(|a| a.bijective);
    Ok(MembershipCertificate { degree: Some(s), heart_dim: q.dim(), heart_ok, tor1, action_maps: maps, quasi_iso: None, member })
}

/// Is `M` in `I[-inf M]`: injective bottom cohomology and the comparison map
/// into `ψ` of its hull is a quasi-isomorphism.
pub fn membership_i(m: &Arc<DgModule>) -> Result<MembershipCertificate> {
    let Some(t) = m.inf() else {
        return Ok(MembershipCertificate::acyclic());
    };
    let j = m.h_module(t)?;
    let heart_ok = is_injective(&j)?;
    let mut quasi_iso = None;
    if heart_ok {
        let step = ifij_step(m, StepMode::Minimal)?;
        quasi_iso = Some(step.f.is_quasi_iso());
    }
    let member = heart_ok && quasi_iso == Some(true);
    Ok(MembershipCertificate { degree: Some(t), heart_dim: j.dim(), heart_ok, tor1: Vec::new(), action_maps: Vec::new(), quasi_iso, member })
}
