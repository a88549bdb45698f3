use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::builtins;
use crate::dgcore::{direct_sum, dualize, heart_embed, shift, DgAlgebra, DgModule};
use crate::exactla::Field;
use crate::heartkit::{injective_envelope, is_injective, is_projective, projective_cover, FdModule};

const CAP: usize = 8;

fn f() -> Field {
    Field::default()
}

fn arc(a: crate::Result<DgAlgebra>) -> Arc<DgAlgebra> {
    Arc::new(a.unwrap())
}

fn rk() -> Arc<DgAlgebra> {
    arc(builtins::koszul_rk(f()))
}

fn algebras() -> Vec<Arc<DgAlgebra>> {
    vec![
        arc(builtins::field_algebra(f())),
        arc(builtins::nilpotent(f(), 2)),
        arc(builtins::triangular(f(), 2)),
        rk(),
        arc(builtins::koszul(f(), &[vec![0, 0, 1]], 3)),
    ]
}

fn modules(r: &Arc<DgAlgebra>) -> Vec<Arc<DgModule>> {
    let mut out = vec![
        Arc::new(DgModule::regular(r.clone())),
        Arc::new(builtins::m_of(r, 1)),
        Arc::new(builtins::heart_h0(r).unwrap()),
    ];
    for i in 0..r.h0().unwrap().num_simples().unwrap() {
        out.push(Arc::new(builtins::heart_simple(r, i).unwrap()));
        out.push(Arc::new(builtins::psi_simple(r, i).unwrap()));
    }
    out
}

// classical dimensions by syzygies and cosyzygies, capped
fn classical_pd(n: &FdModule, cap: usize) -> Option<usize> {
    let mut cur = n.clone();
    for k in 0..cap {
        if is_projective(&cur).unwrap() {
            return Some(k);
        }
        let c = projective_cover(&cur).unwrap();
        cur = c.module.submodule(&c.kernel).0;
    }
    None
}

fn classical_injdim(n: &FdModule, cap: usize) -> Option<usize> {
    let mut cur = n.clone();
    for k in 0..cap {
        if is_injective(&cur).unwrap() {
            return Some(k);
        }
        let e = injective_envelope(&cur).unwrap();
        cur = e.module.quotient(&e.map.image()).0;
    }
    None
}

fn as_dim(d: Option<usize>, cap: usize) -> Dim {
    d.map_or(Dim::AtLeast(cap), |d| Dim::Exact(d as i32))
}

#[test]
fn ordinary_algebras_match_classical_dimensions() {
    for a in [
        builtins::field_algebra(f()),
        builtins::nilpotent(f(), 2),
        builtins::triangular(f(), 2),
        builtins::triangular(f(), 3),
        builtins::product(&builtins::triangular(f(), 2).unwrap(), &builtins::field_algebra(f()).unwrap()),
    ] {
        let r = arc(a);
        let h0 = r.h0().unwrap();
        let mut cands = h0.simples().unwrap();
        cands.push(h0.regular_module());
        cands.push(h0.dual_regular_module());
        for n in cands {
            let m = Arc::new(heart_embed(&r, &n).unwrap());
            assert_eq!(pd(&m, CAP).unwrap().status, as_dim(classical_pd(&n, CAP), CAP));
            assert_eq!(injdim(&m, CAP).unwrap().status, as_dim(classical_injdim(&n, CAP), CAP));
        }
    }
}

#[test]
fn triangular_simples() {
    let r = arc(builtins::triangular(f(), 2));
    let mut pairs: Vec<(Dim, Dim)> = (0..2)
        .map(|i| {
            let s = Arc::new(builtins::heart_simple(&r, i).unwrap());
            (pd(&s, CAP).unwrap().status, injdim(&s, CAP).unwrap().status)
        })
        .collect();
    pairs.sort_by_key(|p| p.0.exact());
    assert_eq!(pairs, vec![(Dim::Exact(0), Dim::Exact(1)), (Dim::Exact(1), Dim::Exact(0))]);
    let g = gldim(&r, CAP).unwrap();
    assert_eq!(g.status, Dim::Exact(1));
    assert!(g.sides_agree);
}

#[test]
fn m_n_short_and_long_resolutions() {
    for r in [rk(), arc(builtins::nilpotent(f(), 2))] {
        for n in 1..=4 {
            let m = Arc::new(builtins::m_of(&r, n));
            let short = pd(&m, CAP).unwrap();
            assert_eq!(short.status, Dim::Exact(n));
            assert_eq!(short.terminal_stage, Some(1));
            assert_eq!(short.terminal_anchor, Some(1 - n));
            let long = pd_with(&m, CAP, StepMode::Padded(1)).unwrap();
            assert_eq!(long.status, Dim::Exact(n));
            assert_eq!(long.terminal_stage, Some(n as usize));
            assert_eq!(long.terminal_anchor, Some(0));
            // every intermediate stage is M_(m) again: cohomology of R plus R[m]
            let nm = pd_with(&m, CAP, StepMode::NonMinimal).unwrap();
            assert_eq!(nm.status, Dim::Exact(n));
        }
    }
}

#[test]
fn stage_sup_patterns() {
    let r = rk();
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    let rep = pd(&k, CAP).unwrap();
    assert_eq!(rep.status, Dim::AtLeast(CAP));
    let sups: Vec<i32> = rep.anchors().into_iter().map(Option::unwrap).collect();
    assert_eq!(sups, (0..CAP as i32).map(|i| -i).collect::<Vec<_>>());
    let infs: Vec<i32> = injdim(&k, CAP).unwrap().anchors().into_iter().map(Option::unwrap).collect();
    assert_eq!(infs, (0..CAP as i32).collect::<Vec<_>>());

    let r = arc(builtins::nilpotent(f(), 2));
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    let rep = pd(&k, CAP).unwrap();
    assert_eq!(rep.status, Dim::AtLeast(CAP));
    assert!(rep.anchors().iter().all(|s| *s == Some(0)));
    assert!(rep.lower_bound.unwrap() >= CAP as i64);
}

#[test]
fn membership_certificates() {
    let r = rk();
    let reg = Arc::new(DgModule::regular(r.clone()));
    let c = membership_p(&reg).unwrap();
    assert!(c.member);
    assert_eq!(c.quasi_iso, Some(true));
    assert!(c.action_maps.iter().all(|a| a.bijective));
    // k in degree 0: H^0 is free but k ⊗ H^{-1}(R) has nowhere to go
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    let c = membership_p(&k).unwrap();
    assert!(c.heart_ok && !c.member);
    let a1 = &c.action_maps[1];
    assert_eq!((a1.tensor_dim, a1.target_dim, a1.bijective), (1, 0, false));
    assert!(!membership_f(&k).unwrap().member);
    let psi = Arc::new(builtins::psi_simple(&r, 0).unwrap());
    assert!(membership_i(&psi).unwrap().member);
    assert!(!membership_i(&k).unwrap().member);
    let z = Arc::new(DgModule::zero(r));
    assert!(membership_p(&z).unwrap().member);
}

#[test]
fn tor1_detects_non_flat_modules() {
    let r = arc(builtins::nilpotent(f(), 2));
    let h0 = r.h0().unwrap();
    assert_eq!(tor1_dims(&h0.simples().unwrap()[0]).unwrap(), vec![1]);
    assert_eq!(tor1_dims(&h0.regular_module()).unwrap(), vec![0]);
    let t = arc(builtins::triangular(f(), 2)).h0().unwrap();
    for s in t.simples().unwrap() {
        let flat = tor1_dims(&s).unwrap().iter().all(|&d| d == 0);
        assert_eq!(flat, is_projective(&s).unwrap());
    }
}

#[test]
fn zero_object() {
    let r = rk();
    let z = Arc::new(DgModule::zero(r.clone()));
    assert_eq!(pd(&z, CAP).unwrap().status, Dim::ZeroObject);
    assert_eq!(injdim(&z, CAP).unwrap().status, Dim::ZeroObject);
    assert_eq!(serde_json::to_string(&Dim::ZeroObject).unwrap(), r#"{"exact":"-inf"}"#);
    assert_eq!(serde_json::to_string(&Dim::Exact(2)).unwrap(), r#"{"exact":2}"#);
    assert_eq!(serde_json::to_string(&Dim::AtLeast(16)).unwrap(), r#"{"at_least":16}"#);
    assert!(matches!(sppj_step(&z, StepMode::Minimal), Err(crate::Error::ZeroModule(_))));
}

#[test]
fn duality_exchanges_projective_and_injective() {
    for r in algebras() {
        for m in modules(&r) {
            let d = Arc::new(dualize(&m));
            assert_eq!(injdim(&m, CAP).unwrap().status, pd(&d, CAP).unwrap().status);
            assert_eq!(pd(&m, CAP).unwrap().status, injdim(&d, CAP).unwrap().status);
        }
    }
}

#[test]
fn flat_and_projective_agree_on_finite_modules() {
    for r in algebras() {
        for m in modules(&r) {
            let p = pd(&m, CAP).unwrap().status;
            let fl = fd(&m, CAP).unwrap().status;
            if let (Some(a), Some(b)) = (fl.exact(), p.exact()) {
                assert!(a <= b);
            }
            assert_eq!(p, fl);
        }
    }
}

#[test]
fn stage_recursion() {
    // from M_1 -> P_0 -> M: pd M = pd M_1 + 1 + sup M - sup M_1
    for r in algebras() {
        for m in modules(&r) {
            let p = pd(&m, CAP).unwrap();
            let Some(d) = p.status.exact() else { continue };
            if p.terminal_stage == Some(0) {
                continue;
            }
            let step = sppj_step(&m, StepMode::Minimal).unwrap();
            let d1 = pd(&step.next, CAP).unwrap().status.exact().unwrap();
            assert_eq!(d, d1 + 1 + m.sup().unwrap() - step.next.sup().unwrap());
        }
    }
}

#[test]
fn gorenstein_and_semisimple_checks() {
    let g = gorenstein_check(&rk(), CAP).unwrap();
    assert!(g.gorenstein && g.agree);
    assert_eq!(g.right.status, Dim::Exact(0));
    let t = arc(builtins::triangular(f(), 2));
    let g = gorenstein_check(&t, CAP).unwrap();
    assert_eq!((g.right.status, g.left.status), (Dim::Exact(1), Dim::Exact(1)));
    let k = arc(builtins::field_algebra(f()));
    assert!(semisimple_zero_check(&k).unwrap().holds);
    assert_eq!(gldim(&k, CAP).unwrap().status, Dim::Exact(0));
    let kk = arc(builtins::product(&builtins::field_algebra(f()).unwrap(), &builtins::matrix(f(), 2).unwrap()));
    assert!(semisimple_zero_check(&kk).unwrap().holds);
    assert_eq!(gldim(&kk, CAP).unwrap().status, Dim::Exact(0));
    let s = semisimple_zero_check(&rk()).unwrap();
    assert_eq!(s.negative_cohomology, vec![(-1, 1)]);
    assert!(!s.holds);
}

#[test]
fn ifij_maps_are_chain_maps() {
    for r in algebras() {
        for m in modules(&r) {
            for mode in [StepMode::Minimal, StepMode::NonMinimal] {
                let st = ifij_step(&m, mode).unwrap();
                assert!(st.f.validate().is_ok());
                assert!(st.injective.validate().is_ok());
                // injective on the bottom cohomology
                assert_eq!(st.f.h_map(st.inf).rank(), m.h_dim(st.inf));
            }
        }
    }
}

#[test]
fn monotone_and_star_bounds() {
    for r in algebras() {
        for m in modules(&r) {
            let p = pd(&m, CAP).unwrap();
            let s0 = m.sup().unwrap();
            let partial: Vec<i32> =
                p.stages.iter().enumerate().map(|(i, st)| i as i32 + s0 - st.anchor.unwrap()).collect();
            assert!(partial.windows(2).all(|w| w[0] <= w[1]));
            if let Dim::Exact(d) = p.status {
                assert!(partial.iter().all(|&x| x <= d));
                // the witness spans P[-sup P_0] * ... * P[e - sup M_e]
                let e = p.terminal_stage.unwrap() as i32;
                assert_eq!(d, (e - p.terminal_anchor.unwrap()) - (-s0));
            }
        }
    }
}

#[test]
fn triangle_bound() {
    use crate::dgcore::{cone, hom_complex};
    for r in algebras() {
        let ms = modules(&r);
        for x in &ms {
            for y in &ms {
                let h = hom_complex(x, y);
                let z = h.complex.cohomology();
                let deg0 = (0 - h.complex.lo) as usize;
                if deg0 >= z.len() || z[deg0].cocycles.is_zero() {
                    continue;
                }
                // sum of the cocycle basis as a strict map
                let mut c = vec![0; z[deg0].cocycles.ambient_dim()];
                for v in z[deg0].cocycles.vectors() {
                    for (a, b) in c.iter_mut().zip(v) {
                        *a = f().add(*a, b);
                    }
                }
                let g = h.morphism(&c);
                let cn = cone(&g).module;
                let rel = |m: &Arc<DgModule>| -> Option<i32> {
                    let d = pd(m, CAP).unwrap().status;
                    Some(d.exact()? - m.sup()?)
                };
                let sh = Arc::new(shift(x, 1));
                // x -> y -> cone -> x[1]: bound the middle term of each rotation
                for (l, mid, n) in [(x, y, &cn), (y, &cn, &sh)] {
                    if let (Some(a), Some(b), Some(c)) = (rel(l), rel(mid), rel(n)) {
                        assert!(b <= a.max(c), "{b} > max({a}, {c})");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dimensions_are_shift_invariant(a in 0usize..5, k in 0usize..7, n in -3i32..=3) {
        let r = &algebras()[a];
        let ms = modules(r);
        let m = &ms[k % ms.len()];
        let sh = Arc::new(shift(m, n));
        prop_assert_eq!(pd(m, CAP).unwrap().status, pd(&sh, CAP).unwrap().status);
        prop_assert_eq!(injdim(m, CAP).unwrap().status, injdim(&sh, CAP).unwrap().status);
    }

    #[test]
    fn sums_with_matching_sup_take_the_max(a in 0usize..5, k in 0usize..7, l in 0usize..7) {
        let r = &algebras()[a];
        let ms = modules(r);
        let (x, y) = (&ms[k % ms.len()], &ms[l % ms.len()]);
        prop_assume!(x.sup() == y.sup());
        let s = Arc::new(direct_sum(&[x, y]));
        let want = pd(x, CAP).unwrap().status.max(pd(y, CAP).unwrap().status);
        prop_assert_eq!(pd(&s, CAP).unwrap().status, want);
    }
}
