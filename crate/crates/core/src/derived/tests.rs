use std::sync::Arc;

use super::*;
use crate::builtins;
use crate::dgcore::{hom_complex, shift, DgAlgebra, DgModule};
use crate::exactla::Field;
use crate::heartkit::FdModule;
use crate::resolve::{pd, Dim, SppjResolution, StepMode, StopRule};

const CAP: usize = 8;
const WINDOW: (i32, i32) = (-6, 10);

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
        Arc::new(builtins::m_of(r, -2)),
        Arc::new(builtins::heart_h0(r).unwrap()),
    ];
    for i in 0..r.h0().unwrap().num_simples().unwrap() {
        out.push(Arc::new(builtins::heart_simple(r, i).unwrap()));
        out.push(Arc::new(builtins::psi_simple(r, i).unwrap()));
    }
    out
}

fn coh_table(m: &DgModule, (a, b): (i32, i32), neg: bool) -> Vec<(i32, usize)> {
    (a..=b).map(|n| (n, m.h_dim(if neg { -n } else { n }))).collect()
}

#[test]
fn semifree_fixtures() {
    let r = rk();
    let reg = Arc::new(DgModule::regular(r.clone()));
    let s = semifree(&reg, -10);
    assert_eq!(s.summary().generators, vec![(0, 1)]);
    assert!(s.augmentation.is_quasi_iso());
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    // the cone's top cohomology drops by two each round over R_K
    assert_eq!(semifree(&k, -4).summary().generators, vec![(0, 1), (-2, 1)]);
    let s = semifree(&k, -5);
    assert_eq!(s.summary().generators, vec![(0, 1), (-2, 1), (-4, 1)]);
    assert!(s.augmentation.validate().is_ok());
    assert!(s.semifree.module.validate().is_ok());
    let c = crate::dgcore::cone(&s.augmentation);
    assert!(c.module.sup().is_none_or(|t| t <= -5));
    let z = Arc::new(DgModule::zero(r));
    assert!(semifree(&z, -3).generators().is_empty());
}

#[test]
fn trivial_tables() {
    for r in algebras() {
        let reg = Arc::new(DgModule::regular(r.clone()));
        for n in modules(&r) {
            assert_eq!(rhom(&reg, &n, WINDOW).unwrap().dims, coh_table(&n, WINDOW, false));
        }
        let rop = Arc::new(DgModule::regular(r.opposite()));
        for m in modules(&r) {
            assert_eq!(ltensor(&m, &rop, WINDOW).unwrap().dims, coh_table(&m, WINDOW, true));
            let dm = Arc::new(crate::dgcore::dualize(&m));
            assert_eq!(ltensor(&reg, &dm, WINDOW).unwrap().dims, coh_table(&dm, WINDOW, true));
        }
    }
}

#[test]
fn dg_injective_targets_need_no_resolution() {
    for r in algebras() {
        for i in 0..r.h0().unwrap().num_simples().unwrap() {
            let psi = Arc::new(builtins::psi_simple(&r, i).unwrap());
            for m in modules(&r) {
                let direct = hom_complex(&m, &psi).complex;
                let t = rhom(&m, &psi, WINDOW).unwrap();
                for (n, d) in &t.dims {
                    assert_eq!(*d, direct.h_dim(*n), "degree {n}");
                }
            }
        }
    }
}

#[test]
fn koszul_tor_of_the_residue_field() {
    let r = rk();
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    let kop = Arc::new(builtins::heart_simple(&r.opposite(), 0).unwrap());
    let t = ltensor(&k, &kop, (0, 8)).unwrap();
    let want: Vec<(i32, usize)> = (0..=8).map(|n| (n, (n % 2 == 0) as usize)).collect();
    assert_eq!(t.dims, want);
}

#[test]
fn three_routes_agree() {
    for r in algebras() {
        let battery = heart_battery(&r).unwrap();
        for m in modules(&r) {
            let sp = sppj_for_hom(&m, WINDOW.1).unwrap();
            let sups: Vec<i32> = (0..sp.len()).map_while(|i| sp.free_sup(i)).collect();
            assert!(slot_arithmetic_holds(&sups), "{sups:?}");
            let inj = ifij_for_hom(&m, WINDOW.1).unwrap();
            for n in &battery {
                let hn = Arc::new(crate::dgcore::heart_embed(&r, n).unwrap());
                let a = rhom(&m, &hn, WINDOW).unwrap();
                let b = hom_table_via_sppj(n, &sp, WINDOW).unwrap();
                assert!(a.agrees(&b), "sppj route: {:?} vs {:?}", a.dims, b.dims);
                let c = rhom(&hn, &m, WINDOW).unwrap();
                let d = hom_table_via_ifij(n, &inj, WINDOW).unwrap();
                assert!(c.agrees(&d), "ifij route: {:?} vs {:?}", c.dims, d.dims);
            }
        }
    }
}

#[test]
fn tor_formula_matches_ltensor() {
    for r in algebras() {
        let lefts = r.opposite().h0().unwrap().simples().unwrap();
        for m in modules(&r) {
            let res = spft_for_tor(&m, WINDOW.1).unwrap();
            for l in &lefts {
                let hl = Arc::new(crate::dgcore::heart_embed(&r.opposite(), l).unwrap());
                let a = ltensor(&m, &hl, WINDOW).unwrap();
                let hl0 = l.with_algebra(r.h0().unwrap().opposite());
                let b = tor_table_via_spft(&hl0, &res, WINDOW).unwrap();
                assert!(a.agrees(&b), "{:?} vs {:?}", a.dims, b.dims);
            }
        }
    }
}

#[test]
fn tor_and_hom_are_dual() {
    for r in algebras() {
        let h0 = r.h0().unwrap();
        for t in r.opposite().h0().unwrap().simples().unwrap() {
            let ht = Arc::new(crate::dgcore::heart_embed(&r.opposite(), &t).unwrap());
            let dt = Arc::new(crate::dgcore::heart_embed(&r, &t.dual().with_algebra(h0.clone())).unwrap());
            for m in modules(&r) {
                let a = ltensor(&m, &ht, WINDOW).unwrap();
                let b = rhom(&m, &dt, WINDOW).unwrap();
                assert_eq!(a.dims, b.dims);
            }
        }
    }
}

#[test]
fn short_resolution_errors_ask_for_more_stages() {
    let r = rk();
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    let res = SppjResolution::build(&k, StepMode::Minimal, 2, StopRule::Projective).unwrap();
    let n = &r.h0().unwrap().simples().unwrap()[0];
    assert!(matches!(hom_table_via_sppj(n, &res, WINDOW), Err(crate::Error::ExtendResolution(_))));
    // slots 0 and 2; the second needs the unknown third stage
    assert!(hom_table_via_sppj(n, &res, (0, 2)).is_err());
    assert_eq!(hom_table_via_sppj(n, &res, (0, 1)).unwrap().dims, vec![(0, 1), (1, 0)]);
}

#[test]
fn slot_arithmetic_examples() {
    assert!(slot_arithmetic_holds(&[0, 0, 0]));
    assert!(slot_arithmetic_holds(&[0, -1, -2]));
    assert!(slot_arithmetic_holds(&[3, 1, 1, -4]));
    assert!(!slot_arithmetic_holds(&[0, 1]));
}

#[test]
fn top_cohomology_maps_nontrivially() {
    // Hom(M, H^{sup}(M)[-sup M]) is nonzero in degree 0
    for r in algebras() {
        for m in modules(&r) {
            let s = m.sup().unwrap();
            let q = m.h_module(s).unwrap();
            for shift_by in [0, 2] {
                let n = Arc::new(shift(&crate::dgcore::heart_embed(&r, &q).unwrap(), -s - shift_by));
                let t = rhom(&m, &n, (shift_by - 2, shift_by + 2)).unwrap();
                assert!(t.dim(shift_by) > 0);
            }
        }
    }
}

#[test]
fn concentration_intervals() {
    let r = rk();
    let bat = heart_battery(&r).unwrap();
    let reg = Arc::new(DgModule::regular(r.clone()));
    let c = concentration_scan(&reg, &bat, WINDOW, CAP).unwrap();
    assert_eq!(c.support, Some((0, 0)));
    for n in 0..=4 {
        let m = Arc::new(builtins::m_of(&r, n));
        let c = concentration_scan(&m, &bat, WINDOW, CAP).unwrap();
        assert_eq!(c.pd, Dim::Exact(n));
        assert_eq!(c.support, Some((0, n)));
        assert_eq!((c.within_bound, c.endpoint_attained), (Some(true), Some(true)));
    }
    // non-terminating case: every slot 2i in the window carries a class
    let k = Arc::new(builtins::heart_simple(&r, 0).unwrap());
    let c = concentration_scan(&k, &bat, (0, CAP as i32), CAP).unwrap();
    let p = pd(&k, CAP).unwrap();
    let slots: Vec<i32> = p.stages.iter().enumerate().map(|(i, s)| i as i32 - s.anchor.unwrap()).collect();
    for s in slots.into_iter().filter(|&s| s <= CAP as i32) {
        assert!(c.tables.iter().any(|t| t.dim(s) > 0), "slot {s}");
    }
    assert_eq!(c.within_bound, None);
}

#[test]
fn concentration_on_the_battery() {
    for r in algebras() {
        let bat = heart_battery(&r).unwrap();
        for m in modules(&r) {
            let c = concentration_scan(&m, &bat, WINDOW, CAP).unwrap();
            if let Dim::Exact(_) = c.pd {
                assert_eq!(c.within_bound, Some(true), "{:?} {:?}", c.support, c.bound);
                assert_eq!(c.endpoint_attained, Some(true));
            }
        }
    }
}

#[test]
fn heart_battery_contents() {
    let b = heart_battery(&arc(builtins::nilpotent(f(), 3))).unwrap();
    // k, k[x]/x^3, then layers k, k, k
    assert_eq!(b.iter().map(FdModule::dim).collect::<Vec<_>>(), vec![1, 3, 1, 1, 1]);
}
