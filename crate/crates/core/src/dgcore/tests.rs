use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::builtins;
use crate::exactla::{Field, Mat};
use crate::heartkit::FdModule;

fn f() -> Field {
    Field::default()
}

fn rk() -> Arc<DgAlgebra> {
    Arc::new(builtins::koszul_rk(f()).unwrap())
}

fn algebras() -> Vec<Arc<DgAlgebra>> {
    vec![
        Arc::new(builtins::field_algebra(f()).unwrap()),
        Arc::new(builtins::nilpotent(f(), 2).unwrap()),
        Arc::new(builtins::triangular(f(), 2).unwrap()),
        rk(),
        Arc::new(builtins::koszul(f(), &[vec![0, 0, 1]], 3).unwrap()),
    ]
}

fn modules(r: &Arc<DgAlgebra>) -> Vec<Arc<DgModule>> {
    let mut out = vec![
        Arc::new(DgModule::regular(r.clone())),
        Arc::new(builtins::m_of(r, 1)),
        Arc::new(builtins::heart_h0(r).unwrap()),
    ];
    let n = r.h0().unwrap().num_simples().unwrap();
    for i in 0..n {
        out.push(Arc::new(builtins::heart_simple(r, i).unwrap()));
        out.push(Arc::new(builtins::psi_simple(r, i).unwrap()));
    }
    out
}

fn aug(r: &Arc<DgAlgebra>) -> DgMorphism {
    let z = r.zeroth().unwrap();
    let src = Arc::new(DgModule::regular(r.clone()));
    let tgt = Arc::new(builtins::heart_h0(r).unwrap());
    let (p, s2, t2) = (z.proj.clone(), src.clone(), tgt.clone());
    DgMorphism::new(src, tgt, move |i| if i == 0 { p.clone() } else { Mat::zeros(f(), t2.dim(i), s2.dim(i)) })
}

#[test]
fn validation_fixtures() {
    let k = builtins::field_algebra(Field::new(101).unwrap()).unwrap();
    assert!(k.validate().is_ok());
    let r = rk();
    assert!(r.validate().is_ok());
    assert_eq!(r.total_dim(), 4);
    for a in algebras() {
        assert!(a.validate().is_ok());
        for m in modules(&a) {
            assert!(m.validate().is_ok(), "{:?}", m.validate());
        }
    }
}

#[test]
fn flipped_leibniz_sign_is_reported() {
    // K_{k[x]/(x^3)}(x) with ∂(xe) = -x^2 instead of x^2
    let good = builtins::koszul(f(), &[vec![0, 1]], 3).unwrap();
    let mut b = DgAlgebraBuilder::new(f(), -1, vec![3, 3]);
    for i in [-1, 0] {
        b.set_names(i, good.names(i).to_vec());
        for j in [-1, 0] {
            if i + j < -1 {
                continue;
            }
            for a in 0..3 {
                for c in 0..3 {
                    b.set_product(i, a, j, c, good.product(i, a, j, c));
                }
            }
        }
    }
    let mut d = good.diff(-1);
    assert_eq!(d.get(2, 1), 1);
    d.set(2, 1, f().neg(1));
    b.set_diff(-1, d);
    b.set_unit(good.unit().to_vec());
    let bad = b.build_unchecked();
    let rep = bad.validate();
    assert!(rep.has("Leibniz"), "{rep}");
    assert!(!rep.has("associativity"));

    // a module over R_K whose Leibniz sign is flipped: R_K with -∂ but the same action
    let r = rk();
    let reg = DgModule::regular(r.clone());
    let mut mb = reg.to_builder();
    mb.set_diff(-1, reg.d(-1).scale(f().neg(1)));
    let bad = mb.build_unchecked();
    assert!(bad.validate().has("Leibniz"));
}

#[test]
fn cohomology_fixtures() {
    let r = rk();
    let reg = DgModule::regular(r.clone());
    let s = reg.cohomology().summary();
    assert_eq!(s.dims, vec![(-1, 1), (0, 1)]);
    assert_eq!((s.sup, s.inf), (Some(0), Some(-1)));
    assert_eq!(reg.cohomology().champ(), Some(1));
    let free = builtins::free(&r, 3, 0);
    assert_eq!(free.cohomology().summary().dims, vec![(-1, 3), (0, 3)]);
    let id = DgMorphism::identity(Arc::new(reg.clone()));
    assert!(cone(&id).module.is_acyclic());
    let zero = DgModule::zero(r.clone());
    assert_eq!((zero.sup(), zero.inf()), (None, None));
}

#[test]
fn shift_fixtures() {
    let r = rk();
    let reg = DgModule::regular(r.clone());
    assert_eq!(shift(&reg, 0), reg);
    assert_eq!(shift(&shift(&reg, 2), -5), shift(&reg, -3));
    assert_eq!(shift(&reg, 3).sup(), Some(-3));
}

#[test]
fn cone_of_zero_is_a_sum() {
    for r in algebras() {
        let ms = modules(&r);
        let (m, n) = (&ms[1], &ms[2]);
        let c = cone(&DgMorphism::zero(m.clone(), n.clone()));
        let sum = direct_sum(&[n, &shift(m, 1)]);
        assert_eq!(*c.module, sum);
    }
}

#[test]
fn cocone_of_augmentation() {
    let r = rk();
    let f0 = aug(&r);
    assert!(f0.validate().is_ok());
    let cc = cocone(&f0);
    assert!(cc.projection.validate().is_ok());
    assert_eq!(cc.module.cohomology().summary().dims, vec![(-1, 1)]);
}

#[test]
fn long_exact_sequences() {
    for r in algebras() {
        let f0 = aug(&r);
        let ms = modules(&r);
        let sum = Arc::new(direct_sum(&[&ms[0], &ms[1]]));
        let inc = summand_inclusion(&[&ms[0], &ms[1]], 0, &sum);
        for g in [f0, inc] {
            let c = cone(&g);
            assert!(c.inclusion.validate().is_ok());
            assert!(c.projection.validate().is_ok());
            assert!(c.module.validate().is_ok());
            let (m, n, cm) = (g.source(), g.target(), &c.module);
            let lo = m.lo().min(n.lo()) - 2;
            let hi = m.hi().max(n.hi()) + 2;
            for i in lo..=hi {
                let (fi, ii, pi) = (g.h_map(i), c.inclusion.h_map(i), c.projection.h_map(i));
                let fnext = g.h_map(i + 1);
                assert!(ii.mul(&fi).is_zero());
                assert!(pi.mul(&ii).is_zero());
                assert_eq!(fi.rank() + ii.rank(), n.h_dim(i));
                assert_eq!(ii.rank() + pi.rank(), cm.h_dim(i));
                assert_eq!(pi.rank() + fnext.rank(), m.h_dim(i + 1));
            }
        }
    }
}

#[test]
fn truncation_fixtures() {
    for r in algebras() {
        for m in modules(&r) {
            let Some(s) = m.sup() else { continue };
            let (t, inc) = truncate(&m, s, Side::Below);
            assert!(t.validate().is_ok());
            assert!(inc.validate().is_ok());
            assert!(inc.is_quasi_iso());
            let (a, p) = truncate(&m, s, Side::Above);
            assert!(a.validate().is_ok());
            assert!(p.validate().is_ok());
            assert!(a.is_acyclic());
            let lo = m.lo();
            for n in lo - 1..=s {
                let (b, _) = truncate(&m, n, Side::Below);
                let (q, _) = truncate(&m, n, Side::Above);
                for i in lo - 1..=m.hi() + 1 {
                    assert_eq!(b.h_dim(i), if i <= n { m.h_dim(i) } else { 0 });
                    assert_eq!(q.h_dim(i), if i > n { m.h_dim(i) } else { 0 });
                }
            }
        }
    }
    let r = rk();
    let reg = Arc::new(DgModule::regular(r));
    let (t, _) = truncate(&reg, -1, Side::Below);
    assert_eq!(t.cohomology().summary().dims, vec![(-1, 1)]);
}

#[test]
fn psi_fixtures() {
    let k = Arc::new(builtins::field_algebra(f()).unwrap());
    let kk = k.r0().unwrap().regular_module();
    let p = psi(&k, &kk).unwrap();
    assert_eq!(p.dims(), &[1]);
    assert_eq!(p.lo(), 0);

    let r = rk();
    let z = r.zeroth().unwrap();
    let e = z.r0_hull(&z.h0.simples().unwrap()[0]).unwrap().module;
    let p = psi(&r, &e).unwrap();
    assert!(p.validate().is_ok());
    assert_eq!((p.lo(), p.dims()), (0, &[2usize, 2][..]));
    assert_eq!(p.cohomology().summary().dims, vec![(0, 1), (1, 1)]);

    // H^0(ψ(K)) ≅ π^! K and ψ is DG over every battery algebra
    for r in algebras() {
        let z = r.zeroth().unwrap();
        let mut ks = vec![z.r0.regular_module(), z.r0.dual_regular_module()];
        ks.extend(z.r0.simples().unwrap());
        for k in ks {
            let p = psi(&r, &k).unwrap();
            assert!(p.validate().is_ok());
            let (pk, _) = z.pi_shriek(&k);
            assert_eq!(p.h_dim(0), pk.dim());
            let h0 = p.h_module(0).unwrap();
            assert_eq!(h0.hom_dim(&pk), pk.hom_dim(&pk));
        }
    }
}

#[test]
fn heart_embed_fixtures() {
    let t = Arc::new(builtins::triangular(f(), 2).unwrap());
    let h = builtins::heart_h0(&t).unwrap();
    assert_eq!(h.dims(), DgModule::regular(t.clone()).dims());
    let r = rk();
    let k = builtins::heart_simple(&r, 0).unwrap();
    assert_eq!(k.dims(), &[1]);
    // x is basis element 1 of R^0
    assert!(k.act(0, 0, 1).is_zero());
    assert!(k.act(0, 0, 0).is_identity());
    let z = r.zeroth().unwrap();
    let zero = heart_embed(&r, &FdModule::zero(z.h0.clone())).unwrap();
    assert!(zero.is_zero());
}

#[test]
fn hom_complex_fixtures() {
    for r in algebras() {
        let reg = Arc::new(DgModule::regular(r.clone()));
        let h0 = r.h0().unwrap();
        for n in modules(&r) {
            let h = hom_complex(&reg, &n);
            for i in n.degrees() {
                assert_eq!(h.complex.dim(i), n.dim(i));
                assert_eq!(h.complex.h_dim(i), n.h_dim(i));
            }
            // free source: H^0 Hom(R^2, N) = Hom_{H0}(H0^2, H^0 N)
            let f2 = Arc::new(builtins::free(&r, 2, 0));
            let lhs = hom_complex(&f2, &n).complex.h_dim(0);
            let h0n = n.h_module(0).unwrap();
            let h0f = FdModule::direct_sum(&[&h0.regular_module(), &h0.regular_module()]);
            assert_eq!(lhs, h0f.hom_dim(&h0n));
            let zero = Arc::new(DgModule::zero(r.clone()));
            assert!(hom_complex(&n, &zero).complex.dims.is_empty());
        }
    }
}

#[test]
fn hom_degree_zero_cocycles_are_morphisms() {
    let r = rk();
    let ms = modules(&r);
    for m in &ms {
        for n in &ms {
            let h = hom_complex(m, n);
            let coh = h.complex.cohomology();
            let Some(h0) = coh.get((0 - h.complex.lo) as usize) else { continue };
            for k in 0..h0.cocycles.dim() {
                let phi = h.morphism(&h0.cocycles.vectors()[k].clone());
                assert!(phi.validate().is_ok());
            }
        }
    }
}

#[test]
fn hom_into_psi_matches_pi_shriek() {
    for r in algebras() {
        let z = r.zeroth().unwrap();
        let mut ks = vec![z.r0.dual_regular_module()];
        for s in z.h0.simples().unwrap() {
            ks.push(z.r0_hull(&s).unwrap().module);
        }
        for k in ks {
            let i = Arc::new(psi(&r, &k).unwrap());
            let (pk, _) = z.pi_shriek(&k);
            for n in modules(&r) {
                let h = hom_complex(&n, &i);
                let adj = hom_r0_complex(&n, &k);
                for deg in -8..=8 {
                    assert_eq!(h.complex.dim(deg), adj.dim(deg), "component {deg}");
                    let hd = h.complex.h_dim(deg);
                    assert_eq!(hd, adj.h_dim(deg));
                    let hn = if n.h_dim(-deg) > 0 { n.h_module(-deg).unwrap().hom_dim(&pk) } else { 0 };
                    assert_eq!(hd, hn, "degree {deg}");
                }
            }
        }
    }
}

#[test]
fn tensor_fixtures() {
    for r in algebras() {
        let op = r.opposite();
        let reg = DgModule::regular(r.clone());
        let reg_op = DgModule::regular(op.clone());
        for m in modules(&r) {
            let t = tensor_complex(&m, &reg_op);
            for i in m.lo() - 1..=m.hi() + 1 {
                assert_eq!(t.dim(i), m.dim(i));
                assert_eq!(t.h_dim(i), m.h_dim(i));
            }
            let l = dualize(&m);
            let t = tensor_complex(&reg, &l);
            for i in l.lo() - 1..=l.hi() + 1 {
                assert_eq!(t.dim(i), l.dim(i));
                assert_eq!(t.h_dim(i), l.h_dim(i));
            }
        }
    }
    let r = rk();
    let k = builtins::heart_simple(&r, 0).unwrap();
    let kl = builtins::heart_simple(&r.opposite(), 0).unwrap();
    let t = tensor_complex(&k, &kl);
    assert_eq!((t.lo, t.dims.clone()), (0, vec![1]));
}

#[test]
fn duality_fixtures() {
    let k = Arc::new(builtins::field_algebra(f()).unwrap());
    let reg = DgModule::regular(k.clone());
    assert_eq!(dualize(&reg).dims(), &[1]);
    let r = rk();
    let d = dualize(&DgModule::regular(r.clone()));
    assert!(d.validate().is_ok(), "{}", d.validate());
    assert_eq!(d.cohomology().summary().dims, vec![(0, 1), (1, 1)]);
    assert!(r.opposite().validate().is_ok());
    for r in algebras() {
        for m in modules(&r) {
            let d = dualize(&m);
            assert!(d.validate().is_ok());
            for i in m.lo()..=m.hi() {
                assert_eq!(d.h_dim(-i), m.h_dim(i));
            }
            let iso = double_dual_iso(&m);
            assert!(iso.validate().is_ok(), "{}", iso.validate());
            assert!(iso.is_quasi_iso());
        }
    }
}

#[test]
fn quasi_iso_fixtures() {
    let r = rk();
    let reg = Arc::new(DgModule::regular(r.clone()));
    assert!(DgMorphism::identity(reg.clone()).is_quasi_iso());
    assert!(!DgMorphism::zero(reg.clone(), reg.clone()).is_quasi_iso());
    assert!(!aug(&r).is_quasi_iso());
    let t = Arc::new(builtins::triangular(f(), 2).unwrap());
    assert!(aug(&t).is_quasi_iso());
}

#[test]
fn t_structure_orthogonality() {
    // Hom(σ^{≤0} M, ψ(K)[n]) vanishes for n < 0 whenever K is concentrated in degree 0
    for r in algebras() {
        let z = r.zeroth().unwrap();
        let k = z.r0.dual_regular_module();
        let i = Arc::new(psi(&r, &k).unwrap());
        for m in modules(&r) {
            let (t, _) = truncate(&m, 0, Side::Below);
            let h = hom_complex(&t, &i);
            for n in -6..0 {
                assert_eq!(h.complex.h_dim(n), 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shifts_compose(a in -4i32..=4, b in -4i32..=4, which in 0usize..5) {
        let r = rk();
        let ms = modules(&r);
        let m = &ms[which % ms.len()];
        prop_assert_eq!(shift(&shift(m, a), b), shift(m, a + b));
        let s = shift(m, a);
        prop_assert!(s.validate().is_ok());
        for i in -6..=6 {
            prop_assert_eq!(s.h_dim(i), m.h_dim(i + a));
        }
    }

    #[test]
    fn random_maps_into_psi_give_triangles(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = rk();
        let ms = modules(&r);
        let m = ms[rng.gen_range(0..ms.len())].clone();
        let n = ms[rng.gen_range(0..ms.len())].clone();
        let h = hom_complex(&m, &n);
        let coh = h.complex.cohomology();
        if let Some(z) = coh.get((0 - h.complex.lo) as usize).filter(|_| h.complex.lo <= 0) {
            let mut c = vec![0u32; z.cocycles.dim()];
            for x in c.iter_mut() {
                *x = rng.gen_range(0..f().p());
            }
            let v = z.cocycles.inclusion().mul_vec(&c);
            let phi = h.morphism(&v);
            prop_assert!(phi.validate().is_ok());
            let cn = cone(&phi);
            prop_assert!(cn.module.validate().is_ok());
            let total: i64 = (-8..=8).map(|i| cn.module.h_dim(i) as i64).sum();
            let bound: i64 = (-8..=8).map(|i| (m.h_dim(i) + n.h_dim(i)) as i64).sum();
            prop_assert!(total <= bound);
        }
    }
}
