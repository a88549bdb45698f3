//! Acceptance battery. Prints one line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dgres_core::builtins;
use dgres_core::derived::{
    concentration_scan, heart_battery, hom_table_via_ifij, hom_table_via_sppj, ifij_for_hom, ltensor, rhom,
    spft_for_tor, sppj_for_hom, tor_table_via_spft,
};
use dgres_core::dgcore::{dualize, heart_embed, hom_complex, psi, shift, DgAlgebra, DgModule};
use dgres_core::exactla::Field;
use dgres_core::heartkit::{injective_envelope, is_injective, is_projective, projective_cover, FdModule};
use dgres_core::resolve::{
    fd, gldim, gorenstein_check, injdim, pd, pd_with, semisimple_zero_check, Dim, SppjResolution, StepMode,
    StopRule,
};

type Res = Result<String, String>;

const CAP: usize = 16;
const WINDOW: (i32, i32) = (-6, 10);

fn f() -> Field {
    Field::default()
}

fn arc(a: dgres_core::Result<DgAlgebra>) -> Arc<DgAlgebra> {
    Arc::new(a.expect("builtin algebra"))
}

fn battery() -> Vec<(&'static str, Arc<DgAlgebra>)> {
    let k = builtins::field_algebra(f()).unwrap();
    vec![
        ("field", arc(builtins::field_algebra(f()))),
        ("field x field", arc(builtins::product(&k, &k))),
        ("matrix(2)", arc(builtins::matrix(f(), 2))),
        ("k[x]/(x^2)", arc(builtins::nilpotent(f(), 2))),
        ("triangular(2)", arc(builtins::triangular(f(), 2))),
        ("R_K", arc(builtins::koszul_rk(f()))),
        ("koszul(x^2; k[x]/(x^3))", arc(builtins::koszul(f(), &[vec![0, 0, 1]], 3))),
    ]
}

fn modules(r: &Arc<DgAlgebra>) -> Vec<(String, Arc<DgModule>)> {
    let mut out = vec![
        ("R".to_string(), Arc::new(DgModule::regular(r.clone()))),
        ("M_(1)".to_string(), Arc::new(builtins::m_of(r, 1))),
        ("M_(-2)".to_string(), Arc::new(builtins::m_of(r, -2))),
        ("H0".to_string(), Arc::new(builtins::heart_h0(r).unwrap())),
    ];
    for i in 0..r.h0().unwrap().num_simples().unwrap() {
        out.push((format!("S_{i}"), Arc::new(builtins::heart_simple(r, i).unwrap())));
        out.push((format!("psi(S_{i})"), Arc::new(builtins::psi_simple(r, i).unwrap())));
    }
    out
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn e<T>(r: dgres_core::Result<T>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

// classical dimensions of an ordinary module by syzygies and cosyzygies
fn classical_pd(n: &FdModule, cap: usize) -> Option<i32> {
    let mut cur = n.clone();
    for k in 0..cap {
        if cur.is_zero() || is_projective(&cur).unwrap() {
            return Some(k as i32);
        }
        let c = projective_cover(&cur).unwrap();
        cur = c.module.submodule(&c.kernel).0;
    }
    None
}

fn classical_injdim(n: &FdModule, cap: usize) -> Option<i32> {
    let mut cur = n.clone();
    for k in 0..cap {
        if cur.is_zero() || is_injective(&cur).unwrap() {
            return Some(k as i32);
        }
        let env = injective_envelope(&cur).unwrap();
        cur = env.module.quotient(&env.map.image()).0;
    }
    None
}

fn c1() -> Res {
    let rs = [
        ("R_K", arc(builtins::koszul_rk(f()))),
        ("triangular(2)", arc(builtins::triangular(f(), 2))),
        ("k[x]/(x^2)", arc(builtins::nilpotent(f(), 2))),
    ];
    for (name, r) in &rs {
        for n in 0..=5 {
            let m = Arc::new(builtins::m_of(r, n));
            for (label, mode) in [("short", StepMode::Minimal), ("long", StepMode::Padded(1))] {
                let rep = e(pd_with(&m, CAP, mode))?;
                let (Some(st), Some(s0), Some(se)) = (rep.terminal_stage, rep.anchor, rep.terminal_anchor) else {
                    return Err(format!("{name} n={n} {label}: no terminal stage"));
                };
                let formula = st as i32 + s0 - se;
                ensure(rep.status == Dim::Exact(n) && formula == n, || {
                    format!("{name} n={n} {label}: {} with e={st} sup P0={s0} sup M_e={se}", rep.status)
                })?;
                if label == "long" && n > 0 {
                    ensure(st == n as usize, || format!("{name} n={n}: long resolution has length {st}"))?;
                }
            }
        }
    }
    Ok("3 algebras x n=0..5, short and long, d = e + sup P0 - sup M_e".into())
}

fn c2() -> Res {
    let r = arc(builtins::triangular(f(), 2));
    let h0 = e(r.h0())?;
    let g = e(gldim(&r, CAP))?;
    let mut got = Vec::new();
    let mut want = Vec::new();
    for (i, s) in e(h0.simples())?.iter().enumerate() {
        let m = Arc::new(e(heart_embed(&r, s))?);
        got.push((e(pd(&m, CAP))?.status.exact(), e(injdim(&m, CAP))?.status.exact()));
        want.push((classical_pd(s, CAP), classical_injdim(s, CAP)));
        ensure(g.projective[i].status.exact() == want[i].0, || format!("gldim report simple {i}"))?;
    }
    let classical_gl = want.iter().map(|w| w.0.unwrap()).max();
    ensure(got == want, || format!("dg {got:?} vs classical {want:?}"))?;
    ensure(g.status.exact() == classical_gl && classical_gl == Some(1), || format!("gldim {}", g.status))?;
    let mut pair = got.clone();
    pair.sort();
    ensure(pair == [(Some(0), Some(1)), (Some(1), Some(0))], || format!("{pair:?}"))?;
    let shown: Vec<String> = pair.iter().map(|(p, i)| format!("({}, {})", p.unwrap(), i.unwrap())).collect();
    Ok(format!("gldim 1, simples (pd, injdim) {} match the classical oracle", shown.join(" ")))
}

// sup of the next stage predicted from the long exact sequence of the step
fn predicted_next_sup(step: &dgres_core::resolve::SppjStep) -> Option<i32> {
    let src = step.f.source();
    let tgt = step.f.target();
    let lo = src.lo().min(tgt.lo()) - 1;
    let hi = src.hi().max(tgt.hi()) + 1;
    (lo..=hi)
        .rev()
        .find(|&j| {
            let h = step.f.h_map(j);
            let ker = src.h_dim(j) - h.rank();
            let hp = step.f.h_map(j - 1);
            let coker = tgt.h_dim(j - 1) - hp.rank();
            ker + coker > 0
        })
}

fn c3() -> Res {
    let mut notes = Vec::new();
    for (name, r, drop) in [
        ("k[x]/(x^2)", arc(builtins::nilpotent(f(), 2)), 0),
        ("R_K", arc(builtins::koszul_rk(f())), 1),
    ] {
        let k = Arc::new(e(builtins::heart_simple(&r, 0))?);
        let rep = e(pd(&k, CAP))?;
        ensure(rep.status == Dim::AtLeast(CAP), || format!("{name}: pd {}", rep.status))?;
        let res = e(SppjResolution::build(&k, StepMode::Minimal, CAP - 1, StopRule::Projective))?;
        let sups: Vec<i32> = res.modules.iter().map(|m| m.sup().unwrap()).collect();
        for (i, st) in res.steps.iter().enumerate() {
            let p = predicted_next_sup(st);
            ensure(p == Some(sups[i + 1]), || format!("{name} stage {}: predicted {p:?}, got {}", i + 1, sups[i + 1]))?;
        }
        ensure(sups.windows(2).all(|w| w[0] - w[1] == drop), || format!("{name}: {sups:?}"))?;
        ensure(rep.anchors().iter().map(|a| a.unwrap()).eq(sups.iter().copied()), || format!("{name}: report anchors"))?;
        let shape = if drop == 0 { "constant" } else { "down by 1 per stage" };
        notes.push(format!("{name} sups {}..{} {shape}", sups[0], sups[sups.len() - 1]));
    }
    Ok(format!("at_least(16) on both; {}; every stage matches the exact-sequence prediction", notes.join(", ")))
}

fn c4() -> Res {
    let mut count = 0;
    let mut routes = 0;
    for (an, r) in battery() {
        let bat = e(heart_battery(&r))?;
        for (mn, m) in modules(&r) {
            let sp = e(sppj_for_hom(&m, WINDOW.1))?;
            let inj = e(ifij_for_hom(&m, WINDOW.1))?;
            for (k, n) in bat.iter().enumerate() {
                let hn = Arc::new(e(heart_embed(&r, n))?);
                let a = e(rhom(&m, &hn, WINDOW))?;
                let b = e(hom_table_via_sppj(n, &sp, WINDOW))?;
                ensure(a.agrees(&b), || format!("{an} {mn} -> N{k}: {:?} vs {:?}", a.dims, b.dims))?;
                let c = e(rhom(&hn, &m, WINDOW))?;
                let d = e(hom_table_via_ifij(n, &inj, WINDOW))?;
                ensure(c.agrees(&d), || format!("{an} N{k} -> {mn}: {:?} vs {:?}", c.dims, d.dims))?;
                count += 2;
                routes += 4;
            }
        }
    }
    Ok(format!("{count} tables, {routes} route evaluations on [-6, 10]"))
}

fn c5() -> Res {
    let mut count = 0;
    for (an, r) in battery() {
        let z = e(r.zeroth())?;
        let mut ks = vec![z.r0.dual_regular_module()];
        for s in e(z.h0.simples())? {
            ks.push(e(z.r0_hull(&s))?.module);
        }
        for (ki, kk) in ks.iter().enumerate() {
            let i = e(psi(&r, kk))?;
            let (pk, _) = z.pi_shriek(kk);
            for (mn, n) in modules(&r) {
                for s in -2..=2 {
                    let is = Arc::new(shift(&i, s));
                    let h = hom_complex(&n, &is).complex;
                    for deg in WINDOW.0..=WINDOW.1 {
                        let j = -deg - s;
                        let want = if n.h_dim(j) > 0 { e(n.h_module(j))?.hom_dim(&pk) } else { 0 };
                        ensure(h.h_dim(deg) == want, || {
                            format!("{an} {mn} K{ki} s={s} n={deg}: {} vs {want}", h.h_dim(deg))
                        })?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} degrees, H^n Hom(N, psi(K)[s]) = Hom(H^(-n-s) N, pi^! K)"))
}

// a random H0-module of composition length at most 3: a subquotient of H0 + D(H0)
fn random_heart_module(h0: &Arc<dgres_core::heartkit::OrdinaryAlgebra>, rng: &mut ChaCha8Rng) -> FdModule {
    let p = h0.field().p();
    let big = FdModule::direct_sum(&[&h0.regular_module(), &h0.dual_regular_module()]);
    loop {
        let v: Vec<u32> = (0..big.dim()).map(|_| rng.gen_range(0..p)).collect();
        let (sub, _) = big.submodule(&big.spin(&[v]));
        let cut: Vec<u32> = (0..sub.dim()).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0..p) } else { 0 }).collect();
        let rad = sub.radical_submodule().unwrap();
        let w = if rng.gen_bool(0.5) { sub.spin(&[cut]) } else { rad };
        let (q, _) = sub.quotient(&w);
        let len: usize = q.composition_multiplicities().unwrap().iter().sum();
        if (1..=3).contains(&len) {
            return q;
        }
    }
}

fn c6() -> Res {
    let mut checked = Vec::new();
    for (an, r) in battery() {
        let g = e(gldim(&r, CAP))?;
        let all_exact = g.projective.iter().chain(&g.injective).all(|d| d.status.is_exact());
        if all_exact {
            ensure(g.status == g.injective_status, || format!("{an}: {} vs {}", g.status, g.injective_status))?;
            checked.push(an);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let exact: Vec<Arc<DgAlgebra>> = [
        builtins::triangular(f(), 2),
        builtins::triangular(f(), 3),
        builtins::matrix(f(), 2),
        builtins::product(&builtins::triangular(f(), 2).unwrap(), &builtins::field_algebra(f()).unwrap()),
    ]
    .into_iter()
    .map(arc)
    .collect();
    let gls: Vec<i32> = exact.iter().map(|r| gldim(r, CAP).unwrap().status.exact().unwrap()).collect();
    for t in 0..20 {
        let r = &exact[t % exact.len()];
        let n = random_heart_module(&e(r.h0())?, &mut rng);
        let m = Arc::new(e(heart_embed(r, &n))?);
        let gl = gls[t % exact.len()];
        let p = e(pd(&m, CAP))?.status.exact();
        let i = e(injdim(&m, CAP))?.status.exact();
        ensure(p.is_some_and(|p| p <= gl) && i.is_some_and(|i| i <= gl), || {
            format!("random module {t} (dim {}): pd {p:?} injdim {i:?} gldim {gl}", n.dim())
        })?;
    }
    Ok(format!("max pd = max injdim on {}; 20 random heart modules within gldim", checked.join(", ")))
}

fn c7() -> Res {
    let mut count = 0;
    for (an, r) in battery() {
        for (mn, m) in modules(&r) {
            let a = e(injdim(&m, CAP))?.status;
            let b = e(pd(&Arc::new(dualize(&m)), CAP))?.status;
            if a.is_exact() && b.is_exact() {
                ensure(a == b, || format!("{an} {mn}: {a} vs {b}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} modules with both sides exact"))
}

fn c8() -> Res {
    let zero = ["field", "field x field", "matrix(2)"];
    for (an, r) in battery() {
        let holds = e(semisimple_zero_check(&r))?.holds;
        let g = e(gldim(&r, CAP))?.status;
        ensure(holds == zero.contains(&an), || format!("{an}: check {holds}"))?;
        ensure(holds == (g == Dim::Exact(0)), || format!("{an}: check {holds}, gldim {g}"))?;
    }
    Ok("true on field, field x field, matrix(2); false on the other 4".into())
}

fn c9() -> Res {
    let mut vals = Vec::new();
    for (an, r, want) in [
        ("field", arc(builtins::field_algebra(f())), 0),
        ("k[x]/(x^2)", arc(builtins::nilpotent(f(), 2)), 0),
        ("triangular(2)", arc(builtins::triangular(f(), 2)), 1),
    ] {
        let g = e(gorenstein_check(&r, CAP))?;
        let h0 = e(r.h0())?;
        let right = classical_injdim(&h0.regular_module(), CAP);
        let left = classical_injdim(&h0.opposite().regular_module(), CAP);
        ensure(g.gorenstein && g.agree, || format!("{an}: gorenstein {} agree {}", g.gorenstein, g.agree))?;
        ensure(g.right.status.exact() == right && g.left.status.exact() == left, || {
            format!("{an}: {} / {} vs classical {right:?} / {left:?}", g.right.status, g.left.status)
        })?;
        let v = right.unwrap();
        ensure(if want == 0 { v == 0 } else { v <= want }, || format!("{an}: value {v}"))?;
        vals.push(format!("{an} {v}"));
    }
    Ok(format!("finite: {}", vals.join(", ")))
}

fn c10() -> Res {
    let mut count = 0;
    let mut tor = 0;
    for (an, r) in battery() {
        let h0op = e(r.h0())?.opposite();
        let op = r.opposite();
        let lefts = e(e(op.h0())?.simples())?;
        for (mn, m) in modules(&r) {
            let a = e(fd(&m, CAP))?.status;
            let b = e(pd(&m, CAP))?.status;
            ensure(a == b, || format!("{an} {mn}: fd {a} pd {b}"))?;
            count += 1;
            let res = e(spft_for_tor(&m, WINDOW.1))?;
            for l in &lefts {
                let hl = Arc::new(e(heart_embed(&op, l))?);
                let x = e(ltensor(&m, &hl, WINDOW))?;
                let y = e(tor_table_via_spft(&l.with_algebra(h0op.clone()), &res, WINDOW))?;
                ensure(x.agrees(&y), || format!("{an} {mn}: {:?} vs {:?}", x.dims, y.dims))?;
                tor += 1;
            }
        }
    }
    Ok(format!("fd = pd on {count} modules; {tor} Tor tables agree with ltensor"))
}

fn c11() -> Res {
    let mut count = 0;
    for (an, r) in battery() {
        let bat = e(heart_battery(&r))?;
        for (mn, m) in modules(&r) {
            let Dim::Exact(d) = e(pd(&m, CAP))?.status else { continue };
            let s = m.sup().unwrap();
            // support recomputed from the tables, not taken from the scan
            let mut sup: Option<(i32, i32)> = None;
            for n in &bat {
                let t = e(rhom(&m, &Arc::new(e(heart_embed(&r, n))?), WINDOW))?;
                if let Some((x, y)) = t.support() {
                    sup = Some(sup.map_or((x, y), |(a, b)| (a.min(x), b.max(y))));
                }
            }
            let Some((lo, hi)) = sup else { return Err(format!("{an} {mn}: empty support")) };
            ensure(lo >= -s && hi <= d - s && hi == d - s, || {
                format!("{an} {mn}: support [{lo}, {hi}] vs [{}, {}]", -s, d - s)
            })?;
            let c = e(concentration_scan(&m, &bat, WINDOW, CAP))?;
            ensure(c.support == sup && c.endpoint_attained == Some(true), || format!("{an} {mn}: scan disagrees"))?;
            count += 1;
        }
    }
    Ok(format!("{count} modules with exact pd, right endpoint attained"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Res); 11] = [
        ("pd M_(n) = n, short and long resolutions", c1),
        ("triangular(2) against classical resolutions", c2),
        ("infinite pd detection and stage sups", c3),
        ("three Hom routes agree", c4),
        ("Hom into psi(K) shifts", c5),
        ("global dimension from simples", c6),
        ("injdim by duality", c7),
        ("global dimension zero", c8),
        ("Gorenstein values", c9),
        ("fd = pd and the Tor slot formula", c10),
        ("concentration endpoints", c11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [tolerance: exact] ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [tolerance: exact] ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
