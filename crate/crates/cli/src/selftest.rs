//! Invariant battery run by `dgres selftest`.

use std::sync::Arc;

use serde::Serialize;

use dgres_core::builtins;
use dgres_core::derived::{
    concentration_scan, heart_battery, hom_table_via_ifij, hom_table_via_sppj, ifij_for_hom, ltensor, rhom,
    spft_for_tor, sppj_for_hom, tor_table_via_spft,
};
use dgres_core::dgcore::{cone, dualize, heart_embed, hom_complex, DgAlgebra, DgModule, DgMorphism};
use dgres_core::exactla::Field;
use dgres_core::resolve::{
    fd, gldim, gorenstein_check, injdim, pd, pd_with, semisimple_zero_check, Dim, StepMode,
};

use crate::format::{self, ParseOptions};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

const WINDOW: (i32, i32) = (-6, 10);

type Outcome = dgres_core::Result<(bool, String)>;

fn algebras(seed: u64) -> Vec<(&'static str, Arc<DgAlgebra>)> {
    let f = Field::default();
    let list: Vec<(&'static str, dgres_core::Result<DgAlgebra>)> = vec![
        ("field", builtins::field_algebra(f)),
        ("field x field", builtins::field_algebra(f).and_then(|a| builtins::product(&a, &a))),
        ("matrix(2)", builtins::matrix(f, 2)),
        ("nilpotent(2)", builtins::nilpotent(f, 2)),
        ("triangular(2)", builtins::triangular(f, 2)),
        ("R_K", builtins::koszul_rk(f)),
        ("koszul(x^2; k[x]/(x^3))", builtins::koszul(f, &[vec![0, 0, 1]], 3)),
    ];
    list.into_iter()
        .map(|(n, a)| (n, Arc::new(a.expect("builtin algebra").with_seed(seed))))
        .collect()
}

fn modules(r: &Arc<DgAlgebra>) -> dgres_core::Result<Vec<(String, Arc<DgModule>)>> {
    let mut out = vec![
        ("regular".to_string(), Arc::new(DgModule::regular(r.clone()))),
        ("M_of(1)".to_string(), Arc::new(builtins::m_of(r, 1))),
        ("M_of(-2)".to_string(), Arc::new(builtins::m_of(r, -2))),
        ("heart(H0)".to_string(), Arc::new(builtins::heart_h0(r)?)),
    ];
    for i in 0..r.h0()?.num_simples()? {
        out.push((format!("heart(S_{i})"), Arc::new(builtins::heart_simple(r, i)?)));
    }
    Ok(out)
}

fn each_algebra(seed: u64, mut f: impl FnMut(&str, &Arc<DgAlgebra>) -> Outcome) -> Outcome {
    for (n, r) in algebras(seed) {
        let (ok, why) = f(n, &r)?;
        if !ok {
            return Ok((false, format!("{n}: {why}")));
        }
    }
    Ok((true, String::new()))
}

fn each_module(seed: u64, mut f: impl FnMut(&Arc<DgAlgebra>, &Arc<DgModule>) -> Outcome) -> Outcome {
    each_algebra(seed, |_, r| {
        for (mn, m) in modules(r)? {
            let (ok, why) = f(r, &m)?;
            if !ok {
                return Ok((false, format!("{mn}: {why}")));
            }
        }
        Ok((true, String::new()))
    })
}

fn pass() -> Outcome {
    Ok((true, String::new()))
}

fn check(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    let (passed, detail) = match f() {
        Ok((true, _)) => (true, String::new()),
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    Check { name: name.to_string(), passed, detail }
}

pub fn run(cap: usize, seed: u64) -> Vec<Check> {
    let cap = cap.max(4);
    vec![
        check("algebra tables validate", || each_algebra(seed, |_, r| Ok((r.validate().is_ok(), "violations".into())))),
        check("module tables validate", || {
            each_module(seed, |_, m| Ok((m.validate().is_ok(), m.validate().summary())))
        }),
        check("rank plus nullity", || {
            each_algebra(seed, |_, r| {
                for i in r.degrees() {
                    for j in r.degrees().filter(|&j| i + j >= r.low()) {
                        for b in 0..r.dim(j) {
                            let m = r.right_mult(i, j, b);
                            if m.rank() + m.kernel().dim() != m.cols() {
                                return Ok((false, format!("right multiplication ({i},{j},{b})")));
                            }
                        }
                    }
                }
                pass()
            })
        }),
        check("cone of the identity is acyclic", || {
            each_module(seed, |_, m| Ok((cone(&DgMorphism::identity(m.clone())).module.is_acyclic(), String::new())))
        }),
        check("wedderburn count for H0", || {
            each_algebra(seed, |_, r| {
                let h0 = r.h0()?;
                let top = h0.dim() - h0.radical()?.dim();
                let simples: usize = h0.simples()?.iter().map(|s| s.dim() * s.dim()).sum();
                Ok((top == simples, format!("{top} vs {simples}")))
            })
        }),
        check("psi targets need no resolution", || {
            each_module(seed, |r, m| {
                for i in 0..r.h0()?.num_simples()? {
                    let psi = Arc::new(builtins::psi_simple(r, i)?);
                    let direct = hom_complex(m, &psi).complex;
                    let t = rhom(m, &psi, WINDOW)?;
                    if t.dims.iter().any(|&(n, d)| direct.h_dim(n) != d) {
                        return Ok((false, format!("simple {i}")));
                    }
                }
                pass()
            })
        }),
        check("pd of R + R[n] is n", || {
            each_algebra(seed, |_, r| {
                for n in 0..=3 {
                    let m = Arc::new(builtins::m_of(r, n));
                    let a = pd(&m, cap)?.status;
                    let b = pd_with(&m, cap, StepMode::NonMinimal)?.status;
                    if a != Dim::Exact(n) || b != Dim::Exact(n) {
                        return Ok((false, format!("n={n}: {a} / {b}")));
                    }
                }
                pass()
            })
        }),
        check("triangular(2) dimensions", || {
            let r = Arc::new(builtins::triangular(Field::default(), 2)?.with_seed(seed));
            let g = gldim(&r, cap)?;
            let mut p: Vec<Dim> = g.projective.iter().map(|d| d.status).collect();
            p.sort_by_key(|d| d.exact());
            Ok((g.status == Dim::Exact(1) && p == [Dim::Exact(0), Dim::Exact(1)], format!("{} {p:?}", g.status)))
        }),
        check("residue field of R_K has infinite pd", || {
            let r = Arc::new(builtins::koszul_rk(Field::default())?.with_seed(seed));
            let k = Arc::new(builtins::heart_simple(&r, 0)?);
            let d = pd(&k, cap)?.status;
            Ok((d == Dim::AtLeast(cap), d.to_string()))
        }),
        check("injdim is pd over the opposite of the dual", || {
            each_module(seed, |_, m| {
                let a = injdim(m, cap)?.status;
                let b = pd(&Arc::new(dualize(m)), cap)?.status;
                Ok((!(a.is_exact() && b.is_exact()) || a == b, format!("{a} vs {b}")))
            })
        }),
        check("fd equals pd", || {
            each_module(seed, |_, m| {
                let a = fd(m, cap)?.status;
                let b = pd(m, cap)?.status;
                Ok((a == b, format!("{a} vs {b}")))
            })
        }),
        check("three Hom routes agree", || {
            each_module(seed, |r, m| {
                let sp = sppj_for_hom(m, WINDOW.1)?;
                let inj = ifij_for_hom(m, WINDOW.1)?;
                for n in heart_battery(r)? {
                    let hn = Arc::new(heart_embed(r, &n)?);
                    if !rhom(m, &hn, WINDOW)?.agrees(&hom_table_via_sppj(&n, &sp, WINDOW)?) {
                        return Ok((false, "sppj".into()));
                    }
                    if !rhom(&hn, m, WINDOW)?.agrees(&hom_table_via_ifij(&n, &inj, WINDOW)?) {
                        return Ok((false, "ifij".into()));
                    }
                }
                pass()
            })
        }),
        check("Tor slot formula matches the derived tensor", || {
            each_module(seed, |r, m| {
                let res = spft_for_tor(m, WINDOW.1)?;
                let h0op = r.h0()?.opposite();
                for l in r.opposite().h0()?.simples()? {
                    let hl = Arc::new(heart_embed(&r.opposite(), &l)?);
                    let a = ltensor(m, &hl, WINDOW)?;
                    let b = tor_table_via_spft(&l.with_algebra(h0op.clone()), &res, WINDOW)?;
                    if !a.agrees(&b) {
                        return Ok((false, format!("{:?} vs {:?}", a.dims, b.dims)));
                    }
                }
                pass()
            })
        }),
        check("global dimension zero test", || {
            each_algebra(seed, |_, r| {
                let s = semisimple_zero_check(r)?.holds;
                let g = gldim(r, cap)?.status;
                Ok((s == (g == Dim::Exact(0)), format!("check {s}, gldim {g}")))
            })
        }),
        check("finite Gorenstein dimensions agree", || {
            each_algebra(seed, |_, r| {
                let g = gorenstein_check(r, cap)?;
                Ok((!g.gorenstein || g.agree, format!("{} vs {}", g.right.status, g.left.status)))
            })
        }),
        check("concentration endpoints", || {
            each_module(seed, |r, m| {
                let c = concentration_scan(m, &heart_battery(r)?, WINDOW, cap)?;
                let ok = !c.pd.is_exact() || (c.within_bound != Some(false) && c.endpoint_attained != Some(false));
                Ok((ok, format!("{:?} {:?}", c.support, c.bound)))
            })
        }),
        check("text format round trip", || {
            each_module(seed, |r, m| {
                let text = format!(
                    "prime {}\n{}{}",
                    r.field().p(),
                    format::emit_algebra(r),
                    format::emit_module("M", m)
                );
                let opts = ParseOptions { seed, ..Default::default() };
                let doc = format::parse(&text, &opts).map_err(|e| dgres_core::Error::Invalid(e.to_string()))?;
                let same = *doc.algebra == **r && doc.modules[0].module.cohomology().summary() == m.cohomology().summary();
                Ok((same && format::emit(&doc) == text, String::new()))
            })
        }),
    ]
}
