use std::sync::Arc;

use serde::Serialize;

use crate::dgcore::{heart_embed, DgModule};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::heartkit::{tensor_map, tensor_over, FdModule};
use crate::resolve::{pd, Dim, IfijResolution, SppjResolution, StepMode, StopRule};

use super::semifree::semifree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Semifree,
    Sppj,
    Ifij,
    Spft,
    Direct,
}

/// Dimensions on a window `[a, b]`: `dim H^n RHom(M, N)` for Hom tables,
/// `dim H^{-n}(M ⊗^L L)` for Tor tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub route: Route,
    pub window: (i32, i32),
    pub dims: Vec<(i32, usize)>,
}

pub type HomTable = Table;
pub type TorTable = Table;

impl Table {
    fn new(route: Route, (a, b): (i32, i32), mut val: impl FnMut(i32) -> usize) -> Table {
        Table { route, window: (a, b), dims: (a..=b).map(|n| (n, val(n))).collect() }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.iter().find(|&&(i, _)| i == n).map_or(0, |&(_, d)| d)
    }

    /// Same numbers regardless of route.
    pub fn agrees(&self, other: &Table) -> bool {
        self.window == other.window && self.dims == other.dims
    }

    /// Smallest and largest `n` with a nonzero entry.
    pub fn support(&self) -> Option<(i32, i32)> {
        let nz: Vec<i32> = self.dims.iter().filter(|&&(_, d)| d > 0).map(|&(n, _)| n).collect();
        Some((*nz.first()?, *nz.last()?))
    }
}

fn check_window((a, b): (i32, i32)) -> Result<()> {
    if a > b {
        return Err(Error::Invalid(format!("empty window [{a}, {b}]")));
    }
    Ok(())
}

/// `H^n RHom(M, N)` for `n` in the window, through a semifree resolution of `M`.
pub fn rhom(m: &Arc<DgModule>, n: &Arc<DgModule>, window: (i32, i32)) -> Result<HomTable> {
    check_window(window)?;
    let (a, b) = window;
    if n.is_zero() || m.is_acyclic() {
        return Ok(Table::new(Route::Semifree, window, |_| 0));
    }
    // generators below the floor only touch Hom degrees above b + 1
    let floor = n.lo() - b - 2;
    let res = semifree(m, floor);
    let k = res.hom_into(n, a - 1, b + 1);
    let h = k.h_dims();
    Ok(Table::new(Route::Semifree, window, |d| h[(d - a + 1) as usize].1))
}

/// `H^{-n}(M ⊗^L L)` for `n` in the window, with `L` a module over `R^op`.
pub fn ltensor(m: &Arc<DgModule>, l: &Arc<DgModule>, window: (i32, i32)) -> Result<TorTable> {
    check_window(window)?;
    let (a, b) = window;
    if l.is_zero() || m.is_acyclic() {
        return Ok(Table::new(Route::Semifree, window, |_| 0));
    }
    // cohomological degrees -b..=-a; generators below the floor only reach degrees < -b - 1
    let floor = -b - l.hi() - 2;
    let res = semifree(m, floor);
    let k = res.tensor_with(l, -b - 1, -a + 1);
    let h = k.h_dims();
    Ok(Table::new(Route::Semifree, window, |n| h[(-n + b + 1) as usize].1))
}

fn span_rank(f: crate::exactla::Field, len: usize, vs: Vec<Vec<u32>>) -> usize {
    Subspace::from_vectors(f, len, &vs).dim()
}

/// The positions `i - sup P_i` are pairwise distinct, and `n_i + 1 = n_j`
/// happens only for `j = i + 1` with equal sups.
pub fn slot_arithmetic_holds(sups: &[i32]) -> bool {
    let slots: Vec<i32> = sups.iter().enumerate().map(|(i, s)| i as i32 - s).collect();
    for i in 0..slots.len() {
        for j in 0..slots.len() {
            if i != j && slots[i] == slots[j] {
                return false;
            }
            let touch = slots[i] + 1 == slots[j];
            if touch != (j == i + 1 && sups[i] == sups[j]) {
                return false;
            }
        }
    }
    true
}

/// Free-term sups of the stages that carry a free term.
fn sppj_sups(res: &SppjResolution) -> Vec<i32> {
    (0..res.len()).map_while(|i| res.free_sup(i)).collect()
}

/// Steps needed for every slot `<= b` to be determined.
pub fn sppj_for_hom(m: &Arc<DgModule>, b: i32) -> Result<SppjResolution> {
    let s0 = m.sup().unwrap_or(0);
    let steps = (b + s0 + 2).max(1) as usize;
    SppjResolution::build(m, StepMode::Minimal, steps, StopRule::Projective)
}

/// Hom through the case split on adjacent sups of an sppj resolution.
pub fn hom_table_via_sppj(n: &FdModule, res: &SppjResolution, window: (i32, i32)) -> Result<HomTable> {
    check_window(window)?;
    let (_, b) = window;
    let sups = sppj_sups(res);
    if !res.terminal {
        let last = res.steps.len();
        if last == 0 || (last as i32 - 1) - sups[last - 1] <= b {
            return Err(Error::ExtendResolution(format!("slots up to {b} need more stages than the {last} computed")));
        }
    }
    // usable stages: all when terminal, otherwise those whose successor is known
    let usable = if res.terminal { sups.len() } else { sups.len() - 1 };
    let f = n.field();
    let hp: Vec<FdModule> =
        (0..sups.len()).map(|i| res.free_term(i).h_module(sups[i])).collect::<Result<_>>()?;
    let homs: Vec<Vec<Mat>> = hp.iter().map(|h| h.hom_space(n)).collect();
    // rank of φ -> φ ∘ H(δ_i) from E_{i-1} to E_i
    let alpha = |i: usize| -> usize {
        let d = res.delta_h(i, sups[i]);
        let len = n.dim() * hp[i].dim();
        span_rank(f, len, homs[i - 1].iter().map(|p| p.mul(&d).data().to_vec()).collect())
    };
    let mut val = std::collections::BTreeMap::new();
    for i in 0..usable {
        let mut v = homs[i].len();
        if i + 1 < sups.len() && sups[i + 1] == sups[i] {
            v -= alpha(i + 1);
        }
        if i > 0 && sups[i - 1] == sups[i] {
            v -= alpha(i);
        }
        val.insert(i as i32 - sups[i], v);
    }
    Ok(Table::new(Route::Sppj, window, |d| *val.get(&d).unwrap_or(&0)))
}

pub fn ifij_for_hom(m: &Arc<DgModule>, b: i32) -> Result<IfijResolution> {
    let t0 = m.inf().unwrap_or(0);
    let steps = (b - t0 + 2).max(1) as usize;
    IfijResolution::build(m, StepMode::Minimal, steps, true)
}

/// `H^n RHom(N, M)` through the case split on adjacent infs of an ifij resolution of `M`.
pub fn hom_table_via_ifij(n: &FdModule, res: &IfijResolution, window: (i32, i32)) -> Result<HomTable> {
    check_window(window)?;
    let (_, b) = window;
    let infs: Vec<i32> = (0..res.len()).map_while(|i| res.injective_inf(i)).collect();
    if !res.terminal {
        let last = res.steps.len();
        if last == 0 || (last as i32 - 1) + infs[last - 1] <= b {
            return Err(Error::ExtendResolution(format!("slots up to {b} need more stages than the {last} computed")));
        }
    }
    let usable = if res.terminal { infs.len() } else { infs.len() - 1 };
    let f = n.field();
    let hi: Vec<FdModule> =
        (0..infs.len()).map(|i| res.injective_term(i).h_module(infs[i])).collect::<Result<_>>()?;
    let homs: Vec<Vec<Mat>> = hi.iter().map(|h| n.hom_space(h)).collect();
    // rank of ψ -> H(δ) ∘ ψ from E_i to E_{i+1}
    let beta = |i: usize| -> usize {
        let d = res.delta_h(i, infs[i]);
        let len = hi[i + 1].dim() * n.dim();
        span_rank(f, len, homs[i].iter().map(|p| d.mul(p).data().to_vec()).collect())
    };
    let mut val = std::collections::BTreeMap::new();
    for i in 0..usable {
        let mut v = homs[i].len();
        if i + 1 < infs.len() && infs[i + 1] == infs[i] {
            v -= beta(i);
        }
        if i > 0 && infs[i - 1] == infs[i] {
            v -= beta(i - 1);
        }
        val.insert(i as i32 + infs[i], v);
    }
    Ok(Table::new(Route::Ifij, window, |d| *val.get(&d).unwrap_or(&0)))
}

/// Steps needed for every Tor index `<= b`, i.e. cohomological degree `>= -b`.
pub fn spft_for_tor(m: &Arc<DgModule>, b: i32) -> Result<SppjResolution> {
    let s0 = m.sup().unwrap_or(0);
    let steps = (s0 + b + 2).max(1) as usize;
    SppjResolution::build(m, StepMode::Minimal, steps, StopRule::Flat)
}

/// Tor through the case split: `H^{s_i - i}(M ⊗^L L)` from `H^{s}(P_•) ⊗_{H^0} L`.
pub fn tor_table_via_spft(l: &FdModule, res: &SppjResolution, window: (i32, i32)) -> Result<TorTable> {
    check_window(window)?;
    let (_, b) = window;
    let sups = sppj_sups(res);
    if !res.terminal {
        let last = res.steps.len();
        // Tor index of stage i is i - s_i
        if last == 0 || (last as i32 - 1) - sups[last - 1] <= b {
            return Err(Error::ExtendResolution(format!("Tor indices up to {b} need more stages than the {last} computed")));
        }
    }
    let usable = if res.terminal { sups.len() } else { sups.len() - 1 };
    let hp: Vec<FdModule> =
        (0..sups.len()).map(|i| res.free_term(i).h_module(sups[i])).collect::<Result<_>>()?;
    let ts: Vec<_> = hp.iter().map(|h| tensor_over(h, l)).collect();
    // rank of H(δ_i) ⊗ L: T_i -> T_{i-1}
    let gamma = |i: usize| -> usize { tensor_map(&ts[i], &ts[i - 1], &res.delta_h(i, sups[i]), l.dim()).rank() };
    let mut val = std::collections::BTreeMap::new();
    for i in 0..usable {
        let mut v = ts[i].dim;
        if i + 1 < sups.len() && sups[i + 1] == sups[i] {
            v -= gamma(i + 1);
        }
        if i > 0 && sups[i - 1] == sups[i] {
            v -= gamma(i);
        }
        val.insert(i as i32 - sups[i], v);
    }
    Ok(Table::new(Route::Spft, window, |d| *val.get(&d).unwrap_or(&0)))
}

/// Simples, `H^0` itself and its radical layers.
pub fn heart_battery(r: &Arc<crate::dgcore::DgAlgebra>) -> Result<Vec<FdModule>> {
    let h0 = r.h0()?;
    let mut out = h0.simples()?;
    let reg = h0.regular_module();
    out.push(reg.clone());
    let mut cur = reg;
    loop {
        let rad = cur.radical_submodule()?;
        if rad.is_zero() {
            break;
        }
        out.push(cur.quotient(&rad).0);
        cur = cur.submodule(&rad).0;
    }
    if cur.dim() > 0 && cur.dim() < h0.dim() {
        out.push(cur);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    pub window: (i32, i32),
    pub tables: Vec<HomTable>,
    pub support: Option<(i32, i32)>,
    pub pd: Dim,
    /// `[-sup M, d - sup M]` when `pd = d`
    pub bound: Option<(i32, i32)>,
    pub within_bound: Option<bool>,
    pub endpoint_attained: Option<bool>,
}

/// Union of the supports of `RHom(M, N)` over heart modules `N`, checked
/// against the interval predicted by the projective dimension.
pub fn concentration_scan(
    m: &Arc<DgModule>,
    battery: &[FdModule],
    window: (i32, i32),
    cap: usize,
) -> Result<ConcentrationReport> {
    let r = m.algebra();
    let mut tables = Vec::new();
    let mut support: Option<(i32, i32)> = None;
    for n in battery {
        let hn = Arc::new(heart_embed(r, n)?);
        let t = rhom(m, &hn, window)?;
        if let Some((x, y)) = t.support() {
            support = Some(support.map_or((x, y), |(a, b)| (a.min(x), b.max(y))));
        }
        tables.push(t);
    }
    let p = pd(m, cap)?.status;
    let bound = match (p, m.sup()) {
        (Dim::Exact(d), Some(s)) => Some((-s, d - s)),
        _ => None,
    };
    let within_bound = bound.map(|(lo, hi)| support.is_none_or(|(a, b)| lo <= a && b <= hi));
    let endpoint_attained = bound.map(|(_, hi)| support.is_some_and(|(_, b)| b == hi));
    Ok(ConcentrationReport { window, tables, support, pd: p, bound, within_bound, endpoint_attained })
}
