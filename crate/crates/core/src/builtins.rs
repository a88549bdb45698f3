//! Named example algebras and modules.

use std::sync::Arc;

use crate::dgcore::{direct_sum, heart_embed, psi, shift, DgAlgebra, DgAlgebraBuilder, DgModule};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};

fn ordinary(field: Field, names: Vec<String>, mul: impl Fn(usize, usize) -> Vec<u32>, unit: Vec<u32>) -> Result<DgAlgebra> {
    let d = names.len();
    let mut b = DgAlgebraBuilder::new(field, 0, vec![d]);
    b.set_names(0, names);
    for x in 0..d {
        for y in 0..d {
            b.set_product(0, x, 0, y, mul(x, y));
        }
    }
    b.set_unit(unit);
    b.build()
}

pub fn field_algebra(field: Field) -> Result<DgAlgebra> {
    ordinary(field, vec!["1".into()], |_, _| vec![1], vec![1])
}

/// `k[x]/(x^m)` with basis `1, x, ..., x^{m-1}`.
pub fn nilpotent(field: Field, m: usize) -> Result<DgAlgebra> {
    if m == 0 {
        return Err(Error::Invalid("nilpotent(m) needs m >= 1".into()));
    }
    let names = (0..m).map(power_name).collect();
    let mut unit = vec![0; m];
    unit[0] = 1;
    ordinary(
        field,
        names,
        |a, b| {
            let mut v = vec![0; m];
            if a + b < m {
                v[a + b] = 1;
            }
            v
        },
        unit,
    )
}

fn power_name(a: usize) -> String {
    match a {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x{a}"),
    }
}

fn matrix_units(field: Field, n: usize, upper: bool) -> Result<DgAlgebra> {
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !upper || i <= j).collect();
    let idx = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
    let names = pairs.iter().map(|&(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let mut unit = vec![0; pairs.len()];
    for i in 0..n {
        unit[idx((i, i)).unwrap()] = 1;
    }
    ordinary(
        field,
        names,
        |a, b| {
            let (x, y) = (pairs[a], pairs[b]);
            let mut v = vec![0; pairs.len()];
            if x.1 == y.0 {
                v[idx((x.0, y.1)).unwrap()] = 1;
            }
            v
        },
        unit,
    )
}

/// Upper triangular `n x n` matrices.
pub fn triangular(field: Field, n: usize) -> Result<DgAlgebra> {
    matrix_units(field, n, true)
}

pub fn matrix(field: Field, n: usize) -> Result<DgAlgebra> {
    matrix_units(field, n, false)
}

/// `A x B`, degreewise direct sum with componentwise products.
pub fn product(a: &DgAlgebra, b: &DgAlgebra) -> Result<DgAlgebra> {
    if a.field() != b.field() {
        return Err(Error::Invalid("product of algebras over different fields".into()));
    }
    let f = a.field();
    let low = a.low().min(b.low());
    let dims: Vec<usize> = (low..=0).map(|i| a.dim(i) + b.dim(i)).collect();
    let mut out = DgAlgebraBuilder::new(f, low, dims);
    for i in low..=0 {
        let names: Vec<String> = a
            .names(i)
            .iter()
            .map(|s| format!("{s}_1"))
            .chain(b.names(i).iter().map(|s| format!("{s}_2")))
            .collect();
        out.set_names(i, names);
        let mut d = Mat::zeros(f, a.dim(i + 1) + b.dim(i + 1), a.dim(i) + b.dim(i));
        if i < 0 {
            d.set_block(0, 0, &a.diff(i));
            d.set_block(a.dim(i + 1), a.dim(i), &b.diff(i));
        }
        out.set_diff(i, d);
    }
    for i in low..=0 {
        for j in low..=0 {
            if i + j < low {
                continue;
            }
            let t = i + j;
            for x in 0..a.dim(i) + b.dim(i) {
                for y in 0..a.dim(j) + b.dim(j) {
                    let mut v = vec![0; a.dim(t) + b.dim(t)];
                    match (x < a.dim(i), y < a.dim(j)) {
                        (true, true) if t >= a.low() => v[..a.dim(t)].copy_from_slice(&a.product(i, x, j, y)),
                        (false, false) if t >= b.low() => {
                            v[a.dim(t)..].copy_from_slice(&b.product(i, x - a.dim(i), j, y - a.dim(j)))
                        }
                        _ => {}
                    }
                    out.set_product(i, x, j, y, v);
                }
            }
        }
    }
    let mut unit = a.unit().to_vec();
    unit.extend_from_slice(b.unit());
    out.set_unit(unit);
    out.build()
}

/// Koszul complex over `k[x]/(x^m)` on the given elements (coefficient lists
/// from the constant term up): exterior generators `e_1..e_d` in degree `-1`
/// with `∂ e_k = f_k`.
pub fn koszul(field: Field, elements: &[Vec<i64>], m: usize) -> Result<DgAlgebra> {
    if m == 0 {
        return Err(Error::Invalid("base k[x]/(x^m) needs m >= 1".into()));
    }
    let d = elements.len();
    if d > 16 {
        return Err(Error::Invalid("too many Koszul elements".into()));
    }
    let polys: Vec<Vec<u32>> = elements
        .iter()
        .map(|e| {
            let mut v = vec![0; m];
            for (a, &c) in e.iter().enumerate() {
                if a < m {
                    v[a] = field.from_i64(c);
                }
            }
            v
        })
        .collect();
    // subsets of each size, lex order on bitmasks
    let subsets: Vec<Vec<u32>> = (0..=d)
        .map(|s| (0u32..1 << d).filter(|x| x.count_ones() as usize == s).collect())
        .collect();
    let low = -(d as i32);
    let dims: Vec<usize> = (0..=d).rev().map(|s| subsets[s].len() * m).collect();
    let mut b = DgAlgebraBuilder::new(field, low, dims);
    let index = |s: u32, a: usize| -> usize {
        let size = s.count_ones() as usize;
        subsets[size].iter().position(|&t| t == s).unwrap() * m + a
    };
    for size in 0..=d {
        let deg = -(size as i32);
        let names = subsets[size]
            .iter()
            .flat_map(|&s| {
                (0..m).map(move |a| {
                    let e: String = (0..d).filter(|k| s >> k & 1 == 1).map(|k| format!("e{}", k + 1)).collect();
                    let e = if d == 1 && s != 0 { "e".to_string() } else { e };
                    match (a, e.is_empty()) {
                        (_, true) => power_name(a),
                        (0, false) => e,
                        _ => format!("{}{e}", power_name(a)),
                    }
                })
            })
            .collect();
        b.set_names(deg, names);
    }
    // sign of e_S e_T: count pairs (s in S, t in T) with s > t
    let wedge = |s: u32, t: u32| -> Option<u32> {
        if s & t != 0 {
            return None;
        }
        let inv: u32 = (0..d).filter(|k| t >> k & 1 == 1).map(|k| (s >> (k + 1)).count_ones()).sum();
        Some(inv % 2)
    };
    for (si, ss) in subsets.iter().enumerate() {
        for (ti, ts) in subsets.iter().enumerate() {
            if si + ti > d {
                continue;
            }
            let (di, dj) = (-(si as i32), -(ti as i32));
            let tdim = subsets[si + ti].len() * m;
            for &s in ss {
                for &t in ts {
                    for a in 0..m {
                        for c in 0..m {
                            let mut v = vec![0; tdim];
                            if let Some(sign) = wedge(s, t) {
                                if a + c < m {
                                    v[index(s | t, a + c)] = if sign == 1 { field.neg(1) } else { 1 };
                                }
                            }
                            b.set_product(di, index(s, a), dj, index(t, c), v);
                        }
                    }
                }
            }
        }
    }
    // ∂(x^a e_S) = Σ_k (-1)^{#(S below k)} x^a f_k e_{S-k}
    for size in 1..=d {
        let deg = -(size as i32);
        let tdim = subsets[size - 1].len() * m;
        let mut dm = Mat::zeros(field, tdim, subsets[size].len() * m);
        for &s in &subsets[size] {
            for k in 0..d {
                if s >> k & 1 == 0 {
                    continue;
                }
                let below = (s & ((1 << k) - 1)).count_ones();
                let sign = if below % 2 == 1 { field.neg(1) } else { 1 };
                let rest = s & !(1 << k);
                for a in 0..m {
                    for (c, &fc) in polys[k].iter().enumerate() {
                        if fc != 0 && a + c < m {
                            dm.add_at(index(rest, a + c), index(s, a), field.mul(sign, fc));
                        }
                    }
                }
            }
        }
        b.set_diff(deg, dm);
    }
    let mut unit = vec![0; m];
    unit[0] = 1;
    b.set_unit(unit);
    b.build()
}

/// `R_K = K_{k[x]/(x^2)}(x)`.
pub fn koszul_rk(field: Field) -> Result<DgAlgebra> {
    koszul(field, &[vec![0, 1]], 2)
}

pub fn regular(r: &Arc<DgAlgebra>) -> DgModule {
    DgModule::regular(r.clone())
}

/// `R^n[s]`.
pub fn free(r: &Arc<DgAlgebra>, n: usize, s: i32) -> DgModule {
    if n == 0 {
        return DgModule::zero(r.clone());
    }
    let one = shift(&DgModule::regular(r.clone()), s);
    let copies: Vec<&DgModule> = (0..n).map(|_| &one).collect();
    direct_sum(&copies)
}

/// `M_(n) = R ⊕ R[n]`.
pub fn m_of(r: &Arc<DgAlgebra>, n: i32) -> DgModule {
    let a = DgModule::regular(r.clone());
    let b = shift(&a, n);
    direct_sum(&[&a, &b])
}

/// The `i`-th simple `H^0`-module, in degree 0.
pub fn heart_simple(r: &Arc<DgAlgebra>, i: usize) -> Result<DgModule> {
    let h0 = r.h0()?;
    let s = h0.simples()?;
    let si = s.get(i).ok_or_else(|| Error::Invalid(format!("H^0 has {} simples, asked for {i}", s.len())))?;
    heart_embed(r, si)
}

/// `H^0` as a module over itself, in degree 0.
pub fn heart_h0(r: &Arc<DgAlgebra>) -> Result<DgModule> {
    let h0 = r.h0()?;
    heart_embed(r, &h0.regular_module())
}

/// `ψ_R(E)` for `E` the `R^0`-injective hull of the `i`-th simple of `H^0`.
pub fn psi_simple(r: &Arc<DgAlgebra>, i: usize) -> Result<DgModule> {
    let z = r.zeroth()?;
    let s = z.h0.simples()?;
    let si = s.get(i).ok_or_else(|| Error::Invalid(format!("H^0 has {} simples, asked for {i}", s.len())))?;
    let hull = z.r0_hull(si)?;
    psi(r, &hull.module)
}
