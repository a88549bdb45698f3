//! Univariate polynomials over GF(p), just enough to find roots of minimal polynomials.

use rand::Rng;

use crate::exactla::{Field, Mat};

/// Coefficients from the constant term up; no trailing zeros.
pub type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn sub(f: Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let v = (0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
    trim(v)
}

fn mul(f: Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(out[i + j], x, y);
        }
    }
    trim(out)
}

/// Remainder of `a` modulo `b` (b nonzero).
fn rem(f: Field, a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lb = *b.last().expect("division by zero polynomial");
    let inv = f.inv(lb);
    while r.len() >= b.len() && !r.is_empty() {
        let c = f.mul(*r.last().unwrap(), inv);
        let shift = r.len() - b.len();
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    r
}

fn monic(f: Field, a: Poly) -> Poly {
    let Some(&l) = a.last() else { return a };
    let inv = f.inv(l);
    a.into_iter().map(|x| f.mul(x, inv)).collect()
}

fn gcd(f: Field, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

fn powmod(f: Field, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

/// Distinct roots in GF(p) of `a`, found by Cantor–Zassenhaus splitting.
pub fn roots(f: Field, a: &Poly, rng: &mut impl Rng) -> Vec<u32> {
    let a = monic(f, trim(a.clone()));
    if a.len() <= 1 {
        return Vec::new();
    }
    // product of the distinct linear factors: gcd(a, x^p - x)
    let xp = powmod(f, &vec![0, 1], f.p() as u64, &a);
    let g = gcd(f, &a, &sub(f, &xp, &vec![0, 1]));
    let mut out = Vec::new();
    split_linear(f, g, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(f: Field, g: Poly, rng: &mut impl Rng, out: &mut Vec<u32>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
        _ => {
            if f.p() == 2 {
                for x in 0..2 {
                    if eval(f, &g, x) == 0 {
                        out.push(x);
                    }
                }
                return;
            }
            loop {
                let shift = rng.gen_range(0..f.p());
                let h = powmod(f, &vec![shift, 1], (f.p() as u64 - 1) / 2, &g);
                let d = gcd(f, &g, &sub(f, &h, &vec![1]));
                if d.len() > 1 && d.len() < g.len() {
                    let q = divide(f, &g, &d);
                    split_linear(f, d, rng, out);
                    split_linear(f, q, rng, out);
                    return;
                }
            }
        }
    }
}

fn divide(f: Field, a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let inv = f.inv(*b.last().unwrap());
    let mut q = vec![0; a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let c = f.mul(*r.last().unwrap(), inv);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    trim(q)
}

pub fn eval(f: Field, a: &Poly, x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.mul_add(c, acc, x))
}

/// Minimal polynomial of a square matrix, by the first linear dependency among its powers.
pub fn minimal_polynomial(m: &Mat) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut powers: Vec<Vec<u32>> = vec![Mat::identity(f, n).data().to_vec()];
    let mut cur = Mat::identity(f, n);
    loop {
        cur = cur.mul(m);
        powers.push(cur.data().to_vec());
        let a = Mat::from_cols(f, n * n, &powers);
        let k = a.kernel();
        if let Some(v) = k.vectors().first() {
            // kernel vectors are RREF rows; pick one whose top coefficient is nonzero
            let deg = powers.len() - 1;
            let v = if v[deg] != 0 { v.clone() } else { k.vectors().into_iter().find(|w| w[deg] != 0).unwrap() };
            return monic(f, trim(v));
        }
    }
}
