//! Polynomials over a prime field, coefficients from the constant term up,
//! with no trailing zeros (the zero polynomial is empty).

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::linalg::inv_mod;

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> usize {
    a.len().saturating_sub(1)
}

/// `a - c*b`.
fn sub_scaled(p: u32, a: &[u32], b: &[u32], c: u32) -> Poly {
    let p64 = p as u64;
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (x, &y) in out.iter_mut().zip(b) {
        *x = ((*x as u64 + (p64 - c as u64) * y as u64) % p64) as u32;
    }
    trim(out)
}

pub(crate) fn mul(p: u32, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|x| x as u32).collect())
}

/// Quotient and remainder; `m` must be nonzero.
pub(crate) fn divrem(p: u32, a: &[u32], m: &[u32]) -> (Poly, Poly) {
    let dm = degree(m);
    let lead_inv = inv_mod(*m.last().expect("nonzero divisor"), p) as u64;
    let mut r = trim(a.to_vec());
    if r.len() < m.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - dm];
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        q[shift] = c;
        let mut shifted = vec![0u32; shift];
        shifted.extend_from_slice(m);
        r = sub_scaled(p, &r, &shifted, c);
    }
    (trim(q), r)
}

fn rem(p: u32, a: &[u32], m: &[u32]) -> Poly {
    divrem(p, a, m).1
}

fn monic(p: u32, a: Poly) -> Poly {
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = inv_mod(l, p) as u64;
            a.into_iter().map(|x| (x as u64 * inv % p as u64) as u32).collect()
        }
    }
}

pub(crate) fn gcd(p: u32, a: &[u32], b: &[u32]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(p, &a, &b);
        a = b;
        b = r;
    }
    monic(p, a)
}

fn powmod(p: u32, a: &[u32], e: &BigUint, m: &[u32]) -> Poly {
    let mut result: Poly = rem(p, &[1], m);
    let base = rem(p, a, m);
    for i in (0..e.bits()).rev() {
        result = rem(p, &mul(p, &result, &result), m);
        if e.bit(i) {
            result = rem(p, &mul(p, &result, &base), m);
        }
    }
    result
}

/// The distinct monic irreducible factors of `f` (which need not be squarefree).
pub(crate) fn irreducible_factors(p: u32, f: &[u32], rng: &mut impl Rng) -> Vec<Poly> {
    let mut rest = monic(p, trim(f.to_vec()));
    let x: Poly = vec![0, 1];
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 0;
    while degree(&rest) >= 2 * (k + 1) {
        k += 1;
        h = powmod(p, &h, &pb, &rest);
        // g collects the degree-k irreducible factors, each once
        let g = gcd(p, &rest, &sub_scaled(p, &h, &x, 1));
        if degree(&g) > 0 {
            loop {
                let common = gcd(p, &rest, &g);
                if degree(&common) == 0 {
                    break;
                }
                rest = divrem(p, &rest, &common).0;
            }
            h = rem(p, &h, &rest);
            equal_degree(p, g, k, rng, &mut out);
        }
    }
    if degree(&rest) > 0 {
        out.push(rest);
    }
    out
}

/// Splits a squarefree product of degree-`k` irreducibles.
fn equal_degree(p: u32, g: Poly, k: usize, rng: &mut impl Rng, out: &mut Vec<Poly>) {
    let n = degree(&g);
    if n == k {
        out.push(g);
        return;
    }
    let exponent = (BigUint::from(p).pow(k as u32) - BigUint::one()) / 2u32;
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(k-1))
            let mut t = rem(p, &a, &g);
            let mut acc = t.clone();
            for _ in 1..k {
                t = rem(p, &mul(p, &t, &t), &g);
                acc = sub_scaled(p, &acc, &t, p - 1);
            }
            acc
        } else {
            sub_scaled(p, &powmod(p, &a, &exponent, &g), &[1], 1)
        };
        let d = gcd(p, &g, &b);
        if degree(&d) > 0 && degree(&d) < n {
            let other = divrem(p, &g, &d).0;
            equal_degree(p, d, k, rng, out);
            equal_degree(p, monic(p, other), k, rng, out);
            return;
        }
    }
}
