//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! The product `a * b` applies `a` first and then `b`, so that
//! `x^(ab) = (x^a)^b`. Cycle notation in text form is 1-indexed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Prime factorization as a map `prime -> exponent`.
pub type Factorization = BTreeMap<u64, u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::MalformedPermutation(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::MalformedPermutation(format!(
                        "point {} exceeds degree {degree}",
                        a + 1
                    )));
                }
                if used[a] {
                    return Err(Error::MalformedPermutation(format!(
                        "point {} repeated in cycles",
                        a + 1
                    )));
                }
                used[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    /// Parses 1-indexed cycle notation such as `(1 2 3)(4 5)` or `()`.
    ///
    /// Points may be separated by spaces or commas. Errors carry the
    /// 1-based column of the offending character.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let err = |col: usize, msg: &str| Error::Parse {
            line: 1,
            column: col + 1,
            message: msg.to_string(),
        };
        while i < chars.len() {
            let c = chars[i];
            match c {
                '(' => {
                    if current.is_some() {
                        return Err(err(i, "nested '('"));
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                ')' => match current.take() {
                    Some(cycle) => {
                        if !cycle.is_empty() {
                            cycles.push(cycle);
                        }
                        i += 1;
                    }
                    None => return Err(err(i, "unmatched ')'")),
                },
                ' ' | '\t' | ',' => i += 1,
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let v: usize = s.parse().map_err(|_| err(start, "bad number"))?;
                    if v == 0 || v > degree {
                        return Err(err(start, &format!("point {v} outside 1..={degree}")));
                    }
                    match current.as_mut() {
                        Some(cycle) => cycle.push(v - 1),
                        None => return Err(err(start, "point outside of a cycle")),
                    }
                }
                _ => return Err(err(i, &format!("unexpected character '{c}'"))),
            }
        }
        if current.is_some() {
            return Err(err(chars.len(), "unbalanced cycle: missing ')'"));
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs).map_err(|e| match e {
            Error::MalformedPermutation(m) => err(0, &m),
            other => other,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self^-1 * other * self`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        // x^(g^-1 h g): send x^g to (x^h)^g
        let mut out = vec![0u32; self.images.len()];
        for (x, &hx) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[hx as usize];
        }
        Perm { images: out }
    }

    /// Commutator `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .count()
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Cycles of length at least two, 0-indexed, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation as a prime factorization.
    pub fn order_factored(&self) -> Factorization {
        let mut out = Factorization::new();
        for c in self.cycles() {
            for (p, e) in factorize(c.len() as u64) {
                let slot = out.entry(p).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        out
    }

    /// Order of the permutation, if it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (p, e) in self.order_factored() {
            acc = acc.checked_mul((p as u128).checked_pow(e)?)?;
        }
        Some(acc)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let mut out: Vec<u32> = (0..self.images.len() as u32).collect();
        for cycle in self.cycles() {
            let shift = k.rem_euclid(cycle.len() as i64) as usize;
            for (i, &x) in cycle.iter().enumerate() {
                out[x as usize] = cycle[(i + shift) % cycle.len()];
            }
        }
        Perm { images: out }
    }

    /// Power with exponent given by its factorization (exponents may be huge).
    pub fn pow_factored(&self, exponent: &Factorization) -> Perm {
        let n = self.images.len();
        let mut out: Vec<u32> = (0..n as u32).collect();
        for cycle in self.cycles() {
            let len = cycle.len() as u64;
            let mut shift: u64 = 1 % len;
            for (&p, &e) in exponent {
                for _ in 0..e {
                    shift = (shift * (p % len)) % len;
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                out[x as usize] = cycle[(i + shift as usize) % cycle.len()];
            }
        }
        Perm { images: out }
    }

    /// Writes the permutation in 1-indexed cycle notation; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }

    /// Embeds into a larger degree, shifting points by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Perm { images }
    }

    /// Restriction to the first `degree` points (which must be invariant).
    pub fn truncated(&self, degree: usize) -> Perm {
        Perm {
            images: self.images[..degree].to_vec(),
        }
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.images.len(), rhs.images.len());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| rhs.images[x as usize])
                .collect(),
        }
    }
}

impl Mul for Perm {
    type Output = Perm;

    fn mul(self, rhs: Perm) -> Perm {
        &self * &rhs
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.to_cycle_string())
    }
}

/// Trial-division factorization; inputs here are small (cycle lengths, orders of simple groups).
pub fn factorize(mut n: u64) -> Factorization {
    let mut out = Factorization::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).get(&n) == Some(&1)
}
