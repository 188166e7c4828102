//! Named families of permutation groups and the catalog expression syntax
//! `sym(5)`, `direct(alt(5),cyclic(6))`, `wreath(sym(3),sym(3))`, ...

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_SEED};
use crate::perm::{is_prime, Perm};

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn cycle_perm(degree: usize, points: &[usize]) -> Perm {
    Perm::from_cycles(degree, &[points]).expect("valid cycle")
}

pub fn symmetric(n: usize) -> PermGroup {
    let n = n.max(1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let all: Vec<usize> = (0..n).collect();
    let gens = vec![cycle_perm(n, &[0, 1]), cycle_perm(n, &all)];
    PermGroup::generated_with_order(n, gens, &factorial(n), DEFAULT_SEED)
}

pub fn alternating(n: usize) -> PermGroup {
    let n = n.max(1);
    if n < 3 {
        return PermGroup::trivial(n);
    }
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    let mut gens = vec![cycle_perm(n, &[0, 1, 2])];
    if n > 3 {
        gens.push(cycle_perm(n, &long));
    }
    PermGroup::generated_with_order(n, gens, &(factorial(n) / 2u32), DEFAULT_SEED)
}

pub fn cyclic(n: usize) -> PermGroup {
    let n = n.max(1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let all: Vec<usize> = (0..n).collect();
    PermGroup::generated_with_order(n, vec![cycle_perm(n, &all)], &BigUint::from(n), DEFAULT_SEED)
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon (`n >= 3`).
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidSpec("dihedral(n) needs n >= 3".into()));
    }
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    let gens = vec![Perm::from_images(rot)?, Perm::from_images(refl)?];
    Ok(PermGroup::generated_with_order(n, gens, &BigUint::from(2 * n), DEFAULT_SEED))
}

/// Elementary abelian group of order `p^d` in its regular representation.
pub fn elementary_abelian(p: usize, d: usize) -> Result<PermGroup> {
    if !is_prime(p as u64) || d == 0 {
        return Err(Error::InvalidSpec(format!("elemab({p},{d}) needs prime p and d >= 1")));
    }
    let n = p.pow(d as u32);
    let mut gens = Vec::new();
    for i in 0..d {
        let stride = p.pow(i as u32);
        let images: Vec<u32> = (0..n)
            .map(|x| {
                let digit = (x / stride) % p;
                let nd = (digit + 1) % p;
                (x - digit * stride + nd * stride) as u32
            })
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    Ok(PermGroup::generated_with_order(n, gens, &BigUint::from(n), DEFAULT_SEED))
}

fn inv_mod(a: usize, p: usize) -> usize {
    let mut r = 1usize;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `PSL(2,p)` on the `p+1` points of the projective line (point `p+1` is infinity).
pub fn psl2(p: usize) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidSpec(format!("psl2({p}) needs a prime")));
    }
    let inf = p as u32;
    let t: Vec<u32> = (0..=p as u32).map(|x| if x == inf { inf } else { (x + 1) % p as u32 }).collect();
    let s: Vec<u32> = (0..=p)
        .map(|x| {
            if x == p {
                0
            } else if x == 0 {
                inf
            } else {
                ((p - inv_mod(x, p)) % p) as u32
            }
        })
        .collect();
    let order = p * (p * p - 1) / if p == 2 { 1 } else { 2 };
    Ok(PermGroup::generated_with_order(
        p + 1,
        vec![Perm::from_images(t)?, Perm::from_images(s)?],
        &BigUint::from(order),
        DEFAULT_SEED,
    ))
}

fn primitive_root(p: usize) -> usize {
    (1..p.max(2))
        .find(|&a| {
            (1..p - 1).all(|k| {
                let mut v = 1usize;
                for _ in 0..k {
                    v = v * a % p;
                }
                v != 1
            })
        })
        .unwrap_or(1)
}

/// A 2x2 matrix over `F_p` acting on the `p^2 - 1` nonzero column vectors.
fn linear_perm(p: usize, m: [usize; 4]) -> Perm {
    let images = (1..p * p)
        .map(|v| {
            let (x, y) = (v / p, v % p);
            let (u, w) = ((m[0] * x + m[1] * y) % p, (m[2] * x + m[3] * y) % p);
            (u * p + w - 1) as u32
        })
        .collect();
    Perm::from_images(images).expect("invertible matrix")
}

fn linear_group(p: usize, with_det: bool) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidSpec(format!("{}2({p}) needs a prime", if with_det { "gl" } else { "sl" })));
    }
    let mut gens = vec![linear_perm(p, [1, 1, 0, 1]), linear_perm(p, [0, p - 1, 1, 0])];
    let mut order = p * (p * p - 1);
    if with_det {
        gens.push(linear_perm(p, [primitive_root(p), 0, 0, 1]));
        order *= p - 1;
    }
    Ok(PermGroup::generated_with_order(p * p - 1, gens, &BigUint::from(order), DEFAULT_SEED))
}

/// `SL(2,p)` on the nonzero vectors of `F_p^2`.
pub fn sl2(p: usize) -> Result<PermGroup> {
    linear_group(p, false)
}

/// `GL(2,p)` on the nonzero vectors of `F_p^2`.
pub fn gl2(p: usize) -> Result<PermGroup> {
    linear_group(p, true)
}

/// The affine group `x -> ax + b` over `F_p`.
pub fn agl1(p: usize) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidSpec(format!("agl1({p}) needs a prime")));
    }
    let t: Vec<u32> = (0..p as u32).map(|x| (x + 1) % p as u32).collect();
    let root = primitive_root(p);
    let m: Vec<u32> = (0..p).map(|x| (x * root % p) as u32).collect();
    Ok(PermGroup::generated_with_order(
        p,
        vec![Perm::from_images(t)?, Perm::from_images(m)?],
        &BigUint::from(p * (p - 1)),
        DEFAULT_SEED,
    ))
}

/// Quaternion group of order 8 in its regular representation (degree 8).
pub fn quaternion() -> PermGroup {
    // elements encoded as (sign, unit) with unit in {1,i,j,k} -> index sign*4 + unit
    fn mul(a: usize, b: usize) -> usize {
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        // unit products: table[ua][ub] = (sign flip, unit)
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, u) = T[ua][ub];
        ((sa + sb + s) % 2) * 4 + u
    }
    let right = |g: usize| Perm::from_images((0..8).map(|x| mul(x, g) as u32).collect()).unwrap();
    PermGroup::generated_with_order(8, vec![right(1), right(2)], &BigUint::from(8u32), DEFAULT_SEED)
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a.gens().iter().map(|g| g.shifted(0, n)).collect();
    gens.extend(b.gens().iter().map(|g| g.shifted(a.degree(), n)));
    PermGroup::generated_with_order(n, gens, &(a.order() * b.order()), DEFAULT_SEED)
}

/// Imprimitive wreath product `base wr top`: `top` permutes `top.degree()`
/// blocks, each a copy of `base`'s point set.
pub fn wreath(base: &PermGroup, top: &PermGroup) -> PermGroup {
    let m = base.degree();
    let k = top.degree();
    let n = m * k;
    let mut gens: Vec<Perm> = base.gens().iter().map(|g| g.shifted(0, n)).collect();
    for h in top.gens() {
        let images: Vec<u32> = (0..n)
            .map(|x| {
                let (block, i) = (x / m, x % m);
                (h.apply(block as u32) as usize * m + i) as u32
            })
            .collect();
        gens.push(Perm::from_images(images).unwrap());
    }
    let mut order = top.order().clone();
    for _ in 0..k {
        order *= base.order();
    }
    PermGroup::generated_with_order(n, gens, &order, DEFAULT_SEED)
}

/// Parses and builds a catalog expression.
pub fn parse_catalog(text: &str) -> Result<PermGroup> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let g = p.group()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(g)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a family name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn group(&mut self) -> Result<PermGroup> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        let at = |p: &Parser, e: Error| match e {
            Error::InvalidSpec(m) => Error::Parse {
                line: 1,
                column: start + 1,
                message: m,
            },
            other => {
                let _ = p;
                other
            }
        };
        match name.as_str() {
            "q8" | "quaternion" => Ok(quaternion()),
            "direct" | "wreath" => {
                self.expect('(')?;
                let a = self.group()?;
                self.expect(',')?;
                let b = self.group()?;
                self.expect(')')?;
                Ok(if name == "direct" { direct(&a, &b) } else { wreath(&a, &b) })
            }
            "sym" | "alt" | "cyclic" | "dihedral" | "psl2" | "sl2" | "gl2" | "agl1" => {
                self.expect('(')?;
                let n = self.number()?;
                self.expect(')')?;
                if n == 0 {
                    return Err(at(self, Error::InvalidSpec("degree must be positive".into())));
                }
                match name.as_str() {
                    "sym" => Ok(symmetric(n)),
                    "alt" => Ok(alternating(n)),
                    "cyclic" => Ok(cyclic(n)),
                    "dihedral" => dihedral(n).map_err(|e| at(self, e)),
                    "psl2" => psl2(n).map_err(|e| at(self, e)),
                    "sl2" => sl2(n).map_err(|e| at(self, e)),
                    "gl2" => gl2(n).map_err(|e| at(self, e)),
                    _ => agl1(n).map_err(|e| at(self, e)),
                }
            }
            "elemab" => {
                self.expect('(')?;
                let p = self.number()?;
                self.expect(',')?;
                let d = self.number()?;
                self.expect(')')?;
                elementary_abelian(p, d).map_err(|e| at(self, e))
            }
            _ => Err(Error::Parse {
                line: 1,
                column: start + 1,
                message: format!("unknown group family '{name}'"),
            }),
        }
    }
}
