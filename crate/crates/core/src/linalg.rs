//! Linear algebra over prime fields and a MeatAxe-style submodule finder.
//!
//! Vectors are rows and matrices act on the right (`v * M`), matching the
//! right action of permutations.

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{degree, irreducible_factors, Poly};

pub type Row = Vec<u32>;

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: Vec<Row>,
}

impl Matrix {
    pub fn new(p: u32, rows: Vec<Row>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % p).collect())
            .collect();
        Matrix { p, rows }
    }

    pub fn identity(p: u32, d: usize) -> Self {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| u32::from(i == j)).collect())
            .collect();
        Matrix { p, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let rows = self.rows.iter().map(|r| vec_mul(self.p, r, other)).collect();
        Matrix { p: self.p, rows }
    }

    /// `a*self + b*other`.
    pub fn combine(&self, a: u32, other: &Matrix, b: u32) -> Matrix {
        let p = self.p as u64;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(x, y)| {
                x.iter()
                    .zip(y)
                    .map(|(&u, &v)| ((a as u64 * u as u64 + b as u64 * v as u64) % p) as u32)
                    .collect()
            })
            .collect();
        Matrix { p: self.p, rows }
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim();
        let cols = if d == 0 { 0 } else { self.rows[0].len() };
        let rows = (0..cols)
            .map(|j| (0..d).map(|i| self.rows[i][j]).collect())
            .collect();
        Matrix { p: self.p, rows }
    }

    /// Characteristic polynomial, as the product of the minimal polynomials
    /// of successive Krylov chains modulo the span of the earlier ones.
    pub(crate) fn charpoly(&self) -> Poly {
        let (p, d) = (self.p, self.dim());
        let p64 = p as u64;
        let mut span = Subspace::zero(p, d);
        let mut poly: Poly = vec![1];
        for i in 0..d {
            let e: Row = (0..d).map(|j| u32::from(i == j)).collect();
            if span.contains(&e) {
                continue;
            }
            // rows reduced modulo `span`, each with its combination of chain vectors
            let mut local: Vec<(usize, Row, Row)> = Vec::new();
            let mut chain = vec![e];
            loop {
                let m = chain.len() - 1;
                let mut head = span.reduce(&chain[m]);
                let mut tail = vec![0u32; d + 1];
                tail[m] = 1;
                for (pivot, h, t) in &local {
                    let f = head[*pivot] as u64;
                    if f != 0 {
                        for (x, y) in head.iter_mut().zip(h) {
                            *x = ((*x as u64 + (p64 - f) * *y as u64) % p64) as u32;
                        }
                        for (x, y) in tail.iter_mut().zip(t) {
                            *x = ((*x as u64 + (p64 - f) * *y as u64) % p64) as u32;
                        }
                    }
                }
                match head.iter().position(|&x| x != 0) {
                    None => {
                        tail.truncate(m + 1);
                        poly = crate::poly::mul(p, &poly, &tail);
                        break;
                    }
                    Some(c) => {
                        let inv = inv_mod(head[c], p) as u64;
                        for x in head.iter_mut().chain(tail.iter_mut()) {
                            *x = (*x as u64 * inv % p64) as u32;
                        }
                        local.push((c, head, tail));
                        let next = vec_mul(p, &chain[m], self);
                        chain.push(next);
                    }
                }
            }
            chain.pop();
            for v in &chain {
                span.insert(v);
            }
        }
        poly
    }

    /// `f(self)` by Horner's rule.
    pub(crate) fn eval_poly(&self, f: &[u32]) -> Matrix {
        let id = Matrix::identity(self.p, self.dim());
        let mut acc = id.combine(0, &id, 0);
        for &c in f.iter().rev() {
            acc = acc.mul(self).combine(1, &id, c);
        }
        acc
    }

    /// Row vectors `v` with `v * self = 0`.
    pub fn left_null_space(&self) -> Vec<Row> {
        null_space(self.p, &self.transpose().rows, self.dim())
    }
}

pub fn vec_mul(p: u32, v: &[u32], m: &Matrix) -> Row {
    let cols = m.rows.first().map_or(0, |r| r.len());
    let mut out = vec![0u64; cols];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(&m.rows[i]) {
            *o += c as u64 * x as u64;
        }
    }
    out.into_iter().map(|x| (x % p as u64) as u32).collect()
}

/// Column vectors `x` (returned as rows) with `A x = 0`, where `A` has
/// `width` columns.
pub fn null_space(p: u32, a: &[Row], width: usize) -> Vec<Row> {
    let mut m: Vec<Row> = a.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + (p - f) as u64 * *y as u64) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u32; width];
        x[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = (p - m[i][free]) % p;
        }
        basis.push(x);
    }
    basis
}

/// A subspace kept in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    d: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, d: usize) -> Self {
        Subspace {
            p,
            d,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(p: u32, d: usize, vectors: &[Row]) -> Self {
        let mut s = Subspace::zero(p, d);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> &[Row] {
        &self.rows
    }

    pub fn reduce(&self, v: &[u32]) -> Row {
        let p = self.p as u64;
        let mut v: Row = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + (p - f as u64) * *y as u64) % p) as u32;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p as u64;
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[c], self.p) as u64;
        for x in v.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = ((*x as u64 + (p - f as u64) * *y as u64) % p) as u32;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, c);
        true
    }

    /// `{v : v . w = 0 for all w in self}`.
    pub fn annihilator(&self) -> Subspace {
        let basis = null_space(self.p, &self.rows, self.d);
        Subspace::spanned_by(self.p, self.d, &basis)
    }
}

/// Smallest subspace containing `seeds` and invariant under every matrix in `gens`.
pub fn spin(p: u32, d: usize, seeds: &[Row], gens: &[Matrix]) -> Subspace {
    let mut s = Subspace::zero(p, d);
    let mut queue: Vec<Row> = Vec::new();
    for v in seeds {
        if s.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = vec_mul(p, &v, g);
            if s.insert(&w) {
                queue.push(w);
                if s.dim() == d {
                    return s;
                }
            }
        }
    }
    s
}

/// A finite-dimensional module over `F_p` given by matrices of generators.
#[derive(Clone, Debug)]
pub struct Module {
    p: u32,
    d: usize,
    gens: Vec<Matrix>,
}

/// Outcome of [`Module::split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Splitting {
    Irreducible,
    Submodule(Subspace),
}

impl Module {
    pub fn new(p: u32, d: usize, gens: Vec<Matrix>) -> Result<Self> {
        if gens.iter().any(|g| g.dim() != d || g.rows.iter().any(|r| r.len() != d)) {
            return Err(Error::ContractViolation("module generators have the wrong size".into()));
        }
        Ok(Module { p, d, gens })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| self.gens.iter().all(|g| s.contains(&vec_mul(self.p, v, g))))
    }

    fn random_algebra_element(&self, rng: &mut impl Rng) -> Matrix {
        let id = Matrix::identity(self.p, self.d);
        let mut theta = id.combine(rng.gen_range(0..self.p), &id, 0);
        if self.gens.is_empty() {
            return theta;
        }
        for _ in 0..rng.gen_range(2..5) {
            let mut w = self.gens[rng.gen_range(0..self.gens.len())].clone();
            for _ in 0..rng.gen_range(0..3) {
                w = w.mul(&self.gens[rng.gen_range(0..self.gens.len())]);
            }
            theta = theta.combine(1, &w, rng.gen_range(1..self.p.max(2)));
        }
        theta
    }

    fn projective_points(&self, basis: &[Row]) -> Vec<Row> {
        // all nonzero combinations whose leading coefficient is 1
        let k = basis.len();
        let p = self.p as u64;
        let mut out = Vec::new();
        let total = (self.p as u64).pow(k as u32);
        for code in 1..total {
            let mut coeffs = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                coeffs.push((c % p) as u32);
                c /= p;
            }
            if coeffs.iter().rev().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let mut v = vec![0u64; self.d];
            for (b, &a) in basis.iter().zip(&coeffs) {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x += a as u64 * y as u64;
                }
            }
            out.push(v.into_iter().map(|x| (x % p) as u32).collect());
        }
        out
    }

    /// Finds a proper nonzero submodule or certifies irreducibility.
    ///
    /// For random algebra elements `theta` and irreducible factors `f` of
    /// its characteristic polynomial, null vectors of `f(theta)` are spun.
    /// Norton's criterion (every null vector spins to the whole space and a
    /// null vector of the transpose spins to the whole dual) certifies
    /// irreducibility; when the nullity equals `deg f` one null vector
    /// stands for all of them.
    pub fn split(&self, rng: &mut impl Rng, budget: usize) -> Result<Splitting> {
        let (p, d) = (self.p, self.d);
        if d <= 1 {
            return Ok(Splitting::Irreducible);
        }
        let transposed: Vec<Matrix> = self.gens.iter().map(|g| g.transpose()).collect();
        for _ in 0..budget {
            let theta = self.random_algebra_element(rng);
            let mut factors = irreducible_factors(p, &theta.charpoly(), rng);
            factors.sort_by_key(|f| f.len());
            for f in factors.iter().take(4) {
                let ft = theta.eval_poly(f);
                let null = ft.left_null_space();
                let exact = null.len() == degree(f);
                let exhaustive = (p as f64).powi(null.len() as i32) <= 4096.0;
                let candidates = if exact {
                    vec![null[0].clone()]
                } else if exhaustive {
                    self.projective_points(&null)
                } else {
                    null.iter().take(4).cloned().collect()
                };
                for v in &candidates {
                    let s = spin(p, d, std::slice::from_ref(v), &self.gens);
                    if s.dim() < d {
                        return Ok(Splitting::Submodule(s));
                    }
                }
                if !(exact || exhaustive) {
                    continue;
                }
                let dual_null = ft.transpose().left_null_space();
                let s = spin(p, d, std::slice::from_ref(&dual_null[0]), &transposed);
                if s.dim() < d {
                    return Ok(Splitting::Submodule(s.annihilator()));
                }
                return Ok(Splitting::Irreducible);
            }
        }
        if (p as f64).powi(d as i32) <= 1e4 {
            let all = Subspace::spanned_by(
                p,
                d,
                &(0..d)
                    .map(|i| (0..d).map(|j| u32::from(i == j)).collect())
                    .collect::<Vec<Row>>(),
            );
            for v in self.projective_points(all.basis()) {
                let s = spin(p, d, &[v], &self.gens);
                if s.dim() < d {
                    return Ok(Splitting::Submodule(s));
                }
            }
            return Ok(Splitting::Irreducible);
        }
        Err(Error::Undecided(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(p: u32, rows: &[&[u32]]) -> Matrix {
        Matrix::new(p, rows.iter().map(|r| r.to_vec()).collect())
    }

    fn companion(p: u32, f: &[u32]) -> Matrix {
        // row i maps e_i to e_{i+1}; the last row holds -f
        let d = f.len() - 1;
        let rows = (0..d)
            .map(|i| {
                if i + 1 < d {
                    (0..d).map(|j| u32::from(j == i + 1)).collect()
                } else {
                    f[..d].iter().map(|&c| (p - c) % p).collect()
                }
            })
            .collect();
        Matrix::new(p, rows)
    }

    #[test]
    fn charpoly_of_companion_and_permutation_matrices() {
        let f = vec![1, 0, 2, 1];
        assert_eq!(companion(3, &f).charpoly(), f);
        let cycle = Matrix::new(2, (0..25).map(|i| (0..25).map(|j| u32::from(j == (i + 1) % 25)).collect()).collect());
        let mut x25 = vec![0; 26];
        x25[0] = 1;
        x25[25] = 1;
        assert_eq!(cycle.charpoly(), x25);
        let diag = Matrix::new(5, vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        // (x-2)^2 (x-3) = x^3 - 7x^2 + 16x - 12
        assert_eq!(diag.charpoly(), vec![3, 1, 3, 1]);
    }

    #[test]
    fn large_endomorphism_field_is_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut phi25 = vec![0u32; 21];
        for k in [0, 5, 10, 15, 20] {
            phi25[k] = 1;
        }
        let m = Module::new(2, 20, vec![companion(2, &phi25)]).unwrap();
        assert_eq!(m.split(&mut rng, 8).unwrap(), Splitting::Irreducible);
        let cycle = Matrix::new(2, (0..25).map(|i| (0..25).map(|j| u32::from(j == (i + 1) % 25)).collect()).collect());
        let m = Module::new(2, 25, vec![cycle]).unwrap();
        match m.split(&mut rng, 8).unwrap() {
            Splitting::Submodule(s) => assert!(m.is_submodule(&s) && s.dim() > 0 && s.dim() < 25),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn null_space_of_singular_matrix() {
        let a = m(5, &[&[1, 2], &[2, 4]]);
        let n = a.left_null_space();
        assert_eq!(n.len(), 1);
        assert!(vec_mul(5, &n[0], &a).iter().all(|&x| x == 0));
    }

    #[test]
    fn natural_module_of_s4_on_v4_is_irreducible() {
        // S_4 acts on V_4 = F_2^2 through S_3 = GL(2,2)
        let a = m(2, &[&[0, 1], &[1, 0]]);
        let b = m(2, &[&[1, 1], &[1, 0]]);
        let module = Module::new(2, 2, vec![a.clone(), b.clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(module.split(&mut rng, 20).unwrap(), Splitting::Irreducible);
        // every nonzero vector spins to the whole space
        for v in [[1u32, 0], [0, 1], [1, 1]] {
            assert_eq!(spin(2, 2, &[v.to_vec()], &[a.clone(), b.clone()]).dim(), 2);
        }
    }

    #[test]
    fn trivial_action_splits_into_lines() {
        let module = Module::new(2, 2, vec![Matrix::identity(2, 2)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        match module.split(&mut rng, 20).unwrap() {
            Splitting::Submodule(s) => assert_eq!(s.dim(), 1),
            other => panic!("expected a line, got {other:?}"),
        }
    }

    #[test]
    fn diagonal_action_fixes_an_axis() {
        let module = Module::new(3, 2, vec![m(3, &[&[1, 0], &[0, 2]])]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let Splitting::Submodule(s) = module.split(&mut rng, 20).unwrap() else {
            panic!("diagonal action is reducible");
        };
        assert_eq!(s.dim(), 1);
        assert!(module.is_submodule(&s));
        let axes = [vec![1u32, 0], vec![0, 1]];
        assert!(axes.iter().any(|a| s.contains(a)));
    }

    #[test]
    fn uniserial_module_is_found_by_the_dual_spin() {
        // F_2[C_2] regular module: unique submodule is the fixed line
        let module = Module::new(2, 2, vec![m(2, &[&[0, 1], &[1, 0]])]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let Splitting::Submodule(s) = module.split(&mut rng, 20).unwrap() else {
            panic!("regular module of C_2 is reducible");
        };
        assert!(s.contains(&[1, 1]));
    }

    #[test]
    fn annihilator_of_a_line() {
        let s = Subspace::spanned_by(3, 3, &[vec![1, 2, 0]]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
        for v in ann.basis() {
            let dot: u32 = v.iter().zip(&[1u32, 2, 0]).map(|(a, b)| a * b).sum::<u32>() % 3;
            assert_eq!(dot, 0);
        }
    }
}
