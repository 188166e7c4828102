//! Stabilizer chains (base and strong generating sets).
//!
//! Each level stores its strong generators and a Schreier tree for the
//! basic orbit; coset representatives are rebuilt by walking the tree, so
//! memory stays linear in the degree per level. Chains are built by a
//! randomized phase (product replacement, sift, extend) followed either by
//! an exact order check or by deterministic Schreier generator
//! verification.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::perm::Perm;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub struct Level {
    base: u32,
    gens: Vec<Perm>,
    inv: Vec<Perm>,
    /// Per point: `NONE`, `ROOT`, or the index of the generator whose
    /// application reached the point. Empty while the level has no generators.
    label: Vec<u32>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32) -> Self {
        Level {
            base,
            gens: Vec::new(),
            inv: Vec::new(),
            label: Vec::new(),
            orbit: vec![base],
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    #[inline]
    pub fn in_orbit(&self, pt: u32) -> bool {
        if self.label.is_empty() {
            pt == self.base
        } else {
            self.label[pt as usize] != NONE
        }
    }

    fn add_gen(&mut self, g: Perm) {
        let degree = g.degree();
        if self.label.is_empty() {
            self.label = vec![NONE; degree];
            self.label[self.base as usize] = ROOT;
        }
        self.inv.push(g.inverse());
        self.gens.push(g);
        let new = self.gens.len() - 1;
        // Apply the new generator to the old orbit, then close up under all generators.
        let old_len = self.orbit.len();
        for i in 0..old_len {
            let d = self.gens[new].apply(self.orbit[i]);
            if self.label[d as usize] == NONE {
                self.label[d as usize] = new as u32;
                self.orbit.push(d);
            }
        }
        let mut i = old_len;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            for k in 0..self.gens.len() {
                let d = self.gens[k].apply(pt);
                if self.label[d as usize] == NONE {
                    self.label[d as usize] = k as u32;
                    self.orbit.push(d);
                }
            }
            i += 1;
        }
    }

    /// Coset representative mapping the base point to `pt`.
    pub fn rep(&self, pt: u32, degree: usize) -> Perm {
        let mut path = Vec::new();
        let mut x = pt;
        while x != self.base {
            let k = self.label[x as usize] as usize;
            path.push(k);
            x = self.inv[k].apply(x);
        }
        let mut u = Perm::identity(degree);
        for &k in path.iter().rev() {
            u = &u * &self.gens[k];
        }
        u
    }

    /// All coset representatives, indexed like `orbit()`.
    pub fn transversal(&self, degree: usize) -> Vec<Perm> {
        let mut reps: Vec<Option<Perm>> = vec![None; degree];
        let mut out = Vec::with_capacity(self.orbit.len());
        for &pt in &self.orbit {
            let u = if pt == self.base {
                Perm::identity(degree)
            } else {
                let k = self.label[pt as usize] as usize;
                let parent = self.inv[k].apply(pt);
                let up = reps[parent as usize].as_ref().expect("BFS order");
                up * &self.gens[k]
            };
            reps[pt as usize] = Some(u.clone());
            out.push(u);
        }
        out
    }

    /// Multiplies `g` on the right by the inverse of the representative of
    /// `g(base)`; `None` if that point is outside the orbit.
    #[inline]
    fn strip(&self, g: Perm) -> Option<Perm> {
        let mut gamma = g.apply(self.base);
        if gamma == self.base {
            return Some(g);
        }
        if !self.in_orbit(gamma) {
            return None;
        }
        let mut g = g;
        while gamma != self.base {
            let k = self.label[gamma as usize] as usize;
            g = &g * &self.inv[k];
            gamma = self.inv[k].apply(gamma);
        }
        Some(g)
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    /// Points preferred as new base points, in order.
    hint: Vec<u32>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
            hint: Vec::new(),
        }
    }

    /// Chain whose base starts with exactly `prefix` (trivial levels are kept).
    pub fn with_base_prefix(degree: usize, prefix: &[u32]) -> Self {
        StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b)).collect(),
            hint: Vec::new(),
        }
    }

    /// Chain that prefers `hint` points (in order) when it needs a new base point.
    pub fn with_hint(degree: usize, hint: Vec<u32>) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
            hint,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for l in &self.levels {
            acc *= BigUint::from(l.orbit.len());
        }
        acc
    }

    /// All strong generators (the generators of the first level, plus any deeper ones).
    pub fn strong_gens(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// index at which sifting stopped (`levels.len()` when every level passed).
    pub fn sift_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        crate::stats::count_sift();
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            match level.strip(g.clone()) {
                Some(h) => g = h,
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (r, _) = self.sift_from(g, 0);
        r.is_identity()
    }

    /// Adds a residue as a strong generator to levels `from..=stop`.
    fn insert(&mut self, h: Perm, from: usize, stop: usize) {
        if stop == self.levels.len() {
            let pt = self
                .hint
                .iter()
                .copied()
                .find(|&p| h.apply(p) != p)
                .or_else(|| h.first_moved())
                .expect("nontrivial residue");
            self.levels.push(Level::new(pt));
        }
        for l in from..=stop {
            self.levels[l].add_gen(h.clone());
        }
    }

    /// Sifts `g` and extends the chain with its residue. Returns true if the chain grew.
    pub fn absorb(&mut self, g: &Perm) -> bool {
        let (h, stop) = self.sift_from(g, 0);
        if stop == self.levels.len() && h.is_identity() {
            return false;
        }
        self.insert(h, 0, stop);
        true
    }

    /// Random Schreier–Sims. With a target order, runs until the chain
    /// reaches it (returns false if it overshoots or the step budget runs
    /// out); otherwise stops after `patience` consecutive trivial sifts.
    pub fn randomized(
        &mut self,
        gens: &[Perm],
        rng: &mut ChaCha8Rng,
        target: Option<&BigUint>,
        patience: usize,
    ) -> bool {
        for g in gens {
            self.absorb(g);
        }
        if gens.is_empty() {
            return target.map_or(true, |t| t.is_one());
        }
        let mut pr = ProductReplacement::new(gens, rng);
        let mut quiet = 0usize;
        let mut steps = 0usize;
        loop {
            if let Some(t) = target {
                let o = self.order();
                if &o == t {
                    return true;
                }
                if &o > t {
                    return false;
                }
                if steps > 50_000 {
                    return false;
                }
            } else if quiet >= patience {
                return true;
            }
            let g = pr.next(rng);
            steps += 1;
            if self.absorb(&g) {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
    }

    /// Deterministic completion: sifts every Schreier generator, adding
    /// residues until all sift to the identity.
    pub fn verify(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match self.check_level(lvl) {
                None => i -= 1,
                Some((h, stop)) => {
                    self.insert(h, lvl + 1, stop);
                    i = stop as isize;
                }
            }
        }
    }

    fn check_level(&self, lvl: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lvl];
        if level.gens.is_empty() {
            return None;
        }
        let reps = level.transversal(self.degree);
        for (idx, &gamma) in level.orbit.iter().enumerate() {
            for (k, s) in level.gens.iter().enumerate() {
                let delta = s.apply(gamma);
                if level.label[delta as usize] == k as u32 {
                    // tree edge: the Schreier generator is trivial
                    continue;
                }
                let g = &reps[idx] * s;
                let (h, stop) = self.sift_from(&g, lvl);
                if stop < self.levels.len() || !h.is_identity() {
                    debug_assert!(stop > lvl);
                    return Some((h, stop));
                }
            }
        }
        None
    }

    /// Drops levels whose basic orbit is trivial.
    pub fn compress(&mut self) {
        self.levels.retain(|l| l.orbit.len() > 1);
    }

    /// Uniformly random element: a product of random coset representatives.
    pub fn random_element(&self, rng: &mut impl Rng) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let pt = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = &g * &level.rep(pt, self.degree);
        }
        g
    }

    /// Calls `f` on every element of the group (intended for small groups).
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        let transversals: Vec<Vec<Perm>> = self
            .levels
            .iter()
            .map(|l| l.transversal(self.degree))
            .collect();
        fn rec(
            ts: &[Vec<Perm>],
            depth: usize,
            acc: &Perm,
            f: &mut dyn FnMut(&Perm),
        ) {
            if depth == 0 {
                f(acc);
                return;
            }
            for u in &ts[depth - 1] {
                rec(ts, depth - 1, &(acc * u), f);
            }
        }
        rec(&transversals, transversals.len(), &Perm::identity(self.degree), &mut f);
    }

    /// Index of the first level whose stabilizer fixes every point of `points`,
    /// i.e. the first level whose base point is not in `points`, provided all
    /// earlier base points are.
    pub fn levels_after_prefix(&self, points: impl Fn(u32) -> bool) -> usize {
        self.levels
            .iter()
            .position(|l| !points(l.base))
            .unwrap_or(self.levels.len())
    }
}

/// Product replacement random element generator.
pub struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
}

impl ProductReplacement {
    pub fn new(gens: &[Perm], rng: &mut impl Rng) -> Self {
        let degree = gens[0].degree();
        let mut slots: Vec<Perm> = gens.to_vec();
        while slots.len() < 10 {
            let g = gens[slots.len() % gens.len()].clone();
            slots.push(g);
        }
        let mut pr = ProductReplacement {
            slots,
            acc: Perm::identity(degree),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    pub fn next(&mut self, rng: &mut impl Rng) -> Perm {
        let n = self.slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        if rng.gen_bool(0.5) {
            self.slots[i] = &self.slots[i] * &rhs;
        } else {
            self.slots[i] = &rhs * &self.slots[i];
        }
        self.acc = &self.acc * &self.slots[i];
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn sym_gens(n: usize) -> Vec<Perm> {
        let cycle: Vec<usize> = (0..n).collect();
        vec![
            Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(n, &[&cycle]).unwrap(),
        ]
    }

    #[test]
    fn deterministic_verification_finds_full_symmetric_group() {
        let mut chain = StabChain::trivial(6);
        for g in sym_gens(6) {
            chain.absorb(&g);
        }
        chain.verify();
        assert_eq!(chain.order(), BigUint::from(720u32));
    }

    #[test]
    fn randomized_with_target_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut chain = StabChain::trivial(9);
        let ok = chain.randomized(&sym_gens(9), &mut rng, Some(&BigUint::from(362880u32)), 0);
        assert!(ok);
        let odd = Perm::from_cycles(9, &[&[2, 5]]).unwrap();
        assert!(chain.contains(&odd));
    }

    #[test]
    fn element_enumeration_matches_order() {
        let mut chain = StabChain::trivial(5);
        for g in sym_gens(5) {
            chain.absorb(&g);
        }
        chain.verify();
        let mut seen = std::collections::HashSet::new();
        chain.for_each_element(|g| {
            seen.insert(g.clone());
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn forced_prefix_keeps_trivial_levels() {
        let g = Perm::from_cycles(5, &[&[3, 4]]).unwrap();
        let mut chain = StabChain::with_base_prefix(5, &[0, 1]);
        chain.absorb(&g);
        assert_eq!(chain.base(), vec![0, 1, 3]);
        assert_eq!(chain.order(), BigUint::from(2u32));
    }
}
