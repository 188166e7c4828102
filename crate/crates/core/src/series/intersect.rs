//! `H ∩ A` for a subgroup `H` normalizing `A`.

use num_bigint::BigUint;
use num_traits::One;

use crate::bsgs::StabChain;
use crate::group::{PermGroup, PATIENCE};
use crate::perm::Perm;

/// `H ∩ A`, where `A` is normalized by `H` (for instance `A` normal in a
/// group containing `H`).
///
/// The order of the answer is `|H||A|/|HA|`. Elements are found by a
/// backtrack over the stabilizer chain of `H`, sifting partial products
/// through a chain of `A` sharing `H`'s base, and the search stops once the
/// known order is reached.
pub fn intersect_with_normal(h: &PermGroup, a: &PermGroup) -> PermGroup {
    let n = h.degree();
    if a.is_trivial() || h.is_trivial() {
        return PermGroup::trivial(n);
    }
    if h.is_subgroup_of(a) {
        return h.clone();
    }
    if a.is_subgroup_of(h) {
        return a.clone();
    }
    let ha = a.closure(h.gens());
    let target = h.order() * a.order() / ha.order();
    if target.is_one() {
        return PermGroup::trivial(n);
    }
    let base = h.chain().base();
    let mut ac = StabChain::with_base_prefix(n, &base);
    let mut rng = a.rng(0x1a7);
    if !ac.randomized(a.gens(), &mut rng, Some(a.order()), PATIENCE) {
        ac = StabChain::with_base_prefix(n, &base);
        for g in a.gens() {
            ac.absorb(g);
        }
        ac.verify();
    }
    let search = Search {
        n,
        base: &base,
        trans: h
            .chain()
            .levels()
            .iter()
            .map(|l| l.orbit().iter().copied().zip(l.transversal(n)).collect())
            .collect(),
        a: &ac,
    };
    let found = search.run(&target);
    PermGroup::generated_with_order(n, found, &target, h.seed())
}

struct Search<'a> {
    n: usize,
    base: &'a [u32],
    trans: Vec<Vec<(u32, Perm)>>,
    a: &'a StabChain,
}

impl Search<'_> {
    fn run(&self, target: &BigUint) -> Vec<Perm> {
        let m = self.base.len();
        let mut found: Vec<Perm> = Vec::new();
        let mut below = BigUint::one();
        for i in (0..m).rev() {
            let bi = self.base[i];
            let mut korb = orbit(self.n, bi, &found);
            let mut dead = vec![false; self.n];
            for (gamma, u) in &self.trans[i] {
                let gamma = *gamma as usize;
                if korb[gamma] || dead[gamma] {
                    continue;
                }
                match self.extend(i, u) {
                    Some(g) => {
                        found.push(g);
                        korb = orbit(self.n, bi, &found);
                        let size = korb.iter().filter(|&&x| x).count();
                        if &(&below * BigUint::from(size)) == target {
                            return found;
                        }
                    }
                    None => {
                        for (x, d) in orbit(self.n, gamma as u32, &found).into_iter().enumerate() {
                            dead[x] |= d;
                        }
                    }
                }
            }
            below *= BigUint::from(korb.iter().filter(|&&x| x).count());
            if &below == target {
                break;
            }
        }
        found
    }

    /// An element of `H^(i) ∩ A` whose level-`i` coset representative is `u`.
    fn extend(&self, i: usize, u: &Perm) -> Option<Perm> {
        let y = self.strip(i, u.clone())?;
        self.dfs(i + 1, y, u.clone())
    }

    /// One sifting step of `z` through level `j` of the chain of `A`.
    fn strip(&self, j: usize, z: Perm) -> Option<Perm> {
        let level = &self.a.levels()[j];
        let beta = z.apply(self.base[j]);
        if !level.in_orbit(beta) {
            return None;
        }
        Some(&z * &level.rep(beta, self.n).inverse())
    }

    fn dfs(&self, j: usize, y: Perm, g: Perm) -> Option<Perm> {
        crate::stats::count_node();
        if j == self.base.len() {
            let (r, stop) = self.a.sift_from(&y, j);
            return (stop == self.a.levels().len() && r.is_identity()).then_some(g);
        }
        let level = &self.a.levels()[j];
        for (delta, t) in &self.trans[j] {
            if !level.in_orbit(y.apply(*delta)) {
                continue;
            }
            let z = self.strip(j, t * &y).expect("orbit membership was checked");
            if let Some(found) = self.dfs(j + 1, z, t * &g) {
                return Some(found);
            }
        }
        None
    }
}

fn orbit(n: usize, start: u32, gens: &[Perm]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
            }
        }
    }
    seen
}
