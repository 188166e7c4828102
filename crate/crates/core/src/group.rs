//! Permutation groups given by generators, with an eagerly built stabilizer chain.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bsgs::StabChain;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

pub(crate) const PATIENCE: usize = 12;

/// A finite permutation group. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: BigUint,
    seed: u64,
}

pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl PermGroup {
    /// Validated constructor: all generators must have degree `degree`.
    pub fn new(degree: usize, gens: Vec<Perm>, seed: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidSpec("degree must be at least 1".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::generated(degree, gens, seed))
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            inner: Arc::new(GroupData {
                degree,
                gens: Vec::new(),
                chain: StabChain::trivial(degree),
                order: BigUint::one(),
                seed: DEFAULT_SEED,
            }),
        }
    }

    /// Builds the group generated by `gens` (assumed to have the right degree).
    pub(crate) fn generated(degree: usize, gens: Vec<Perm>, seed: u64) -> Self {
        let mut chain = StabChain::trivial(degree);
        let mut kept = Vec::new();
        for g in gens {
            if chain.absorb(&g) {
                kept.push(g);
            }
        }
        Self::finish(degree, kept, chain, seed, None)
    }

    /// Builds the group generated by `gens` whose order is known in advance.
    pub(crate) fn generated_with_order(
        degree: usize,
        gens: Vec<Perm>,
        order: &BigUint,
        seed: u64,
    ) -> Self {
        let mut chain = StabChain::trivial(degree);
        let mut kept = Vec::new();
        for g in gens {
            if chain.absorb(&g) {
                kept.push(g);
            }
        }
        Self::finish(degree, kept, chain, seed, Some(order))
    }

    fn finish(
        degree: usize,
        gens: Vec<Perm>,
        mut chain: StabChain,
        seed: u64,
        target: Option<&BigUint>,
    ) -> Self {
        if !gens.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0xc4a1));
            let reached = chain.randomized(&gens, &mut rng, target, PATIENCE);
            if !(reached && target.is_some()) {
                chain.verify();
            }
        }
        let order = chain.order();
        let gens = reduce_generators(degree, gens, &order);
        PermGroup {
            inner: Arc::new(GroupData {
                degree,
                gens,
                chain,
                order,
                seed,
            }),
        }
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Perm>, chain: StabChain, seed: u64) -> Self {
        let order = chain.order();
        PermGroup {
            inner: Arc::new(GroupData {
                degree,
                gens,
                chain,
                order,
                seed,
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.inner.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    /// Order as `u64`, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.inner.order.to_u64()
    }

    pub fn chain(&self) -> &StabChain {
        &self.inner.chain
    }

    pub fn seed(&self) -> u64 {
        self.inner.seed
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order.is_one()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.inner.degree)
    }

    /// Deterministic RNG derived from the group's seed and a salt.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix_seed(self.inner.seed, salt))
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.inner.degree && self.inner.chain.contains(p)
    }

    pub fn try_contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.inner.degree {
            return Err(Error::DegreeMismatch {
                expected: self.inner.degree,
                found: p.degree(),
            });
        }
        Ok(self.inner.chain.contains(p))
    }

    /// True if every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.inner.order <= other.inner.order && self.gens().iter().all(|g| other.contains(g))
    }

    /// Equality as subgroups of the same symmetric group.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.inner.order == other.inner.order && self.is_subgroup_of(other)
    }

    /// True if every generator of `self` conjugated by every generator of `ambient` stays in `self`.
    pub fn is_normalized_by(&self, ambient: &PermGroup) -> bool {
        ambient
            .gens()
            .iter()
            .all(|g| self.gens().iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    /// The group generated by `self` and `extra`.
    pub fn closure(&self, extra: &[Perm]) -> PermGroup {
        let mut chain = self.inner.chain.clone();
        let mut kept = Vec::new();
        for e in extra {
            if chain.absorb(e) {
                kept.push(e.clone());
            }
        }
        if kept.is_empty() {
            return self.clone();
        }
        let mut gens = self.inner.gens.clone();
        gens.extend(kept);
        Self::finish(self.inner.degree, gens, chain, self.inner.seed, None)
    }

    /// Like [`closure`](Self::closure) when the order of the result is known.
    pub(crate) fn closure_with_order(&self, extra: &[Perm], order: &BigUint) -> PermGroup {
        let mut chain = self.inner.chain.clone();
        let mut gens = self.inner.gens.clone();
        for e in extra {
            if chain.absorb(e) {
                gens.push(e.clone());
            }
        }
        if &chain.order() == order {
            return Self::from_parts(self.inner.degree, gens, chain, self.inner.seed);
        }
        Self::finish(self.inner.degree, gens, chain, self.inner.seed, Some(order))
    }

    /// Completes a partial chain for `gens`. When the generated group is
    /// known to lie in `upper`, reaching `|upper|` returns `upper` itself
    /// without the deterministic check.
    pub(crate) fn from_partial_chain(
        degree: usize,
        gens: Vec<Perm>,
        mut chain: StabChain,
        seed: u64,
        upper: Option<&PermGroup>,
    ) -> PermGroup {
        if gens.is_empty() {
            return PermGroup::trivial(degree).reseeded(seed);
        }
        if let Some(u) = upper {
            if &chain.order() == u.order() {
                return u.clone();
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0xc4a2));
        chain.randomized(&gens, &mut rng, None, PATIENCE);
        if let Some(u) = upper {
            if &chain.order() == u.order() {
                return u.clone();
            }
        }
        chain.verify();
        let order = chain.order();
        let gens = reduce_generators(degree, gens, &order);
        Self::from_parts(degree, gens, chain, seed)
    }

    /// Subgroup of order `target` assembled from uniform random elements
    /// of it supplied by `sample`. Absorbing uniform elements until the
    /// chain reaches the known order yields a complete chain.
    pub(crate) fn from_uniform_samples(
        degree: usize,
        target: &BigUint,
        seed: u64,
        mut sample: impl FnMut() -> Perm,
    ) -> PermGroup {
        let mut chain = StabChain::trivial(degree);
        let mut gens = Vec::new();
        let mut draws = 0usize;
        while &chain.order() < target {
            let s = sample();
            if chain.absorb(&s) {
                gens.push(s);
            }
            draws += 1;
            if draws > 20_000 {
                // the caller's order was wrong; fall back to what was generated
                chain.verify();
                break;
            }
        }
        debug_assert!(&chain.order() == target, "sampled subgroup has the wrong order");
        let gens = reduce_generators(degree, gens, &chain.order());
        Self::from_parts(degree, gens, chain, seed)
    }

    /// Uniformly random element.
    pub fn random_element(&self, rng: &mut impl Rng) -> Perm {
        self.inner.chain.random_element(rng)
    }

    /// All elements (intended for small groups).
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        self.inner.chain.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Same group, different seed for downstream randomized computations.
    pub fn reseeded(&self, seed: u64) -> PermGroup {
        PermGroup {
            inner: Arc::new(GroupData {
                degree: self.inner.degree,
                gens: self.inner.gens.clone(),
                chain: self.inner.chain.clone(),
                order: self.inner.order.clone(),
                seed,
            }),
        }
    }

    /// Subgroup of `self` generated by `gens` (all assumed to lie in `self`).
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        Self::generated(self.inner.degree, gens, mix_seed(self.inner.seed, 0x5b))
    }

    pub(crate) fn subgroup_with_order(&self, gens: Vec<Perm>, order: &BigUint) -> PermGroup {
        Self::generated_with_order(self.inner.degree, gens, order, mix_seed(self.inner.seed, 0x5b))
    }

    /// Smallest `d` with `x^d` in `self`, as a factorization.
    pub fn relative_order(&self, x: &Perm) -> crate::perm::Factorization {
        let mut f = x.order_factored();
        let primes: Vec<u64> = f.keys().copied().collect();
        for p in primes {
            loop {
                let e = f[&p];
                if e == 0 {
                    break;
                }
                let mut g = f.clone();
                *g.get_mut(&p).unwrap() -= 1;
                if self.contains(&x.pow_factored(&g)) {
                    f = g;
                } else {
                    break;
                }
            }
        }
        f.retain(|_, e| *e > 0);
        f
    }
}

/// Drops redundant generators when there are more than `degree^2` of them.
fn reduce_generators(degree: usize, gens: Vec<Perm>, order: &BigUint) -> Vec<Perm> {
    if gens.len() <= degree * degree {
        return gens;
    }
    let mut kept: Vec<Perm> = Vec::new();
    let mut chain = StabChain::trivial(degree);
    for g in gens {
        if &chain.order() == order {
            break;
        }
        if !chain.contains(&g) {
            kept.push(g);
            let mut fresh = StabChain::trivial(degree);
            for k in &kept {
                fresh.absorb(k);
            }
            fresh.verify();
            chain = fresh;
        }
    }
    kept
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.same_group(other)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree(), self.order())?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// A quotient `G/K` represented by the pair `(G, K)` with `K` normal in `G`.
#[derive(Clone, Debug)]
pub struct QuotientRef {
    ambient: PermGroup,
    kernel: PermGroup,
}

impl QuotientRef {
    /// Checks that `kernel` is a normal subgroup of `ambient`.
    pub fn new(ambient: PermGroup, kernel: PermGroup) -> Result<Self> {
        if ambient.degree() != kernel.degree() {
            return Err(Error::DegreeMismatch {
                expected: ambient.degree(),
                found: kernel.degree(),
            });
        }
        if let Some(g) = kernel.gens().iter().find(|g| !ambient.contains(g)) {
            return Err(Error::NotInGroup(g.to_string()));
        }
        if !kernel.is_normalized_by(&ambient) {
            return Err(Error::NotNormal("kernel is not normal in the ambient group".into()));
        }
        Ok(QuotientRef { ambient, kernel })
    }

    pub(crate) fn new_unchecked(ambient: PermGroup, kernel: PermGroup) -> Self {
        QuotientRef { ambient, kernel }
    }

    /// `G/1`.
    pub fn whole(ambient: PermGroup) -> Self {
        let kernel = PermGroup::trivial(ambient.degree());
        QuotientRef { ambient, kernel }
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    /// `|G/K|`.
    pub fn order(&self) -> BigUint {
        self.ambient.order() / self.kernel.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.ambient.order() == self.kernel.order()
    }
}

impl From<PermGroup> for QuotientRef {
    fn from(g: PermGroup) -> Self {
        QuotientRef::whole(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![p(4, "(1 2)"), p(4, "(1 2 3 4)")], DEFAULT_SEED).unwrap()
    }

    #[test]
    fn symmetric_group_of_degree_four() {
        assert_eq!(s4().order_u64(), Some(24));
    }

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let g = PermGroup::new(5, vec![], 1).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Perm::identity(5)));
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let e = PermGroup::new(5, vec![p(4, "(1 2)")], 1).unwrap_err();
        assert_eq!(e, Error::DegreeMismatch { expected: 5, found: 4 });
    }

    #[test]
    fn psl27_on_projective_line() {
        // points 1..7 are 0..6 of F_7, point 8 is infinity
        let t = p(8, "(1 2 3 4 5 6 7)");
        // x -> -1/x: 0<->inf, 1<->6, 2<->3, 4<->5  (in F_7 labels +1)
        let s = p(8, "(1 8)(2 7)(3 4)(5 6)");
        let g = PermGroup::new(8, vec![t, s], 3).unwrap();
        assert_eq!(g.order_u64(), Some(168));
    }

    #[test]
    fn membership() {
        let a4 = PermGroup::new(4, vec![p(4, "(1 2 3)"), p(4, "(2 3 4)")], 1).unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(!a4.contains(&p(4, "(1 2)")));
        assert!(s4().contains(&p(4, "(1 3)")));
        let v4 = PermGroup::new(4, vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")], 1).unwrap();
        assert!(v4.contains(&p(4, "(1 2)(3 4)")));
        assert!(v4.contains(&p(4, "(1 4)(2 3)")));
        assert!(!v4.contains(&p(4, "(1 2 3)")));
    }

    #[test]
    fn quotient_order() {
        let a4 = PermGroup::new(4, vec![p(4, "(1 2 3)"), p(4, "(2 3 4)")], 1).unwrap();
        let v4 = PermGroup::new(4, vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")], 1).unwrap();
        assert_eq!(QuotientRef::new(s4(), a4).unwrap().order(), BigUint::from(2u32));
        assert_eq!(QuotientRef::new(s4(), v4).unwrap().order(), BigUint::from(6u32));
        let c2 = PermGroup::new(4, vec![p(4, "(1 2)")], 1).unwrap();
        assert!(matches!(QuotientRef::new(s4(), c2), Err(Error::NotNormal(_))));
    }

    #[test]
    fn random_elements_of_small_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = PermGroup::trivial(3);
        assert!(t.random_element(&mut rng).is_identity());
        let c2 = PermGroup::new(2, vec![p(2, "(1 2)")], 1).unwrap();
        for _ in 0..10 {
            assert!(c2.contains(&c2.random_element(&mut rng)));
        }
    }

    #[test]
    fn random_elements_cover_s4() {
        let g = s4();
        let mut rng = g.rng(11);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..10_000 {
            *counts.entry(g.random_element(&mut rng)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 24);
        // uniform: each count near 10000/24 ~ 417
        assert!(counts.values().all(|&c| (250..600).contains(&c)));
    }

    #[test]
    fn relative_order_modulo_subgroup() {
        let v4 = PermGroup::new(4, vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")], 1).unwrap();
        let f = v4.relative_order(&p(4, "(1 2 3 4)"));
        assert_eq!(f, [(2, 1)].into_iter().collect());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn products_of_members_are_members(seed in 0u64..1000) {
                let g = PermGroup::new(7, vec![p(7, "(1 2 3)"), p(7, "(3 4 5 6 7)")], seed).unwrap();
                let mut rng = g.rng(seed);
                let a = g.random_element(&mut rng);
                let b = g.random_element(&mut rng);
                prop_assert!(g.contains(&(&a * &b)));
                prop_assert_eq!(g.order_u64(), Some(2520));
            }
        }
    }
}
