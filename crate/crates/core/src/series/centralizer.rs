//! Centralizers of normal sections.

use crate::error::{Error, Result};
use crate::group::{PermGroup, PATIENCE};
use crate::hom::{orbit_stabilizer, ConjugationOrbit};
use crate::perm::Perm;

use super::NormalSection;

/// Largest conjugation orbit on cosets that will be materialized.
pub const DEFAULT_SECTION_BOUND: usize = 100_000;

const FIRST_PASS_BOUND: usize = 4096;

/// Preimage of `C_{G/A}(B/A)`.
pub fn centralizer_of_section(s: &NormalSection) -> Result<PermGroup> {
    centralizer_of_section_bounded(s, DEFAULT_SECTION_BOUND)
}

/// As [`centralizer_of_section`], failing with `SectionTooLarge` when a
/// conjugation orbit on cosets of `A` in `B` exceeds `bound`.
///
/// The centralizer is the intersection of the stabilizers of cosets `A y`
/// for `y` running over generators of `B` modulo `A`; each stabilizer is
/// cut out of the previous one through its orbit on cosets.
pub fn centralizer_of_section_bounded(s: &NormalSection, bound: usize) -> Result<PermGroup> {
    let (g, a, b) = (s.ambient(), s.bottom(), s.top());
    if s.is_trivial() {
        return Ok(g.clone());
    }
    let centralizes = |x: &Perm| b.gens().iter().all(|y| a.contains(&y.commutator(x)));
    if g.gens().iter().all(centralizes) {
        return Ok(g.clone());
    }
    // short orbits first: stabilizing them shrinks the orbits of the rest
    let mut k = g.clone();
    let mut deferred = Vec::new();
    for y in section_pool(g, a, b) {
        if k.gens().iter().all(|h| a.contains(&y.commutator(h))) {
            continue;
        }
        match ConjugationOrbit::new(a.chain(), &y, &acting(&k, a), bound.min(FIRST_PASS_BOUND)) {
            Ok(orbit) => k = orbit_stabilizer(&k, a.chain(), &orbit),
            Err(Error::SectionTooLarge { .. }) => deferred.push(y),
            Err(e) => return Err(e),
        }
        if k.gens().iter().all(centralizes) {
            return Ok(k);
        }
    }
    for y in deferred {
        if k.gens().iter().all(|h| a.contains(&y.commutator(h))) {
            continue;
        }
        let orbit = ConjugationOrbit::new(a.chain(), &y, &acting(&k, a), bound)?;
        k = orbit_stabilizer(&k, a.chain(), &orbit);
    }
    Ok(k)
}

/// Generators of `k` outside `A`; those inside fix every coset of `A`.
fn acting(k: &PermGroup, a: &PermGroup) -> Vec<Perm> {
    k.gens().iter().filter(|h| !a.contains(h)).cloned().collect()
}

/// Elements of `B` whose cosets generate `B/A`, preferring small support
/// so that conjugation orbits stay short.
fn section_pool(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Vec<Perm> {
    let mut rng = g.rng(0xce17);
    let mut cands: Vec<Perm> = b.gens().to_vec();
    for _ in 0..16 {
        cands.push(b.random_element(&mut rng));
    }
    let mut derived = Vec::new();
    for c in &cands {
        let f = a.relative_order(c);
        for &p in f.keys() {
            let mut h = f.clone();
            *h.get_mut(&p).unwrap() -= 1;
            derived.push(c.pow_factored(&h));
            if f.len() > 1 {
                let mut q = f.clone();
                q.remove(&p);
                derived.push(c.pow_factored(&q));
            }
        }
    }
    cands.extend(derived);
    cands.retain(|c| !a.contains(c));
    cands.sort_by_key(|c| c.support());
    cands.dedup();
    if cands.is_empty() {
        return cands;
    }
    let reduced = reduce_support(g, a, &cands[0], &mut rng);
    cands.insert(0, reduced);
    let mut ordered = vec![cands[0].clone()];
    for _ in 0..2 * g.degree() {
        ordered.push(cands[0].conjugate_by(&g.random_element(&mut rng)));
    }
    ordered.extend(cands.iter().skip(1).cloned());

    let target = b.order();
    let mut chain = a.chain().clone();
    let mut pool = Vec::new();
    for y in ordered {
        if &chain.order() == target {
            break;
        }
        if chain.absorb(&y) {
            pool.push(y);
        }
    }
    if &chain.order() != target {
        let mut gens = a.gens().to_vec();
        gens.extend(pool.iter().cloned());
        if !chain.randomized(&gens, &mut rng, Some(target), PATIENCE) {
            pool.extend(b.gens().iter().filter(|x| !a.contains(x)).cloned());
        }
    }
    pool
}

/// Shrinks the support of `y` modulo `A` by replacing it with `y^-1 y^h`,
/// where `h` runs over random conjugates of the generators of `G`.
fn reduce_support(g: &PermGroup, a: &PermGroup, y: &Perm, rng: &mut impl rand::Rng) -> Perm {
    let gens = g.gens();
    let mut y = y.clone();
    let mut misses = 0;
    while misses < 4 * g.degree() {
        let h = gens[rng.gen_range(0..gens.len())].conjugate_by(&g.random_element(rng));
        let z = &y.inverse() * &y.conjugate_by(&h);
        if z.support() < y.support() && !a.contains(&z) {
            y = z;
            misses = 0;
        } else {
            misses += 1;
        }
    }
    y
}
