//! Minimal normal subgroups of a quotient.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{PermGroup, QuotientRef};
use crate::hom::canonical_coset_rep;
use crate::perm::Perm;

use super::normal_closure_over;

/// Quotients up to this order are handled exactly, through conjugacy
/// classes of `G/K`.
pub const EXACT_BOUND: u64 = 5000;

/// Preimages of the minimal normal subgroups of `G/K`.
pub fn minimal_normal_subgroups(q: &QuotientRef) -> Result<Vec<PermGroup>> {
    if q.is_trivial() {
        return Err(Error::ContractViolation("trivial quotient has no minimal normal subgroups".into()));
    }
    let (g, k) = (q.ambient(), q.kernel());
    let small = q.order() <= BigUint::from(EXACT_BOUND);
    let candidates = if small {
        class_candidates(g, k)
    } else {
        sampled_candidates(g, k)
    };
    let mut out: Vec<PermGroup> = Vec::new();
    for c in &candidates {
        let proper_inside = candidates
            .iter()
            .any(|d| d.order() < c.order() && d.is_subgroup_of(c));
        if !proper_inside && !out.iter().any(|o| o.same_group(c)) {
            out.push(c.clone());
        }
    }
    out.sort_by(|a, b| a.order().cmp(b.order()));
    Ok(out)
}

/// Element of prime order modulo `k`.
fn prime_order_mod(k: &PermGroup, x: &Perm) -> bool {
    let f = k.relative_order(x);
    f.len() == 1 && f.values().all(|&e| e == 1)
}

/// Normal closures of class representatives of prime order in `G/K`.
fn class_candidates(g: &PermGroup, k: &PermGroup) -> Vec<PermGroup> {
    let degree = g.degree();
    let start = canonical_coset_rep(k.chain(), &Perm::identity(degree));
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    index.insert(start.images().to_vec(), 0);
    let mut reps = vec![start];
    let mut i = 0;
    while i < reps.len() {
        for s in g.gens() {
            let y = canonical_coset_rep(k.chain(), &(&reps[i] * s));
            if !index.contains_key(y.images()) {
                index.insert(y.images().to_vec(), reps.len());
                reps.push(y);
            }
        }
        i += 1;
    }
    let mut seen = vec![false; reps.len()];
    seen[0] = true;
    let mut out: Vec<PermGroup> = Vec::new();
    for r in 1..reps.len() {
        if seen[r] {
            continue;
        }
        let mut class = vec![r];
        seen[r] = true;
        let mut j = 0;
        while j < class.len() {
            let x = reps[class[j]].clone();
            for s in g.gens() {
                let y = canonical_coset_rep(k.chain(), &x.conjugate_by(s));
                let idx = index[y.images()];
                if !seen[idx] {
                    seen[idx] = true;
                    class.push(idx);
                }
            }
            j += 1;
        }
        if prime_order_mod(k, &reps[r]) {
            let n = normal_closure_over(g, &[reps[r].clone()], k, Some(g));
            if !out.iter().any(|o| o.same_group(&n)) {
                out.push(n);
            }
        }
    }
    out
}

fn sampled_candidates(g: &PermGroup, k: &PermGroup) -> Vec<PermGroup> {
    let mut rng = g.rng(0x317);
    let mut out: Vec<PermGroup> = Vec::new();
    for _ in 0..40 {
        let y = g.random_element(&mut rng);
        let f = k.relative_order(&y);
        for &p in f.keys() {
            let mut h = f.clone();
            *h.get_mut(&p).unwrap() -= 1;
            let mut n = normal_closure_over(g, &[y.pow_factored(&h)], k, Some(g));
            // descend inside n
            let mut fails = 0;
            while fails < 12 {
                let z = n.random_element(&mut rng);
                let fz = k.relative_order(&z);
                let Some((&r, _)) = fz.iter().next() else {
                    fails += 1;
                    continue;
                };
                let mut hz = fz.clone();
                *hz.get_mut(&r).unwrap() -= 1;
                let m = normal_closure_over(g, &[z.pow_factored(&hz)], k, Some(&n));
                if m.order() < n.order() {
                    n = m;
                    fails = 0;
                } else {
                    fails += 1;
                }
            }
            if !out.iter().any(|o| o.same_group(&n)) {
                out.push(n);
            }
        }
    }
    out
}
