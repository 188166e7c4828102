//! The `Sigma`-radical `O_Sigma(G/K)`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{mix_seed, PermGroup, QuotientRef};
use crate::perm::Factorization;

use super::chief::{chief_series, ChiefSeries};
use super::types::TypePredicate;
use super::{centralizer_of_section, derived_mod, intersect_with_normal, NormalSection};

/// Preimage of the largest normal subgroup of `G/K` whose composition
/// factors all satisfy `sigma`.
pub fn o_sigma(q: &QuotientRef, sigma: &TypePredicate) -> Result<PermGroup> {
    rec(q.ambient(), q.kernel(), sigma, None)
}

/// `series`, if given, is a chief series of `g` from `k`.
fn rec(g: &PermGroup, k: &PermGroup, sigma: &TypePredicate, series: Option<ChiefSeries>) -> Result<PermGroup> {
    if g.order() == k.order() {
        return Ok(k.clone());
    }
    let series = match series {
        Some(s) => s,
        None => chief_series(&QuotientRef::new_unchecked(g.clone(), k.clone()), &[], mix_seed(g.seed(), 0x05)) ?,
    };
    let m = series.len();
    let i = series.factor_types().iter().take_while(|t| sigma.accepts_type(t)).count();
    if i == m {
        return Ok(g.clone());
    }
    // everything below G_i is in the radical; work in G/G_i with M = G_{i+1}/G_i
    let gi = &series.terms()[i];
    let gi1 = &series.terms()[i + 1];
    let c = centralizer_of_section(&NormalSection::new_unchecked(g, gi, gi1))?;
    if c.order() != g.order() {
        // the radical meets M trivially, so it centralizes M
        return rec(&c, gi, sigma, None);
    }
    // M is central of prime order p, and C_p is not in Sigma
    let p = series.factor_types()[i].prime().expect("central chief factors are cyclic");
    let above = rec(g, gi1, sigma, Some(series.tail(i + 1)))?;
    if above.order() != g.order() {
        return rec(&above, gi, sigma, None);
    }
    // X = G/G_i with X/M a Sigma-group; a minimal normal subgroup of X other
    // than M lies in the radical, and if M is the only one the radical is trivial
    let quotient = g.order() / gi1.order();
    if (&quotient % p) != BigUint::from(0u32) {
        // X = M x H with H the p'-elements; H is the radical
        let h = gi.closure(
            &g.gens().iter().map(|x| x.pow_factored(&Factorization::from([(p, 1)]))).collect::<Vec<_>>(),
        );
        return Ok(h);
    }
    let mut cent = g.clone();
    loop {
        if cent.order() == gi1.order() {
            return Ok(gi.clone());
        }
        // a minimal normal V/M of X/M inside cent
        let cs = chief_series(
            &QuotientRef::new_unchecked(g.clone(), gi1.clone()),
            &[cent.clone()],
            mix_seed(g.seed(), 0x0b),
        )?;
        let v = cs.terms()[1].clone();
        let ty = &cs.factor_types()[0];
        if ty.is_abelian() {
            // V/G_i = M x Q with Q the Sylow q-subgroup, q != p
            let u = gi.closure(
                &v.gens().iter().map(|x| x.pow_factored(&Factorization::from([(p, 1)]))).collect::<Vec<_>>(),
            );
            if u.order() * BigUint::from(p) == *v.order() {
                return rec(g, &u, sigma, None);
            }
            return Err(Error::InternalContradiction(
                "abelian minimal normal subgroup above a central factor of the same prime".into(),
            ));
        } else {
            let d = derived_mod(&v, gi);
            if d.order() * BigUint::from(p) == *v.order() {
                return rec(g, &d, sigma, None);
            }
        }
        let cv = centralizer_of_section(&NormalSection::new_unchecked(g, gi1, &v))?;
        cent = intersect_with_normal(&cent, &cv);
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{p, v4};
    use super::*;
    use crate::catalog;
    use crate::series::TypeKind;
    use std::collections::BTreeSet;

    fn whole(g: &PermGroup) -> QuotientRef {
        QuotientRef::whole(g.clone())
    }

    #[test]
    fn spec_examples() {
        let s4 = catalog::symmetric(4);
        let c2 = TypePredicate::CyclicPrimes(BTreeSet::from([2]));
        assert!(o_sigma(&whole(&s4), &c2).unwrap().same_group(&v4()));
        let s3 = catalog::symmetric(3);
        let odd = TypePredicate::Avoids(2);
        assert_eq!(o_sigma(&whole(&s3), &odd).unwrap().order_u64(), Some(3));
        assert!(o_sigma(&whole(&s4), &TypePredicate::Cyclic).unwrap().same_group(&s4));
    }

    #[test]
    fn central_factors() {
        // C6: O_{C3} is the subgroup of order 3 (M = C2 at the bottom or top)
        let c6 = catalog::cyclic(6);
        let c3 = TypePredicate::CyclicPrimes(BTreeSet::from([3]));
        assert_eq!(o_sigma(&whole(&c6), &c3).unwrap().order_u64(), Some(3));
        // Q8 has a unique minimal normal subgroup, so O_{C3}(Q8) = 1
        let q8 = catalog::quaternion();
        assert!(o_sigma(&whole(&q8), &c3).unwrap().is_trivial());
        // A5 x C2: the radical for {A5} is A5
        let g = catalog::direct(&catalog::alternating(5), &catalog::cyclic(2));
        let a5 = TypePredicate::single(TypeKind::Nonabelian {
            name: "A5".into(),
            order: BigUint::from(60u32),
        });
        assert_eq!(o_sigma(&whole(&g), &a5).unwrap().order_u64(), Some(60));
    }

    #[test]
    fn quotient_radical() {
        let s4 = catalog::symmetric(4);
        let q = QuotientRef::new(s4.clone(), v4()).unwrap();
        let r = o_sigma(&q, &TypePredicate::Avoids(2)).unwrap();
        assert_eq!(r.order_u64(), Some(12));
        let c2 = PermGroup::new(4, vec![p(4, "(1,2)")], 1).unwrap();
        assert!(!r.is_subgroup_of(&c2));
    }
}
