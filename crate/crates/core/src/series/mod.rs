//! Normal structure: closures, commutators, section centralizers, chief
//! series, `O_Sigma` radicals and intersections with normal subgroups.

mod centralizer;
mod chief;
mod intersect;
mod layer;
mod minimal;
mod osigma;
pub mod types;

pub use centralizer::{centralizer_of_section, centralizer_of_section_bounded, DEFAULT_SECTION_BOUND};
pub use chief::{chief_series, identify_type, split_module, ChiefSeries};
pub use intersect::intersect_with_normal;
pub use layer::ElementaryLayer;
pub use minimal::minimal_normal_subgroups;
pub use osigma::o_sigma;
pub use types::{SimpleType, TypeKind, TypePredicate};

use num_bigint::BigUint;

use crate::bsgs::StabChain;
use crate::error::{Error, Result};
use crate::group::{mix_seed, PermGroup, QuotientRef};
use crate::perm::Perm;

/// A section `B/A` of `G` with `A <= B` both normal in `G`.
#[derive(Clone, Debug)]
pub struct NormalSection {
    ambient: PermGroup,
    bottom: PermGroup,
    top: PermGroup,
}

impl NormalSection {
    pub fn new(ambient: PermGroup, bottom: PermGroup, top: PermGroup) -> Result<Self> {
        if !top.is_subgroup_of(&ambient) {
            return Err(Error::NotInGroup("top of section".into()));
        }
        if !bottom.is_subgroup_of(&top) {
            return Err(Error::NotInGroup("bottom of section".into()));
        }
        for (name, n) in [("bottom", &bottom), ("top", &top)] {
            if !n.is_normalized_by(&ambient) {
                return Err(Error::NotNormal(format!("{name} of section")));
            }
        }
        Ok(NormalSection { ambient, bottom, top })
    }

    pub(crate) fn new_unchecked(ambient: &PermGroup, bottom: &PermGroup, top: &PermGroup) -> Self {
        NormalSection {
            ambient: ambient.clone(),
            bottom: bottom.clone(),
            top: top.clone(),
        }
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn bottom(&self) -> &PermGroup {
        &self.bottom
    }

    pub fn top(&self) -> &PermGroup {
        &self.top
    }

    /// `|B/A|`.
    pub fn order(&self) -> BigUint {
        self.top.order() / self.bottom.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.top.order() == self.bottom.order()
    }

    /// True if `B/A` is abelian.
    pub fn is_abelian(&self) -> bool {
        is_abelian_mod(&self.top, &self.bottom)
    }
}

pub(crate) fn is_abelian_mod(b: &PermGroup, a: &PermGroup) -> bool {
    let g = b.gens();
    (0..g.len()).all(|i| (i + 1..g.len()).all(|j| a.contains(&g[i].commutator(&g[j]))))
}

/// Smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &PermGroup, seeds: &[Perm]) -> Result<PermGroup> {
    for s in seeds {
        if !g.try_contains(s)? {
            return Err(Error::NotInGroup(s.to_cycle_string()));
        }
    }
    Ok(normal_closure_over(g, seeds, &PermGroup::trivial(g.degree()), Some(g)))
}

/// `ncl_G(seeds) * base` for `base` normal in `g`. If the result is known
/// to lie in `upper`, reaching its order short-circuits.
pub(crate) fn normal_closure_over(
    g: &PermGroup,
    seeds: &[Perm],
    base: &PermGroup,
    upper: Option<&PermGroup>,
) -> PermGroup {
    let mut chain: StabChain = base.chain().clone();
    let mut gens = base.gens().to_vec();
    let mut queue = Vec::new();
    for s in seeds {
        if chain.absorb(s) {
            gens.push(s.clone());
            queue.push(s.clone());
        }
    }
    if queue.is_empty() {
        return base.clone();
    }
    let limit = upper.map(|u| u.order().clone());
    while let Some(x) = queue.pop() {
        if limit.as_ref().is_some_and(|l| &chain.order() == l) {
            break;
        }
        for t in g.gens() {
            let c = x.conjugate_by(t);
            if chain.absorb(&c) {
                gens.push(c.clone());
                queue.push(c);
            }
        }
    }
    let seed = mix_seed(g.seed(), 0x4c1);
    PermGroup::from_partial_chain(g.degree(), gens, chain, seed, upper)
}

/// Preimage of `(G/K)'`.
pub fn derived_subgroup(q: &QuotientRef) -> PermGroup {
    derived_mod(q.ambient(), q.kernel())
}

/// `[B, B] A` for `A` normal in `B`.
pub(crate) fn derived_mod(b: &PermGroup, a: &PermGroup) -> PermGroup {
    let g = b.gens();
    let mut comms = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let c = g[i].commutator(&g[j]);
            if !a.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure_over(b, &comms, a, Some(b))
}

/// `<A, x^e : x in gens>` where `e` is given as a factorization.
pub(crate) fn powers_mod(a: &PermGroup, gens: &[Perm], e: &crate::perm::Factorization) -> PermGroup {
    let extra: Vec<Perm> = gens.iter().map(|x| x.pow_factored(e)).filter(|y| !a.contains(y)).collect();
    a.closure(&extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    pub(crate) fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    pub(crate) fn v4() -> PermGroup {
        PermGroup::new(4, vec![p(4, "(1,2)(3,4)"), p(4, "(1,3)(2,4)")], 1).unwrap()
    }

    #[test]
    fn closures_in_s4() {
        let s4 = catalog::symmetric(4);
        let a4 = normal_closure(&s4, &[p(4, "(1,2,3)")]).unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        let v = normal_closure(&s4, &[p(4, "(1,2)(3,4)")]).unwrap();
        assert!(v.same_group(&v4()));
        assert!(normal_closure(&s4, &[Perm::identity(4)]).unwrap().is_trivial());
        let a4g = catalog::alternating(4);
        assert!(normal_closure(&a4g, &[p(4, "(1,2)")]).is_err());
    }

    #[test]
    fn closure_matches_brute_force() {
        // brute force: close the conjugacy class under products
        let s4 = catalog::symmetric(4);
        let all = s4.elements();
        let x = p(4, "(1,2,3)");
        let mut set: Vec<Perm> = Vec::new();
        for g in &all {
            let c = x.conjugate_by(g);
            if !set.contains(&c) {
                set.push(c);
            }
        }
        loop {
            let mut grew = false;
            let snapshot = set.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let c = a * b;
                    if !set.contains(&c) {
                        set.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let n = normal_closure(&s4, &[x]).unwrap();
        assert_eq!(set.len() as u64, n.order_u64().unwrap());
        assert!(set.iter().all(|y| n.contains(y)));
    }

    #[test]
    fn derived_subgroups() {
        let s4 = catalog::symmetric(4);
        let d = derived_subgroup(&QuotientRef::whole(s4.clone()));
        assert_eq!(d.order_u64(), Some(12));
        let a5 = catalog::alternating(5);
        assert_eq!(derived_subgroup(&QuotientRef::whole(a5)).order_u64(), Some(60));
        let q = QuotientRef::new(s4, v4()).unwrap();
        let d = derived_subgroup(&q);
        assert!(d.same_group(&catalog::alternating(4)));
    }

    #[test]
    fn section_validation() {
        let s4 = catalog::symmetric(4);
        let c2 = PermGroup::new(4, vec![p(4, "(1,2)")], 1).unwrap();
        assert!(NormalSection::new(s4.clone(), c2, s4.clone()).is_err());
        let s = NormalSection::new(s4.clone(), v4(), catalog::alternating(4)).unwrap();
        assert_eq!(s.order(), BigUint::from(3u32));
        assert!(s.is_abelian());
    }
}
