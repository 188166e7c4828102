//! Homomorphisms given by generator images, and actions on cosets.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::bsgs::StabChain;
use crate::error::{Error, Result};
use crate::group::{mix_seed, PermGroup, PATIENCE};
use crate::perm::Perm;

/// A homomorphism from a permutation group, defined by images of its
/// generators. The graph `{(g, phi(g))}` is held as a permutation group on
/// the disjoint union of both point sets, with a base that starts on the
/// image side; the levels below that prefix describe the kernel.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    image: PermGroup,
    graph: StabChain,
    prefix: usize,
}

fn graph_perm(g: &Perm, h: &Perm) -> Perm {
    let n = g.degree();
    let mut images: Vec<u32> = g.images().to_vec();
    images.extend(h.images().iter().map(|&x| x + n as u32));
    Perm::from_images(images).expect("disjoint union of bijections")
}

impl Homomorphism {
    /// `images[i]` is the image of `source.gens()[i]`.
    pub fn new(source: &PermGroup, images: &[Perm]) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::ContractViolation(format!(
                "{} generator images for {} generators",
                images.len(),
                source.gens().len()
            )));
        }
        let m = images.first().map_or(1, |h| h.degree());
        if let Some(bad) = images.iter().find(|h| h.degree() != m) {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: bad.degree(),
            });
        }
        let n = source.degree();
        let image = PermGroup::generated(m, images.to_vec(), mix_seed(source.seed(), 0x1a6e));
        let prefix: Vec<u32> = image
            .chain()
            .levels()
            .iter()
            .filter(|l| l.orbit().len() > 1)
            .map(|l| l.base() + n as u32)
            .collect();
        let pairs: Vec<Perm> = source
            .gens()
            .iter()
            .zip(images)
            .map(|(g, h)| graph_perm(g, h))
            .collect();
        let mut graph = StabChain::with_base_prefix(n + m, &prefix);
        let mut rng = source.rng(0x9a4f);
        let reached = graph.randomized(&pairs, &mut rng, Some(source.order()), PATIENCE);
        if !reached {
            if &graph.order() > source.order() {
                return Err(Error::NotAHomomorphism);
            }
            graph.verify();
            if &graph.order() != source.order() {
                return Err(Error::NotAHomomorphism);
            }
        }
        Ok(Homomorphism {
            source: source.clone(),
            image,
            graph,
            prefix: prefix.len(),
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn kernel(&self) -> PermGroup {
        let n = self.source.degree();
        let levels = &self.graph.levels()[self.prefix..];
        let mut order = BigUint::one();
        let mut gens: Vec<Perm> = Vec::new();
        for l in levels {
            order *= BigUint::from(l.orbit().len());
            for g in l.gens() {
                let t = g.truncated(n);
                if !gens.contains(&t) {
                    gens.push(t);
                }
            }
        }
        if order.is_one() {
            return PermGroup::trivial(n);
        }
        PermGroup::generated_with_order(n, gens, &order, mix_seed(self.source.seed(), 0x6e7))
    }

    /// Some `g` in the source with `phi(g) = h`, or `None` if `h` is not in the image.
    pub fn preimage_of(&self, h: &Perm) -> Option<Perm> {
        if h.degree() != self.image.degree() || !self.image.contains(h) {
            return None;
        }
        let n = self.source.degree();
        let total = self.graph.degree();
        let mut r = graph_perm(&Perm::identity(n), h);
        let mut acc = Perm::identity(total);
        for level in &self.graph.levels()[..self.prefix] {
            let beta = r.apply(level.base());
            let u = level.rep(beta, total);
            r = &r * &u.inverse();
            acc = &u * &acc;
        }
        debug_assert!(r.images()[n..].iter().enumerate().all(|(i, &x)| x as usize == n + i));
        Some(acc.truncated(n))
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        let kernel = self.kernel();
        let mut extra = Vec::new();
        for h in sub.gens() {
            extra.push(
                self.preimage_of(h)
                    .ok_or_else(|| Error::NotInGroup(h.to_cycle_string()))?,
            );
        }
        let order = kernel.order() * sub.order();
        Ok(kernel.closure_with_order(&extra, &order))
    }
}

/// Kernel of the homomorphism sending `source.gens()[i]` to `images[i]`.
pub fn kernel_of_homomorphism(source: &PermGroup, images: &[Perm]) -> Result<PermGroup> {
    Ok(Homomorphism::new(source, images)?.kernel())
}

/// Canonical representative of the right coset `A x`: the element whose
/// images of the base points of `A` are lexicographically smallest.
pub fn canonical_coset_rep(a: &StabChain, x: &Perm) -> Perm {
    let mut y = x.clone();
    let degree = y.degree();
    for level in a.levels() {
        if level.orbit().len() == 1 {
            continue;
        }
        let best = *level
            .orbit()
            .iter()
            .min_by_key(|&&d| y.apply(d))
            .expect("orbit is nonempty");
        if best != level.base() {
            y = &level.rep(best, degree) * &y;
        }
    }
    y
}

/// An orbit of a group acting by conjugation on cosets `A x` (with `A`
/// normalized by the acting group), stored with a transversal.
pub(crate) struct ConjugationOrbit {
    pub points: Vec<Perm>,
    pub index: HashMap<Vec<u32>, usize>,
    /// `transversal[i]` conjugates the coset of `points[0]` onto that of `points[i]`.
    pub transversal: Vec<Perm>,
}

impl ConjugationOrbit {
    pub fn new(a: &StabChain, x: &Perm, acting: &[Perm], bound: usize) -> Result<Self> {
        let degree = x.degree();
        let start = canonical_coset_rep(a, x);
        let mut index = HashMap::new();
        index.insert(start.images().to_vec(), 0usize);
        let mut points = vec![start];
        let mut transversal = vec![Perm::identity(degree)];
        let mut i = 0;
        while i < points.len() {
            for g in acting {
                let y = canonical_coset_rep(a, &points[i].conjugate_by(g));
                if !index.contains_key(y.images()) {
                    if points.len() >= bound {
                        return Err(Error::SectionTooLarge {
                            size: points.len() + 1,
                            bound,
                        });
                    }
                    index.insert(y.images().to_vec(), points.len());
                    transversal.push(&transversal[i] * g);
                    points.push(y);
                }
            }
            i += 1;
        }
        Ok(ConjugationOrbit {
            points,
            index,
            transversal,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Position of the coset of `x`.
    pub fn locate(&self, a: &StabChain, x: &Perm) -> Option<usize> {
        self.index.get(canonical_coset_rep(a, x).images()).copied()
    }
}

/// Stabilizer in `k` of the first point of `orbit` (an orbit of `k`).
pub(crate) fn orbit_stabilizer(k: &PermGroup, a: &StabChain, orbit: &ConjugationOrbit) -> PermGroup {
    if orbit.len() == 1 {
        return k.clone();
    }
    let target = k.order() / BigUint::from(orbit.len());
    let mut rng = k.rng(0x57ab);
    let x = orbit.points[0].clone();
    PermGroup::from_uniform_samples(k.degree(), &target, k.seed(), || {
        let r = k.random_element(&mut rng);
        let j = orbit
            .locate(a, &x.conjugate_by(&r))
            .expect("orbit is closed under the acting group");
        &r * &orbit.transversal[j].inverse()
    })
}

/// The action of `G` by right multiplication on the right cosets of a
/// normal subgroup `N`: a faithful permutation representation of `G/N`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    kernel: PermGroup,
    reps: Vec<Perm>,
    index: HashMap<Vec<u32>, usize>,
    image: PermGroup,
}

impl CosetAction {
    pub fn new(g: &PermGroup, n: &PermGroup, bound: usize) -> Result<Self> {
        let degree = g.degree();
        let start = canonical_coset_rep(n.chain(), &Perm::identity(degree));
        let mut index = HashMap::new();
        index.insert(start.images().to_vec(), 0usize);
        let mut reps = vec![start];
        let mut i = 0;
        while i < reps.len() {
            for s in g.gens() {
                let y = canonical_coset_rep(n.chain(), &(&reps[i] * s));
                if !index.contains_key(y.images()) {
                    if reps.len() >= bound {
                        return Err(Error::SectionTooLarge {
                            size: reps.len() + 1,
                            bound,
                        });
                    }
                    index.insert(y.images().to_vec(), reps.len());
                    reps.push(y);
                }
            }
            i += 1;
        }
        let mut action = CosetAction {
            kernel: n.clone(),
            reps,
            index,
            image: PermGroup::trivial(1),
        };
        let images: Vec<Perm> = g.gens().iter().map(|s| action.image_of(s)).collect();
        let m = action.reps.len();
        let order = g.order() / n.order();
        action.image = PermGroup::generated_with_order(m, images, &order, mix_seed(g.seed(), 0xc05e));
        Ok(action)
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    /// The image of `G`, isomorphic to `G/N`.
    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn image_of(&self, x: &Perm) -> Perm {
        let images: Vec<u32> = self
            .reps
            .iter()
            .map(|r| {
                let y = canonical_coset_rep(self.kernel.chain(), &(r * x));
                self.index[y.images()] as u32
            })
            .collect();
        Perm::from_images(images).expect("action on cosets is a permutation")
    }

    /// Image of a subgroup of `G`.
    pub fn image_of_group(&self, h: &PermGroup) -> PermGroup {
        let gens: Vec<Perm> = h.gens().iter().map(|x| self.image_of(x)).collect();
        PermGroup::generated(self.degree(), gens, h.seed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    fn sign(g: &Perm) -> Perm {
        let odd = g.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
        if odd {
            p(2, "(1 2)")
        } else {
            Perm::identity(2)
        }
    }

    #[test]
    fn sign_map_has_kernel_a4() {
        let s4 = catalog::symmetric(4);
        let images: Vec<Perm> = s4.gens().iter().map(sign).collect();
        let k = kernel_of_homomorphism(&s4, &images).unwrap();
        assert_eq!(k.order_u64(), Some(12));
        assert!(k.contains(&p(4, "(1 2 3)")));
        assert!(!k.contains(&p(4, "(1 2)")));
    }

    #[test]
    fn identity_map_has_trivial_kernel() {
        let g = catalog::psl2(7).unwrap();
        let k = kernel_of_homomorphism(&g, g.gens()).unwrap();
        assert!(k.is_trivial());
    }

    #[test]
    fn conjugation_on_involutions_of_v4() {
        // points 1,2,3 stand for (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)
        let invs = [p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)"), p(4, "(1 4)(2 3)")];
        let s4 = catalog::symmetric(4);
        let images: Vec<Perm> = s4
            .gens()
            .iter()
            .map(|g| {
                let imgs: Vec<u32> = invs
                    .iter()
                    .map(|v| invs.iter().position(|w| *w == v.conjugate_by(g)).unwrap() as u32)
                    .collect();
                Perm::from_images(imgs).unwrap()
            })
            .collect();
        let k = kernel_of_homomorphism(&s4, &images).unwrap();
        assert_eq!(k.order_u64(), Some(4));
        for v in &invs {
            assert!(k.contains(v));
        }
    }

    #[test]
    fn inconsistent_images_are_rejected() {
        let s3 = catalog::symmetric(3);
        // (1 2) -> (1 2 3) cannot extend: an involution onto an element of order 3
        let images = vec![p(3, "(1 2 3)"), Perm::identity(3)];
        assert_eq!(
            Homomorphism::new(&s3, &images).unwrap_err(),
            Error::NotAHomomorphism
        );
    }

    #[test]
    fn kernel_is_normal_and_orders_multiply() {
        let g = catalog::parse_catalog("wreath(sym(3),cyclic(2))").unwrap();
        // action on the two blocks
        let images: Vec<Perm> = g
            .gens()
            .iter()
            .map(|x| {
                if x.apply(0) >= 3 {
                    p(2, "(1 2)")
                } else {
                    Perm::identity(2)
                }
            })
            .collect();
        let hom = Homomorphism::new(&g, &images).unwrap();
        let k = hom.kernel();
        assert!(k.is_normalized_by(&g));
        assert_eq!(k.order() * hom.image().order(), g.order().clone());
        let pre = hom.preimage_of(&p(2, "(1 2)")).unwrap();
        assert!(g.contains(&pre));
        assert_eq!(pre.apply(0) >= 3, true);
    }

    #[test]
    fn canonical_reps_agree_on_a_coset() {
        let v4 = PermGroup::new(4, vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")], 1).unwrap();
        let x = p(4, "(1 2 3)");
        let c = canonical_coset_rep(v4.chain(), &x);
        for a in v4.elements() {
            assert_eq!(canonical_coset_rep(v4.chain(), &(&a * &x)), c);
        }
    }

    #[test]
    fn regular_quotient_representation() {
        let s4 = catalog::symmetric(4);
        let v4 = PermGroup::new(4, vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")], 1).unwrap();
        let act = CosetAction::new(&s4, &v4, 1000).unwrap();
        assert_eq!(act.degree(), 6);
        assert_eq!(act.image().order_u64(), Some(6));
        assert!(act.image_of(&p(4, "(1 2)(3 4)")).is_identity());
    }
}
