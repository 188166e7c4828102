//! Elementary abelian sections as modules over `F_p`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::linalg::{Matrix, Module, Row, Subspace};
use crate::perm::Perm;

use super::NormalSection;

/// An elementary abelian section `B/A` of order `p^d` with a chosen basis
/// `b_0, ..., b_{d-1}` and the flag `A = B_0 < B_1 < ... < B_d = B`,
/// `B_{j+1} = <B_j, b_j>`.
#[derive(Clone, Debug)]
pub struct ElementaryLayer {
    p: u64,
    section: NormalSection,
    basis: Vec<Perm>,
    flag: Vec<PermGroup>,
}

impl ElementaryLayer {
    pub fn new(section: &NormalSection) -> Result<Self> {
        let index = section.order();
        let f = index
            .to_u64()
            .map(crate::perm::factorize)
            .ok_or_else(|| Error::ContractViolation("section order out of range".into()))?;
        if f.len() != 1 || !section.is_abelian() {
            return Err(Error::ContractViolation("section is not elementary abelian".into()));
        }
        let (&p, &d) = f.iter().next().unwrap();
        let (a, b) = (section.bottom(), section.top());
        if b.gens().iter().any(|x| !a.contains(&x.pow(p as i64))) {
            return Err(Error::ContractViolation("section has exponent above p".into()));
        }
        let mut flag = vec![a.clone()];
        let mut basis = Vec::new();
        for x in b.gens() {
            if basis.len() == d as usize {
                break;
            }
            let cur = flag.last().unwrap();
            if cur.contains(x) {
                continue;
            }
            let order = cur.order() * BigUint::from(p);
            let next = cur.closure_with_order(std::slice::from_ref(x), &order);
            basis.push(x.clone());
            flag.push(next);
        }
        Ok(ElementaryLayer {
            p,
            section: section.clone(),
            basis,
            flag,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Perm] {
        &self.basis
    }

    pub fn section(&self) -> &NormalSection {
        &self.section
    }

    /// Coordinates of `x A` for `x` in `B`.
    pub fn coords(&self, x: &Perm) -> Row {
        let d = self.dim();
        let mut out = vec![0u32; d];
        let mut y = x.clone();
        for j in (0..d).rev() {
            let inv = self.basis[j].inverse();
            let mut c = 0u32;
            while !self.flag[j].contains(&y) {
                y = &y * &inv;
                c += 1;
                assert!((c as u64) < self.p, "element outside the section top");
            }
            out[j] = c;
        }
        out
    }

    /// Matrix of conjugation by `g`: row `i` holds the coordinates of `b_i^g`.
    pub fn matrix_of(&self, g: &Perm) -> Matrix {
        let rows = self.basis.iter().map(|b| self.coords(&b.conjugate_by(g))).collect();
        Matrix::new(self.p as u32, rows)
    }

    /// The section as a module for the ambient group.
    pub fn module(&self) -> Module {
        let gens = self.section.ambient().gens().iter().map(|g| self.matrix_of(g)).collect();
        Module::new(self.p as u32, self.dim(), gens).expect("matrices are square of the layer dimension")
    }

    /// Element of `B` with the given coordinates.
    pub fn element(&self, v: &[u32]) -> Perm {
        let mut x = Perm::identity(self.section.ambient().degree());
        for (b, &c) in self.basis.iter().zip(v) {
            x = &x * &b.pow(c as i64);
        }
        x
    }

    /// Preimage in `B` of a subspace.
    pub fn subgroup_of(&self, w: &Subspace) -> PermGroup {
        let a = self.section.bottom();
        let elems: Vec<Perm> = w.basis().iter().map(|v| self.element(v)).collect();
        let mut order = a.order().clone();
        for _ in 0..w.dim() {
            order *= BigUint::from(self.p);
        }
        a.closure_with_order(&elems, &order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::Splitting;
    use rand::SeedableRng;

    #[test]
    fn natural_module_of_s4() {
        let s4 = catalog::symmetric(4);
        let v4 = PermGroup::new(
            4,
            vec![
                Perm::parse_cycles(4, "(1,2)(3,4)").unwrap(),
                Perm::parse_cycles(4, "(1,3)(2,4)").unwrap(),
            ],
            1,
        )
        .unwrap();
        let s = NormalSection::new(s4.clone(), PermGroup::trivial(4), v4).unwrap();
        let layer = ElementaryLayer::new(&s).unwrap();
        assert_eq!((layer.prime(), layer.dim()), (2, 2));
        for v in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            assert_eq!(layer.coords(&layer.element(&v)), v.to_vec());
        }
        let m = layer.module();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert_eq!(m.split(&mut rng, 20).unwrap(), Splitting::Irreducible);
        // restricted to the Klein group itself the action is trivial
        let trivial = NormalSection::new(s.top().clone(), PermGroup::trivial(4), s.top().clone()).unwrap();
        let m = ElementaryLayer::new(&trivial).unwrap().module();
        match m.split(&mut rng, 20).unwrap() {
            Splitting::Submodule(w) => assert_eq!(w.dim(), 1),
            other => panic!("expected a line, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_elementary() {
        let c4 = catalog::cyclic(4);
        let s = NormalSection::new(c4.clone(), PermGroup::trivial(4), c4).unwrap();
        assert!(ElementaryLayer::new(&s).is_err());
    }
}
