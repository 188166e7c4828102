//! Brute-force ground truth for small groups: normal subgroup lattices,
//! radicals as largest normal members of a class, and lengths.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formation::{contains_group, Formation};
use crate::group::{PermGroup, QuotientRef};
use crate::perm::Perm;
use crate::radical::{Length, LengthKind};
use crate::series::ChiefSeries;

/// Groups up to this order are handled by the oracle unless told otherwise.
pub const DEFAULT_ORACLE_BOUND: u64 = 5000;

/// Fixed-size set of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

/// Elements of a small group, enumerated by breadth-first search over the
/// generators.
struct Elements {
    elems: Vec<Perm>,
    index: HashMap<Vec<u32>, usize>,
}

impl Elements {
    fn new(g: &PermGroup) -> Self {
        let id = Perm::identity(g.degree());
        let mut index = HashMap::new();
        index.insert(id.images().to_vec(), 0);
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for s in g.gens() {
                let y = &elems[i] * s;
                if !index.contains_key(y.images()) {
                    index.insert(y.images().to_vec(), elems.len());
                    elems.push(y);
                }
            }
            i += 1;
        }
        Elements { elems, index }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn idx(&self, p: &Perm) -> usize {
        self.index[p.images()]
    }

    /// Subgroup generated by `start` (a subgroup) and `extra`.
    fn closure(&self, start: &Bits, start_gens: &[usize], extra: &[usize]) -> Bits {
        let mut set = start.clone();
        let mut list: Vec<usize> = (0..self.len()).filter(|&i| start.get(i)).collect();
        if list.is_empty() {
            set.set(0);
            list.push(0);
        }
        let gens: Vec<usize> = start_gens.iter().chain(extra).copied().collect();
        let mut i = 0;
        while i < list.len() {
            for &s in &gens {
                let y = self.idx(&(&self.elems[list[i]] * &self.elems[s]));
                if !set.get(y) {
                    set.set(y);
                    list.push(y);
                }
            }
            i += 1;
        }
        set
    }
}

/// All normal subgroups of a small group with their inclusions.
#[derive(Clone, Debug)]
pub struct NormalLattice {
    group: PermGroup,
    subgroups: Vec<PermGroup>,
    sets: Vec<Bits>,
    contains: Vec<Vec<bool>>,
    classes: usize,
}

impl NormalLattice {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Normal subgroups in order of increasing size.
    pub fn subgroups(&self) -> &[PermGroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// `contains(i, j)`: subgroup `j` lies in subgroup `i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.contains[i][j]
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    /// Position of a normal subgroup in the lattice.
    pub fn position(&self, n: &PermGroup) -> Option<usize> {
        self.subgroups.iter().position(|m| m.same_group(n))
    }

    /// Lattice members containing `k`.
    fn above(&self, k: &PermGroup) -> Vec<usize> {
        (0..self.len()).filter(|&i| k.is_subgroup_of(&self.subgroups[i])).collect()
    }

    /// Closed under products and intersections, and every member is normal.
    pub fn is_consistent(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let meet = self.sets[i].and(&self.sets[j]);
                if !self.sets.contains(&meet) {
                    return false;
                }
                let prod = self.subgroups[i].closure(self.subgroups[j].gens());
                if self.position(&prod).is_none() {
                    return false;
                }
            }
        }
        self.subgroups.iter().all(|s| s.is_normalized_by(&self.group))
    }
}

fn check_bound(g: &PermGroup, bound: u64) -> Result<()> {
    if g.order() > &BigUint::from(bound) {
        return Err(Error::OracleBound {
            order: g.order().to_string(),
            bound,
        });
    }
    Ok(())
}

/// Every normal subgroup of `g`, as joins of normal closures of conjugacy classes.
pub fn normal_subgroups(g: &PermGroup, max_order: u64) -> Result<NormalLattice> {
    check_bound(g, max_order)?;
    let el = Elements::new(g);
    let n = el.len();
    let gen_idx: Vec<usize> = g.gens().iter().map(|s| el.idx(s)).collect();

    // conjugacy classes
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[x] = c;
        let mut members = vec![x];
        let mut i = 0;
        while i < members.len() {
            for &s in &gen_idx {
                let y = el.idx(&el.elems[members[i]].conjugate_by(&el.elems[s]));
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    members.push(y);
                }
            }
            i += 1;
        }
        classes.push(members);
    }

    // normal closures of classes, each with a small generating set
    let trivial = {
        let mut b = Bits::new(n);
        b.set(0);
        b
    };
    let mut members: Vec<(Bits, Vec<usize>)> = vec![(trivial.clone(), Vec::new())];
    let add = |set: Bits, gens: Vec<usize>, members: &mut Vec<(Bits, Vec<usize>)>| {
        if !members.iter().any(|(s, _)| *s == set) {
            members.push((set, gens));
        }
    };
    let mut closures: Vec<(Bits, Vec<usize>)> = Vec::new();
    for class in classes.iter().skip(1) {
        let mut set = trivial.clone();
        let mut gens = Vec::new();
        for &x in class {
            if !set.get(x) {
                set = el.closure(&set, &gens, &[x]);
                gens.push(x);
            }
        }
        add(set.clone(), gens.clone(), &mut members);
        closures.push((set, gens));
    }
    // joins
    let mut i = 0;
    while i < members.len() {
        for (cset, cgens) in &closures {
            let (set, gens) = members[i].clone();
            if cset.subset_of(&set) {
                continue;
            }
            let joined = el.closure(&set, &gens, cgens);
            let mut jg = gens.clone();
            jg.extend(cgens);
            add(joined, jg, &mut members);
        }
        i += 1;
    }
    members.sort_by_key(|(s, _)| s.count());
    let subgroups: Vec<PermGroup> = members
        .iter()
        .map(|(s, gens)| {
            let order = BigUint::from(s.count());
            g.subgroup_with_order(gens.iter().map(|&x| el.elems[x].clone()).collect(), &order)
        })
        .collect();
    let sets: Vec<Bits> = members.into_iter().map(|(s, _)| s).collect();
    let contains = sets
        .iter()
        .map(|a| sets.iter().map(|b| b.subset_of(a)).collect())
        .collect();
    Ok(NormalLattice {
        group: g.clone(),
        subgroups,
        sets,
        contains,
        classes: classes.len(),
    })
}

/// Largest normal subgroup `N/K` of `G/K` lying in `f`, by exhaustion over
/// the lattice of `G`.
pub fn radical_oracle_mod(k: &PermGroup, f: &Formation, lattice: &NormalLattice) -> Result<PermGroup> {
    if f.is_empty_class() {
        return Err(Error::EmptyFormation);
    }
    let g = lattice.group();
    let mut members = Vec::new();
    for i in lattice.above(k) {
        let n = &lattice.subgroups[i];
        if contains_group(f, &QuotientRef::new_unchecked(n.clone(), k.clone()))? {
            members.push(i);
        }
    }
    let maximal: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| !members.iter().any(|&j| j != i && lattice.contains(j, i)))
        .collect();
    if maximal.len() != 1 {
        return Err(Error::NotFitting(format!(
            "{} maximal normal subgroups of a group of order {} lie in {f}",
            maximal.len(),
            g.order()
        )));
    }
    let top = maximal[0];
    if !members.iter().all(|&i| lattice.contains(top, i)) {
        return Err(Error::NotFitting(format!("radical for {f} does not contain every member")));
    }
    Ok(lattice.subgroups[top].clone())
}

/// Largest normal subgroup of `G` lying in `f`.
pub fn radical_oracle(f: &Formation, lattice: &NormalLattice) -> Result<PermGroup> {
    radical_oracle_mod(&PermGroup::trivial(lattice.group().degree()), f, lattice)
}

/// True if no lattice member lies strictly between consecutive terms.
pub fn verify_chief(series: &ChiefSeries, lattice: &NormalLattice) -> bool {
    series.terms().windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        a.order() < b.order()
            && a.is_subgroup_of(b)
            && !lattice
                .subgroups
                .iter()
                .any(|m| a.order() < m.order() && m.order() < b.order() && a.is_subgroup_of(m) && m.is_subgroup_of(b))
    })
}

/// Lengths from oracle radicals of successive quotients.
pub fn oracle_length(kind: LengthKind, lattice: &NormalLattice) -> Result<Length> {
    let g = lattice.group();
    let kind = match kind {
        LengthKind::Lambda => LengthKind::LambdaP(2),
        other => other,
    };
    let whole = QuotientRef::whole(g.clone());
    match kind {
        LengthKind::H if !contains_group(&Formation::soluble(), &whole)? => return Ok(Length::Infinite),
        LengthKind::Lp(p) if !contains_group(&Formation::p_soluble(p), &whole)? => return Ok(Length::Infinite),
        _ => {}
    }
    let mut k = PermGroup::trivial(g.degree());
    let mut count = 0;
    loop {
        let index = g.order() / k.order();
        let q = QuotientRef::new_unchecked(g.clone(), k.clone());
        let done = match kind {
            LengthKind::H | LengthKind::HStar => index == BigUint::from(1u32),
            LengthKind::Lp(p) => &index % p != BigUint::from(0u32),
            LengthKind::LambdaP(p) => contains_group(&Formation::p_soluble(p), &q)?,
            LengthKind::Lambda => unreachable!(),
        };
        if done {
            return Ok(Length::Finite(count));
        }
        let next = match kind {
            LengthKind::H => radical_oracle_mod(&k, &Formation::Nilpotent, lattice)?,
            LengthKind::Lp(p) => radical_oracle_mod(&k, &Formation::PNilpotent(p), lattice)?,
            LengthKind::HStar => radical_oracle_mod(&k, &Formation::Quasinilpotent, lattice)?,
            LengthKind::LambdaP(p) => {
                let r = radical_oracle_mod(&k, &Formation::p_soluble(p), lattice)?;
                radical_oracle_mod(&r, &Formation::Quasinilpotent, lattice)?
            }
            LengthKind::Lambda => unreachable!(),
        };
        if next.order() == k.order() {
            return Err(Error::InternalContradiction("oracle length made no progress".into()));
        }
        k = next;
        count += 1;
    }
}
