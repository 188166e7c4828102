//! Isomorphism types of characteristically simple sections and predicates on them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::perm::{factorize, is_prime};

/// The simple group `J` of a section `J^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Cyclic(u64),
    Nonabelian { name: String, order: BigUint },
}

impl TypeKind {
    pub fn is_abelian(&self) -> bool {
        matches!(self, TypeKind::Cyclic(_))
    }

    pub fn order(&self) -> BigUint {
        match self {
            TypeKind::Cyclic(p) => BigUint::from(*p),
            TypeKind::Nonabelian { order, .. } => order.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TypeKind::Cyclic(p) => format!("C{p}"),
            TypeKind::Nonabelian { name, .. } => name.clone(),
        }
    }

    /// Prime divisors of `|J|`.
    pub fn pi(&self) -> BTreeSet<u64> {
        match self {
            TypeKind::Cyclic(p) => BTreeSet::from([*p]),
            TypeKind::Nonabelian { order, .. } => prime_divisors(order),
        }
    }

    pub fn divisible_by(&self, p: u64) -> bool {
        match self {
            TypeKind::Cyclic(q) => *q == p,
            TypeKind::Nonabelian { order, .. } => (order % p).is_zero_big(),
        }
    }
}

trait ZeroBig {
    fn is_zero_big(&self) -> bool;
}

impl ZeroBig for BigUint {
    fn is_zero_big(&self) -> bool {
        self.bits() == 0
    }
}

/// Prime divisors of an order. Orders of simple sections come from
/// permutation groups, so every prime factor is below the degree or is a
/// small table entry; trial division up to `10^5` with a final primality
/// check covers them.
pub fn prime_divisors(n: &BigUint) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut m = n.clone();
    let mut q = 2u64;
    while m > BigUint::one() && q < 100_000 {
        if (&m % q).is_zero_big() {
            out.insert(q);
            while (&m % q).is_zero_big() {
                m /= q;
            }
        }
        q += 1;
    }
    if m > BigUint::one() {
        if let Some(v) = m.to_u64() {
            out.extend(factorize(v).keys().copied());
        }
    }
    out
}

/// Type of a chief factor: `J` together with the number of direct factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    kind: TypeKind,
    width: usize,
}

impl SimpleType {
    pub fn cyclic(p: u64, width: usize) -> Self {
        debug_assert!(is_prime(p) && width >= 1);
        SimpleType {
            kind: TypeKind::Cyclic(p),
            width,
        }
    }

    pub fn nonabelian(name: impl Into<String>, order: BigUint, width: usize) -> Self {
        SimpleType {
            kind: TypeKind::Nonabelian {
                name: name.into(),
                order,
            },
            width,
        }
    }

    pub fn kind(&self) -> &TypeKind {
        &self.kind
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_abelian(&self) -> bool {
        self.kind.is_abelian()
    }

    pub fn prime(&self) -> Option<u64> {
        match self.kind {
            TypeKind::Cyclic(p) => Some(p),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        self.kind.name()
    }

    pub fn simple_order(&self) -> BigUint {
        self.kind.order()
    }

    /// `|J|^width`.
    pub fn section_order(&self) -> BigUint {
        let mut o = BigUint::one();
        for _ in 0..self.width {
            o *= self.kind.order();
        }
        o
    }

    pub fn pi(&self) -> BTreeSet<u64> {
        self.kind.pi()
    }

    /// Same simple group `J`, regardless of width.
    pub fn same_simple(&self, other: &SimpleType) -> bool {
        self.kind == other.kind
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.width == 1 {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{}^{}", self.name(), self.width)
        }
    }
}

/// Decidable predicate on simple groups, describing a collection `Sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypePredicate {
    Nothing,
    Everything,
    /// All cyclic groups of prime order.
    Cyclic,
    /// `C_p` for `p` in the set.
    CyclicPrimes(BTreeSet<u64>),
    /// Simple groups whose order involves only primes from the set.
    PrimesWithin(BTreeSet<u64>),
    /// Simple groups of order coprime to `p`.
    Avoids(u64),
    /// Composition factors of `p`-soluble groups: `C_p` or of order coprime to `p`.
    PSoluble(u64),
    /// An explicit finite list.
    Exactly(BTreeSet<TypeKind>),
    Not(Box<TypePredicate>),
    And(Vec<TypePredicate>),
    Or(Vec<TypePredicate>),
}

impl TypePredicate {
    pub fn accepts(&self, j: &TypeKind) -> bool {
        match self {
            TypePredicate::Nothing => false,
            TypePredicate::Everything => true,
            TypePredicate::Cyclic => j.is_abelian(),
            TypePredicate::CyclicPrimes(ps) => matches!(j, TypeKind::Cyclic(p) if ps.contains(p)),
            TypePredicate::PrimesWithin(ps) => j.pi().is_subset(ps),
            TypePredicate::Avoids(p) => !j.divisible_by(*p),
            TypePredicate::PSoluble(p) => {
                matches!(j, TypeKind::Cyclic(_)) || !j.divisible_by(*p)
            }
            TypePredicate::Exactly(set) => set.contains(j),
            TypePredicate::Not(inner) => !inner.accepts(j),
            TypePredicate::And(v) => v.iter().all(|t| t.accepts(j)),
            TypePredicate::Or(v) => v.iter().any(|t| t.accepts(j)),
        }
    }

    pub fn accepts_type(&self, t: &SimpleType) -> bool {
        self.accepts(t.kind())
    }

    pub fn single(j: TypeKind) -> Self {
        TypePredicate::Exactly(BTreeSet::from([j]))
    }
}

fn psl2_order(q: u64) -> u64 {
    let g = if q % 2 == 1 { 2 } else { 1 };
    q * (q * q - 1) / g
}

fn prime_power(q: u64) -> bool {
    let f = factorize(q);
    f.len() == 1
}

/// Nonabelian simple groups of order at most `10^6`, by name.
fn small_simple_groups() -> Vec<(u64, &'static str)> {
    vec![
        (60, "A5"),
        (360, "A6"),
        (2520, "A7"),
        (5616, "L3_3"),
        (6048, "U3_3"),
        (7920, "M11"),
        (20160, "A8"),
        (25920, "U4_2"),
        (29120, "Sz8"),
        (62400, "U3_4"),
        (95040, "M12"),
        (126000, "U3_5"),
        (175560, "J1"),
        (181440, "A9"),
        (372000, "L3_5"),
        (443520, "M22"),
        (604800, "J2"),
        (979200, "S4_4"),
    ]
}

/// Name of a nonabelian simple group of the given order. Order 20160 is
/// shared by `A8` and `L3(4)`; `has_order_15` tells them apart.
pub fn simple_group_name(order: &BigUint, has_order_15: impl FnOnce() -> bool) -> Option<String> {
    if let Some(o) = order.to_u64() {
        if o == 20160 {
            return Some(if has_order_15() { "A8" } else { "L3_4" }.to_string());
        }
        if let Some((_, name)) = small_simple_groups().into_iter().find(|(x, _)| *x == o) {
            return Some(name.to_string());
        }
        for q in 7..1000u64 {
            if q == 9 || !prime_power(q) {
                continue;
            }
            if psl2_order(q) == o {
                return Some(format!("L2_{q}"));
            }
        }
    }
    // alternating groups beyond the table
    let mut f = BigUint::from(60u32);
    for n in 6..200u32 {
        f *= n;
        if n >= 10 && &f == order {
            return Some(format!("A{n}"));
        }
        if &f > order {
            break;
        }
    }
    if order.to_u64().map_or(false, |o| o <= 1_000_000) {
        None
    } else {
        Some(format!("unknown-simple({order})"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_lookups() {
        let name = |o: u64| simple_group_name(&BigUint::from(o), || false);
        assert_eq!(name(60).as_deref(), Some("A5"));
        assert_eq!(name(168).as_deref(), Some("L2_7"));
        assert_eq!(name(504).as_deref(), Some("L2_8"));
        assert_eq!(name(7920).as_deref(), Some("M11"));
        assert_eq!(name(20160).as_deref(), Some("L3_4"));
        assert_eq!(simple_group_name(&BigUint::from(20160u32), || true).as_deref(), Some("A8"));
        assert_eq!(name(1_814_400).as_deref(), Some("A10"));
        // 120 is not the order of a simple group
        assert_eq!(name(120), None);
    }

    #[test]
    fn psl2_orders_in_table_are_unique() {
        let mut seen = std::collections::BTreeMap::new();
        for q in 7..1000u64 {
            if q == 9 || !prime_power(q) {
                continue;
            }
            let o = psl2_order(q);
            if o > 1_000_000 {
                continue;
            }
            assert!(small_simple_groups().iter().all(|(x, _)| *x != o), "q = {q}");
            assert!(seen.insert(o, q).is_none(), "q = {q}");
        }
    }

    #[test]
    fn predicates() {
        let a5 = TypeKind::Nonabelian {
            name: "A5".into(),
            order: BigUint::from(60u32),
        };
        let c2 = TypeKind::Cyclic(2);
        let c3 = TypeKind::Cyclic(3);
        assert!(TypePredicate::Cyclic.accepts(&c3));
        assert!(!TypePredicate::Cyclic.accepts(&a5));
        assert!(TypePredicate::Avoids(2).accepts(&c3));
        assert!(!TypePredicate::Avoids(2).accepts(&a5));
        assert!(TypePredicate::PSoluble(7).accepts(&a5));
        assert!(!TypePredicate::PSoluble(5).accepts(&a5));
        assert!(TypePredicate::PSoluble(5).accepts(&c2));
        assert!(TypePredicate::PrimesWithin(BTreeSet::from([2, 3, 5])).accepts(&a5));
        assert!(TypePredicate::Not(Box::new(TypePredicate::single(c2.clone()))).accepts(&c3));
        assert_eq!(a5.pi(), BTreeSet::from([2, 3, 5]));
    }
}
