//! Radicals of Baer-local Fitting formations and the lengths built on them.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formation::{baer_value, contains_group, ef_radical_trace, innerizer, Formation};
use crate::group::{mix_seed, PermGroup, QuotientRef};
use crate::series::{
    centralizer_of_section, chief_series, intersect_with_normal, o_sigma, ChiefSeries, NormalSection,
    SimpleType, TypePredicate,
};

/// Audit data for one chief factor `G_i/G_{i-1}`.
#[derive(Clone, Debug)]
pub struct FactorAudit {
    pub factor_type: SimpleType,
    /// `f(G_i/G_{i-1})`.
    pub value: Formation,
    /// `C_G(G_i/G_{i-1})`, absent when the value is empty.
    pub centralizer: Option<PermGroup>,
    /// The generalized centralizer, absent when the value is empty.
    pub generalized: Option<PermGroup>,
}

/// Result of [`fradical`] with the intermediate subgroups.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub subgroup: PermGroup,
    /// Chief series of `G` from `K`, when the factor-by-factor algorithm ran.
    pub series: Option<ChiefSeries>,
    pub factors: Vec<FactorAudit>,
    /// Intersection of the generalized centralizers.
    pub intersection: Option<PermGroup>,
    /// Accumulator of the `E F` sweep after each chief factor of the intersection.
    pub sweep: Vec<PermGroup>,
}

impl RadicalReport {
    fn bare(subgroup: PermGroup) -> Self {
        RadicalReport {
            subgroup,
            series: None,
            factors: Vec::new(),
            intersection: None,
            sweep: Vec::new(),
        }
    }
}

/// `C_{G,f}(H/K)`: the preimage over `C_G(H/K)` of the `f(H/K)`-radical of `G/C_G(H/K)`.
pub fn generalized_centralizer(s: &NormalSection, ty: &SimpleType, f: &Formation) -> Result<PermGroup> {
    let v = baer_value(f, ty.kind());
    if v.is_empty_class() {
        return Err(Error::ContractViolation(format!("f({ty}) is empty")));
    }
    let c = centralizer_of_section(s)?;
    generalized_from(s, &c, f, &v)
}

fn generalized_from(s: &NormalSection, c: &PermGroup, f: &Formation, v: &Formation) -> Result<PermGroup> {
    let g = s.ambient();
    if matches!(f, Formation::Quasinilpotent) {
        // G/C_G(H/K) has H C_G(H/K)/C_G(H/K) as its f(H/K)-radical
        return Ok(innerizer(s, c));
    }
    match v {
        Formation::Sigma(TypePredicate::Everything) => Ok(g.clone()),
        Formation::Sigma(TypePredicate::Nothing) => Ok(c.clone()),
        _ => Ok(fradical(&QuotientRef::new_unchecked(g.clone(), c.clone()), v)?.subgroup),
    }
}

/// Preimage of the `F`-radical of `G/K`.
pub fn fradical(q: &QuotientRef, f: &Formation) -> Result<RadicalReport> {
    let (g, k) = (q.ambient(), q.kernel());
    match f {
        Formation::Empty => Err(Error::EmptyFormation),
        Formation::Sigma(TypePredicate::Nothing) => Ok(RadicalReport::bare(k.clone())),
        Formation::Sigma(TypePredicate::Everything) => Ok(RadicalReport::bare(g.clone())),
        Formation::Sigma(pred) => Ok(RadicalReport::bare(o_sigma(q, pred)?)),
        Formation::Meet(members) => {
            // alternate member radicals until nothing changes
            let mut n = g.clone();
            loop {
                let mut changed = false;
                for m in members {
                    let r = fradical(&QuotientRef::new_unchecked(n.clone(), k.clone()), m)?.subgroup;
                    if r.order() != n.order() {
                        n = r;
                        changed = true;
                    }
                }
                if !changed {
                    return Ok(RadicalReport::bare(n));
                }
            }
        }
        _ => baer_radical(q, f),
    }
}

fn baer_radical(q: &QuotientRef, f: &Formation) -> Result<RadicalReport> {
    let (g, k) = (q.ambient(), q.kernel());
    let cs = chief_series(q, &[], mix_seed(g.seed(), 0xf0))?;
    let mut t = g.clone();
    let mut factors = Vec::with_capacity(cs.len());
    for (i, ty) in cs.factor_types().iter().enumerate() {
        let v = baer_value(f, ty.kind());
        if v.is_empty_class() {
            factors.push(FactorAudit {
                factor_type: ty.clone(),
                value: v,
                centralizer: None,
                generalized: None,
            });
            continue;
        }
        let s = cs.factor(i);
        let c = centralizer_of_section(&s)?;
        let gc = generalized_from(&s, &c, f, &v)?;
        t = intersect_with_normal(&t, &gc);
        factors.push(FactorAudit {
            factor_type: ty.clone(),
            value: v,
            centralizer: Some(c),
            generalized: Some(gc),
        });
    }
    let (r, sweep) = ef_radical_trace(&QuotientRef::new_unchecked(t.clone(), k.clone()), f)?;
    Ok(RadicalReport {
        subgroup: r,
        series: Some(cs),
        factors,
        intersection: Some(t),
        sweep,
    })
}

/// Preimage of the generalized Fitting subgroup `F*(G/K)`.
pub fn fstar_radical(q: &QuotientRef) -> Result<PermGroup> {
    Ok(fradical(q, &Formation::Quasinilpotent)?.subgroup)
}

/// Preimage of `O_{p',p}(G/K)`, checked against `O_p` of `G/O_{p'}`.
pub fn opp_radical(q: &QuotientRef, p: u64) -> Result<PermGroup> {
    let r = fradical(q, &Formation::PNilpotent(p))?.subgroup;
    let opp = o_sigma(q, &TypePredicate::Avoids(p))?;
    let other = o_sigma(
        &QuotientRef::new_unchecked(q.ambient().clone(), opp),
        &TypePredicate::CyclicPrimes([p].into()),
    )?;
    if !r.same_group(&other) {
        return Err(Error::InternalContradiction(format!(
            "p-nilpotent radical for p = {p} disagrees with O_p(G/O_p'(G))"
        )));
    }
    Ok(r)
}

/// The lengths computed by repeated radicals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthKind {
    /// Nilpotent length.
    H,
    /// `p`-length.
    Lp(u64),
    /// Generalized Fitting height.
    HStar,
    /// Non-`p`-soluble length.
    LambdaP(u64),
    /// Nonsoluble length, the same as `LambdaP(2)`.
    Lambda,
}

impl fmt::Display for LengthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthKind::H => write!(f, "h"),
            LengthKind::Lp(p) => write!(f, "lp:{p}"),
            LengthKind::HStar => write!(f, "hstar"),
            LengthKind::LambdaP(p) => write!(f, "lambdap:{p}"),
            LengthKind::Lambda => write!(f, "lambda"),
        }
    }
}

impl std::str::FromStr for LengthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let prime = |t: &str| -> Result<u64> {
            let p: u64 = t
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad prime in length kind '{s}'")))?;
            if !crate::perm::is_prime(p) {
                return Err(Error::InvalidSpec(format!("{p} is not prime")));
            }
            Ok(p)
        };
        match s {
            "h" => Ok(LengthKind::H),
            "hstar" => Ok(LengthKind::HStar),
            "lambda" => Ok(LengthKind::Lambda),
            _ => {
                if let Some(p) = s.strip_prefix("lp:") {
                    Ok(LengthKind::Lp(prime(p)?))
                } else if let Some(p) = s.strip_prefix("lambdap:") {
                    Ok(LengthKind::LambdaP(prime(p)?))
                } else {
                    Err(Error::InvalidSpec(format!("unknown length kind '{s}'")))
                }
            }
        }
    }
}

/// A length, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinity"),
        }
    }
}

/// The length of `G/K` together with the radical series that realizes it.
pub fn flength_series(q: &QuotientRef, kind: LengthKind) -> Result<(Length, Vec<PermGroup>)> {
    let kind = match kind {
        LengthKind::Lambda => LengthKind::LambdaP(2),
        other => other,
    };
    let g = q.ambient();
    let infinite = match kind {
        LengthKind::H => !contains_group(&Formation::soluble(), q)?,
        LengthKind::Lp(p) => !contains_group(&Formation::p_soluble(p), q)?,
        _ => false,
    };
    if infinite {
        return Ok((Length::Infinite, vec![q.kernel().clone()]));
    }
    let mut k = q.kernel().clone();
    let mut chain = vec![k.clone()];
    loop {
        let cur = QuotientRef::new_unchecked(g.clone(), k.clone());
        let done = match kind {
            LengthKind::H | LengthKind::HStar => cur.is_trivial(),
            LengthKind::Lp(p) => (cur.order() % BigUint::from(p)) != BigUint::from(0u32),
            LengthKind::LambdaP(p) => contains_group(&Formation::p_soluble(p), &cur)?,
            LengthKind::Lambda => unreachable!(),
        };
        if done {
            return Ok((Length::Finite(chain.len() - 1), chain));
        }
        let next = match kind {
            LengthKind::H => fradical(&cur, &Formation::Nilpotent)?.subgroup,
            LengthKind::Lp(p) => fradical(&cur, &Formation::PNilpotent(p))?.subgroup,
            LengthKind::HStar => fstar_radical(&cur)?,
            LengthKind::LambdaP(p) => {
                let r = o_sigma(&cur, &TypePredicate::PSoluble(p))?;
                fstar_radical(&QuotientRef::new_unchecked(g.clone(), r))?
            }
            LengthKind::Lambda => unreachable!(),
        };
        if next.order() == k.order() {
            return Err(Error::InternalContradiction(format!(
                "{kind} step made no progress at order {}",
                cur.order()
            )));
        }
        k = next;
        chain.push(k.clone());
    }
}

/// The length of `G/K`.
pub fn flength(q: &QuotientRef, kind: LengthKind) -> Result<Length> {
    Ok(flength_series(q, kind)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::formation::parse_formation;

    fn whole(g: &PermGroup) -> QuotientRef {
        QuotientRef::whole(g.clone())
    }

    fn rad(g: &PermGroup, f: &str) -> u64 {
        fradical(&whole(g), &parse_formation(f).unwrap())
            .unwrap()
            .subgroup
            .order_u64()
            .unwrap()
    }

    #[test]
    fn radicals_of_small_groups() {
        let s4 = catalog::symmetric(4);
        let s5 = catalog::symmetric(5);
        assert_eq!(rad(&s4, "nil"), 4);
        assert_eq!(rad(&s4, "sol"), 24);
        assert_eq!(rad(&s5, "sol"), 1);
        assert_eq!(rad(&s4, "local(* -> nil)"), 12);
        assert_eq!(rad(&s4, "pnil(2)"), 4);
        assert_eq!(rad(&catalog::symmetric(3), "pnil(2)"), 6);
        assert_eq!(rad(&catalog::alternating(5), "pnil(2)"), 1);
        assert_eq!(rad(&s4, "meet(nil, pigrp(2, 3))"), 4);
        assert!(fradical(&whole(&s4), &Formation::Empty).is_err());
    }

    #[test]
    fn generalized_fitting() {
        assert_eq!(fstar_radical(&whole(&catalog::alternating(5))).unwrap().order_u64(), Some(60));
        assert_eq!(fstar_radical(&whole(&catalog::symmetric(4))).unwrap().order_u64(), Some(4));
        assert_eq!(fstar_radical(&whole(&catalog::symmetric(5))).unwrap().order_u64(), Some(60));
    }

    #[test]
    fn generalized_centralizers() {
        let s4 = catalog::symmetric(4);
        let cs = chief_series(&whole(&s4), &[], 3).unwrap();
        let gc = generalized_centralizer(&cs.factor(0), &cs.factor_types()[0], &Formation::Nilpotent).unwrap();
        assert_eq!(gc.order_u64(), Some(4));
        let gc = generalized_centralizer(&cs.factor(0), &cs.factor_types()[0], &Formation::PNilpotent(3)).unwrap();
        assert_eq!(gc.order_u64(), Some(24));
        assert!(generalized_centralizer(&cs.factor(0), &cs.factor_types()[0], &Formation::p_groups(3)).is_err());
    }

    #[test]
    fn opp() {
        assert_eq!(opp_radical(&whole(&catalog::symmetric(3)), 2).unwrap().order_u64(), Some(6));
        assert_eq!(opp_radical(&whole(&catalog::dihedral(4).unwrap()), 2).unwrap().order_u64(), Some(8));
        assert!(opp_radical(&whole(&catalog::alternating(5)), 2).unwrap().is_trivial());
    }

    #[test]
    fn lengths() {
        let s4 = catalog::symmetric(4);
        let s5 = catalog::symmetric(5);
        let len = |g: &PermGroup, k: &str| flength(&whole(g), k.parse().unwrap()).unwrap();
        assert_eq!(len(&s4, "h"), Length::Finite(3));
        assert_eq!(len(&catalog::alternating(5), "h"), Length::Infinite);
        assert_eq!(len(&s4, "lambda"), Length::Finite(0));
        assert_eq!(len(&s4, "lp:2"), Length::Finite(2));
        assert_eq!(len(&s5, "lambda"), Length::Finite(1));
        assert_eq!(len(&s5, "hstar"), Length::Finite(2));
        assert_eq!(len(&s5, "lambdap:2"), len(&s5, "lambda"));
        assert_eq!(len(&PermGroup::trivial(3), "h"), Length::Finite(0));
        assert_eq!(len(&catalog::cyclic(9), "lp:2"), Length::Finite(0));
        assert_eq!(Length::Infinite.to_string(), "infinity");
        assert!("lp:4".parse::<LengthKind>().is_err());
    }
}
