//! Fitting formations as expression trees, with membership tests and the
//! `E F`-radical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{mix_seed, PermGroup, QuotientRef};
use crate::perm::is_prime;
use crate::series::{
    centralizer_of_section, chief_series, o_sigma, NormalSection, SimpleType, TypeKind, TypePredicate,
};

/// A Fitting formation. Every constructor denotes a Fitting formation whose
/// Baer function takes Fitting formations (or the empty class) as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formation {
    Empty,
    /// Groups all of whose composition factors lie in the collection.
    Sigma(TypePredicate),
    /// `f(J)` is the intersection of `f(p)` over the primes dividing `|J|`.
    Local {
        per_prime: BTreeMap<u64, Formation>,
        default: Box<Formation>,
    },
    Baer {
        per_prime: BTreeMap<u64, Formation>,
        default_abelian: Box<Formation>,
        per_name: BTreeMap<String, Formation>,
        default_nonabelian: Box<Formation>,
    },
    Quasinilpotent,
    Nilpotent,
    PNilpotent(u64),
    Meet(Vec<Formation>),
}

impl Formation {
    pub fn trivial() -> Self {
        Formation::Sigma(TypePredicate::Nothing)
    }

    pub fn all() -> Self {
        Formation::Sigma(TypePredicate::Everything)
    }

    pub fn soluble() -> Self {
        Formation::Sigma(TypePredicate::Cyclic)
    }

    pub fn p_groups(p: u64) -> Self {
        Formation::Sigma(TypePredicate::CyclicPrimes(BTreeSet::from([p])))
    }

    pub fn pi_groups(primes: impl IntoIterator<Item = u64>) -> Self {
        Formation::Sigma(TypePredicate::PrimesWithin(primes.into_iter().collect()))
    }

    pub fn p_soluble(p: u64) -> Self {
        Formation::Sigma(TypePredicate::PSoluble(p))
    }

    pub fn p_prime_groups(p: u64) -> Self {
        Formation::Sigma(TypePredicate::Avoids(p))
    }

    pub fn meet(members: Vec<Formation>) -> Self {
        Formation::Meet(members).simplified()
    }

    pub fn local(per_prime: BTreeMap<u64, Formation>, default: Formation) -> Self {
        Formation::Local {
            per_prime,
            default: Box::new(default),
        }
        .simplified()
    }

    pub fn is_empty_class(&self) -> bool {
        matches!(self, Formation::Empty)
    }

    fn is_all(&self) -> bool {
        matches!(self, Formation::Sigma(TypePredicate::Everything))
    }

    fn is_trivial_class(&self) -> bool {
        matches!(self, Formation::Sigma(TypePredicate::Nothing))
    }

    /// Canonical form: sugar is recognized, meets are flattened and
    /// absorbing or neutral members removed.
    pub fn simplified(self) -> Formation {
        match self {
            Formation::Meet(members) => {
                let mut flat = Vec::new();
                for m in members {
                    match m.simplified() {
                        Formation::Meet(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.iter().any(|m| m.is_empty_class()) {
                    return Formation::Empty;
                }
                if flat.iter().any(|m| m.is_trivial_class()) {
                    return Formation::trivial();
                }
                flat.retain(|m| !m.is_all());
                let (sigmas, mut rest): (Vec<_>, Vec<_>) =
                    flat.into_iter().partition(|m| matches!(m, Formation::Sigma(_)));
                if !sigmas.is_empty() {
                    let preds: Vec<TypePredicate> = sigmas
                        .into_iter()
                        .map(|s| match s {
                            Formation::Sigma(p) => p,
                            _ => unreachable!(),
                        })
                        .collect();
                    let pred = if preds.len() == 1 {
                        preds.into_iter().next().unwrap()
                    } else {
                        TypePredicate::And(preds)
                    };
                    rest.insert(0, Formation::Sigma(pred));
                }
                let mut dedup: Vec<Formation> = Vec::new();
                for m in rest {
                    if !dedup.contains(&m) {
                        dedup.push(m);
                    }
                }
                match dedup.len() {
                    0 => Formation::all(),
                    1 => dedup.pop().unwrap(),
                    _ => Formation::Meet(dedup),
                }
            }
            Formation::Local { per_prime, default } => {
                let default = default.simplified();
                let per_prime: BTreeMap<u64, Formation> = per_prime
                    .into_iter()
                    .map(|(p, f)| (p, f.simplified()))
                    .filter(|(_, f)| *f != default)
                    .collect();
                if per_prime.is_empty() && default.is_trivial_class() {
                    return Formation::Nilpotent;
                }
                if per_prime.len() == 1 && default.is_all() {
                    let (&p, f) = per_prime.iter().next().unwrap();
                    if f.is_trivial_class() {
                        return Formation::PNilpotent(p);
                    }
                }
                Formation::Local {
                    per_prime,
                    default: Box::new(default),
                }
            }
            Formation::Baer {
                per_prime,
                default_abelian,
                per_name,
                default_nonabelian,
            } => {
                let default_abelian = default_abelian.simplified();
                let default_nonabelian = default_nonabelian.simplified();
                Formation::Baer {
                    per_prime: per_prime
                        .into_iter()
                        .map(|(p, f)| (p, f.simplified()))
                        .filter(|(_, f)| *f != default_abelian)
                        .collect(),
                    per_name: per_name
                        .into_iter()
                        .map(|(n, f)| (n, f.simplified()))
                        .filter(|(_, f)| *f != default_nonabelian)
                        .collect(),
                    default_abelian: Box::new(default_abelian),
                    default_nonabelian: Box::new(default_nonabelian),
                }
            }
            other => other,
        }
    }

    /// True if the node defines its Baer function directly (everything but
    /// the empty class and meets).
    pub fn has_baer_function(&self) -> bool {
        !matches!(self, Formation::Empty | Formation::Meet(_))
    }

    /// Value `f(p)` at a prime for the local-type nodes.
    fn prime_value(&self, p: u64) -> Formation {
        match self {
            Formation::Nilpotent => Formation::trivial(),
            Formation::PNilpotent(q) => {
                if *q == p {
                    Formation::trivial()
                } else {
                    Formation::all()
                }
            }
            Formation::Local { per_prime, default } => per_prime.get(&p).unwrap_or(default).clone(),
            _ => unreachable!("prime_value on a non-local node"),
        }
    }
}

/// The Baer function value `f(J)`. Meets are returned for the intersection
/// of a Baer function defined by a meet node.
pub fn baer_value(f: &Formation, j: &TypeKind) -> Formation {
    match f {
        Formation::Empty => Formation::Empty,
        Formation::Sigma(pred) => {
            if pred.accepts(j) {
                Formation::all()
            } else {
                Formation::Empty
            }
        }
        Formation::Nilpotent | Formation::PNilpotent(_) | Formation::Local { .. } => match j {
            TypeKind::Cyclic(p) => f.prime_value(*p),
            TypeKind::Nonabelian { .. } => {
                Formation::meet(j.pi().into_iter().map(|p| f.prime_value(p)).collect())
            }
        },
        Formation::Baer {
            per_prime,
            default_abelian,
            per_name,
            default_nonabelian,
        } => match j {
            TypeKind::Cyclic(p) => per_prime.get(p).unwrap_or(default_abelian).clone(),
            TypeKind::Nonabelian { name, .. } => per_name.get(name).unwrap_or(default_nonabelian).clone(),
        },
        Formation::Quasinilpotent => match j {
            TypeKind::Cyclic(_) => Formation::trivial(),
            // direct powers of J: the quasinilpotent groups whose factors are all J
            TypeKind::Nonabelian { .. } => Formation::meet(vec![
                Formation::Quasinilpotent,
                Formation::Sigma(TypePredicate::single(j.clone())),
            ]),
        },
        Formation::Meet(members) => Formation::meet(members.iter().map(|m| baer_value(m, j)).collect()),
    }
}

fn series_seed(g: &PermGroup) -> u64 {
    mix_seed(g.seed(), 0xf0)
}

/// Membership of `G/K` in the formation.
pub fn contains_group(f: &Formation, q: &QuotientRef) -> Result<bool> {
    if q.is_trivial() {
        return Ok(!f.is_empty_class());
    }
    match f {
        Formation::Empty => Ok(false),
        Formation::Meet(members) => {
            for m in members {
                if !contains_group(m, q)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formation::Sigma(pred) => {
            let cs = chief_series(q, &[], series_seed(q.ambient()))?;
            Ok(cs.factor_types().iter().all(|t| pred.accepts_type(t)))
        }
        Formation::Quasinilpotent => {
            let g = q.ambient();
            let cs = chief_series(q, &[], series_seed(g))?;
            for i in 0..cs.len() {
                let s = cs.factor(i);
                let c = centralizer_of_section(&s)?;
                if innerizer(&s, &c).order() != g.order() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let g = q.ambient();
            let cs = chief_series(q, &[], series_seed(g))?;
            for (i, t) in cs.factor_types().iter().enumerate() {
                let v = baer_value(f, t.kind());
                if v.is_empty_class() {
                    return Ok(false);
                }
                if v.is_all() {
                    continue;
                }
                let c = centralizer_of_section(&cs.factor(i))?;
                if !contains_group(&v, &QuotientRef::new_unchecked(g.clone(), c))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `H C_G(H/K)` for a chief factor `H/K`, given `C = C_G(H/K)`.
pub(crate) fn innerizer(s: &NormalSection, c: &PermGroup) -> PermGroup {
    c.closure(s.top().gens())
}

/// Whether a chief factor `H/K` belongs to the formation.
pub fn chief_factor_in_f(f: &Formation, s: &NormalSection, ty: &SimpleType) -> Result<bool> {
    if let Formation::Meet(members) = f {
        for m in members {
            if !chief_factor_in_f(m, s, ty)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let v = baer_value(f, ty.kind());
    if v.is_empty_class() {
        return Ok(false);
    }
    if ty.is_abelian() {
        return Ok(true);
    }
    // nonabelian of type J: H/K is in F iff it is its own f(J)-radical,
    // i.e. H/K lies in f(J)
    factor_in(&v, s, ty)
}

/// Membership of the chief factor `H/K`, isomorphic to `J^k` with `J`
/// nonabelian, in `f`.
fn factor_in(f: &Formation, s: &NormalSection, ty: &SimpleType) -> Result<bool> {
    match f {
        Formation::Empty | Formation::Nilpotent => Ok(false),
        // O_{p',p} of J^k is J^k exactly when p does not divide |J|
        Formation::PNilpotent(p) => Ok(!ty.kind().divisible_by(*p)),
        Formation::Sigma(pred) => Ok(pred.accepts(ty.kind())),
        Formation::Quasinilpotent => Ok(true),
        Formation::Meet(members) => {
            for m in members {
                if !factor_in(m, s, ty)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => contains_group(f, &QuotientRef::new_unchecked(s.top().clone(), s.bottom().clone())),
    }
}

/// Preimage of `(G/K)_{E F}`, the largest normal subgroup of `G/K` with a
/// normal series whose factors lie in `F`.
pub fn ef_radical(q: &QuotientRef, f: &Formation) -> Result<PermGroup> {
    Ok(ef_radical_trace(q, f)?.0)
}

/// As [`ef_radical`], also returning the accumulator after each chief factor.
pub(crate) fn ef_radical_trace(q: &QuotientRef, f: &Formation) -> Result<(PermGroup, Vec<PermGroup>)> {
    if f.is_empty_class() {
        return Err(Error::EmptyFormation);
    }
    let (g, k) = (q.ambient(), q.kernel());
    let cs = chief_series(q, &[], series_seed(g))?;
    let mut acc = k.clone();
    let mut trace = Vec::with_capacity(cs.len());
    for i in 0..cs.len() {
        let ty = &cs.factor_types()[i];
        if chief_factor_in_f(f, &cs.factor(i), ty)? {
            let gi = &cs.terms()[i + 1];
            let sigma = TypePredicate::single(ty.kind().clone());
            acc = o_sigma(&QuotientRef::new_unchecked(gi.clone(), acc.clone()), &sigma)?;
        }
        trace.push(acc.clone());
    }
    Ok((acc, trace))
}

/// Nested per-prime specification of a formation in the primitive family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimitiveSpec {
    Empty,
    Trivial,
    Soluble,
    Local {
        per_prime: BTreeMap<u64, PrimitiveSpec>,
        default: Box<PrimitiveSpec>,
    },
}

impl PrimitiveSpec {
    fn depth(&self) -> usize {
        match self {
            PrimitiveSpec::Local { per_prime, default } => {
                1 + per_prime.values().map(|s| s.depth()).max().unwrap_or(0).max(default.depth())
            }
            _ => 0,
        }
    }
}

/// A formation of level at most `level` in the primitive family, built as a
/// tower of local definitions over `{empty, (1), soluble}`.
pub fn primitive_formation(level: usize, spec: &PrimitiveSpec) -> Result<Formation> {
    if spec.depth() > level {
        return Err(Error::InvalidSpec(format!(
            "specification nests {} local levels, more than {level}",
            spec.depth()
        )));
    }
    Ok(build_primitive(spec).simplified())
}

fn build_primitive(spec: &PrimitiveSpec) -> Formation {
    match spec {
        PrimitiveSpec::Empty => Formation::Empty,
        PrimitiveSpec::Trivial => Formation::trivial(),
        PrimitiveSpec::Soluble => Formation::soluble(),
        PrimitiveSpec::Local { per_prime, default } => Formation::Local {
            per_prime: per_prime.iter().map(|(&p, s)| (p, build_primitive(s))).collect(),
            default: Box::new(build_primitive(default)),
        },
    }
}

impl fmt::Display for Formation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formation::Empty => write!(f, "empty"),
            Formation::Sigma(pred) => write_predicate(f, pred),
            Formation::Quasinilpotent => write!(f, "qnil"),
            Formation::Nilpotent => write!(f, "nil"),
            Formation::PNilpotent(p) => write!(f, "pnil({p})"),
            Formation::Local { per_prime, default } => {
                write!(f, "local(")?;
                for (p, v) in per_prime {
                    write!(f, "{p} -> {v}, ")?;
                }
                write!(f, "* -> {default})")
            }
            Formation::Baer {
                per_prime,
                default_abelian,
                per_name,
                default_nonabelian,
            } => {
                write!(f, "baer(")?;
                for (p, v) in per_prime {
                    write!(f, "{p} -> {v}, ")?;
                }
                write!(f, "*a -> {default_abelian}, ")?;
                for (n, v) in per_name {
                    write!(f, "{n} -> {v}, ")?;
                }
                write!(f, "*n -> {default_nonabelian})")
            }
            Formation::Meet(members) => {
                // binary in the grammar, nested to the right
                let (last, init) = members.split_last().expect("meets have members");
                for m in init {
                    write!(f, "meet({m}, ")?;
                }
                write!(f, "{last}")?;
                for _ in init {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

fn write_primes(f: &mut fmt::Formatter<'_>, ps: &BTreeSet<u64>) -> fmt::Result {
    let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    write!(f, "{}", list.join(", "))
}

fn write_predicate(f: &mut fmt::Formatter<'_>, pred: &TypePredicate) -> fmt::Result {
    match pred {
        TypePredicate::Nothing => write!(f, "triv"),
        TypePredicate::Everything => write!(f, "all"),
        TypePredicate::Cyclic => write!(f, "sol"),
        TypePredicate::CyclicPrimes(ps) if ps.len() == 1 => write!(f, "pgrp({})", ps.iter().next().unwrap()),
        TypePredicate::PrimesWithin(ps) => {
            write!(f, "pigrp(")?;
            write_primes(f, ps)?;
            write!(f, ")")
        }
        TypePredicate::PSoluble(p) => write!(f, "psol({p})"),
        TypePredicate::And(parts) if !parts.is_empty() => {
            let (last, init) = parts.split_last().unwrap();
            for part in init {
                write!(f, "meet(")?;
                write_predicate(f, part)?;
                write!(f, ", ")?;
            }
            write_predicate(f, last)?;
            for _ in init {
                write!(f, ")")?;
            }
            Ok(())
        }
        // the remaining classes have no surface syntax
        TypePredicate::CyclicPrimes(ps) => {
            write!(f, "<soluble pi-groups ")?;
            write_primes(f, ps)?;
            write!(f, ">")
        }
        TypePredicate::Avoids(p) => write!(f, "<{p}'-groups>"),
        TypePredicate::Exactly(set) => {
            let names: Vec<String> = set.iter().map(|j| j.name()).collect();
            write!(f, "<types {}>", names.join(", "))
        }
        other => write!(f, "<{other:?}>"),
    }
}

/// Parses the formation grammar.
pub fn parse_formation(text: &str) -> Result<Formation> {
    let mut p = Parser { text, pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f.simplified())
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

enum Key {
    Prime(u64),
    AnyPrime,
    AnyNonabelian,
    Name(String),
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    fn ident(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        (start, self.text[start..start + len].to_string())
    }

    fn prime(&mut self) -> Result<u64> {
        let (start, word) = self.ident();
        let p: u64 = word.parse().map_err(|_| self.error_at(start, "expected a prime"))?;
        if !is_prime(p) {
            return Err(self.error_at(start, format!("{p} is not prime")));
        }
        Ok(p)
    }

    fn primes(&mut self) -> Result<Vec<u64>> {
        let mut out = vec![self.prime()?];
        while self.eat(",") {
            out.push(self.prime()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Formation> {
        let (start, word) = self.ident();
        let simple = match word.as_str() {
            "empty" => Some(Formation::Empty),
            "triv" => Some(Formation::trivial()),
            "all" => Some(Formation::all()),
            "sol" => Some(Formation::soluble()),
            "nil" => Some(Formation::Nilpotent),
            "qnil" => Some(Formation::Quasinilpotent),
            _ => None,
        };
        if let Some(f) = simple {
            return Ok(f);
        }
        let known = ["pgrp", "pigrp", "pnil", "psol", "local", "baer", "meet"];
        if !known.contains(&word.as_str()) {
            let msg = if word.is_empty() {
                "expected a formation".to_string()
            } else {
                format!("unknown formation '{word}'")
            };
            return Err(self.error_at(start, msg));
        }
        self.expect("(")?;
        let f = match word.as_str() {
            "pgrp" => Formation::p_groups(self.prime()?),
            "pigrp" => Formation::pi_groups(self.primes()?),
            "pnil" => Formation::PNilpotent(self.prime()?),
            "psol" => Formation::p_soluble(self.prime()?),
            "meet" => {
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                Formation::Meet(vec![a, b])
            }
            "local" => {
                let mut per_prime = BTreeMap::new();
                let mut default = None;
                loop {
                    let (kpos, key) = self.key(false)?;
                    self.expect("->")?;
                    let value = self.expr()?;
                    match key {
                        Key::Prime(p) => {
                            if per_prime.insert(p, value).is_some() {
                                return Err(self.error_at(kpos, format!("duplicate entry for {p}")));
                            }
                        }
                        _ => {
                            if default.replace(value).is_some() {
                                return Err(self.error_at(kpos, "duplicate default"));
                            }
                        }
                    }
                    if !self.eat(",") {
                        break;
                    }
                }
                Formation::Local {
                    per_prime,
                    default: Box::new(default.unwrap_or(Formation::Empty)),
                }
            }
            _ => {
                let mut per_prime = BTreeMap::new();
                let mut per_name = BTreeMap::new();
                let (mut da, mut dn) = (None, None);
                loop {
                    let (kpos, key) = self.key(true)?;
                    self.expect("->")?;
                    let value = self.expr()?;
                    let dup = match key {
                        Key::Prime(p) => per_prime.insert(p, value).is_some(),
                        Key::Name(n) => per_name.insert(n, value).is_some(),
                        Key::AnyPrime => da.replace(value).is_some(),
                        Key::AnyNonabelian => dn.replace(value).is_some(),
                    };
                    if dup {
                        return Err(self.error_at(kpos, "duplicate entry"));
                    }
                    if !self.eat(",") {
                        break;
                    }
                }
                Formation::Baer {
                    per_prime,
                    default_abelian: Box::new(da.unwrap_or(Formation::Empty)),
                    per_name,
                    default_nonabelian: Box::new(dn.unwrap_or(Formation::Empty)),
                }
            }
        };
        self.expect(")")?;
        Ok(f)
    }

    fn key(&mut self, baer: bool) -> Result<(usize, Key)> {
        self.skip_ws();
        let start = self.pos;
        if baer {
            if self.eat("*a") {
                return Ok((start, Key::AnyPrime));
            }
            if self.eat("*n") {
                return Ok((start, Key::AnyNonabelian));
            }
        } else if self.eat("*") {
            return Ok((start, Key::AnyPrime));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok((start, Key::Prime(self.prime()?))),
            Some(c) if baer && c.is_ascii_alphabetic() => Ok((start, Key::Name(self.ident().1))),
            _ => Err(self.error("expected an entry key")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_bigint::BigUint;

    #[test]
    fn nonabelian_factor_membership_matches_general_test() {
        // A5 x A5 in its product action as a chief factor of itself
        let g = catalog::direct(&catalog::alternating(5), &catalog::alternating(5));
        let one = PermGroup::trivial(g.degree());
        let s = NormalSection::new(g.clone(), one, g.clone()).unwrap();
        let ty = crate::series::identify_type(&s).unwrap();
        for text in ["qnil", "nil", "pnil(2)", "pnil(7)", "sol", "psol(7)", "pigrp(2, 3, 5)", "all", "meet(qnil, psol(7))"] {
            let f = parse_formation(text).unwrap();
            let general = contains_group(&f, &QuotientRef::whole(g.clone())).unwrap();
            assert_eq!(factor_in(&f, &s, &ty).unwrap(), general, "{text}");
        }
    }

    fn a5() -> TypeKind {
        TypeKind::Nonabelian {
            name: "A5".into(),
            order: BigUint::from(60u32),
        }
    }

    fn whole(g: &PermGroup) -> QuotientRef {
        QuotientRef::whole(g.clone())
    }

    #[test]
    fn baer_values() {
        assert_eq!(baer_value(&Formation::Nilpotent, &TypeKind::Cyclic(5)), Formation::trivial());
        assert_eq!(baer_value(&Formation::PNilpotent(2), &TypeKind::Cyclic(3)), Formation::all());
        assert_eq!(baer_value(&Formation::PNilpotent(2), &TypeKind::Cyclic(2)), Formation::trivial());
        assert_eq!(baer_value(&Formation::Nilpotent, &a5()), Formation::trivial());
        assert_eq!(baer_value(&Formation::PNilpotent(7), &a5()), Formation::all());
        assert_eq!(baer_value(&Formation::soluble(), &a5()), Formation::Empty);
        let f = parse_formation("local(2 -> sol, 3 -> nil, * -> all)").unwrap();
        assert_eq!(baer_value(&f, &a5()), Formation::meet(vec![Formation::soluble(), Formation::Nilpotent]));
    }

    #[test]
    fn membership() {
        let s3 = catalog::symmetric(3);
        let s4 = catalog::symmetric(4);
        let a5 = catalog::alternating(5);
        assert!(contains_group(&Formation::soluble(), &whole(&s4)).unwrap());
        assert!(!contains_group(&Formation::soluble(), &whole(&a5)).unwrap());
        assert!(!contains_group(&Formation::Nilpotent, &whole(&s3)).unwrap());
        assert!(contains_group(&Formation::Nilpotent, &whole(&catalog::quaternion())).unwrap());
        assert!(contains_group(&Formation::Quasinilpotent, &whole(&a5)).unwrap());
        assert!(!contains_group(&Formation::Quasinilpotent, &whole(&catalog::symmetric(5))).unwrap());
        assert!(contains_group(&Formation::PNilpotent(2), &whole(&s3)).unwrap());
        assert!(!contains_group(&Formation::PNilpotent(3), &whole(&s3)).unwrap());
        let metanil = parse_formation("local(* -> nil)").unwrap();
        assert!(contains_group(&metanil, &whole(&catalog::alternating(4))).unwrap());
        assert!(!contains_group(&metanil, &whole(&s4)).unwrap());
        assert!(!contains_group(&Formation::Empty, &whole(&s3)).unwrap());
    }

    #[test]
    fn chief_factor_membership() {
        let s4 = catalog::symmetric(4);
        let cs = chief_series(&whole(&s4), &[], 1).unwrap();
        assert!(chief_factor_in_f(&Formation::Nilpotent, &cs.factor(0), &cs.factor_types()[0]).unwrap());
        let a5 = catalog::alternating(5);
        let cs = chief_series(&whole(&a5), &[], 1).unwrap();
        assert!(chief_factor_in_f(&Formation::Quasinilpotent, &cs.factor(0), &cs.factor_types()[0]).unwrap());
        let s5 = catalog::symmetric(5);
        let cs = chief_series(&whole(&s5), &[], 1).unwrap();
        assert!(!chief_factor_in_f(&Formation::Nilpotent, &cs.factor(0), &cs.factor_types()[0]).unwrap());
    }

    #[test]
    fn ef_radicals() {
        let s4 = catalog::symmetric(4);
        assert_eq!(ef_radical(&whole(&s4), &Formation::Nilpotent).unwrap().order_u64(), Some(24));
        let a5 = catalog::alternating(5);
        assert!(ef_radical(&whole(&a5), &Formation::Nilpotent).unwrap().is_trivial());
        assert_eq!(ef_radical(&whole(&a5), &Formation::Quasinilpotent).unwrap().order_u64(), Some(60));
    }

    #[test]
    fn primitive_family() {
        let nil = PrimitiveSpec::Local {
            per_prime: BTreeMap::new(),
            default: Box::new(PrimitiveSpec::Trivial),
        };
        assert_eq!(primitive_formation(1, &nil).unwrap(), Formation::Nilpotent);
        let nil2 = PrimitiveSpec::Local {
            per_prime: BTreeMap::new(),
            default: Box::new(nil.clone()),
        };
        assert_eq!(primitive_formation(2, &nil2).unwrap(), parse_formation("local(* -> nil)").unwrap());
        assert!(primitive_formation(1, &nil2).is_err());
        let mixed = PrimitiveSpec::Local {
            per_prime: BTreeMap::from([(2, PrimitiveSpec::Trivial)]),
            default: Box::new(PrimitiveSpec::Soluble),
        };
        let f = primitive_formation(1, &mixed).unwrap();
        assert_eq!(f.to_string(), "local(2 -> triv, * -> sol)");
    }

    #[test]
    fn grammar_round_trip() {
        for text in [
            "empty",
            "triv",
            "all",
            "sol",
            "nil",
            "qnil",
            "pgrp(2)",
            "pigrp(2, 3)",
            "pnil(3)",
            "psol(2)",
            "local(2 -> triv, * -> sol)",
            "baer(2 -> nil, *a -> triv, A5 -> all, *n -> empty)",
            "meet(pigrp(2, 3), nil)",
        ] {
            let f = parse_formation(text).unwrap();
            assert_eq!(f.to_string(), text);
            assert_eq!(parse_formation(&f.to_string()).unwrap(), f);
        }
        // sugar is recognized
        assert_eq!(parse_formation("local(* -> triv)").unwrap(), Formation::Nilpotent);
        assert_eq!(parse_formation(" local( 5->triv ,*->all ) ").unwrap(), Formation::PNilpotent(5));
        assert_eq!(parse_formation("meet(nil, all)").unwrap(), Formation::Nilpotent);
        assert_eq!(
            parse_formation("meet(nil, pigrp(2,3))").unwrap(),
            parse_formation("meet(pigrp(2, 3), nil)").unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        let col = |t: &str| match parse_formation(t) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(col("nilp"), 1);
        assert_eq!(col("meet(nil, foo)"), 11);
        assert_eq!(col("pgrp(4)"), 6);
        assert_eq!(col("local(2 => nil)"), 9);
        assert_eq!(col("sol sol"), 5);
    }
}
