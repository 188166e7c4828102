//! Chief series by refinement of normal series.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{mix_seed, PermGroup, QuotientRef};
use crate::linalg::Splitting;
use crate::perm::Factorization;

use super::layer::ElementaryLayer;
use super::types::{prime_divisors, simple_group_name, SimpleType};
use super::{derived_mod, is_abelian_mod, normal_closure_over, powers_mod, NormalSection};

const SPLIT_BUDGET: usize = 48;
const COMPONENT_ATTEMPTS: usize = 6;

/// A chief series `K = G_0 < G_1 < ... < G_m = G` with factor types.
#[derive(Clone, Debug)]
pub struct ChiefSeries {
    ambient: PermGroup,
    terms: Vec<PermGroup>,
    types: Vec<SimpleType>,
}

impl ChiefSeries {
    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn terms(&self) -> &[PermGroup] {
        &self.terms
    }

    pub fn factor_types(&self) -> &[SimpleType] {
        &self.types
    }

    /// Number of factors `m`.
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// The `i`-th factor `G_{i+1}/G_i`.
    pub fn factor(&self, i: usize) -> NormalSection {
        NormalSection::new_unchecked(&self.ambient, &self.terms[i], &self.terms[i + 1])
    }

    #[cfg(test)]
    pub(crate) fn from_parts(ambient: PermGroup, terms: Vec<PermGroup>, types: Vec<SimpleType>) -> Self {
        ChiefSeries { ambient, terms, types }
    }

    /// The series from `G_i` upwards.
    pub fn tail(&self, i: usize) -> ChiefSeries {
        ChiefSeries {
            ambient: self.ambient.clone(),
            terms: self.terms[i..].to_vec(),
            types: self.types[i..].to_vec(),
        }
    }
}

/// Chief series of `G` from `K` to `G` through the subgroups in `through`.
pub fn chief_series(q: &QuotientRef, through: &[PermGroup], seed: u64) -> Result<ChiefSeries> {
    let (g, k) = (q.ambient(), q.kernel());
    let mut coarse: Vec<PermGroup> = vec![k.clone()];
    let mut extra: Vec<PermGroup> = through.to_vec();
    extra.sort_by(|x, y| x.order().cmp(y.order()));
    for t in extra {
        if !k.is_subgroup_of(&t) || !t.is_subgroup_of(g) {
            return Err(Error::ContractViolation("series term outside [K, G]".into()));
        }
        if !t.is_normalized_by(g) {
            return Err(Error::NotNormal("series term".into()));
        }
        let last = coarse.last().unwrap();
        if !last.is_subgroup_of(&t) {
            return Err(Error::ContractViolation("series terms are not nested".into()));
        }
        if last.order() != t.order() {
            coarse.push(t);
        }
    }
    if coarse.last().unwrap().order() != g.order() {
        coarse.push(g.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0xc41e));
    let mut terms = vec![k.clone()];
    let mut types = Vec::new();
    for w in coarse.windows(2) {
        refine(g, &w[0], &w[1], &mut rng, &mut terms, &mut types)?;
    }
    Ok(ChiefSeries {
        ambient: g.clone(),
        terms,
        types,
    })
}

enum Layer {
    Split(PermGroup),
    Chief(SimpleType),
}

fn refine(
    g: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    rng: &mut ChaCha8Rng,
    terms: &mut Vec<PermGroup>,
    types: &mut Vec<SimpleType>,
) -> Result<()> {
    if a.order() == b.order() {
        return Ok(());
    }
    match split_layer(g, a, b, rng)? {
        Layer::Split(n) => {
            debug_assert!(a.order() < n.order() && n.order() < b.order());
            refine(g, a, &n, rng, terms, types)?;
            refine(g, &n, b, rng, terms, types)
        }
        Layer::Chief(t) => {
            terms.push(b.clone());
            types.push(t);
            Ok(())
        }
    }
}

fn factor_big(n: &BigUint) -> Factorization {
    let mut out = Factorization::new();
    let mut m = n.clone();
    for p in prime_divisors(n) {
        let mut e = 0;
        while (&m % p).bits() == 0 {
            m /= p;
            e += 1;
        }
        out.insert(p, e);
    }
    out
}

fn split_layer(g: &PermGroup, a: &PermGroup, b: &PermGroup, rng: &mut ChaCha8Rng) -> Result<Layer> {
    let d = derived_mod(b, a);
    if d.order() != a.order() && d.order() != b.order() {
        return Ok(Layer::Split(d));
    }
    if d.order() == a.order() {
        return abelian_layer(g, a, b, rng);
    }
    perfect_layer(g, a, b, rng)
}

fn abelian_layer(g: &PermGroup, a: &PermGroup, b: &PermGroup, rng: &mut ChaCha8Rng) -> Result<Layer> {
    let f = factor_big(&(b.order() / a.order()));
    let (&p, &e) = f.iter().next().expect("nontrivial layer");
    if f.len() > 1 {
        // the p'-part
        let mut order = b.order().clone();
        for _ in 0..e {
            order /= p;
        }
        let extra: Vec<_> = b.gens().iter().map(|x| x.pow_factored(&Factorization::from([(p, e)]))).collect();
        return Ok(Layer::Split(a.closure_with_order(&extra, &order)));
    }
    let agemo = powers_mod(a, b.gens(), &Factorization::from([(p, 1)]));
    if agemo.order() != a.order() {
        return Ok(Layer::Split(agemo));
    }
    let section = NormalSection::new_unchecked(g, a, b);
    match split_module_inner(&section, rng)? {
        Some(n) => Ok(Layer::Split(n)),
        None => Ok(Layer::Chief(SimpleType::cyclic(p, e as usize))),
    }
}

fn perfect_layer(g: &PermGroup, a: &PermGroup, b: &PermGroup, rng: &mut ChaCha8Rng) -> Result<Layer> {
    let index = b.order() / a.order();
    for _ in 0..COMPONENT_ATTEMPTS {
        let t = find_component(b, a, rng);
        let m = normal_closure_over(g, t.gens(), a, Some(b));
        if m.order() != b.order() {
            return Ok(Layer::Split(m));
        }
        if is_abelian_mod(&t, a) {
            continue;
        }
        if let Some(ty) = name_component(&t, a, &index, rng) {
            return Ok(Layer::Chief(ty));
        }
    }
    Err(Error::RefinementExhausted(format!(
        "no simple component found in a perfect layer of order {index}"
    )))
}

/// Type `J^k` of `B/A` given a component `T/A` with `|T/A|^k = |B/A|`.
fn name_component(t: &PermGroup, a: &PermGroup, index: &BigUint, rng: &mut ChaCha8Rng) -> Option<SimpleType> {
    let o = t.order() / a.order();
    let name = simple_group_name(&o, || {
        (0..400).any(|_| {
            let f = a.relative_order(&t.random_element(rng));
            f.contains_key(&3) && f.contains_key(&5)
        })
    })?;
    let mut acc = BigUint::one();
    let mut k = 0;
    while &acc < index {
        acc *= &o;
        k += 1;
    }
    (&acc == index).then(|| SimpleType::nonabelian(name, o, k))
}

/// Descends through normal closures in `B` of elements of prime order
/// modulo `A`, ending at an (almost surely) minimal normal subgroup of `B/A`.
fn find_component(b: &PermGroup, a: &PermGroup, rng: &mut ChaCha8Rng) -> PermGroup {
    let mut t = b.clone();
    let mut fails = 0;
    while fails < 12 {
        let y = t.random_element(rng);
        let f = a.relative_order(&y);
        let mut shrunk = false;
        for &p in f.keys() {
            let mut h = f.clone();
            *h.get_mut(&p).unwrap() -= 1;
            let z = y.pow_factored(&h);
            let n = normal_closure_over(b, &[z], a, Some(&t));
            if n.order() < t.order() {
                t = n;
                shrunk = true;
                break;
            }
        }
        if shrunk {
            fails = 0;
        } else {
            fails += 1;
        }
    }
    t
}

/// Type of a chief factor `B/A`.
pub fn identify_type(s: &NormalSection) -> Result<SimpleType> {
    let (a, b) = (s.bottom(), s.top());
    if s.is_trivial() {
        return Err(Error::NotChief);
    }
    let index = s.order();
    if s.is_abelian() {
        let f = factor_big(&index);
        if f.len() != 1 {
            return Err(Error::NotChief);
        }
        let (&p, &e) = f.iter().next().unwrap();
        return Ok(SimpleType::cyclic(p, e as usize));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(s.ambient().seed(), 0x1d7));
    for _ in 0..COMPONENT_ATTEMPTS {
        let t = find_component(b, a, &mut rng);
        if let Some(ty) = name_component(&t, a, &index, &mut rng) {
            return Ok(ty);
        }
    }
    Err(Error::NotChief)
}

/// A proper nontrivial `G`-invariant subgroup strictly between the ends of
/// an elementary abelian section, or `None` if the section is chief.
pub fn split_module(s: &NormalSection) -> Result<Option<PermGroup>> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(s.ambient().seed(), 0x5b17));
    split_module_inner(s, &mut rng)
}

fn split_module_inner(s: &NormalSection, rng: &mut ChaCha8Rng) -> Result<Option<PermGroup>> {
    let layer = ElementaryLayer::new(s)?;
    match layer.module().split(rng, SPLIT_BUDGET)? {
        Splitting::Irreducible => Ok(None),
        Splitting::Submodule(w) => Ok(Some(layer.subgroup_of(&w))),
    }
}
