//! Acceptance checks. Each prints one PASS/FAIL line; the process fails if any does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fradical::formation::{parse_formation, Formation};
use fradical::hom::CosetAction;
use fradical::input::parse_group;
use fradical::oracle::{normal_subgroups, oracle_length, radical_oracle, NormalLattice, DEFAULT_ORACLE_BOUND};
use fradical::radical::{flength, fradical, fstar_radical, generalized_centralizer, Length, LengthKind};
use fradical::series::{
    centralizer_of_section, chief_series, derived_subgroup, identify_type, intersect_with_normal, o_sigma,
    NormalSection, TypeKind, TypePredicate,
};
use fradical::suite::{check_group, parse_formations, Suite, STANDARD_FORMATIONS, TRANSITIVE_CATALOG};
use fradical::{PermGroup, QuotientRef};

// tolerances: every comparison below is exact subgroup or integer equality
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const OSIGMA_BUDGET: Duration = Duration::from_secs(120);
const IMAGE_INSTANCES: usize = 20;
const RERUNS: usize = 10;
const SINGLE_RUN_LIMIT: Duration = Duration::from_secs(5);
// consecutive-degree time ratio in the symmetric scan; runs under the floor are noise
const RATIO_LIMIT: f64 = 8.0;
const RATIO_FLOOR: Duration = Duration::from_millis(20);

struct Ctx {
    suite: Vec<(String, PermGroup)>,
    lattices: Vec<NormalLattice>,
}

fn whole(g: &PermGroup) -> QuotientRef {
    QuotientRef::whole(g.clone())
}

fn intersect_all(g: &PermGroup, parts: impl IntoIterator<Item = PermGroup>) -> PermGroup {
    parts.into_iter().fold(g.clone(), |acc, c| intersect_with_normal(&acc, &c))
}

fn criterion_1(ctx: &Ctx) -> (bool, String) {
    let start = Instant::now();
    let formations = parse_formations(&STANDARD_FORMATIONS).unwrap();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (name, g) in &ctx.suite {
        match check_group(g, &formations, DEFAULT_ORACLE_BOUND) {
            Ok(out) => {
                pairs += out.pairs.len();
                for p in out.pairs.iter().filter(|p| !p.agrees()) {
                    bad.push(format!("{name}/{}", p.formation));
                }
                if !out.chief_verified {
                    bad.push(format!("{name}/chief"));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && ctx.suite.len() >= 30 && t < ORACLE_BUDGET;
    (ok, format!("{} groups x {} formations, {pairs} pairs, {:.1}s, mismatches {bad:?}", ctx.suite.len(), formations.len(), t.as_secs_f64()))
}

fn is_power_of(n: &BigUint, p: u32) -> bool {
    let mut n = n.clone();
    let p = BigUint::from(p);
    while n > BigUint::one() {
        if &n % &p != BigUint::from(0u32) {
            return false;
        }
        n /= &p;
    }
    true
}

fn is_soluble(n: &PermGroup) -> bool {
    let mut h = n.clone();
    while !h.is_trivial() {
        let d = derived_subgroup(&whole(&h));
        if d.order() == h.order() {
            return false;
        }
        h = d;
    }
    true
}

/// Largest lattice member passing `test`, found without the engine.
fn largest_member(lattice: &NormalLattice, test: impl Fn(&PermGroup) -> bool) -> PermGroup {
    lattice
        .subgroups()
        .iter()
        .filter(|n| test(n))
        .max_by_key(|n| n.order().clone())
        .cloned()
        .unwrap()
}

fn criterion_2(ctx: &Ctx) -> (bool, String) {
    let start = Instant::now();
    let two: BTreeSet<TypeKind> = [TypeKind::Cyclic(2)].into();
    let mut sigmas = vec![
        ("{C2}", TypePredicate::Exactly(two)),
        ("cyclic", TypePredicate::Cyclic),
        ("coprime-to-2", TypePredicate::Avoids(2)),
    ];
    for (label, p) in [("psol-2", 2), ("psol-3", 3), ("psol-5", 5), ("psol-7", 7)] {
        sigmas.push((label, TypePredicate::PSoluble(p)));
    }
    let mut bad = Vec::new();
    let mut checks = 0;
    for ((name, g), lattice) in ctx.suite.iter().zip(&ctx.lattices) {
        for (label, sigma) in &sigmas {
            let engine = o_sigma(&whole(g), sigma).unwrap();
            let oracle = radical_oracle(&Formation::Sigma(sigma.clone()), lattice).unwrap();
            let direct = match *label {
                "{C2}" => Some(largest_member(lattice, |n| is_power_of(n.order(), 2))),
                "cyclic" => Some(largest_member(lattice, is_soluble)),
                "coprime-to-2" => Some(largest_member(lattice, |n| n.order() % 2u32 == BigUint::from(1u32))),
                _ => None,
            };
            checks += 1;
            if !engine.same_group(&oracle) || direct.is_some_and(|d| !d.same_group(&oracle)) {
                bad.push(format!("{name}/{label}"));
            }
        }
    }
    let t = start.elapsed();
    (bad.is_empty() && t < OSIGMA_BUDGET, format!("{checks} (group, sigma) checks, {:.1}s, mismatches {bad:?}", t.as_secs_f64()))
}

fn criterion_3(ctx: &Ctx) -> (bool, String) {
    let mut bad = Vec::new();
    for (name, g) in &ctx.suite {
        let cs = chief_series(&whole(g), &[], 7).unwrap();
        let sections: Vec<(NormalSection, bool, bool)> = (0..cs.len())
            .map(|i| {
                let s = cs.factor(i);
                let ty = &cs.factor_types()[i];
                (s, ty.is_abelian(), ty.kind().divisible_by(2))
            })
            .collect();
        let cents: Vec<PermGroup> = sections.iter().map(|(s, _, _)| centralizer_of_section(s).unwrap()).collect();
        let fit = intersect_all(g, cents.iter().cloned());
        let o22 = intersect_all(g, sections.iter().zip(&cents).filter(|((_, _, even), _)| *even).map(|(_, c)| c.clone()));
        let sol = intersect_all(g, sections.iter().zip(&cents).filter(|((_, ab, _), _)| !*ab).map(|(_, c)| c.clone()));
        let inner = intersect_all(g, sections.iter().zip(&cents).map(|((s, _, _), c)| c.closure(s.top().gens())));
        let checks = [
            ("F", fradical(&whole(g), &Formation::Nilpotent).unwrap().subgroup, fit),
            ("O2'2", fradical(&whole(g), &Formation::PNilpotent(2)).unwrap().subgroup, o22),
            ("sol", fradical(&whole(g), &Formation::soluble()).unwrap().subgroup, sol),
            ("F*", fstar_radical(&whole(g)).unwrap(), inner),
        ];
        for (label, engine, meet) in checks {
            if !engine.same_group(&meet) {
                bad.push(format!("{name}/{label}"));
            }
        }
    }
    (bad.is_empty(), format!("F, O2'2, soluble radical, F* on {} groups, mismatches {bad:?}", ctx.suite.len()))
}

fn criterion_4(ctx: &Ctx) -> (bool, String) {
    let formations = parse_formations(&STANDARD_FORMATIONS).unwrap();
    let mut instances = 0;
    let mut bad = Vec::new();
    let mut k = 0;
    'groups: for ((name, g), lattice) in ctx.suite.iter().zip(&ctx.lattices) {
        // one instance per group: the largest proper nontrivial normal subgroup of index at most 2000
        let Some(n) = lattice
            .subgroups()
            .iter()
            .filter(|n| !n.is_trivial() && n.order() < g.order() && g.order() / n.order() <= BigUint::from(2000u32))
            .max_by_key(|n| n.order().clone())
        else {
            continue;
        };
        let cs = chief_series(&whole(g), std::slice::from_ref(n), 11).unwrap();
        let phi = CosetAction::new(g, n, 5000).unwrap();
        let image = phi.image();
        for i in 0..cs.len() {
            let s = cs.factor(i);
            if !n.is_subgroup_of(s.bottom()) {
                continue;
            }
            let ty = &cs.factor_types()[i];
            // pick a formation whose value at this type is nonempty
            for _ in 0..formations.len() {
                let f = &formations[k % formations.len()];
                k += 1;
                if fradical::formation::baer_value(f, ty.kind()).is_empty_class() {
                    continue;
                }
                let upstairs = generalized_centralizer(&s, ty, f).unwrap();
                let section = NormalSection::new(image.clone(), phi.image_of_group(s.bottom()), phi.image_of_group(s.top())).unwrap();
                let ty_down = identify_type(&section).unwrap();
                let downstairs = generalized_centralizer(&section, &ty_down, f).unwrap();
                instances += 1;
                if !downstairs.same_group(&phi.image_of_group(&upstairs)) || !ty_down.same_simple(ty) {
                    bad.push(format!("{name}/{i}/{f}"));
                }
                break;
            }
            if instances == IMAGE_INSTANCES {
                break 'groups;
            }
            continue 'groups;
        }
    }
    (bad.is_empty() && instances == IMAGE_INSTANCES, format!("{instances} (G, N, A, B) instances, mismatches {bad:?}"))
}

fn chain_bound_groups(ctx: &Ctx) -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = ctx.suite.iter().filter(|(_, g)| g.degree() <= 50).cloned().collect();
    for n in 2..=30 {
        out.push((format!("sym({n})"), parse_group(&format!("sym({n})"), 1).unwrap()));
        out.push((format!("alt({n})"), parse_group(&format!("alt({n})"), 1).unwrap()));
    }
    for spec in TRANSITIVE_CATALOG {
        out.push((spec.to_string(), parse_group(spec, 1).unwrap()));
    }
    out
}

fn criterion_5(ctx: &Ctx) -> (bool, String) {
    let groups = chain_bound_groups(ctx);
    let mut bad = Vec::new();
    let mut tightest = (String::new(), 0usize, 0usize);
    for (name, g) in &groups {
        let n = g.degree();
        if n < 2 {
            continue;
        }
        let len = chief_series(&whole(g), &[], 3).unwrap().len();
        if len > 2 * n - 3 {
            bad.push(format!("{name}: {len} > {}", 2 * n - 3));
        }
        if len * tightest.2.max(1) > tightest.1 * (2 * n - 3) || tightest.0.is_empty() {
            tightest = (name.clone(), len, 2 * n - 3);
        }
    }
    (bad.is_empty(), format!("{} groups of degree <= 50, tightest {} ({} of {}), violations {bad:?}", groups.len(), tightest.0, tightest.1, tightest.2))
}

fn criterion_6(ctx: &Ctx) -> (bool, String) {
    let table: [(&str, &str, Length); 8] = [
        ("h", "sym(4)", Length::Finite(3)),
        ("h", "alt(5)", Length::Infinite),
        ("lp:2", "sym(4)", Length::Finite(2)),
        ("lp:2", "sym(3)", Length::Finite(1)),
        ("lambda", "sym(4)", Length::Finite(0)),
        ("lambda", "sym(5)", Length::Finite(1)),
        ("hstar", "alt(5)", Length::Finite(1)),
        ("hstar", "sym(5)", Length::Finite(2)),
    ];
    let mut bad = Vec::new();
    for (kind, spec, expected) in table {
        let k: LengthKind = kind.parse().unwrap();
        let g = parse_group(spec, 1).unwrap();
        let engine = flength(&whole(&g), k).unwrap();
        let oracle = oracle_length(k, &normal_subgroups(&g, DEFAULT_ORACLE_BOUND).unwrap()).unwrap();
        if engine != expected || oracle != expected {
            bad.push(format!("{kind}({spec}) engine {engine} oracle {oracle} expected {expected}"));
        }
    }
    // lambda_2 = lambda, and every length agrees with the oracle, across the suite
    let kinds = [LengthKind::H, LengthKind::Lp(2), LengthKind::Lp(3), LengthKind::HStar, LengthKind::LambdaP(3)];
    for ((name, g), lattice) in ctx.suite.iter().zip(&ctx.lattices) {
        let lambda = flength(&whole(g), LengthKind::Lambda).unwrap();
        let lambda2 = flength(&whole(g), LengthKind::LambdaP(2)).unwrap();
        let oracle2 = oracle_length(LengthKind::LambdaP(2), lattice).unwrap();
        if lambda != lambda2 || lambda != oracle2 {
            bad.push(format!("{name}: lambda {lambda} lambda_2 {lambda2} oracle {oracle2}"));
        }
        for k in kinds {
            let (e, o) = (flength(&whole(g), k).unwrap(), oracle_length(k, lattice).unwrap());
            if e != o {
                bad.push(format!("{name}: {k} engine {e} oracle {o}"));
            }
        }
    }
    (bad.is_empty(), format!("8 table entries, lambda_2 = lambda and {} length kinds on {} groups, mismatches {bad:?}", kinds.len(), ctx.suite.len()))
}

fn criterion_7(ctx: &Ctx) -> (bool, String) {
    let formations = parse_formations(&STANDARD_FORMATIONS).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut runs = 0;
    let mut bad = Vec::new();
    for (name, g) in &ctx.suite {
        let variants: Vec<PermGroup> = (0..RERUNS)
            .map(|_| {
                let mut gens = g.gens().to_vec();
                gens.push(g.random_element(&mut rng));
                gens.shuffle(&mut rng);
                PermGroup::new(g.degree(), gens, rand::Rng::gen(&mut rng)).unwrap()
            })
            .collect();
        for f in &formations {
            let base = fradical(&whole(g), f).unwrap().subgroup;
            for v in &variants {
                runs += 1;
                if !fradical(&whole(v), f).unwrap().subgroup.same_group(&base) {
                    bad.push(format!("{name}/{f}"));
                }
            }
        }
    }
    (bad.is_empty(), format!("{runs} reruns with shuffled generators and fresh seeds, differing {bad:?}"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn criterion_8() -> (bool, String) {
    let mut specs: Vec<String> = Vec::new();
    for n in 2..=30 {
        specs.push(format!("sym({n})"));
        specs.push(format!("alt({n})"));
    }
    specs.extend(TRANSITIVE_CATALOG.iter().map(|s| s.to_string()));
    let radicals: Vec<Formation> = ["nil", "sol", "qnil"].iter().map(|t| parse_formation(t).unwrap()).collect();
    let lengths = [LengthKind::H, LengthKind::Lp(2), LengthKind::HStar, LengthKind::LambdaP(2)];
    let mut bad = Vec::new();
    let mut slowest = (String::new(), Duration::ZERO);
    let mut runs = 0;
    let mut sym_nil = Vec::new();
    for spec in &specs {
        let g = parse_group(spec, 1).unwrap();
        let q = whole(&g);
        let mut note = |label: String, r: Result<(), String>, t: Duration| {
            runs += 1;
            if let Err(e) = r {
                bad.push(format!("{label}: {e}"));
            } else if t >= SINGLE_RUN_LIMIT {
                bad.push(format!("{label}: {:.2}s", t.as_secs_f64()));
            }
            if t > slowest.1 {
                slowest = (label, t);
            }
        };
        for f in &radicals {
            let (r, t) = timed(|| fradical(&q, f).map(|_| ()).map_err(|e| e.to_string()));
            if spec.starts_with("sym(") && matches!(f, Formation::Nilpotent) {
                sym_nil.push(t);
            }
            note(format!("{spec}/{f}"), r, t);
        }
        for k in lengths {
            let (r, t) = timed(|| flength(&q, k).map(|_| ()).map_err(|e| e.to_string()));
            note(format!("{spec}/{k}"), r, t);
        }
    }
    let worst_ratio = sym_nil
        .windows(2)
        .filter(|w| w[1] >= RATIO_FLOOR)
        .map(|w| w[1].as_secs_f64() / w[0].max(RATIO_FLOOR).as_secs_f64())
        .fold(0.0f64, f64::max);
    if worst_ratio > RATIO_LIMIT {
        bad.push(format!("sym nil-radical time ratio {worst_ratio:.2}"));
    }
    (
        bad.is_empty(),
        format!(
            "{runs} runs on {} groups, slowest {} {:.2}s, worst sym(n) ratio {worst_ratio:.2}, problems {bad:?}",
            specs.len(),
            slowest.0,
            slowest.1.as_secs_f64()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let suite = Suite::standard().build_groups(1).unwrap();
    let lattices = suite.iter().map(|(_, g)| normal_subgroups(g, DEFAULT_ORACLE_BOUND).unwrap()).collect();
    let ctx = Ctx { suite, lattices };
    let criteria: [(&str, &dyn Fn() -> (bool, String)); 8] = [
        ("oracle equivalence", &|| criterion_1(&ctx)),
        ("O_sigma validation", &|| criterion_2(&ctx)),
        ("centralizer intersection identities", &|| criterion_3(&ctx)),
        ("quotient compatibility of generalized centralizers", &|| criterion_4(&ctx)),
        ("chief series length bound 2n-3", &|| criterion_5(&ctx)),
        ("length table", &|| criterion_6(&ctx)),
        ("determinism under series choice", &|| criterion_7(&ctx)),
        ("desk-scale performance", &criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        failed += usize::from(!ok);
        println!("[{}] {} {title}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} of 8 passed in {:.1}s", 8 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

