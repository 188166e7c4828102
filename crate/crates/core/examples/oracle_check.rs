//! Cross-checking the engine against the normal subgroup lattice.

use fradical::oracle::{normal_subgroups, radical_oracle, DEFAULT_ORACLE_BOUND};
use fradical::suite::{check_group, parse_formations, STANDARD_FORMATIONS};
use fradical::input::parse_group;

fn main() -> fradical::Result<()> {
    let formations = parse_formations(&STANDARD_FORMATIONS)?;
    for spec in ["sym(4)", "gl2(3)", "wreath(sym(3), cyclic(2))", "direct(alt(5), cyclic(6))"] {
        let g = parse_group(spec, 1)?;
        let outcome = check_group(&g, &formations, DEFAULT_ORACLE_BOUND)?;
        let agree = outcome.pairs.iter().filter(|p| p.agrees()).count();
        println!(
            "{spec:>28}: {} normal subgroups, chief series verified: {}, {agree}/{} radicals agree",
            outcome.lattice.len(),
            outcome.chief_verified,
            outcome.pairs.len()
        );
    }

    let g = parse_group("sym(4)", 1)?;
    let lattice = normal_subgroups(&g, DEFAULT_ORACLE_BOUND)?;
    let r = radical_oracle(&formations[3], &lattice)?;
    println!("oracle nil-radical of S4 has order {}", r.order());
    Ok(())
}
