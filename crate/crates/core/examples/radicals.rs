//! F-radicals, with the per-factor audit and quotient inputs.

use fradical::formation::parse_formation;
use fradical::input::{parse_group, parse_quotient};
use fradical::radical::fradical;
use fradical::QuotientRef;

fn main() -> fradical::Result<()> {
    let q = parse_quotient("wreath(sym(3), sym(3))", 1)?;
    for text in ["nil", "pnil(3)", "local(2 -> triv, * -> all)"] {
        let f = parse_formation(text)?;
        let report = fradical(&q, &f)?;
        println!("{text}: radical of order {}", report.subgroup.order());
        for audit in &report.factors {
            let c = audit.generalized.as_ref().map(|c| c.order().to_string());
            println!(
                "  {} -> {}  generalized centralizer {}",
                audit.factor_type,
                audit.value,
                c.unwrap_or_else(|| "-".into())
            );
        }
    }

    // the same question in S4 / V4, which is S3
    let s4 = parse_group("sym(4)", 1)?;
    let v4 = parse_group("4: (1,2)(3,4); (1,3)(2,4)", 1)?;
    let quotient = QuotientRef::new(s4, v4)?;
    let r = fradical(&quotient, &parse_formation("nil")?)?;
    println!("nil-radical of S4/V4 has order {} (with V4 included)", r.subgroup.order());
    Ok(())
}
