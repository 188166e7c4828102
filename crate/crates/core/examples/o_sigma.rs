//! Largest normal subgroups whose chief factors have prescribed types.

use fradical::input::parse_quotient;
use fradical::series::{o_sigma, TypeKind, TypePredicate};

fn main() -> fradical::Result<()> {
    let q = parse_quotient("direct(wreath(alt(5), cyclic(2)), sym(4))", 1)?;
    let sigmas = [
        ("soluble", TypePredicate::Cyclic),
        ("2'-groups", TypePredicate::Avoids(2)),
        ("only A5", TypePredicate::single(TypeKind::Nonabelian { name: "A5".into(), order: 60u32.into() })),
        ("nonabelian", TypePredicate::Not(Box::new(TypePredicate::Cyclic))),
    ];
    println!("|G| = {}", q.order());
    for (label, sigma) in &sigmas {
        let r = o_sigma(&q, sigma)?;
        println!("  O_sigma for {label:<11} has order {}", r.order());
    }
    Ok(())
}
