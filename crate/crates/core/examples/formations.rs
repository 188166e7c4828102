//! Parsing formations and testing group membership.

use fradical::formation::{contains_group, parse_formation};
use fradical::input::parse_quotient;

fn main() -> fradical::Result<()> {
    let formations = [
        "nil",
        "sol",
        "pnil(2)",
        "meet(sol, pigrp(2, 3))",
        "local(2 -> pgrp(3), * -> nil)",
        "baer(2 -> sol, *a -> nil, A5 -> all, *n -> triv)",
    ];
    let groups = ["q8", "sym(4)", "sl2(5)", "direct(alt(5), cyclic(3))"];
    for text in formations {
        let f = parse_formation(text)?;
        print!("{f:<48}");
        for spec in groups {
            let q = parse_quotient(spec, 1)?;
            print!(" {}", if contains_group(&f, &q)? { "y" } else { "." });
        }
        println!();
    }
    println!("columns: {}", groups.join(", "));
    Ok(())
}
