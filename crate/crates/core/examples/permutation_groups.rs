//! Building groups from cycles and from the catalog, then querying them.

use fradical::input::parse_group;
use fradical::{catalog, Perm};

fn main() -> fradical::Result<()> {
    // the Mathieu group M11 from two generators
    let m11 = parse_group(
        "11: (1,2,3,4,5,6,7,8,9,10,11); (3,7,11,8)(4,10,5,6)",
        7,
    )?;
    println!("|M11| = {}", m11.order());

    let x = Perm::parse_cycles(11, "(1,2)(3,4)")?;
    println!("(1,2)(3,4) in M11: {}", m11.contains(&x));

    for spec in ["sym(8)", "psl2(13)", "gl2(5)", "wreath(sym(3), sym(4))", "direct(alt(5), q8)"] {
        let g = parse_group(spec, 1)?;
        println!("{spec:>24}: degree {:>3}, order {}", g.degree(), g.order());
    }

    let w = catalog::wreath(&catalog::cyclic(2), &catalog::symmetric(5));
    println!("C2 wr S5 has order {} on {} points", w.order(), w.degree());
    Ok(())
}
