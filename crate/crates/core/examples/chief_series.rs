//! Chief series and the types of their factors.

use fradical::input::parse_quotient;
use fradical::series::chief_series;

fn main() -> fradical::Result<()> {
    for spec in ["sym(4)", "gl2(3)", "wreath(alt(5), cyclic(2))", "direct(sym(5), q8)"] {
        let q = parse_quotient(spec, 1)?;
        let cs = chief_series(&q, &[], 1)?;
        println!("{spec}: chief length {}", cs.len());
        for (t, ty) in cs.terms().iter().skip(1).zip(cs.factor_types()) {
            println!("  |G_i| = {:>8}   factor {ty}", t.order());
        }
    }
    Ok(())
}
