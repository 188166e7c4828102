//! Nilpotent, p-, generalized Fitting and non-p-soluble lengths.

use fradical::input::parse_quotient;
use fradical::radical::{flength, flength_series, LengthKind};

fn main() -> fradical::Result<()> {
    let kinds = [LengthKind::H, LengthKind::Lp(2), LengthKind::HStar, LengthKind::LambdaP(2), LengthKind::LambdaP(3)];
    for spec in ["sym(4)", "wreath(sym(3), sym(3))", "sym(6)", "wreath(alt(5), alt(5))"] {
        let q = parse_quotient(spec, 1)?;
        print!("{spec:>24}:");
        for kind in kinds {
            print!("  {kind} = {}", flength(&q, kind)?);
        }
        println!();
    }

    let q = parse_quotient("wreath(sym(3), sym(3))", 1)?;
    let (h, series) = flength_series(&q, LengthKind::H)?;
    let orders: Vec<String> = series.iter().map(|t| t.order().to_string()).collect();
    println!("upper nilpotent series of S3 wr S3 (length {h}): {}", orders.join(" < "));
    Ok(())
}
