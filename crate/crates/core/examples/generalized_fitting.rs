//! F*(G) and O_{p',p}(G) compared with the Fitting subgroup.

use fradical::formation::parse_formation;
use fradical::input::parse_quotient;
use fradical::radical::{fradical, fstar_radical, opp_radical};

fn main() -> fradical::Result<()> {
    let nil = parse_formation("nil")?;
    for spec in ["sym(4)", "sl2(5)", "direct(alt(5), q8)", "wreath(alt(5), cyclic(2))", "gl2(7)"] {
        let q = parse_quotient(spec, 1)?;
        let fit = fradical(&q, &nil)?.subgroup;
        let fstar = fstar_radical(&q)?;
        let o = opp_radical(&q, 2)?;
        println!(
            "{spec:>26}: |F| = {:<4} |F*| = {:<6} |O_2'2| = {}",
            fit.order(),
            fstar.order(),
            o.order()
        );
    }
    Ok(())
}
