//! Timing the radical computation for a family of growing degree.

use std::time::Instant;

use fradical::catalog;
use fradical::formation::parse_formation;
use fradical::radical::fradical;
use fradical::stats::{snapshot, Counters};

fn main() -> fradical::Result<()> {
    let sol = parse_formation("sol")?;
    println!("{:>4} {:>10} {:>8} {:>10}", "n", "ms", "sifts", "nodes");
    for n in (5..=30).step_by(5) {
        let g = catalog::wreath(&catalog::symmetric(2), &catalog::symmetric(n));
        let before = snapshot();
        let start = Instant::now();
        let r = fradical(&g.into(), &sol)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let Counters { sifts, backtrack_nodes } = snapshot().since(before);
        assert!(r.subgroup.order() > &0u32.into());
        println!("{:>4} {ms:>10.2} {sifts:>8} {backtrack_nodes:>10}", 2 * n);
    }
    Ok(())
}
