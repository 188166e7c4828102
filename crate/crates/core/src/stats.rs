//! Process-wide work counters, read by the benchmark.
//!
//! Relaxed atomics; totals are only meaningful when one computation runs at a time.

use std::sync::atomic::{AtomicU64, Ordering};

static SIFTS: AtomicU64 = AtomicU64::new(0);
static BACKTRACK_NODES: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct Counters {
    pub sifts: u64,
    pub backtrack_nodes: u64,
}

pub fn snapshot() -> Counters {
    Counters {
        sifts: SIFTS.load(Ordering::Relaxed),
        backtrack_nodes: BACKTRACK_NODES.load(Ordering::Relaxed),
    }
}

impl Counters {
    pub fn since(self, earlier: Counters) -> Counters {
        Counters {
            sifts: self.sifts - earlier.sifts,
            backtrack_nodes: self.backtrack_nodes - earlier.backtrack_nodes,
        }
    }
}

#[inline]
pub(crate) fn count_sift() {
    SIFTS.fetch_add(1, Ordering::Relaxed);
}

#[inline]
pub(crate) fn count_node() {
    BACKTRACK_NODES.fetch_add(1, Ordering::Relaxed);
}
