pub mod bsgs;
pub mod error;
pub mod group;
pub mod perm;

pub use error::{Error, Result};
pub use group::{PermGroup, QuotientRef, DEFAULT_SEED};
pub use perm::Perm;
pub mod catalog;
pub mod hom;
pub mod linalg;
mod poly;
pub mod series;
pub mod formation;
pub mod radical;
pub mod oracle;
pub mod input;
pub mod stats;
pub mod suite;
