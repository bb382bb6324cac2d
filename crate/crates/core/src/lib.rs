//! Exact arithmetic for Macdonald-polynomial basic hypergeometric series.

pub mod error;
pub mod hyperseries;
pub mod identities;
pub mod macdonald;
pub mod partition;
pub mod qdifference;
pub mod ring;

pub use error::{Error, Result};
pub use partition::{GenPartition, Partition};
pub use ring::{rat, rat_int, InfProd, MPoly, Rat, Ring, Scalar, EXACT};
