//! q-multigammas, the topological vertex of the resolved conifold and the
//! Chern-Simons partition function of the three-sphere, with exact
//! truncated series where possible and complex doubles elsewhere.

pub mod asymptotics;
pub mod chernsimons;
pub mod cli;
pub mod multigamma;
pub mod partitions;
pub mod qfuncs;
pub mod schur;
pub mod series;
pub mod stirling;
pub mod vertex;

mod error;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use series::TruncSeries;
