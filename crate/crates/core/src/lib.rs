//! Exact energies of integer sets, the random multiplicative zeta machinery
//! used to bound them, and the experiment drivers that compare measured
//! quantities with closed-form bounds.

pub mod bounds;
pub mod energy;
pub mod error;
pub mod experiments;
pub mod limits;
pub mod numtheory;
pub mod rng;
pub mod setcore;
pub mod zeta;

pub use error::{Category, Error, Result};
pub use limits::Limits;
