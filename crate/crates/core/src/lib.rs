//! Latin hypercubes over finite abelian groups: Delta profiles, exact
//! transversal search, explicit constructions, extensions and dilations.

pub mod claims;
pub mod constructions;
pub mod delta;
pub mod dilation;
pub mod error;
pub mod extension;
pub mod groups;
pub mod hypercube;
pub mod oracle;
pub mod search;

pub use error::{Error, Result};
pub use groups::{AbelianGroup, GroupElement};
pub use hypercube::{Diagonal, Entry, Hypercube, PlaneSpec, SubArray};
