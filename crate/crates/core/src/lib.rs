//! Exact computations with A2-webs: reduction by the spider relations,
//! consistent labelings, web immanants and their positivity, and the bridge
//! to Temperley–Lieb immanants.

pub mod error;
pub mod exactmath;
pub mod immanants;
pub mod labelings;
pub mod minors;
pub mod networks;
pub mod perm;
pub mod spider;
pub mod tlbridge;
pub mod verify;
pub mod webcore;

pub use error::{Error, Result};
