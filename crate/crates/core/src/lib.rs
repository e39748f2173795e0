//! Minimal faithful permutation degree of Fitting-free permutation groups.

pub mod aut_lift;
pub mod bsgs;
pub mod constructions;
pub mod error;
pub mod ff;
pub mod group_file;
pub mod hint;
pub mod oracle;
pub mod perm;
pub mod pipeline;
pub mod simple_id;
pub mod small_group;
pub mod socle;

pub use bsgs::{Homomorphism, PermGroup};
pub use error::{Error, Result};
pub use perm::Permutation;
