//! Stabilizer chains and the permutation-group primitives built on them.

pub(crate) mod chain;
mod group;
mod hom;
mod word;

pub(crate) use chain::Chain;
pub use chain::Payload;
pub use group::{PermGroup, DEFAULT_SEARCH_BUDGET};
pub use hom::{action_on_sets, induced_action, Homomorphism};
pub use word::Word;
