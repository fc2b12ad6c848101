//! Finite additively idempotent semirings: tables, constructions, identity
//! checking, hypergraph semirings and the witness constructions that place
//! one finite semiring in the variety of another.
//!
//! ```
//! use aisemiring::{fixtures, term::Identity, Caps};
//!
//! let s7 = fixtures::s7();
//! let law = Identity::parse("xx = xxx").unwrap();
//! let check = aisemiring::term::holds_identity(&s7, &law.left, &law.right, &Caps::default()).unwrap();
//! assert!(check.holds());
//! ```

pub mod caps;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hgsemiring;
pub mod hypergraph;
pub mod report;
pub mod semigroup;
pub mod semiring;
pub mod symbol;
pub mod term;

pub use caps::Caps;
pub use error::{Error, Result};
pub use report::{Claim, WitnessReport};
pub use semiring::{Elem, FiniteSemiring};
