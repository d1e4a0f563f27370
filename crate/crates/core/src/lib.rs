//! Concrete group realizations and certificate checkers for displacement
//! properties: commuting conjugates and its cyclic variants, binate and
//! mitotic structure, and dissipators.
//!
//! Every realization implements [`group::Group`]. Checkers in
//! [`checkers`] work on generators only and take any realization.

pub mod checkers;
pub mod error;
pub mod free;
pub mod group;
pub mod hnn;
pub mod linalg;
pub mod perm;
pub mod pl;
pub mod rational;
pub mod report;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{FgSubgroup, FiniteGroup, Group};
pub use report::{PropertyReport, Verdict};
