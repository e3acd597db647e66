//! Exact block theory for symmetric and alternating groups in characteristic `p`.
//!
//! The crate computes class-sum arithmetic in the center of the group
//! algebra over a finite field, splits the center into block idempotents,
//! finds defect groups through Brauer pairs, and compares block fusion
//! systems with the fusion systems of symmetric and alternating subgroups.
//! Every computation is paired with a brute-force check run by the
//! verification suites in [`cli`].

pub mod algebra;
pub mod blocks;
pub mod cli;
pub mod error;
pub mod field;
pub mod fusion;
pub mod perm;
pub mod vanishing;

pub use error::{Error, Result};
