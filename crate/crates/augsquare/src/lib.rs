//! Augmented designs in square arrays.
//!
//! An augmented design places `k` replicated check varieties and
//! `v(v - k)` unreplicated test entries in a `v x v` array so that every
//! check appears once in each row and once in each column. Such a layout
//! is generated from a `k x v` row-column design (the *contraction*)
//! whose rows are complete replicates, by switching the roles of rows
//! and treatments.
//!
//! The crate provides:
//!
//! * [`designs`] — the core domain types with validation and JSON I/O;
//! * [`spectra`] — information matrices, a Jacobi eigensolver and
//!   canonical efficiency factors for contractions and augmented designs;
//! * [`formulas`] — the closed-form relations between the average
//!   efficiency factor of a contraction and those of the designs built
//!   from it;
//! * [`construct`] — cyclic development of initial blocks, the
//!   row/treatment switch and seeded filling of test entries;
//! * [`search`] — an interchange hill-climb that maximises the average
//!   efficiency factor over contractions;
//! * [`verify`] — numerical cross-checks of the closed-form relations
//!   against direct eigen-decompositions;
//! * [`tables`] — published reference values used for delta reporting.
//!
//! With the default `parallel` feature the block enumeration in
//! [`construct::best_cyclic`] and the restarts in
//! [`search::search_contraction`] run on rayon; disabling the feature
//! yields a sequential build with identical results.

pub mod construct;
pub mod designs;
pub mod error;
mod exec;
pub mod formulas;
pub mod rng;
pub mod search;
pub mod spectra;
pub mod tables;
#[cfg(test)]
pub(crate) mod testutil;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
