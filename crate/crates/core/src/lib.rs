//! Competency-cell calculus over an eight-dimension clinical taxonomy.
//!
//! The crate is organized around five cooperating pieces:
//!
//! - [`taxonomy`] — loads and indexes the eight dimension tables and the
//!   function-by-substrate ecosystem matrix.
//! - [`cells`] — competency cells, cell patterns, and exact cube arithmetic.
//! - [`speclang`] — the `.smx` specification language: parser, document
//!   model, and canonical printer.
//! - [`validator`] — static composition rules (R1–R6) over parsed documents.
//! - [`coverage`] — coverage analytics and capability disclosure cards.
//! - [`cyclesim`] — deterministic simulation of interleaved decision cycles.
//!
//! Everything here is pure computation over in-memory data; file IO and the
//! command-line front end live in the companion `skillmix` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cells;
pub mod coverage;
pub mod cyclesim;
pub mod speclang;
pub mod taxonomy;
pub mod validator;

#[cfg(test)]
pub(crate) mod testutil;

pub use cells::{CellPattern, CompetencyCell, CubeShape};
pub use taxonomy::{DimensionId, DimensionValue, TaxonomyRegistry};
