//! Directed triple systems and their sequencings.
//!
//! A DTS(v) decomposes the complete directed graph on `v` points into
//! transitive triples; a sequencing of it is l-good when no `l` consecutive
//! points contain a triple in forward order. This crate provides:
//!
//! - the data model and validity/goodness checking ([`design`]),
//! - exhaustive search and counting of l-good sequencings ([`search`]),
//! - a branch-and-propagate prover that decides v-good sequenceability and
//!   emits checkable impossibility certificates ([`prover`]),
//! - the doubling and PBD constructions, including drivers that build a
//!   sequenceable DTS(v) for every admissible order and a non-sequenceable
//!   one for every admissible order at least 7 ([`construct`]),
//! - randomized hill-climbing around protected triples ([`hillclimb`]),
//! - directing enumeration with isomorph rejection and the census of
//!   sequenceability classes ([`enumerate`]),
//! - a built-in catalog of reference designs ([`catalog`]), text formats
//!   ([`format`]), and the reproduction suite ([`suite`]).
//!
//! ```
//! use dts_core::{catalog, prover, search, Budget};
//!
//! let d = catalog::design("D7.4.926").unwrap();
//! let count = search::count_l_good(d, 6, &Budget::UNLIMITED).unwrap();
//! assert_eq!(count, 124);
//!
//! match prover::decide_dts(d, &Budget::nodes(1_000_000)) {
//!     prover::ProverVerdict::Unsequenceable(tree) => {
//!         prover::check_proof(d.v(), d.triples(), &tree).unwrap();
//!         println!("{}", prover::proof_to_text(d.triples(), &tree));
//!     }
//!     other => unreachable!("{other:?}"),
//! }
//! ```

pub mod budget;
pub mod catalog;
pub mod construct;
pub mod design;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod hillclimb;
pub mod prover;
pub mod search;
pub mod suite;

pub use budget::Budget;
pub use design::{admissible, is_l_good, Dts, Point, Sequencing, Triple, Tts, ValidationReport};
pub use error::{Error, Result};
