//! Popular matchings in the two-weight house allocation model.
//!
//! Applicants come in two categories, `A1` (weight `w1`) and `A2` (weight
//! `w2 < w1`), each ranking every item strictly. With `w1 >= 2 w2` a
//! popular matching exists iff a well-formed matching of the reduced
//! instance exists, which is decided here as an orientation problem on the
//! fs-relation graph.

pub mod census;
pub mod error;
pub mod experiment;
pub mod flow;
pub mod fsgraph;
pub mod instance;
pub mod popularity;
pub mod rng;
pub mod wellformed;

pub use error::{Error, Result};
