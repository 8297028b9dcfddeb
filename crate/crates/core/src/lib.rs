//! Double constacyclic codes over finite fields and finite chain rings.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf`] and [`chain_ring`] provide the coefficient alphabets.
//! * [`polyring`] factors `X^n - 1`, builds the quotient rings and the
//!   twisting maps between the ideal `(X - 1)` and its constacyclic images.
//! * [`dcodes`] samples and analyses double twisted codes over a field and
//!   evaluates the counting and expectation bounds.
//! * [`lift`] embeds such codes into chain rings through the socle.
//! * [`experiment`] bundles the JSON/CSV producing drivers used by the CLI.

pub mod chain_ring;
pub mod dcodes;
pub mod error;
pub mod experiment;
pub mod gf;
pub mod lift;
pub mod linalg;
pub mod numtheory;
pub mod polyring;

pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElement};
