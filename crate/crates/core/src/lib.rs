//! Exact computations around Kottwitz gerbes and their local and global
//! shadows.
//!
//! * [`arith`]: finite fields, polynomials, rational functions, Laurent
//!   polynomials, `Q/Z`, places of `F_q(t)`, Newton polygons.
//! * [`semilinear`]: isocrystals as `σ`-semilinear operators, Newton slopes,
//!   the Dieudonné–Manin building blocks, Hom spaces, and representations of
//!   the unramified local gerbe.
//! * [`archimedean`]: graded complex spaces with a conjugate-linear
//!   structure squaring to `(-1)^m`.
//! * [`phi`]: φ-spaces over `F_q(t)` and their φ-pairs.
//! * [`tate`]: finite Galois place modules, the conditions on dotted lifts,
//!   transition maps, and local/adelic classes in `Q/Z`.
//! * [`weil`]: germs of Weil numbers and the associated exact sequence.
//! * [`cyclo`]: multiplicative orders and auxiliary prime search.
//! * [`cli`]: the JSON command-line front end.

pub mod archimedean;
pub mod arith;
pub mod cli;
pub mod cyclo;
mod error;
pub mod phi;
pub mod semilinear;
pub mod tate;
pub mod weil;

pub use error::{Error, Result};
