//! Successive-coefficient laboratory for spirallike, convex and
//! close-to-convex functions.
//!
//! Functions are represented by truncated Taylor series ([`series::Series`]).
//! Class members are generated from finite atomic Herglotz measures
//! ([`classes`]), checked against their defining conditions on grids
//! ([`membership`]), and fed through the coefficient bounds and proof
//! machinery in [`inequalities`]. [`extremal`] searches measure space for
//! functions that push the successive-coefficient functionals to their bounds.

pub mod classes;
pub mod error;
pub mod exec;
pub mod extremal;
pub mod function;
pub mod inequalities;
pub mod membership;
pub mod named;
pub mod series;

pub use classes::{AtomicMeasure, ClassKind, ClassSpec};
pub use error::{Error, Result};
pub use exec::Execution;
pub use function::{FunctionSeries, Provenance};
pub use named::{named, NamedFunction};
pub use series::Series;
