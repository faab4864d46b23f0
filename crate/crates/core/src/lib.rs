//! Exact enumeration of polyiamonds by perimeter.
//!
//! * [`lattice`] — cell model, perimeter, class predicates.
//! * [`enumerate`] — brute-force oracles (fixed animals and column-by-column search).
//! * [`series`] — exact truncated power series and expression evaluation.
//! * [`gf`] — generating-function catalog, recursions and residual checks.
//! * [`asymptotics`] — root isolation and asymptotic growth diagnostics.

pub mod asymptotics;
pub mod enumerate;
pub mod gf;
pub mod lattice;
pub mod series;
