//! Exact truncated power series over arbitrary-precision rationals.
//!
//! [`PowerSeries`] is univariate in `p`, [`BiSeries`] is bivariate in `(p, u)`,
//! and [`Expr`] encodes formulas evaluated bottom-up into either. Nothing in
//! this module uses floating point.

mod bi;
mod expr;
mod laurent;
mod power;

use thiserror::Error;

pub use bi::{ps_diff_u, ps_subst_u, BiSeries};
pub use expr::{Binding, Env, Expr, Node};
pub use num_rational::BigRational as Rational;
pub use power::{ps_div, ps_mul, ps_sqrt, rational_string, PowerSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("non-unit divisor")]
    NonUnitDivisor,
    #[error("divisor vanishes to working precision")]
    VanishingDivisor,
    #[error("non-square constant term {0}")]
    NonSquareConstant(String),
    #[error("square root of a series with odd valuation {0}")]
    OddValuation(i64),
    #[error("result has a nonzero coefficient at p^{0}")]
    NegativePower(i64),
    #[error("precision loss: needed order {needed}, have {available}")]
    PrecisionLoss { needed: usize, available: usize },
    #[error("unbound name {0}")]
    UnboundName(String),
    #[error("expression uses u but no value for u was supplied")]
    UnboundU,
    #[error("substitution of a series with nonzero constant term into a u-truncated series")]
    SubstitutionUndefined,
}

/// `u -> g(p)` in an expression, evaluated to order `n`.
pub fn subst_u_expr(f: &Expr, g: &Expr, n: usize, env: &Env) -> Result<PowerSeries, SeriesError> {
    let env = env.clone().with_u(g.clone());
    f.eval(n, &env)
}
