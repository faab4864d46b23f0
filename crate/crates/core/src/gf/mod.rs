//! Generating functions: closed forms, independent re-derivations, and
//! functional-equation checks.
//!
//! Closed forms live in [`catalog`] as expression trees. The operations here
//! expand them, recompute the same series along a second route (recursion
//! fixed point, kernel-root substitution, two-root elimination, radical
//! rewrite) and report the first disagreement.

pub mod catalog;
mod residual;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{BiSeries, Env, Expr, PowerSeries, SeriesError};
pub use catalog::{Catalog, Entry, Policy, ENTRY_NAMES};
pub use residual::{residual_suite, residual_suite_with, CheckResult, SuiteConfig, SuiteReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unknown generating function {0:?}")]
    UnknownEntry(String),
    #[error("{op} needs order at least {min}, got {got}")]
    OrderTooSmall { op: &'static str, min: usize, got: usize },
    #[error("kernel mismatch at p^{index}: {left} vs {right}")]
    KernelMismatch { index: usize, left: String, right: String },
    #[error("kernel root check failed: {0}")]
    KernelRootCheckFailed(String),
    #[error("odd-power contamination at p^{index}")]
    OddPowerContamination { index: usize },
    #[error("recursion did not stabilise within {0} passes")]
    NonConvergence(usize),
    #[error("assembly mismatch at p^{index}: {left} vs {right}")]
    AssemblyMismatch { index: usize, left: String, right: String },
    #[error("residual check {check} failed: {detail}")]
    Residual { check: String, detail: String },
}

fn need(op: &'static str, min: usize, got: usize) -> Result<(), GfError> {
    if got < min {
        return Err(GfError::OrderTooSmall { op, min, got });
    }
    Ok(())
}

/// First index where two series differ, with both values.
pub fn first_difference(a: &PowerSeries, b: &PowerSeries) -> Option<(usize, String, String)> {
    let n = a.order().min(b.order());
    (0..n)
        .find(|&i| a.coeff(i) != b.coeff(i))
        .map(|i| (i, a.coeff(i).to_string(), b.coeff(i).to_string()))
}

fn u_one() -> Env {
    Env::new().with_u(Expr::int(1))
}

/// Baryiamonds by perimeter, from the closed form.
pub fn gf_baryiamond(n: usize) -> Result<PowerSeries, GfError> {
    need("gf_baryiamond", 6, n)?;
    catalog::evaluate("baryiamond_B", n)
}

/// The family `B^(1)_k(p)`, `k = 0..=n/2`, each to order `n`, as the fixed
/// point of the column recursion started from zero.
///
/// With `X_j = B^(1)_j + B^(2)_{j-1}`, `B^(2)_j = p B^(1)_j`, `B^(2)_0 = p^3`:
///
/// `B^(1)_k = p^(2k+2) + sum_{j<=k} p^(2k+2-2j) X_j + sum_{j>k} p^2 X_j`.
pub fn baryiamond_family(n: usize) -> Result<Vec<Vec<BigInt>>, GfError> {
    let kmax = n / 2;
    let zero = vec![BigInt::zero(); n];
    let shift = |a: &[BigInt], s: usize| -> Vec<BigInt> {
        let mut r = vec![BigInt::zero(); n];
        for (i, c) in a.iter().enumerate() {
            if i + s < n {
                r[i + s] = c.clone();
            }
        }
        r
    };
    let add = |a: &mut [BigInt], b: &[BigInt]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    let mut b2_0 = zero.clone();
    if n > 3 {
        b2_0[3] = BigInt::from(1);
    }
    let mut fam = vec![zero.clone(); kmax + 1];
    for _ in 0..n + 2 {
        let x: Vec<Vec<BigInt>> = (0..=kmax)
            .map(|j| {
                if j == 0 {
                    return zero.clone();
                }
                let mut v = fam[j].clone();
                let b2 = if j == 1 { b2_0.clone() } else { shift(&fam[j - 1], 1) };
                add(&mut v, &b2);
                v
            })
            .collect();
        let mut suffix = vec![zero.clone(); kmax + 2];
        for j in (1..=kmax).rev() {
            let mut s = suffix[j + 1].clone();
            add(&mut s, &x[j]);
            suffix[j] = s;
        }
        let mut next = vec![zero.clone(); kmax + 1];
        let mut t = zero.clone();
        for k in 1..=kmax {
            add(&mut t, &x[k]);
            t = shift(&t, 2);
            let mut v = t.clone();
            if 2 * k + 2 < n {
                v[2 * k + 2] += 1;
            }
            add(&mut v, &shift(&suffix[k + 1], 2));
            next[k] = v;
        }
        if next == fam {
            return Ok(fam);
        }
        fam = next;
    }
    Err(GfError::NonConvergence(n + 2))
}

/// Baryiamonds by perimeter, from the recursion fixed point.
pub fn gf_baryiamond_recursive(n: usize) -> Result<PowerSeries, GfError> {
    need("gf_baryiamond_recursive", 6, n)?;
    let m = n + 1;
    let fam = baryiamond_family(m)?;
    let mut b1 = vec![BigInt::zero(); m];
    for f in &fam {
        b1.iter_mut().zip(f).for_each(|(a, b)| *a += b);
    }
    let mut total = vec![BigInt::zero(); n];
    total[3] += 1;
    for i in 0..n {
        total[i] += &b1[i] * 2;
        if i >= 1 {
            total[i] += &b1[i - 1];
        }
        total[i] += &b1[i + 1];
    }
    Ok(PowerSeries::from_bigints(&total))
}

/// `B^(1)(p,1)` from its closed form, confirmed by substituting the kernel
/// root `u0` into the functional equation.
pub fn gf_kernel_b1(n: usize) -> Result<PowerSeries, GfError> {
    need("gf_kernel_B1", 6, n)?;
    kernel_b1_with(catalog::standard(), n)
}

pub(crate) fn kernel_b1_route(n: usize) -> Result<PowerSeries, GfError> {
    let solved = -catalog::bary_free_term() / catalog::bary_b1_at1_coeff();
    Ok(solved.eval(n, &Env::new().with_u(catalog::bary_u0()))?)
}

fn kernel_b1_with(cat: &Catalog, n: usize) -> Result<PowerSeries, GfError> {
    let direct = cat.evaluate("baryiamond_B1", n)?;
    let via_root = kernel_b1_route(n)?;
    match first_difference(&direct, &via_root) {
        None => Ok(direct),
        Some((index, left, right)) => Err(GfError::KernelMismatch { index, left, right }),
    }
}

/// `(u_+^2, u_-^2)`, checked for `u_-^2(p) = u_+^2(-p)` and `K(u_+-^2) = 0`.
pub fn gf_u_pm_sq(n: usize) -> Result<(PowerSeries, PowerSeries), GfError> {
    need("gf_u_pm_sq", 6, n)?;
    u_pm_sq_with(catalog::standard(), n)
}

pub(crate) fn u_pm_sq_with(cat: &Catalog, n: usize) -> Result<(PowerSeries, PowerSeries), GfError> {
    let env = Env::new();
    let up = cat.expr("u_plus_sq");
    let um = cat.expr("u_minus_sq");
    let (ups, ums) = (up.eval(n, &env)?, um.eval(n, &env)?);
    if let Some((i, a, b)) = first_difference(&ums, &ups.reflect()) {
        return Err(GfError::KernelRootCheckFailed(format!(
            "u_-^2(p) != u_+^2(-p) at p^{i}: {a} vs {b}"
        )));
    }
    for (label, w) in [("u_+^2", &up), ("u_-^2", &um)] {
        let k = catalog::ccp_kernel(w).eval(n, &env)?;
        if let Some(i) = k.coeffs().iter().position(|c| !c.is_zero()) {
            return Err(GfError::KernelRootCheckFailed(format!(
                "K({label}) has {} at p^{i}",
                k.coeff(i)
            )));
        }
    }
    Ok((ups, ums))
}

/// Column-convex polyiamonds by perimeter (`n` terms).
pub fn gf_ccp(n: usize) -> Result<PowerSeries, GfError> {
    need("gf_ccp", 10, n)?;
    catalog::evaluate("ccp_C", n)
}

/// Column-convex polyiamonds from the radical rewrite (`n` terms).
pub fn gf_ccp_altform(n: usize) -> Result<PowerSeries, GfError> {
    need("gf_ccp_altform", 10, n)?;
    catalog::evaluate("ccp_altform", n)
}

fn bi_failure(check: &str, r: &BiSeries) -> Option<GfError> {
    r.first_nonzero().map(|(i, j, v)| GfError::Residual {
        check: check.to_string(),
        detail: format!("nonzero coefficient {v} at p^{i} u^{j}"),
    })
}

/// `F^{bu(1)}(p,u)` modulo `(p^n, u^(m+1))`, with its functional equation
/// checked.
pub fn gf_fbu1(n: usize, m: usize) -> Result<(BiSeries, CheckResult), GfError> {
    need("gf_Fbu1", 8, n)?;
    let cat = catalog::standard();
    let f = cat.expr("Fbu1").eval_bi(n, m, &Env::new())?;
    let r = residual::fbu_residual(cat).eval_bi(n, m, &Env::new())?;
    if let Some(e) = bi_failure("Fbu_equation", &r) {
        return Err(e);
    }
    Ok((
        f,
        CheckResult::pass("Fbu_equation", format!("residual 0 mod p^{n} u^{}", m + 1)),
    ))
}

fn run_checks(checks: Vec<CheckResult>) -> Result<Vec<CheckResult>, GfError> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(GfError::Residual {
            check: c.name.clone(),
            detail: c.detail.clone(),
        }),
        None => Ok(checks),
    }
}

/// `F^{u(1)}(p,u)`, `F^{u(1)}(p,1)` and the checks tying them together.
pub fn gf_fu1(n: usize, m: usize) -> Result<(BiSeries, PowerSeries, Vec<CheckResult>), GfError> {
    need("gf_Fu1", 8, n)?;
    let cat = catalog::standard();
    let cfg = SuiteConfig {
        order: n,
        bi_p_order: n,
        bi_u_degree: m,
    };
    let f = cat.expr("Fu1").eval_bi(n, m, &Env::new())?;
    let s = cat.evaluate("Fu1_at1", n)?;
    let checks = run_checks(residual::fu_checks(cat, &cfg))?;
    Ok((f, s, checks))
}

/// `F^{b(1)}(p,u)`, `F^{b(1)}(p,1)` and the checks tying them together.
pub fn gf_fb1(n: usize, m: usize) -> Result<(BiSeries, PowerSeries, Vec<CheckResult>), GfError> {
    need("gf_Fb1", 8, n)?;
    let cat = catalog::standard();
    let cfg = SuiteConfig {
        order: n,
        bi_p_order: n,
        bi_u_degree: m,
    };
    let f = cat.expr("Fb1").eval_bi(n, m, &Env::new())?;
    let s = cat.evaluate("Fb1_at1", n)?;
    let checks = run_checks(residual::fb_checks(cat, &cfg))?;
    Ok((f, s, checks))
}

/// `(F^(1)(p,1), F(p))`; the four-type assembly must equal the closed form
/// for `F`.
pub fn gf_f1_convex(n: usize) -> Result<(PowerSeries, PowerSeries), GfError> {
    need("gf_F1_convex", 12, n)?;
    let cat = catalog::standard();
    let env = u_one();
    let f1 = cat.expr("F1_at1").eval(n, &env)?;
    let closed = cat.expr("convex_F").eval(n, &env)?;
    let assembled = catalog::convex_assembly(&cat.expr("F1_at1"), &cat.expr("Fu1_at1")).eval(n, &env)?;
    if let Some((index, left, right)) = first_difference(&assembled, &closed) {
        return Err(GfError::AssemblyMismatch { index, left, right });
    }
    Ok((f1, closed))
}

/// Coefficients as exact integers, or the first non-integral index.
pub fn integer_coefficients(s: &PowerSeries) -> Result<Vec<BigInt>, usize> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if c.is_integer() { Ok(c.to_integer()) } else { Err(i) })
        .collect()
}

/// Index of the first coefficient that is not a nonnegative integer.
pub fn first_non_count(s: &PowerSeries) -> Option<usize> {
    s.coeffs()
        .iter()
        .position(|c| !c.is_integer() || c < &BigRational::zero())
}

pub use self::{
    gf_f1_convex as gf_F1_convex, gf_fb1 as gf_Fb1, gf_fbu1 as gf_Fbu1, gf_fu1 as gf_Fu1, gf_kernel_b1 as gf_kernel_B1,
};

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        integer_coefficients(s)
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn baryiamond_low_coefficients() {
        let b = gf_baryiamond(10).unwrap();
        assert_eq!(&ints(&b)[..7], &[0, 0, 0, 2, 3, 5, 9]);
        assert!(gf_baryiamond(5).is_err());
    }

    #[test]
    fn recursion_matches_closed_form() {
        assert_eq!(gf_baryiamond_recursive(20).unwrap(), gf_baryiamond(20).unwrap());
        let fam = baryiamond_family(20).unwrap();
        for (k, f) in fam.iter().enumerate().skip(1) {
            let low = f.iter().position(|c| !c.is_zero());
            if 2 * k + 2 < 20 {
                assert_eq!(low, Some(2 * k + 2), "k={k}");
            }
        }
    }

    #[test]
    fn kernel_route() {
        let b1 = gf_kernel_B1(40).unwrap();
        assert_eq!(&ints(&b1)[4..7], &[1, 1, 2]);
        let u0 = catalog::bary_u0().eval(6, &Env::new()).unwrap();
        assert_eq!(ints(&u0)[0], 1);
    }

    #[test]
    fn kernel_roots_printed_expansion() {
        let (up, um) = gf_u_pm_sq(6).unwrap();
        let r = |a, b| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(up.coeffs(), &[r(1, 1), r(1, 1), r(1, 2), r(9, 8), r(2, 1), r(239, 128)]);
        assert_eq!(um, up.reflect());
    }

    #[test]
    fn ccp_series() {
        let c = gf_ccp(11).unwrap();
        assert_eq!(ints(&c), vec![0, 0, 0, 2, 3, 6, 15, 40, 113, 330, 988]);
        assert_eq!(gf_ccp_altform(20).unwrap(), gf_ccp(20).unwrap());
    }

    #[test]
    fn convex_series() {
        let (f1, f) = gf_F1_convex(14).unwrap();
        assert_eq!(&ints(&f1)[4..14], &[1, 1, 3, 8, 20, 58, 152, 427, 1155, 3211]);
        assert_eq!(&ints(&f)[3..12], &[2, 3, 6, 15, 38, 102, 272, 739, 2006]);
    }

    #[test]
    fn class_specializations() {
        let (fbu, _) = gf_Fbu1(10, 6).unwrap();
        let one = BigRational::from_integer(1.into());
        assert_eq!(&ints(&fbu.at_u(&one))[4..8], &[1, 1, 2, 4]);
        let (_, fu, _) = gf_Fu1(10, 6).unwrap();
        assert_eq!(&ints(&fu)[4..7], &[1, 1, 3]);
        let (_, fb, _) = gf_Fb1(10, 6).unwrap();
        assert_eq!(ints(&fb)[6], 2);
        let sum_b = catalog::evaluate("Fb_sum", 7).unwrap();
        assert_eq!(&ints(&sum_b)[3..7], &[2, 3, 5, 10]);
    }
}
