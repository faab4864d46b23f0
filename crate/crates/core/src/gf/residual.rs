//! The residual suite: every functional-equation and kernel check, run against
//! a [`Catalog`] so that a perturbed catalog can be fed through the same checks.

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{self, Catalog};
use super::{baryiamond_family, first_difference, GfError};
use crate::series::{BiSeries, Binding, Env, Expr, PowerSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Order for univariate identities.
    pub order: usize,
    /// `p`-order for bivariate residuals.
    pub bi_p_order: usize,
    /// `u`-degree for bivariate residuals.
    pub bi_u_degree: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            order: 60,
            bi_p_order: 40,
            bi_u_degree: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn pass(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: true,
            detail,
        }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: false,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Outcome = Result<String, String>;

fn err(e: GfError) -> String {
    e.to_string()
}

fn same(a: &PowerSeries, b: &PowerSeries, what: &str) -> Outcome {
    match first_difference(a, b) {
        None => Ok(format!("{what}: equal to order {}", a.order())),
        Some((i, x, y)) => Err(format!("{what}: differ at p^{i}: {x} vs {y}")),
    }
}

fn zero(s: &PowerSeries, what: &str) -> Outcome {
    match s.coeffs().iter().position(|c| !num_traits::Zero::is_zero(c)) {
        None => Ok(format!("{what}: 0 mod p^{}", s.order())),
        Some(i) => Err(format!("{what}: nonzero {} at p^{i}", s.coeff(i))),
    }
}

fn bi_zero(s: &BiSeries, what: &str) -> Outcome {
    match s.first_nonzero() {
        None => Ok(format!("{what}: 0 mod p^{} u^{}", s.p_order(), s.u_degree() + 1)),
        Some((i, j, v)) => Err(format!("{what}: nonzero {v} at p^{i} u^{j}")),
    }
}

fn eval(e: &Expr, n: usize, env: &Env) -> Result<PowerSeries, String> {
    e.eval(n, env).map_err(|x| x.to_string())
}

fn at_u(v: Expr) -> Env {
    Env::new().with_u(v)
}

fn joined(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

// --- baryiamonds -------------------------------------------------------------

fn bary_kernel_root(_cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let env = at_u(catalog::bary_u0());
    let n = cfg.order;
    joined(vec![
        zero(&eval(&catalog::bary_kernel(), n, &env)?, "kernel(u0)"),
        zero(&eval(&catalog::bary_kernel_expanded(), n, &env)?, "equation kernel(u0)"),
    ])
}

fn bary_kernel_b1(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let direct = cat.evaluate("baryiamond_B1", cfg.order).map_err(err)?;
    let via = super::kernel_b1_route(cfg.order).map_err(err)?;
    same(&direct, &via, "B1(p,1) closed form vs kernel root")
}

fn bary_equation(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.bi_p_order;
    let fam = baryiamond_family(n).map_err(err)?;
    let m = fam.len() + 2;
    let rows: Vec<PowerSeries> = fam.iter().map(|f| PowerSeries::from_bigints(f)).collect();
    let b1u = BiSeries::from_u_rows(&rows, n, m);
    let b1_at1 = cat.evaluate("baryiamond_B1", n).map_err(err)?;
    let env = Env::new().bind("B1_at1", Binding::Series(b1_at1));
    let bi = |e: Expr| e.eval_bi(n, m, &env).map_err(|x| x.to_string());
    let lhs = bi(catalog::bary_kernel_expanded())?
        .mul(&b1u)
        .map_err(|x| x.to_string())?;
    let rhs = bi(catalog::bary_free_term() + catalog::bary_b1_at1_coeff() * Expr::named("B1_at1"))?;
    bi_zero(
        &lhs.sub(&rhs).map_err(|x| x.to_string())?,
        "column recursion in the functional equation",
    )
}

fn bary_assembly(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let b1 = cat.expr("baryiamond_B1");
    let assembled = catalog::type_sum(&b1);
    let n = cfg.order;
    same(
        &eval(&assembled, n, &Env::new())?,
        &cat.evaluate("baryiamond_B", n).map_err(err)?,
        "type sum vs B(p)",
    )
}

// --- column-convex -------------------------------------------------------------

fn ccp_kernel_roots(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    super::u_pm_sq_with(cat, cfg.order)
        .map(|_| format!("K(u_+-^2) = 0 and u_-^2(p) = u_+^2(-p) mod p^{}", cfg.order))
        .map_err(err)
}

fn ccp_two_root(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let d = catalog::ccp_two_root(&cat.expr("u_plus_sq"), &cat.expr("u_minus_sq"));
    let n = cfg.order;
    same(
        &eval(&d, n, &Env::new())?,
        &eval(&cat.expr("ccp_C1"), n, &Env::new())?,
        "two-root elimination vs C1",
    )
}

fn ccp_assembly(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    let assembled = catalog::ccp_c_from(&cat.expr("ccp_C1"));
    same(
        &eval(&assembled, n, &Env::new())?,
        &eval(&cat.expr("ccp_C"), n, &Env::new())?,
        "assembly vs C",
    )
}

fn ccp_altform(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    joined(vec![same(
        &eval(&cat.expr("ccp_altform"), n, &Env::new())?,
        &eval(&cat.expr("ccp_C"), n, &Env::new())?,
        "rewrite vs C",
    )])
}

// --- convex classes --------------------------------------------------------------

pub(crate) fn fbu_residual(cat: &Catalog) -> Expr {
    let (p, u) = (Expr::p(), Expr::u());
    let f = cat.expr("Fbu1");
    let one_p2u = 1 - p.pow(2) * &u;
    one_p2u.pow(2) * &f - p.pow(4) * &u * &one_p2u - p.pow(2) * (&f + &u * catalog::fbu2_from(&f))
}

fn fbu_equation(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let r = fbu_residual(cat)
        .eval_bi(cfg.bi_p_order, cfg.bi_u_degree, &Env::new())
        .map_err(|e| e.to_string())?;
    bi_zero(&r, "F^bu system")
}

fn fbu_sum(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    let f1 = cat.expr("Fbu1").subst_u(&Expr::int(1));
    same(
        &eval(&catalog::type_sum(&f1), n, &Env::new())?,
        &cat.evaluate("Fbu_sum", n).map_err(err)?,
        "type sum",
    )
}

/// `F^{bu(1)} + u F^{bu(2)}` at the current `u`.
fn bu_pair(cat: &Catalog) -> Expr {
    let f = cat.expr("Fbu1");
    &f + Expr::u() * catalog::fbu2_from(&f)
}

fn fu_residual(cat: &Catalog) -> Expr {
    let (p, u) = (Expr::p(), Expr::u());
    let f = cat.expr("Fu1");
    let s = cat.expr("Fu1_at1");
    let one_p2u = 1 - p.pow(2) * &u;
    let lhs = (1 - &u) * one_p2u.pow(2) * &f;
    let rhs = p.pow(4) * (1 + &p) * &u * (1 - &u) * &one_p2u + p.pow(4) * &u * (1 - &u) * bu_pair(cat)
        - &p * &one_p2u * ((1 + &p * &u).pow(2) * &f - &u * (1 + &p).pow(2) * s);
    lhs - rhs
}

fn fu_specialization(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    same(
        &eval(&cat.expr("Fu1"), n, &at_u(Expr::int(1)))?,
        &cat.evaluate("Fu1_at1", n).map_err(err)?,
        "F^u(1)(p,u) at u=1 vs scalar form",
    )
}

fn fu_equation(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let r = fu_residual(cat)
        .eval_bi(cfg.bi_p_order, cfg.bi_u_degree, &Env::new())
        .map_err(|e| e.to_string())?;
    bi_zero(&r, "F^u functional equation")
}

fn fu_kernel(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let (p, u) = (Expr::p(), Expr::u());
    let n = cfg.order;
    let env = at_u(catalog::motzkin_root());
    let one_p2u = 1 - p.pow(2) * &u;
    let solved = -(p.pow(4) * (1 + &p) * &u * (1 - &u) * &one_p2u + p.pow(4) * &u * (1 - &u) * bu_pair(cat))
        / (&p * &one_p2u * &u * (1 + &p).pow(2));
    joined(vec![
        zero(&eval(&catalog::motzkin_kernel(), n, &env)?, "Motzkin-root kernel"),
        same(
            &eval(&solved, n, &env)?,
            &cat.evaluate("Fu1_at1", n).map_err(err)?,
            "kernel solution vs scalar form",
        ),
    ])
}

fn fu_sum(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    same(
        &eval(&catalog::type_sum(&cat.expr("Fu1_at1")), n, &Env::new())?,
        &cat.evaluate("Fu_sum", n).map_err(err)?,
        "type sum vs closed form",
    )
}

fn fb_free(cat: &Catalog) -> Expr {
    let (p, u) = (Expr::p(), Expr::u());
    let one_p2u = 1 - p.pow(2) * &u;
    p.pow(4) * &u * (1 - &u) * &one_p2u + p.pow(4) * &u * (1 - &u) * bu_pair(cat)
}

/// `F^{bu(2)}(p,1)`.
fn fbu2_at1(cat: &Catalog) -> Expr {
    catalog::fbu2_from(&cat.expr("Fbu1")).subst_u(&Expr::int(1))
}

fn fb_residual(cat: &Catalog) -> Expr {
    let (p, u) = (Expr::p(), Expr::u());
    let f = cat.expr("Fb1");
    let one_p2u = 1 - p.pow(2) * &u;
    let lhs = (1 - &u) * one_p2u.pow(2) * &f;
    let fbu2 = catalog::fbu2_from(&cat.expr("Fbu1"));
    let rhs = fb_free(cat) + p.pow(2) * &u * &one_p2u * (cat.expr("Fb1_at1") + fbu2_at1(cat) - &f - &u * fbu2);
    lhs - rhs
}

fn fb_specialization(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    same(
        &eval(&cat.expr("Fb1"), n, &at_u(Expr::int(1)))?,
        &cat.evaluate("Fb1_at1", n).map_err(err)?,
        "F^b(1)(p,u) at u=1 vs scalar form",
    )
}

fn fb_equation(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let r = fb_residual(cat)
        .eval_bi(cfg.bi_p_order, cfg.bi_u_degree, &Env::new())
        .map_err(|e| e.to_string())?;
    bi_zero(&r, "F^b functional equation")
}

fn fb_kernel(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let (p, u) = (Expr::p(), Expr::u());
    let n = cfg.order;
    let env = at_u(catalog::catalan_root());
    let one_p2u = 1 - p.pow(2) * &u;
    let fbu2 = catalog::fbu2_from(&cat.expr("Fbu1"));
    let solved = -fb_free(cat) / (p.pow(2) * &u * &one_p2u) - fbu2_at1(cat) + &u * fbu2;
    joined(vec![
        zero(&eval(&catalog::catalan_kernel(), n, &env)?, "Catalan-root kernel"),
        same(
            &eval(&solved, n, &env)?,
            &cat.evaluate("Fb1_at1", n).map_err(err)?,
            "kernel solution vs scalar form",
        ),
    ])
}

fn fb_sum(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    let s = cat.expr("Fb1_at1");
    let fbu1_at1 = cat.expr("Fbu1").subst_u(&Expr::int(1));
    let sum = &s + fbu2_at1(cat) + &s / Expr::p() + fbu1_at1;
    same(
        &eval(&sum, n, &Env::new())?,
        &cat.evaluate("Fb_sum", n).map_err(err)?,
        "type sum vs closed form",
    )
}

fn convex_assembly(cat: &Catalog, cfg: &SuiteConfig) -> Outcome {
    let n = cfg.order;
    let a = catalog::convex_assembly(&cat.expr("F1_at1"), &cat.expr("Fu1_at1"));
    same(
        &eval(&a, n, &Env::new())?,
        &cat.evaluate("convex_F", n).map_err(err)?,
        "assembly vs closed form",
    )
}

type CheckFn = fn(&Catalog, &SuiteConfig) -> Outcome;

const CHECKS: [(&str, CheckFn); 18] = [
    ("baryiamond_kernel_root", bary_kernel_root),
    ("baryiamond_kernel_B1", bary_kernel_b1),
    ("baryiamond_equation", bary_equation),
    ("baryiamond_assembly", bary_assembly),
    ("ccp_kernel_roots", ccp_kernel_roots),
    ("ccp_two_root_system", ccp_two_root),
    ("ccp_assembly", ccp_assembly),
    ("ccp_altform", ccp_altform),
    ("Fbu_equation", fbu_equation),
    ("Fbu_sum", fbu_sum),
    ("Fu_specialization", fu_specialization),
    ("Fu_equation", fu_equation),
    ("Fu_motzkin_kernel", fu_kernel),
    ("Fu_sum", fu_sum),
    ("Fb_specialization", fb_specialization),
    ("Fb_equation", fb_equation),
    ("Fb_catalan_kernel", fb_kernel),
    ("Fb_sum", fb_sum),
];

const CONVEX_CHECK: (&str, CheckFn) = ("convex_assembly", convex_assembly);

fn run(cat: &Catalog, cfg: &SuiteConfig, checks: &[(&str, CheckFn)]) -> Vec<CheckResult> {
    checks
        .par_iter()
        .map(|(name, f)| match f(cat, cfg) {
            Ok(d) => CheckResult::pass(name, d),
            Err(d) => CheckResult::fail(name, d),
        })
        .collect()
}

pub(crate) fn fu_checks(cat: &Catalog, cfg: &SuiteConfig) -> Vec<CheckResult> {
    run(cat, cfg, &CHECKS[10..14])
}

pub(crate) fn fb_checks(cat: &Catalog, cfg: &SuiteConfig) -> Vec<CheckResult> {
    run(cat, cfg, &CHECKS[14..18])
}

/// Runs every check against `cat`.
pub fn residual_suite_with(cat: &Catalog, cfg: &SuiteConfig) -> SuiteReport {
    let mut all: Vec<(&str, CheckFn)> = CHECKS.to_vec();
    all.push(CONVEX_CHECK);
    SuiteReport {
        checks: run(cat, cfg, &all),
    }
}

/// Runs every check against the standard catalog.
pub fn residual_suite(cfg: &SuiteConfig) -> SuiteReport {
    residual_suite_with(catalog::standard(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: SuiteConfig = SuiteConfig {
        order: 24,
        bi_p_order: 14,
        bi_u_degree: 6,
    };

    #[test]
    fn standard_catalog_passes() {
        let r = residual_suite(&SMALL);
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(r, residual_suite(&SMALL));
    }

    #[test]
    fn mutations_are_caught() {
        let cat = catalog::standard();
        for (entry, k, check) in [
            ("Fu_sum", 9, "Fu_sum"),
            ("Fb_sum", 8, "Fb_sum"),
            ("Fbu1", 7, "Fbu_equation"),
            ("u_plus_sq", 5, "ccp_kernel_roots"),
            ("ccp_altform", 12, "ccp_altform"),
            ("baryiamond_B1", 6, "baryiamond_kernel_B1"),
            ("convex_F", 11, "convex_assembly"),
            ("Fu1", 8, "Fu_equation"),
            ("Fb1", 8, "Fb_equation"),
        ] {
            let bad = cat.perturbed(entry, k, 1).unwrap();
            let r = residual_suite_with(&bad, &SMALL);
            let c = r.checks.iter().find(|c| c.name == check).unwrap();
            assert!(!c.passed, "perturbing {entry} went unnoticed by {check}");
        }
    }
}
