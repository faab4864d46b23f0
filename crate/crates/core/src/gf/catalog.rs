//! Named generating functions as expression trees.
//!
//! Every entry is a closed form in `p` (and possibly `u`). Entries of the
//! column-convex family live in the doubled variable: their `p`-series is
//! even and the coefficient of `p^(2n)` belongs to perimeter `n`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use super::GfError;
use crate::series::{Env, Expr, PowerSeries};

/// How an entry's `p`-series maps to the user-facing series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Coefficient of `p^n` is the answer at `n`.
    Direct,
    /// Even series in `p`; coefficient of `p^(2n)` is the answer at `n`.
    Doubled,
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: &'static str,
    pub expr: Expr,
    pub policy: Policy,
    /// Nonnegative integer coefficients expected.
    pub counting: bool,
    pub summary: &'static str,
}

/// All named formulas plus the auxiliary expressions the checks need.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: BTreeMap<&'static str, Entry>,
}

pub const ENTRY_NAMES: [&str; 17] = [
    "baryiamond_B",
    "baryiamond_B1",
    "ccp_C",
    "ccp_C1",
    "ccp_altform",
    "u_plus_sq",
    "u_minus_sq",
    "Fbu1",
    "Fbu_sum",
    "Fu1",
    "Fu1_at1",
    "Fu_sum",
    "Fb1",
    "Fb1_at1",
    "Fb_sum",
    "F1_at1",
    "convex_F",
];

fn p() -> Expr {
    Expr::p()
}

fn u() -> Expr {
    Expr::u()
}

/// Sparse polynomial in `p` from `(exponent, coefficient)` pairs.
fn sp(terms: &[(usize, i64)]) -> Expr {
    Expr::sparse_poly(terms)
}

fn pk(k: usize) -> Expr {
    sp(&[(k, 1)])
}

// --- baryiamonds -----------------------------------------------------------

/// `(1-p)(1-p-2p^2-2p^3+p^4-p^5)`; its quintic factor has the root xi.
pub fn bary_q() -> Expr {
    sp(&[(0, 1), (1, -1)]) * sp(&[(0, 1), (1, -1), (2, -2), (3, -2), (4, 1), (5, -1)])
}

pub fn baryiamond_b() -> Expr {
    let num = sp(&[(0, 1), (1, 1), (2, -2), (3, -4), (4, -3), (5, 1)]) - sp(&[(0, 1), (1, 1)]).pow(2) * bary_q().sqrt();
    num / (2 * pk(2))
}

pub fn baryiamond_b1() -> Expr {
    (sp(&[(0, 1), (1, -1), (2, -1), (3, -1)]) - bary_q().sqrt()) / (2 * p())
}

/// Kernel root of the baryiamond functional equation.
pub fn bary_u0() -> Expr {
    (sp(&[(0, 1), (4, 1)]) - sp(&[(0, 1), (1, 1)]) * bary_q().sqrt()) / (2 * pk(2) * sp(&[(0, 1), (1, 1), (3, -1)]))
}

/// Coefficient of `B1(p,u)` in the baryiamond functional equation.
pub fn bary_kernel() -> Expr {
    1 - u() * sp(&[(0, 1), (4, 1)]) + u() * u() * sp(&[(2, 1), (3, 1), (5, -1)])
}

/// Kernel coefficient as it arises term by term from the equation.
pub fn bary_kernel_expanded() -> Expr {
    let (p, u) = (p(), u());
    let one_pu = 1 + &p * &u;
    (1 - &u) * (1 - pk(2) * &u) - pk(2) * (1 - &u) * &one_pu + pk(2) * (1 - pk(2) * &u) * &one_pu
}

/// Term free of `B1` in the baryiamond functional equation.
pub fn bary_free_term() -> Expr {
    (pk(4) + pk(5)) * u() * (1 - u())
}

/// Coefficient of `B1(p,1)` in the baryiamond functional equation.
pub fn bary_b1_at1_coeff() -> Expr {
    pk(2) * (1 - pk(2) * u()) * u() * sp(&[(0, 1), (1, 1)])
}

// --- column-convex ---------------------------------------------------------

fn p10_at(x: &Expr) -> Expr {
    x.pow(10) - 2 * x.pow(6) + 2 * x.pow(4) + x.pow(2) + 2
}

/// `u_+^2` written in terms of an arbitrary argument `x` in place of `p`.
pub fn u_plus_sq_at(x: &Expr) -> Expr {
    let x2 = x.pow(2);
    let x4 = x.pow(4);
    let p10 = p10_at(x);
    let s = (1 + &x2).sqrt() * (4 - 3 * &x2 + &x4).sqrt();
    let inner = 1 + &x2 * (1 + &x2).pow(2) + x * &p10 / (2 * (1 - &x2)) * (x - x.pow(3) - &s);
    &p10 / (4 * &x4) - (1 - &x4) * (1 + &x2) / (4 * x.pow(3)) * &s - (1 - &x4) / (2 * &x4) * inner.sqrt()
}

pub fn u_plus_sq() -> Expr {
    u_plus_sq_at(&p())
}

pub fn u_minus_sq() -> Expr {
    u_plus_sq_at(&(-p()))
}

/// Kernel `K` at `u^2 = w`, verbatim.
pub fn ccp_kernel(w: &Expr) -> Expr {
    let p2w = pk(2) * w;
    1 - &p2w * (1 + &p2w).pow(2) * sp(&[(0, 1), (4, -1)]).pow(2) / ((1 - pk(4) * w).pow(2) * (1 - w).pow(2))
}

fn ccp_a(up: &Expr, um: &Expr) -> Expr {
    let s = up + um;
    let t = up * um;
    sp(&[(6, 2), (4, 1), (2, -1), (0, -1)]) - pk(4) * sp(&[(6, 1), (4, 1), (0, -1)]) * s
        + pk(8) * sp(&[(12, 1), (10, 1), (8, -2), (6, -2), (4, 2), (2, 2), (0, -1)]) * t
}

fn ccp_b(up: &Expr, um: &Expr) -> Expr {
    let s = up + um;
    let t = up * um;
    1 - 2 * pk(4) + 2 * pk(8) * &s
        - pk(8) * (up.pow(2) + um.pow(2))
        - 2 * pk(4) * sp(&[(14, 1), (10, -2), (8, 1), (6, 1), (0, 1)]) * &t
        + pk(8) * sp(&[(10, 1), (6, -2), (2, 1), (0, 2)]) * &t * &s
        + pk(12) * sp(&[(4, 1), (0, -2)]) * t.pow(2)
}

/// `C^(1)(p^2, 1)`.
pub fn ccp_c1_from(up: &Expr, um: &Expr) -> Expr {
    pk(6) * (1 - up) * (1 - um) * ccp_a(up, um) / (sp(&[(0, 1), (2, 1)]).pow(2) * ccp_b(up, um))
}

/// `C(p^2) = p^6 + (1+p^2)^2/p^2 * C^(1)(p^2,1)`.
pub fn ccp_c_from(c1: &Expr) -> Expr {
    pk(6) + sp(&[(0, 1), (2, 1)]).pow(2) / pk(2) * c1
}

/// Solution of the two kernel-root equations for `C^(1)(p^2,1)`.
pub fn ccp_two_root(up: &Expr, um: &Expr) -> Expr {
    let e = |w: &Expr| {
        let w2 = w.pow(2);
        1 + (2 * w - 1) * pk(2) + 2 * w * (w - 2) * pk(4) - 2 * &w2 * pk(6)
            + pk(8) * w * (w * (3 - 2 * w) - (&w2 - 3 * w + 1) * pk(2) + (1 - w).pow(2) * pk(4))
    };
    let g = |w: &Expr| sp(&[(0, 1), (2, 1)]) * (1 - w) * (1 - 2 * w * pk(4) + w.pow(2) * pk(8) - w * (1 - w) * pk(10));
    let h = |w: &Expr| {
        pk(6) * (1 - w).pow(2) * (sp(&[(0, 1), (2, 1)]) - w * sp(&[(4, 1), (10, 1), (12, 1)])) / sp(&[(0, 1), (2, 1)])
    };
    (g(up) * h(um) - g(um) * h(up)) / (g(up) * e(um) - g(um) * e(up))
}

/// The `a_ij`, `alpha`, `beta` rewrite of `C(p^2)`, with `sqrt(alpha)` and
/// `sqrt(beta)` carried as the conjugate pair `sqrt2*(sqrt(alpha) +- sqrt(beta))`.
pub fn ccp_altform() -> Expr {
    let root = (pk(2) * sp(&[(2, 1), (0, -1)]).pow(2) + 4).sqrt();
    let r = sp(&[(12, 1), (8, -2), (6, 4), (4, 5), (2, 4), (0, 2)]);
    let t = p() * p10_at(&p()) / sp(&[(0, 1), (2, -1)]);
    let alpha = &r + &t * &root;
    let beta = &r - &t * &root;
    let a00 = sp(&[(0, 1), (2, -1)])
        * sp(&[
            (24, 14),
            (22, -34),
            (20, 3),
            (18, 143),
            (16, -21),
            (14, -377),
            (12, -57),
            (10, 449),
            (8, 181),
            (6, -245),
            (4, -112),
            (2, 72),
            (0, 32),
        ]);
    let c_even = sp(&[(4, 1), (0, -1)])
        * sp(&[
            (24, 4),
            (22, -12),
            (20, 2),
            (18, 54),
            (16, -19),
            (14, -138),
            (12, 54),
            (10, 250),
            (8, -3),
            (6, -234),
            (4, -62),
            (2, 80),
            (0, 32),
        ]);
    let c_odd = p()
        * sp(&[(2, 1), (0, 1)])
        * sp(&[(2, 1), (0, -1)]).pow(2)
        * sp(&[
            (18, 4),
            (16, -4),
            (14, -10),
            (12, 30),
            (10, 63),
            (8, -22),
            (6, -99),
            (4, -28),
            (2, 56),
            (0, 32),
        ]);
    let a11 = pk(2)
        * sp(&[(2, 1), (0, 1)])
        * sp(&[(2, 1), (0, -1)]).pow(2)
        * sp(&[(12, 2), (10, 1), (6, 4), (4, 5), (2, -3), (0, -4)]);
    let sqrt_ab = (&alpha * &beta).sqrt();
    // sqrt2*(sqrt(alpha)+sqrt(beta)) and sqrt2*(sqrt(alpha)-sqrt(beta))
    let plus = (2 * (&alpha + &beta) + 4 * &sqrt_ab).sqrt();
    let minus = 2 * (&alpha - &beta) / &plus;
    // a10*sqrt(alpha) + a01*sqrt(beta)
    let mid = (c_even * &plus + c_odd * &root * minus) / 4;
    let den = 2 * sp(&[
        (22, 4),
        (20, -16),
        (18, 20),
        (16, 32),
        (14, -75),
        (12, -76),
        (10, 182),
        (8, 152),
        (6, -155),
        (4, -164),
        (2, 48),
        (0, 64),
    ]);
    (a00 + mid + a11 * sqrt_ab) / den
}

/// `alpha + beta`.
pub fn ccp_alpha_plus_beta() -> Expr {
    2 * sp(&[(12, 1), (8, -2), (6, 4), (4, 5), (2, 4), (0, 2)])
}

// --- convex ----------------------------------------------------------------

/// `sqrt(1-2p-3p^2)`.
pub fn motzkin_sqrt() -> Expr {
    sp(&[(0, 1), (1, -2), (2, -3)]).sqrt()
}

/// `sqrt(1-4p^2)`.
pub fn catalan_sqrt() -> Expr {
    sp(&[(0, 1), (2, -4)]).sqrt()
}

/// Root `(1-p-sqrt(1-2p-3p^2))/(2p^2)` (Motzkin numbers).
pub fn motzkin_root() -> Expr {
    (sp(&[(0, 1), (1, -1)]) - motzkin_sqrt()) / (2 * pk(2))
}

/// Root `(1-sqrt(1-4p^2))/(2p^2)` (Catalan numbers in `p^2`).
pub fn catalan_root() -> Expr {
    (1 - catalan_sqrt()) / (2 * pk(2))
}

pub fn motzkin_kernel() -> Expr {
    (1 - u()) * (1 - pk(2) * u()) + p() * (1 + p() * u()).pow(2)
}

pub fn catalan_kernel() -> Expr {
    (1 - u()) * (1 - pk(2) * u()) + pk(2) * u()
}

pub fn fbu1() -> Expr {
    let u = u();
    pk(4) * &u * (sp(&[(0, 1), (1, 1)]) - pk(2) * &u)
        / (sp(&[(0, 1), (2, -1)]) - sp(&[(2, 2), (3, 1)]) * &u + pk(4) * &u * &u)
}

/// `F^{bu(2)} = p^3 + p F^{bu(1)}` for a given `F^{bu(1)}`.
pub fn fbu2_from(fbu1: &Expr) -> Expr {
    pk(3) + p() * fbu1
}

/// Four first-column types summed: `F1 + (p^3 + p F1) + F1/p + F1`.
pub fn type_sum(f1: &Expr) -> Expr {
    f1 + fbu2_from(f1) + f1 / p() + f1
}

pub fn fu1() -> Expr {
    let (p, u) = (p(), u());
    let m = motzkin_sqrt();
    let d1 = sp(&[(0, 1), (1, -2), (2, -4)]) * (pk(2) * &u * &u + &p * &u - &u + 1);
    let t1 = pk(4) * sp(&[(0, 1), (1, 1)]) * (&u * &m + sp(&[(0, 1), (1, -1)]) * &u - 2) / d1;
    let n2 = (&u + 2) * pk(5) - (3 * &u + 2) * pk(4) - (2 * &u + 4) * pk(3) + (&u + 3) * pk(2) + 2 * &p - 1;
    let d2 = (pk(4) * &u * &u - pk(3) * &u - 2 * pk(2) * &u - pk(2) + 1) * sp(&[(2, 4), (1, 2), (0, -1)]);
    t1 - pk(2) + pk(2) * n2 / d2
}

pub fn fu1_at1() -> Expr {
    pk(3) * (sp(&[(2, 3), (1, 1), (0, -1)]) + sp(&[(0, 1), (1, 1)]) * motzkin_sqrt())
        / (sp(&[(0, 1), (1, -2), (2, -4)]) * sp(&[(0, 1), (1, 1)]))
}

pub fn fu_sum() -> Expr {
    pk(2) * (sp(&[(0, -1), (1, 1), (2, 2), (3, -1)]) + sp(&[(0, 1), (1, 1)]).pow(2) * motzkin_sqrt())
        / sp(&[(0, 1), (1, -2), (2, -4)])
}

pub fn fb1() -> Expr {
    let (p, u) = (p(), u());
    let ct = catalan_sqrt();
    let q = pk(2) * &u * &u - &u + 1;
    let cubic = sp(&[(3, 5), (2, 4), (1, -1), (0, -1)]);
    let t1 = -(&u * sp(&[(0, 1), (1, 1)]) * sp(&[(0, 1), (1, 2)]) * pk(5)) / (2 * &q * &cubic) * ct;
    let n2 = &u * pk(8) + 2 * (&u + 1) * pk(7) + (&u + 3) * pk(6) - (5 * &u + 6) * pk(5) - (4 * &u + 7) * pk(4)
        + (&u + 5) * (1 + &p) * pk(2)
        - &p
        - 1;
    let d2 = (pk(4) * &u * &u - pk(3) * &u - 2 * pk(2) * &u - pk(2) + 1) * &cubic;
    let t3 = (&u - 2) * sp(&[(0, 1), (1, 2)]) * sp(&[(0, 1), (1, 1)]) * pk(5)
        / (&q * sp(&[(3, 10), (2, 8), (1, -2), (0, -2)]));
    t1 - pk(2) + pk(2) * n2 / d2 - t3
}

pub fn fb1_at1() -> Expr {
    let cubic = sp(&[(3, 5), (2, 4), (1, -1), (0, -1)]);
    let c2 = sp(&[(3, 1), (2, -2), (1, -1), (0, 1)]);
    pk(3)
        * (sp(&[(2, 2), (0, -1)]) * sp(&[(5, 1), (3, 6), (2, 5), (1, -1), (0, -1)])
            - sp(&[(0, 1), (1, 2)]) * &c2 * sp(&[(0, 1), (1, 1)]).pow(2) * catalan_sqrt())
        / (2 * sp(&[(0, 1), (1, 1)]) * cubic * c2)
}

pub fn fb_sum() -> Expr {
    pk(2)
        * (sp(&[(4, 2), (3, -6), (2, -7), (0, 1)])
            - sp(&[(0, 1), (1, 2)]) * sp(&[(0, 1), (1, 1)]).pow(2) * catalan_sqrt())
        / (2 * sp(&[(3, 5), (2, 4), (1, -1), (0, -1)]))
}

fn deg10() -> Expr {
    sp(&[
        (10, 4),
        (9, -8),
        (8, 1),
        (7, 19),
        (6, -8),
        (5, -20),
        (4, 9),
        (3, 10),
        (2, -5),
        (1, -2),
        (0, 1),
    ])
}

fn quintic5() -> Expr {
    sp(&[(5, 4), (3, -7), (2, 1), (1, 4), (0, -1)])
}

fn quartic4() -> Expr {
    sp(&[(4, 2), (3, -1), (2, -2), (1, 1), (0, 1)])
}

fn cubic5() -> Expr {
    sp(&[(3, 5), (2, 4), (1, -1), (0, -1)])
}

pub fn f1_at1() -> Expr {
    let p = p();
    let m = motzkin_sqrt();
    let ct = catalan_sqrt();
    pk(4) * sp(&[(5, -2), (4, 1), (3, 3), (2, -3), (1, -2), (0, 2)]) / (sp(&[(2, 4), (1, 2), (0, -1)]) * quintic5())
        * (&p - m)
        + pk(6) * sp(&[(2, 1), (0, -1)]) * sp(&[(1, 2), (0, 1)]) / (2 * quartic4() * cubic5() * sp(&[(1, 2), (0, -1)]))
            * ct
        - Expr::rat(9, 5) * pk(2)
        - Expr::rat(13, 50) * &p
        - Expr::rat(1577, 1000)
        + 1 / sp(&[(0, 1), (1, 1)])
        + sp(&[
            (9, 570),
            (8, 1009),
            (7, -671),
            (6, -1764),
            (5, 210),
            (4, 1251),
            (3, -4),
            (2, -459),
            (1, -20),
            (0, 63),
        ]) / (88 * deg10())
        + sp(&[(4, 24), (3, 7), (2, -1), (1, 8), (0, -3)]) / (88 * quintic5())
        + sp(&[(2, -1), (1, 19), (0, 24)]) / (500 * cubic5())
        + sp(&[(3, 1), (2, 2), (1, -1), (0, -1)]) / (8 * quartic4())
}

pub fn convex_f() -> Expr {
    let m = motzkin_sqrt();
    let ct = catalan_sqrt();
    -(sp(&[(1, 2), (0, 1)]) * sp(&[(1, 1), (0, -1)]).pow(2) * sp(&[(1, 1), (0, 1)]).pow(3) * pk(3))
        / (sp(&[(2, 4), (1, 2), (0, -1)]) * quintic5())
        * m
        + sp(&[(1, 2), (0, 1)]) * sp(&[(1, 1), (0, -1)]) * sp(&[(1, 1), (0, 1)]).pow(2) * pk(5)
            / (2 * quartic4() * cubic5() * sp(&[(1, 2), (0, -1)]))
            * ct
        + Expr::rat(1, 8) * pk(3)
        - Expr::rat(67, 40) * pk(2)
        - Expr::rat(103, 50) * p()
        - Expr::rat(15071, 8000)
        + sp(&[(0, 30), (1, 35)]) / (352 * sp(&[(2, 4), (1, 2), (0, -1)]))
        + sp(&[
            (9, 318),
            (8, 2083),
            (7, 275),
            (6, -3632),
            (5, -1050),
            (4, 2721),
            (3, 680),
            (2, -1093),
            (1, -164),
            (0, 169),
        ]) / (88 * deg10())
        + sp(&[(4, -238), (3, 3), (2, 537), (1, 214), (0, -149)]) / (704 * quintic5())
        + sp(&[(2, 119), (1, 114), (0, 19)]) / (500 * cubic5())
        + sp(&[(3, 3), (2, 2), (1, -1), (0, -1)]) / (8 * quartic4())
}

/// `F = F1 + (p^3 + p F^{u(1)}) + F1/p + F^{u(1)}`.
pub fn convex_assembly(f1: &Expr, fu1_at1: &Expr) -> Expr {
    f1 + pk(3) + p() * fu1_at1 + f1 / p() + fu1_at1
}

impl Catalog {
    pub fn standard() -> Catalog {
        let one = Expr::int(1);
        let up = u_plus_sq();
        let um = u_minus_sq();
        let c1 = ccp_c1_from(&up, &um);
        let fbu1_1 = fbu1().subst_u(&one);
        let list = [
            (
                "baryiamond_B",
                baryiamond_b(),
                Policy::Direct,
                true,
                "baryiamonds by perimeter",
            ),
            (
                "baryiamond_B1",
                baryiamond_b1(),
                Policy::Direct,
                true,
                "baryiamonds with a type-1 first column",
            ),
            (
                "ccp_C",
                ccp_c_from(&c1),
                Policy::Doubled,
                true,
                "column-convex polyiamonds by perimeter",
            ),
            (
                "ccp_C1",
                c1,
                Policy::Doubled,
                true,
                "column-convex, type-1 first column",
            ),
            (
                "ccp_altform",
                ccp_altform(),
                Policy::Doubled,
                true,
                "column-convex, radical rewrite",
            ),
            ("u_plus_sq", up, Policy::Direct, false, "kernel root u_+^2"),
            ("u_minus_sq", um, Policy::Direct, false, "kernel root u_-^2"),
            (
                "Fbu1",
                fbu1(),
                Policy::Direct,
                true,
                "CP^bu, type-1 first column, bivariate in u",
            ),
            (
                "Fbu_sum",
                type_sum(&fbu1_1),
                Policy::Direct,
                true,
                "CP^bu, all first-column types",
            ),
            (
                "Fu1",
                fu1(),
                Policy::Direct,
                true,
                "CP^u, type-1 first column, bivariate in u",
            ),
            (
                "Fu1_at1",
                fu1_at1(),
                Policy::Direct,
                true,
                "CP^u, type-1 first column at u=1",
            ),
            ("Fu_sum", fu_sum(), Policy::Direct, true, "CP^u, all first-column types"),
            (
                "Fb1",
                fb1(),
                Policy::Direct,
                true,
                "CP^b, type-1 first column, bivariate in u",
            ),
            (
                "Fb1_at1",
                fb1_at1(),
                Policy::Direct,
                true,
                "CP^b, type-1 first column at u=1",
            ),
            ("Fb_sum", fb_sum(), Policy::Direct, true, "CP^b, all first-column types"),
            ("F1_at1", f1_at1(), Policy::Direct, true, "convex, type-1 first column"),
            (
                "convex_F",
                convex_f(),
                Policy::Direct,
                true,
                "convex polyiamonds by perimeter",
            ),
        ];
        let entries = list
            .into_iter()
            .map(|(name, expr, policy, counting, summary)| {
                (
                    name,
                    Entry {
                        name,
                        expr,
                        policy,
                        counting,
                        summary,
                    },
                )
            })
            .collect();
        Catalog { entries }
    }

    pub fn get(&self, name: &str) -> Result<&Entry, GfError> {
        self.entries
            .get(name)
            .ok_or_else(|| GfError::UnknownEntry(name.to_string()))
    }

    pub fn expr(&self, name: &str) -> Expr {
        self.entries[name].expr.clone()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    /// Copy with `delta * p^k` added to one entry (mutation testing).
    pub fn perturbed(&self, name: &str, k: usize, delta: i64) -> Result<Catalog, GfError> {
        let mut c = self.clone();
        let e = c
            .entries
            .get_mut(name)
            .ok_or_else(|| GfError::UnknownEntry(name.to_string()))?;
        e.expr = &e.expr + delta * pk(k);
        Ok(c)
    }

    /// Evaluates an entry to `order` terms in its user-facing variable; `u`
    /// is set to 1.
    pub fn evaluate(&self, name: &str, order: usize) -> Result<PowerSeries, GfError> {
        let e = self.get(name)?;
        let env = Env::new().with_u(Expr::int(1));
        match e.policy {
            Policy::Direct => Ok(e.expr.eval(order, &env)?),
            Policy::Doubled => undouble(&e.expr.eval(2 * order, &env)?),
        }
    }
}

/// `f(p)` even in `p` to `g(q)` with `g_n = f_{2n}`.
pub fn undouble(s: &PowerSeries) -> Result<PowerSeries, GfError> {
    for (i, c) in s.coeffs().iter().enumerate() {
        if i % 2 == 1 && !c.is_zero() {
            return Err(GfError::OddPowerContamination { index: i });
        }
    }
    Ok(PowerSeries::new(s.coeffs().iter().step_by(2).cloned().collect()))
}

pub fn standard() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(Catalog::standard)
}

/// Evaluates a standard-catalog entry; see [`Catalog::evaluate`].
pub fn evaluate(name: &str, order: usize) -> Result<PowerSeries, GfError> {
    standard().evaluate(name, order)
}
