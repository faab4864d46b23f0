use num_bigint::BigInt;
use num_rational::BigRational;
use polyia::asymptotics::{asym_value, growth_constant, xi_enclosure, xi_polynomial};
use polyia::enumerate::{cross_check, Class, Limits};
use polyia::gf::{self, catalog, Catalog, SuiteConfig};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ints(s: &polyia::series::PowerSeries) -> Vec<i64> {
    gf::integer_coefficients(s)
        .unwrap()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect()
}

/// Smallest positive root of `1 - x - 2x^2 - 2x^3 + x^4 - x^5` by f64 bisection.
fn xi_f64() -> f64 {
    let f = |x: f64| 1.0 - x - 2.0 * x * x - 2.0 * x.powi(3) + x.powi(4) - x.powi(5);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn asym_f64(class: Class, n: f64) -> f64 {
    let pi = std::f64::consts::PI;
    match class {
        Class::Baryiamond => {
            let x = xi_f64();
            (x + 1.0).powi(2) * (x.powi(4) + x.powi(3) - 2.0 * x + 1.0).sqrt() / (2.0 * (pi * n.powi(3)).sqrt())
                * x.powf(-n - 2.0)
        }
        Class::ColumnConvex => {
            let s = 17f64.sqrt();
            (17997809.0 * s + 61587513.0) * (95.0 * s - 119.0).sqrt()
                / (128.0 * 1849.0 * 7921.0 * (6.0 * pi * n.powi(3)).sqrt())
                * ((3.0 + s) / 2.0).powf(n - 1.0)
        }
        _ => 1280.0 * 3f64.powf(n) / (441.0 * (3.0 * pi * n.powi(3)).sqrt()),
    }
}

#[test]
fn kernel_root_printed_coefficients() {
    let up = catalog::evaluate("u_plus_sq", 6).unwrap();
    let printed = [rat(1, 1), rat(1, 1), rat(1, 2), rat(9, 8), rat(2, 1), rat(239, 128)];
    assert_eq!(up.coeffs(), &printed);
    let um = catalog::evaluate("u_minus_sq", 60).unwrap();
    assert_eq!(um, catalog::evaluate("u_plus_sq", 60).unwrap().reflect());
}

#[test]
fn printed_low_order_series() {
    assert_eq!(&ints(&gf::gf_baryiamond(7).unwrap())[3..], &[2, 3, 5, 9]);
    assert_eq!(&ints(&gf::gf_ccp(11).unwrap())[3..], &[2, 3, 6, 15, 40, 113, 330, 988]);
    assert_eq!(
        &ints(&gf::gf_ccp_altform(11).unwrap())[3..],
        &[2, 3, 6, 15, 40, 113, 330, 988]
    );
    let (_, f) = gf::gf_f1_convex(12).unwrap();
    assert_eq!(&ints(&f)[3..], &[2, 3, 6, 15, 38, 102, 272, 739, 2006]);
}

#[test]
fn closed_form_matches_recursion() {
    assert_eq!(gf::gf_baryiamond(80).unwrap(), gf::gf_baryiamond_recursive(80).unwrap());
}

#[test]
fn closed_forms_match_brute_force() {
    let l = Limits::default();
    for (class, depth) in [
        (Class::Baryiamond, 14),
        (Class::ColumnConvex, 12),
        (Class::CpBu, 12),
        (Class::CpU, 12),
        (Class::CpB, 12),
    ] {
        let r = cross_check(class, depth, &l).unwrap();
        assert!(r.all_equal(), "{class}: {r}");
        assert_eq!(r.to_string(), "all equal");
    }
}

#[test]
fn entries_are_truncation_stable() {
    let cat = Catalog::standard();
    for name in gf::ENTRY_NAMES {
        if cat.get(name).unwrap().expr.uses_u() {
            continue;
        }
        let long = cat.evaluate(name, 30).unwrap();
        assert_eq!(long.truncate(20), cat.evaluate(name, 20).unwrap(), "{name}");
    }
}

#[test]
fn residual_suite_passes_at_moderate_order() {
    let cfg = SuiteConfig {
        order: 30,
        bi_p_order: 20,
        bi_u_degree: 12,
    };
    let report = gf::residual_suite(&cfg);
    let failed: Vec<_> = report.failed().map(|c| c.name.clone()).collect();
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn perturbed_entries_are_caught() {
    let cfg = SuiteConfig {
        order: 24,
        bi_p_order: 16,
        bi_u_degree: 10,
    };
    for name in ["ccp_C1", "Fu1", "baryiamond_B1"] {
        let cat = Catalog::standard().perturbed(name, 9, 1).unwrap();
        assert!(!gf::residual_suite_with(&cat, &cfg).all_passed(), "{name}");
    }
}

#[test]
fn xi_enclosure_contains_float_root() {
    let tol = rat(1, 100_000_000_000);
    let e = xi_enclosure(&tol).unwrap();
    assert_eq!(e.poly, xi_polynomial());
    assert!(e.width() <= tol);
    let x = xi_f64();
    assert!((x - 0.44617150675).abs() < 1e-10);
    let as_rat = BigRational::new(BigInt::from((x * 1e15).round() as i64), BigInt::from(10i64.pow(15)));
    assert!(e.contains(&as_rat));
}

#[test]
fn growth_constants_match_float_values() {
    let g = |c| growth_constant(c, 128).unwrap().to_f64();
    assert!((g(Class::Baryiamond) - 1.0 / xi_f64()).abs() < 1e-12);
    assert!((g(Class::ColumnConvex) - 3.5615528128088303).abs() < 1e-12);
    assert_eq!(g(Class::Convex), 3.0);
}

#[test]
fn high_precision_estimates_match_float_evaluation() {
    for class in [Class::Baryiamond, Class::ColumnConvex, Class::Convex] {
        for n in [5usize, 10, 40] {
            let hp = asym_value(class, n).unwrap().value.to_f64();
            let lo = asym_f64(class, n as f64);
            assert!((hp / lo - 1.0).abs() < 1e-11, "{class} at {n}: {hp} vs {lo}");
        }
    }
    let ten = asym_value(Class::Convex, 10).unwrap();
    assert!(ten.estimate.starts_with("1.7654213064"), "{}", ten.estimate);
}

#[test]
fn estimates_are_stable_under_precision_doubling() {
    let a = asym_value(Class::ColumnConvex, 50).unwrap();
    let b = asym_value(Class::ColumnConvex, 50).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.estimate.len(), b.estimate.len());
}
