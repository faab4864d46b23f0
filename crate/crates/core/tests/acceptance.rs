//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use polyia::asymptotics::{self, growth_constant, xi_enclosure};
use polyia::enumerate::{
    collect_class, count_by_first_column, count_by_perimeter, cross_check, enumerate_fixed, Class, Limits, Query,
};
use polyia::gf::{self, catalog, SuiteConfig};
use polyia::lattice::{classify, min_perimeter_bound};
use polyia::series::{Env, PowerSeries};

const BRUTE_CCP_10_LIMIT: Duration = Duration::from_secs(10);
const THREE_WAY_CCP_14_LIMIT: Duration = Duration::from_secs(60);
const SERIES_600_LIMIT: Duration = Duration::from_secs(300);
const RATIO_DEV_MAX: f64 = 0.02;
const PREFACTOR_TOL: f64 = 0.05;
const XI_WIDTH: (i64, i64) = (1, 100_000_000_000);
const XI_PRINTED: (i64, i64) = (44_617_150_675, 100_000_000_000);
const CCP_GROWTH_PRINTED: f64 = 3.5615528128;
const INTEGRALITY_ORDER: usize = 200;
const GEOMETRY_MAX_CELLS: usize = 12;

type Criterion = fn() -> Outcome;

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        self.notes.push(if ok { note } else { format!("FAILED {note}") });
        self.passed &= ok;
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn limits() -> Limits {
    Limits::default()
}

fn brute(class: Class, p_max: usize) -> Vec<u64> {
    let t = count_by_perimeter(&Query::new(class, p_max), &limits()).expect("enumeration within limits");
    (0..=p_max).map(|n| t.get_u64(n)).collect()
}

fn brute_type1(class: Class, p_max: usize) -> Vec<u64> {
    let t = count_by_perimeter(&Query::new(class, p_max).first_type(1), &limits()).expect("enumeration within limits");
    (0..=p_max).map(|n| t.get_u64(n)).collect()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn series_ints(s: &PowerSeries) -> Vec<BigInt> {
    gf::integer_coefficients(s).unwrap_or_default()
}

/// Compares `got[n]` against printed `(n, value)` pairs; returns the first
/// disagreement.
fn against_printed(got: &[BigInt], printed: &[(usize, i64)]) -> Result<(), String> {
    for &(n, v) in printed {
        match got.get(n) {
            Some(g) if *g == BigInt::from(v) => {}
            Some(g) => return Err(format!("perimeter {n}: got {g}, printed {v}")),
            None => return Err(format!("perimeter {n}: missing")),
        }
    }
    Ok(())
}

fn note_printed(o: &mut Outcome, what: &str, got: &[BigInt], printed: &[(usize, i64)]) {
    match against_printed(got, printed) {
        Ok(()) => o.check(true, format!("{what} matches printed series")),
        Err(e) => o.check(false, format!("{what}: {e}")),
    }
}

fn criterion_1() -> Outcome {
    const PRINTED: [(usize, i64); 8] = [(3, 2), (4, 3), (5, 6), (6, 15), (7, 40), (8, 113), (9, 330), (10, 988)];
    let mut o = Outcome::new();
    let t = Instant::now();
    let b10 = brute(Class::ColumnConvex, 10);
    let dt = t.elapsed();
    note_printed(&mut o, "brute force", &big(&b10), &PRINTED);
    o.check(
        dt < BRUTE_CCP_10_LIMIT,
        format!("brute force to 10 in {dt:.2?} (limit {BRUTE_CCP_10_LIMIT:?})"),
    );

    let main = series_ints(&gf::gf_ccp(11).expect("ccp series"));
    let alt = series_ints(&gf::gf_ccp_altform(11).expect("ccp altform"));
    note_printed(&mut o, "gf_ccp", &main, &PRINTED);
    note_printed(&mut o, "gf_ccp_altform", &alt, &PRINTED);

    let t = Instant::now();
    let b14 = brute(Class::ColumnConvex, 14);
    let main = series_ints(&gf::gf_ccp(15).expect("ccp series"));
    let alt = series_ints(&gf::gf_ccp_altform(15).expect("ccp altform"));
    let dt = t.elapsed();
    let agree = (3..=14).all(|n| main.get(n) == alt.get(n) && main.get(n).is_some_and(|c| *c == BigInt::from(b14[n])));
    o.check(agree, "three-way agreement to perimeter 14");
    o.check(
        dt < THREE_WAY_CCP_14_LIMIT,
        format!("three-way check in {dt:.2?} (limit {THREE_WAY_CCP_14_LIMIT:?})"),
    );
    o
}

fn criterion_2() -> Outcome {
    const PRINTED: [(usize, i64); 9] = [
        (3, 2),
        (4, 3),
        (5, 6),
        (6, 15),
        (7, 38),
        (8, 102),
        (9, 272),
        (10, 739),
        (11, 2006),
    ];
    let mut o = Outcome::new();
    note_printed(&mut o, "brute force", &big(&brute(Class::Convex, 11)), &PRINTED);
    let (_, f) = gf::gf_f1_convex(12).expect("convex series");
    note_printed(&mut o, "gf_F1_convex", &series_ints(&f), &PRINTED);
    let cat = catalog::standard();
    let assembly = catalog::convex_assembly(&cat.expr("F1_at1"), &cat.expr("Fu1_at1"))
        .eval(40, &Env::new())
        .expect("assembly evaluates");
    let closed = cat.evaluate("convex_F", 40).expect("closed form evaluates");
    o.check(
        assembly == closed,
        "first-column assembly equals closed form to order 40",
    );
    o
}

fn criterion_3() -> Outcome {
    const PRINTED: [(usize, i64); 10] = [
        (4, 1),
        (5, 1),
        (6, 3),
        (7, 8),
        (8, 20),
        (9, 58),
        (10, 152),
        (11, 427),
        (12, 1155),
        (13, 3211),
    ];
    let mut o = Outcome::new();
    note_printed(
        &mut o,
        "brute force type 1",
        &big(&brute_type1(Class::Convex, 13)),
        &PRINTED,
    );
    let f1 = catalog::evaluate("F1_at1", 14).expect("F1 evaluates");
    note_printed(&mut o, "F1 series", &series_ints(&f1), &PRINTED);
    let q = Query::new(Class::Convex, 8).first_type(1);
    let members = collect_class(&q, 8, &limits()).expect("collection within limits");
    let all_type1 = members
        .iter()
        .all(|p| classify(p).convex && classify(p).first_column_type == Some(1));
    o.check(
        members.len() == 20 && all_type1,
        format!("perimeter-8 type-1 convex set has {} members", members.len()),
    );
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let b = brute(Class::Baryiamond, 16);
    let closed = series_ints(&gf::gf_baryiamond(17).expect("closed form"));
    let rec = series_ints(&gf::gf_baryiamond_recursive(17).expect("recursion"));
    let agree =
        (0..=16).all(|n| closed.get(n) == rec.get(n) && closed.get(n).is_some_and(|c| *c == BigInt::from(b[n])));
    o.check(agree, "closed form, recursion and brute force agree to perimeter 16");
    note_printed(
        &mut o,
        "brute-force low coefficients",
        &big(&b),
        &[(3, 2), (4, 3), (5, 5), (6, 9)],
    );
    match cross_check(Class::Baryiamond, 16, &limits()) {
        Ok(r) => o.check(r.all_equal(), format!("cross-check: {r}")),
        Err(e) => o.check(false, format!("cross-check: {e}")),
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let up = catalog::evaluate("u_plus_sq", 60).expect("u_+^2");
    let printed = [rat(1, 1), rat(1, 1), rat(1, 2), rat(9, 8), rat(2, 1), rat(239, 128)];
    o.check(
        up.coeffs()[..6] == printed,
        "u_+^2 leading coefficients 1, 1, 1/2, 9/8, 2, 239/128",
    );
    let um = catalog::evaluate("u_minus_sq", 60).expect("u_-^2");
    o.check(um == up.reflect(), "u_-^2(p) = u_+^2(-p) to order 60");
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let report = gf::residual_suite(&SuiteConfig::default());
    for c in &report.checks {
        o.check(c.passed, format!("{}: {}", c.name, c.detail));
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let cat = catalog::standard();
    let mut bad = Vec::new();
    for e in cat.entries().filter(|e| e.counting) {
        let s = cat.evaluate(e.name, INTEGRALITY_ORDER).expect("entry evaluates");
        if !(s.is_integral() && s.is_nonnegative()) {
            bad.push(format!(
                "{} (first offending index {:?})",
                e.name,
                gf::first_non_count(&s)
            ));
        }
    }
    let (f1, f) = gf::gf_f1_convex(INTEGRALITY_ORDER).expect("convex series");
    for (name, s) in [("F1", f1), ("F", f)] {
        if !(s.is_integral() && s.is_nonnegative()) {
            bad.push(name.to_string());
        }
    }
    o.check(
        bad.is_empty(),
        format!("counting series integral and nonnegative to order {INTEGRALITY_ORDER}; offenders: {bad:?}"),
    );
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let tol = rat(XI_WIDTH.0, XI_WIDTH.1);
    match xi_enclosure(&tol) {
        Ok(e) => {
            o.check(e.width() <= tol, format!("enclosure width {:.3e}", f64_of(&e.width())));
            // The printed value carries 11 digits; the enclosure must lie
            // inside the interval those digits denote.
            let lo = rat(XI_PRINTED.0, XI_PRINTED.1);
            let hi = rat(XI_PRINTED.0 + 1, XI_PRINTED.1);
            o.check(
                e.lo >= lo && e.hi <= hi,
                format!(
                    "enclosure [{:.14}, {:.14}] within [0.44617150675, 0.44617150676]",
                    f64_of(&e.lo),
                    f64_of(&e.hi)
                ),
            );
            let g = growth_constant(Class::Baryiamond, 128).expect("growth").to_f64();
            let (g_lo, g_hi) = (1.0 / f64_of(&e.hi), 1.0 / f64_of(&e.lo));
            o.check(
                g_lo <= g && g <= g_hi,
                format!("baryiamond growth {g:.12} within 1/enclosure [{g_lo:.12}, {g_hi:.12}]"),
            );
        }
        Err(e) => o.check(false, e.to_string()),
    }
    let c = growth_constant(Class::ColumnConvex, 128).expect("growth").to_f64();
    o.check(
        (c - (3.0 + 17f64.sqrt()) / 2.0).abs() < 1e-14 && (c - CCP_GROWTH_PRINTED).abs() < 5e-11,
        format!("column-convex growth {c:.12}"),
    );
    let v = growth_constant(Class::Convex, 128).expect("growth").to_f64();
    o.check(v == 3.0, format!("convex growth {v}"));
    o
}

fn f64_of(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let n_max = 600;
    let t = Instant::now();
    let mut series = BTreeMap::new();
    for class in [Class::Baryiamond, Class::ColumnConvex, Class::Convex] {
        series.insert(
            class,
            asymptotics::exact_series(class, n_max + 2).expect("exact series"),
        );
    }
    let dt = t.elapsed();
    o.check(
        dt < SERIES_600_LIMIT,
        format!("series to {} terms in {dt:.1?} (limit {SERIES_600_LIMIT:?})", n_max + 2),
    );
    for (class, coeffs) in &series {
        let r = asymptotics::convergence_report_from(*class, coeffs, n_max).expect("report");
        let [_, quarter5, half, five6, full] = asymptotics::checkpoints(n_max);
        let row = |n| r.row(n).expect("checkpoint row");
        let (d_half, d_full) = (row(half).ratio_dev, row(full).ratio_dev);
        o.check(
            d_half <= RATIO_DEV_MAX && d_full < d_half,
            format!("{class}: ratio deviation {d_half:.3e} at n={half}, {d_full:.3e} at n={full}"),
        );
        let (p_early, p_late) = (row(quarter5).prefactor_ratio, row(five6).prefactor_ratio);
        o.check(
            (p_late - 1.0).abs() <= PREFACTOR_TOL && (p_late - 1.0).abs() < (p_early - 1.0).abs(),
            format!("{class}: prefactor ratio {p_late:.5} at n={five6}, {p_early:.5} at n={quarter5}"),
        );
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let mut total = 0usize;
    let mut geometry_ok = true;
    let mut inclusion_ok = true;
    for c in 1..=GEOMETRY_MAX_CELLS {
        for poly in enumerate_fixed(c, &limits()).expect("within cell budget") {
            total += 1;
            let (p, i) = (poly.perimeter(), poly.internal_edge_count());
            geometry_ok &= p == 3 * c - 2 * i && p % 2 == c % 2 && p <= c + 2 && p >= min_perimeter_bound(c);
            let f = classify(&poly);
            inclusion_ok &= (!f.convex || f.column_convex)
                && (!f.baryiamond || f.column_convex)
                && f.convex == (f.column_convex && f.row_convex)
                && f.bu_monotone == (f.u_monotone && f.b_monotone)
                && (!f.u_monotone || f.convex)
                && (!f.b_monotone || f.convex);
        }
    }
    o.check(
        geometry_ok,
        format!("perimeter identities and lower bound over {total} fixed polyiamonds"),
    );
    o.check(inclusion_ok, "element-wise class inclusions");

    let p = 14;
    let counts: BTreeMap<Class, Vec<u64>> = [
        Class::ColumnConvex,
        Class::Convex,
        Class::Baryiamond,
        Class::CpBu,
        Class::CpU,
        Class::CpB,
    ]
    .into_iter()
    .map(|c| (c, brute(c, p)))
    .collect();
    let le = |a: Class, b: Class| (0..=p).all(|n| counts[&a][n] <= counts[&b][n]);
    o.check(
        le(Class::Convex, Class::ColumnConvex)
            && le(Class::Baryiamond, Class::ColumnConvex)
            && le(Class::CpBu, Class::CpU)
            && le(Class::CpU, Class::Convex)
            && le(Class::CpBu, Class::CpB),
        "per-perimeter count inclusions to 14",
    );

    let mut shift_failures = Vec::new();
    for class in [Class::Baryiamond, Class::ColumnConvex, Class::CpU, Class::CpBu] {
        let table = count_by_first_column(class, p, &limits()).expect("enumeration");
        let zeros = vec![0; p + 1];
        for (&(t, k), v) in &table {
            let t1 = table.get(&(1, k)).unwrap_or(&zeros);
            for n in 4..=p {
                let expected = match t {
                    1 | 4 => t1[n],
                    2 => t1[n - 1],
                    _ if n < p => t1[n + 1],
                    _ => continue,
                };
                if v[n] != expected {
                    shift_failures.push(format!("{class} type {t} k={k} n={n}"));
                }
            }
        }
    }
    for (outer, inner) in [(Class::Convex, Class::CpU), (Class::CpB, Class::CpBu)] {
        let sum = |c: Class| {
            let mut out: BTreeMap<u8, Vec<u64>> = BTreeMap::new();
            for ((t, _), v) in count_by_first_column(c, p, &limits()).expect("enumeration") {
                let e = out.entry(t).or_insert_with(|| vec![0; p + 1]);
                e.iter_mut().zip(&v).for_each(|(a, b)| *a += b);
            }
            out
        };
        let (a, b) = (sum(outer), sum(inner));
        for n in 4..=p {
            let ok = a[&2][n] == b[&1][n - 1] && a[&4][n] == b[&1][n] && (n == p || a[&3][n] == a[&1][n + 1]);
            if !ok {
                shift_failures.push(format!("{outer} vs {inner} n={n}"));
            }
        }
    }
    o.check(
        shift_failures.is_empty(),
        format!("first-column shift identities to 14; failures: {shift_failures:?}"),
    );
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("column-convex counts, three-way", criterion_1),
        ("convex counts and assembly", criterion_2),
        ("type-1 convex counts and the twenty at perimeter 8", criterion_3),
        ("baryiamonds, three-way", criterion_4),
        ("kernel root expansion and reflection", criterion_5),
        ("exact residual suite", criterion_6),
        ("integrality and nonnegativity", criterion_7),
        ("xi enclosure and growth constants", criterion_8),
        ("asymptotic convergence", criterion_9),
        ("geometry, inclusions, shift identities", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status} {title} ({:.1?})", i + 1, start.elapsed());
        for note in &outcome.notes {
            println!("    {note}");
        }
        failed += usize::from(!outcome.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
