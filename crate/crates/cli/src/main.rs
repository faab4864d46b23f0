//! `polyia` — counts, series, verification suites and asymptotic reports.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyia::asymptotics::{self, ConvergenceReport};
use polyia::enumerate::{self, Class, Limits, Query};
use polyia::gf::{self, catalog, SuiteConfig};
use polyia::series::rational_string;

#[derive(Parser, Debug)]
#[command(name = "polyia", version, about = "Exact enumeration of polyiamonds by perimeter")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for enumeration (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Omit wall-clock timing from JSON output.
    #[arg(long, global = true)]
    no_meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Residuals,
    Oracle,
    Asymptotics,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force counts by perimeter.
    Count {
        #[arg(long)]
        class: String,
        #[arg(long = "max-per")]
        max_per: usize,
        /// Only objects whose first column has this type (1-4).
        #[arg(long)]
        first_type: Option<u8>,
        /// Only objects whose first column has this many up-cells.
        #[arg(long)]
        first_k: Option<u32>,
    },
    /// Expand a named generating function (u = 1 for bivariate entries).
    Series {
        #[arg(long)]
        gf: String,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Univariate order for the residual suite.
        #[arg(long, default_value_t = 60)]
        order: usize,
        /// Perimeter depth for brute-force comparisons (baryiamonds use depth + 2).
        #[arg(long, default_value_t = 14)]
        depth: usize,
        /// Number of exact terms for the asymptotic suite.
        #[arg(long, default_value_t = 600)]
        terms: usize,
    },
    /// Evaluate an asymptotic formula and its convergence report.
    Asym {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        /// Exact terms used for the convergence report.
        #[arg(long, default_value_t = 600)]
        terms: usize,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn limits(threads: Option<usize>) -> Result<Limits, Failure> {
    let mut l = Limits {
        threads,
        ..Limits::default()
    };
    if let Ok(v) = std::env::var("POLYIA_MAX_CELLS") {
        l.max_cells = v
            .parse()
            .map_err(|_| usage(format!("POLYIA_MAX_CELLS must be an integer, got {v:?}")))?;
    }
    Ok(l)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn count(
    cli: &Cli,
    class: &str,
    max_per: usize,
    first_type: Option<u8>,
    first_k: Option<u32>,
) -> Result<String, Failure> {
    let class: Class = class.parse().map_err(usage)?;
    let mut q = Query::new(class, max_per);
    q.first_type = first_type;
    q.first_k = first_k;
    if first_type.is_some_and(|t| !(1..=4).contains(&t)) {
        return Err(usage("--first-type must be between 1 and 4"));
    }
    let table = enumerate::count_by_perimeter(&q, &limits(cli.threads)?).map_err(usage)?;
    Ok(match cli.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["class", "perimeter", "count"])
                .map_err(|e| Failure::Io(e.into()))?;
            for (c, n, k) in table.rows() {
                w.write_record([c, n.to_string(), k])
                    .map_err(|e| Failure::Io(e.into()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.into_error()))?).expect("CSV is UTF-8")
        }
        Format::Json => json_text(&table.to_json(!cli.no_meta)),
        Format::Text => {
            let mut s = String::new();
            for (c, n, k) in table.rows() {
                s.push_str(&format!("{c}\t{n}\t{k}\n"));
            }
            if table.meta.partial {
                s.push_str("# partial: cell budget capped\n");
            }
            s
        }
    })
}

fn series(cli: &Cli, name: &str, order: usize) -> Result<String, Failure> {
    catalog::standard().get(name).map_err(usage)?;
    let s = catalog::evaluate(name, order).map_err(usage)?;
    Ok(match cli.format {
        Format::Json => {
            let mut coeffs = serde_json::to_value(&s).expect("series serializes");
            for (entry, c) in coeffs
                .as_array_mut()
                .expect("series is an array")
                .iter_mut()
                .zip(s.coeffs())
            {
                entry["value"] = rational_string(c).into();
            }
            json_text(&json!({ "gf": name, "order": order, "coefficients": coeffs }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "coefficient"])
                .map_err(|e| Failure::Io(e.into()))?;
            for (n, c) in s.coeffs().iter().enumerate() {
                w.write_record([n.to_string(), rational_string(c)])
                    .map_err(|e| Failure::Io(e.into()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.into_error()))?).expect("CSV is UTF-8")
        }
        Format::Text => format!("{s}\n"),
    })
}

struct Line {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

fn residual_lines(order: usize) -> Vec<Line> {
    let cfg = SuiteConfig {
        order,
        ..SuiteConfig::default()
    };
    gf::residual_suite(&cfg)
        .checks
        .into_iter()
        .map(|c| Line {
            suite: "residuals",
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        })
        .collect()
}

fn oracle_lines(depth: usize, l: &Limits) -> Vec<Line> {
    let mut out = Vec::new();
    for class in [
        Class::Baryiamond,
        Class::ColumnConvex,
        Class::Convex,
        Class::CpBu,
        Class::CpU,
        Class::CpB,
    ] {
        let d = if class == Class::Baryiamond { depth + 2 } else { depth };
        let d = d.min(l.max_perimeter);
        let (passed, detail) = match enumerate::cross_check(class, d, l) {
            Ok(r) => (r.all_equal(), format!("perimeter <= {d}: {r}")),
            Err(e) => (false, e.to_string()),
        };
        out.push(Line {
            suite: "oracle",
            name: class.label().to_string(),
            passed,
            detail,
        });
    }
    out
}

/// Ratio deviation at most 2% at `n_max/2` and shrinking; prefactor within
/// 5% of 1 at `5 n_max/6` and shrinking.
fn asymptotic_lines(report: &ConvergenceReport) -> Vec<Line> {
    let cp = asymptotics::checkpoints(report.n_max);
    let label = report.class.label();
    let mut out = Vec::new();
    let half = report.row(cp[2]);
    let ratio_ok = half.is_some_and(|r| r.ratio_dev <= 0.02) && report.ratio_improving;
    out.push(Line {
        suite: "asymptotics",
        name: format!("{label}_ratio"),
        passed: ratio_ok,
        detail: format!(
            "ratio deviation {:.3e} at n={} (limit 2e-2), shrinking: {}",
            half.map_or(f64::NAN, |r| r.ratio_dev),
            cp[2],
            report.ratio_improving
        ),
    });
    let deep = report.row(cp[3]);
    let pre_ok = deep.is_some_and(|r| (r.prefactor_ratio - 1.0).abs() <= 0.05) && report.prefactor_improving;
    out.push(Line {
        suite: "asymptotics",
        name: format!("{label}_prefactor"),
        passed: pre_ok,
        detail: format!(
            "a_n / estimate = {:.5} at n={} (limit 1 +- 0.05), shrinking: {}",
            deep.map_or(f64::NAN, |r| r.prefactor_ratio),
            cp[3],
            report.prefactor_improving
        ),
    });
    out
}

fn verify(cli: &Cli, suite: Suite, order: usize, depth: usize, terms: usize) -> Result<(String, bool), Failure> {
    let l = limits(cli.threads)?;
    if depth > l.max_perimeter.saturating_sub(2) {
        return Err(usage(format!("--depth must be at most {}", l.max_perimeter - 2)));
    }
    if terms < 24 {
        return Err(usage("--terms must be at least 24"));
    }
    let mut lines = Vec::new();
    if matches!(suite, Suite::Residuals | Suite::All) {
        lines.extend(residual_lines(order));
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        lines.extend(oracle_lines(depth, &l));
    }
    if matches!(suite, Suite::Asymptotics | Suite::All) {
        for class in [Class::Baryiamond, Class::ColumnConvex, Class::Convex] {
            match asymptotics::convergence_report(class, terms) {
                Ok(r) => lines.extend(asymptotic_lines(&r)),
                Err(e) => lines.push(Line {
                    suite: "asymptotics",
                    name: class.label().to_string(),
                    passed: false,
                    detail: e.to_string(),
                }),
            }
        }
    }
    let all = lines.iter().all(|l| l.passed);
    let text = match cli.format {
        Format::Json => {
            let checks: Vec<Value> = lines
                .iter()
                .map(|l| json!({ "suite": l.suite, "name": l.name, "passed": l.passed, "detail": l.detail }))
                .collect();
            json_text(&json!({ "passed": all, "checks": checks }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "check", "passed", "detail"])
                .map_err(|e| Failure::Io(e.into()))?;
            for l in &lines {
                w.write_record([l.suite, &l.name, if l.passed { "true" } else { "false" }, &l.detail])
                    .map_err(|e| Failure::Io(e.into()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.into_error()))?).expect("CSV is UTF-8")
        }
        Format::Text => {
            let mut s = String::new();
            for l in &lines {
                s.push_str(&format!(
                    "{} {}/{}: {}\n",
                    if l.passed { "PASS" } else { "FAIL" },
                    l.suite,
                    l.name,
                    l.detail
                ));
            }
            s.push_str(&format!(
                "{}\n",
                if all { "all checks passed" } else { "some checks failed" }
            ));
            s
        }
    };
    Ok((text, all))
}

fn asym(cli: &Cli, class: &str, n: usize, terms: usize) -> Result<String, Failure> {
    let class: Class = class.parse().map_err(usage)?;
    if !matches!(class, Class::Baryiamond | Class::ColumnConvex | Class::Convex) {
        return Err(usage(format!("no asymptotic formula for class {class}")));
    }
    if n < 3 {
        return Err(usage("--n must be at least 3"));
    }
    if terms < 24 {
        return Err(usage("--terms must be at least 24"));
    }
    let est = asymptotics::asym_value(class, n).map_err(usage)?;
    let coeffs = asymptotics::exact_series(class, terms.max(n) + 2).map_err(usage)?;
    let report = asymptotics::convergence_report_from(class, &coeffs, terms).map_err(usage)?;
    let exact = coeffs[n].to_string();
    Ok(match cli.format {
        Format::Json => json_text(&json!({
            "estimate": est,
            "exact_count": exact,
            "report": report,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "exact_count", "ratio", "ratio_dev", "prefactor_ratio"])
                .map_err(|e| Failure::Io(e.into()))?;
            for r in &report.rows {
                w.write_record([
                    r.n.to_string(),
                    r.exact_count.clone(),
                    r.ratio.to_string(),
                    r.ratio_dev.to_string(),
                    r.prefactor_ratio.to_string(),
                ])
                .map_err(|e| Failure::Io(e.into()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.into_error()))?).expect("CSV is UTF-8")
        }
        Format::Text => {
            let mut s = format!(
                "class {class}\nn {n}\nestimate {}\nexact {exact}\ngrowth {}\nprefactor {}\n",
                est.estimate, est.growth, est.prefactor
            );
            for r in &report.rows {
                s.push_str(&format!(
                    "n={} ratio={:.8} ratio_dev={:.3e} prefactor_ratio={:.6}\n",
                    r.n, r.ratio, r.ratio_dev, r.prefactor_ratio
                ));
            }
            s
        }
    })
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let (text, ok) = match &cli.command {
        Command::Count {
            class,
            max_per,
            first_type,
            first_k,
        } => (count(cli, class, *max_per, *first_type, *first_k)?, true),
        Command::Series { gf, order } => (series(cli, gf, *order)?, true),
        Command::Verify {
            suite,
            order,
            depth,
            terms,
        } => verify(cli, *suite, *order, *depth, *terms)?,
        Command::Asym { class, n, terms } => (asym(cli, class, *n, *terms)?, true),
    };
    match &cli.output {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
