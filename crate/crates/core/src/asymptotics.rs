//! Growth constants, the leading-order asymptotic formulas, and diagnostics
//! comparing them with exact coefficients.
//!
//! Real numbers are carried as binary fixed point ([`Fixed`]) over big
//! integers; the only irrational inputs are square roots, `pi` (Machin's
//! formula) and the quintic root `xi`, isolated by exact dyadic bisection.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::Class;
use crate::gf::{self, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymError {
    #[error("polynomial does not change sign on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("no asymptotic formula for class {0}")]
    UnknownClass(Class),
    #[error("n must be at least 3, got {0}")]
    SmallN(usize),
    #[error("series too short: need {needed} terms, have {have}")]
    SeriesTooShort { needed: usize, have: usize },
    #[error("non-integral or non-positive coefficient at p^{0}")]
    BadCoefficient(usize),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// `m / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    m: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn from_int(x: impl Into<BigInt>, bits: u32) -> Self {
        Fixed {
            m: x.into() << bits,
            bits,
        }
    }

    /// Nearest-below fixed-point value of a rational.
    pub fn from_ratio(r: &BigRational, bits: u32) -> Self {
        Fixed {
            m: (r.numer() << bits).div_floor(r.denom()),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed {
            m: &self.m + &o.m,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed {
            m: &self.m - &o.m,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed {
            m: (&self.m * &o.m) >> self.bits,
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Fixed {
        Fixed {
            m: &self.m * k.into(),
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        Fixed {
            m: (&self.m << self.bits).div_floor(&o.m),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Fixed {
        Fixed {
            m: self.m.div_floor(&k.into()),
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Fixed {
        assert!(!self.m.is_negative(), "square root of a negative number");
        Fixed {
            m: (&self.m << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    pub fn powi(&self, mut k: u64) -> Fixed {
        let mut base = self.clone();
        let mut acc = Fixed::from_int(1, self.bits);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn recip(&self) -> Fixed {
        Fixed::from_int(1, self.bits).div(self)
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.m.bits() as i64;
        let shift = (b - 60).max(0);
        let top = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((shift - self.bits as i64) as i32)
    }

    /// Scientific notation with `digits` significant digits, truncated.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.m.is_zero() {
            return "0".into();
        }
        let neg = self.m.is_negative();
        let a = self.m.abs();
        // a / 2^bits = s * 10^(e - digits + 1) with s having `digits` digits
        let approx = (a.bits() as f64 - self.bits as f64) * std::f64::consts::LOG10_2;
        let mut e = approx.floor() as i64;
        let scaled = |e: i64| -> BigInt {
            let k = digits as i64 - 1 - e;
            let (num, den) = if k >= 0 {
                (&a * BigInt::from(10).pow(k as u32), BigInt::one() << self.bits)
            } else {
                (
                    a.clone(),
                    (BigInt::one() << self.bits) * BigInt::from(10).pow((-k) as u32),
                )
            };
            num / den
        };
        let mut s = scaled(e);
        let lo = BigInt::from(10).pow(digits as u32 - 1);
        let hi = BigInt::from(10).pow(digits as u32);
        while s >= hi {
            e += 1;
            s = scaled(e);
        }
        while s < lo {
            e -= 1;
            s = scaled(e);
        }
        let ds = s.to_string();
        format!("{}{}.{}e{}", if neg { "-" } else { "" }, &ds[..1], &ds[1..], e)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(30))
    }
}

/// `atan(1/x)` by its alternating series.
fn atan_inv(x: u64, bits: u32) -> Fixed {
    let x2 = BigInt::from(x * x);
    let mut term = (BigInt::one() << bits) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    Fixed { m: sum, bits }
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(bits: u32) -> Fixed {
    let g = bits + 16;
    let v = atan_inv(5, g).mul_int(16).sub(&atan_inv(239, g).mul_int(4));
    Fixed { m: v.m >> 16, bits }
}

/// Bracketing interval of a real root of an integer polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootEnclosure {
    /// Coefficients, lowest degree first.
    #[serde(serialize_with = "ser_bigints")]
    pub poly: Vec<BigInt>,
    #[serde(serialize_with = "ser_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: BigRational,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_rational<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::series::rational_string(v))
}

impl RootEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Exact value of an integer polynomial at a rational point.
pub fn poly_eval(poly: &[BigInt], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

/// Bisection with exact rational sign evaluation until the width is at most
/// `tol`.
pub fn isolate_root(
    poly: &[BigInt],
    lo: &BigRational,
    hi: &BigRational,
    tol: &BigRational,
) -> Result<RootEnclosure, AsymError> {
    if !tol.is_positive() {
        return Err(AsymError::BadTolerance);
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let sl = poly_eval(poly, &lo).signum();
    let sh = poly_eval(poly, &hi).signum();
    if sl.is_zero() {
        return Ok(RootEnclosure {
            poly: poly.to_vec(),
            lo: lo.clone(),
            hi: lo,
        });
    }
    if sh.is_zero() {
        return Ok(RootEnclosure {
            poly: poly.to_vec(),
            lo: hi.clone(),
            hi,
        });
    }
    if sl == sh {
        return Err(AsymError::NoSignChange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        let sm = poly_eval(poly, &mid).signum();
        if sm.is_zero() {
            return Ok(RootEnclosure {
                poly: poly.to_vec(),
                lo: mid.clone(),
                hi: mid,
            });
        }
        if sm == sl {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootEnclosure {
        poly: poly.to_vec(),
        lo,
        hi,
    })
}

/// `1 - p - 2p^2 - 2p^3 + p^4 - p^5`.
pub fn xi_polynomial() -> Vec<BigInt> {
    [1, -1, -2, -2, 1, -1].iter().map(|&c| BigInt::from(c)).collect()
}

/// Enclosure of `xi`, the smallest positive root of [`xi_polynomial`].
pub fn xi_enclosure(tol: &BigRational) -> Result<RootEnclosure, AsymError> {
    isolate_root(&xi_polynomial(), &BigRational::zero(), &BigRational::one(), tol)
}

fn xi(bits: u32) -> Fixed {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let e = xi_enclosure(&tol).expect("xi polynomial changes sign on [0, 1]");
    Fixed::from_ratio(&e.midpoint(), bits)
}

fn check_class(class: Class) -> Result<(), AsymError> {
    match class {
        Class::Baryiamond | Class::ColumnConvex | Class::Convex => Ok(()),
        c => Err(AsymError::UnknownClass(c)),
    }
}

/// Exponential growth constant of a class.
pub fn growth_constant(class: Class, bits: u32) -> Result<Fixed, AsymError> {
    check_class(class)?;
    Ok(match class {
        Class::Baryiamond => xi(bits).recip(),
        Class::ColumnConvex => Fixed::from_int(17, bits)
            .sqrt()
            .add(&Fixed::from_int(3, bits))
            .div_int(2),
        _ => Fixed::from_int(3, bits),
    })
}

/// Growth constants of the three classes to 40 significant digits.
pub fn growth_constants() -> Vec<(Class, String)> {
    [Class::Baryiamond, Class::ColumnConvex, Class::Convex]
        .into_iter()
        .map(|c| (c, growth_constant(c, 256).expect("known class").to_sci(40)))
        .collect()
}

/// The printed asymptotic formula at working precision `bits`.
fn asym_at(class: Class, n: usize, bits: u32) -> Fixed {
    let f = |x: i64| Fixed::from_int(x, bits);
    let n3 = f(n as i64).powi(3);
    match class {
        Class::Baryiamond => {
            // (xi+1)^2 sqrt(xi^4+xi^3-2xi+1) / (2 sqrt(pi n^3)) * xi^(-n-2)
            let x = xi(bits);
            let inner = x.powi(4).add(&x.powi(3)).sub(&x.mul_int(2)).add(&f(1));
            let pre = x
                .add(&f(1))
                .powi(2)
                .mul(&inner.sqrt())
                .div(&pi(bits).mul(&n3).sqrt().mul_int(2));
            pre.mul(&x.recip().powi(n as u64 + 2))
        }
        Class::ColumnConvex => {
            let s17 = f(17).sqrt();
            let a = s17.mul_int(17997809).add(&f(27 * 13 * 175463));
            let b = s17.mul_int(95).sub(&f(119)).sqrt();
            let den = f(128 * 43 * 43 * 89 * 89).mul(&pi(bits).mul(&n3).mul_int(6).sqrt());
            let g = s17.add(&f(3)).div_int(2);
            a.mul(&b).div(&den).mul(&g.powi(n as u64 - 1))
        }
        _ => {
            let den = f(441).mul(&pi(bits).mul(&n3).mul_int(3).sqrt());
            f(1280).div(&den).mul(&f(3).powi(n as u64))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub class: Class,
    pub n: usize,
    /// Decimal value, 40 significant digits.
    pub estimate: String,
    pub growth: String,
    /// Estimate divided by `growth^n`.
    pub prefactor: String,
    #[serde(skip)]
    pub value: Fixed,
}

/// Evaluates the asymptotic formula at `n`, doubling the working precision
/// until 40 significant digits agree between consecutive precisions.
pub fn asym_value(class: Class, n: usize) -> Result<AsymptoticEstimate, AsymError> {
    check_class(class)?;
    if n < 3 {
        return Err(AsymError::SmallN(n));
    }
    let mut bits = 192;
    let mut prev = asym_at(class, n, bits).to_sci(42);
    loop {
        bits *= 2;
        let v = asym_at(class, n, bits);
        let s = v.to_sci(42);
        if s == prev {
            let g = growth_constant(class, bits)?;
            return Ok(AsymptoticEstimate {
                class,
                n,
                estimate: v.to_sci(40),
                growth: g.to_sci(40),
                prefactor: v.div(&g.powi(n as u64)).to_sci(40),
                value: v,
            });
        }
        prev = s;
    }
}

/// Exact counting series of a class with `terms` coefficients.
pub fn exact_series(class: Class, terms: usize) -> Result<Vec<BigInt>, AsymError> {
    check_class(class)?;
    let s = match class {
        Class::Baryiamond => gf::gf_baryiamond(terms)?,
        Class::ColumnConvex => gf::gf_ccp(terms)?,
        _ => gf::catalog::evaluate("convex_F", terms)?,
    };
    gf::integer_coefficients(&s).map_err(AsymError::BadCoefficient)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub exact_count: String,
    /// `a_{n+1} / a_n`.
    pub ratio: f64,
    /// `|ratio - g| / g`.
    pub ratio_dev: f64,
    /// `a_n / asym_value(n)`.
    pub prefactor_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub class: Class,
    pub n_max: usize,
    pub growth: String,
    pub rows: Vec<ReportRow>,
    /// Ratio deviation at `n_max` is below the one at `n_max/2`.
    pub ratio_improving: bool,
    /// Prefactor deviation at `5 n_max/6` is below the one at `5 n_max/12`.
    pub prefactor_improving: bool,
}

impl ConvergenceReport {
    pub fn row(&self, n: usize) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Checkpoints `n_max/4, 5n_max/12, n_max/2, 5n_max/6, n_max`.
pub fn checkpoints(n_max: usize) -> [usize; 5] {
    [n_max / 4, 5 * n_max / 12, n_max / 2, 5 * n_max / 6, n_max]
}

/// Diagnostics from a precomputed exact series (at least `n_max + 2` terms).
pub fn convergence_report_from(class: Class, coeffs: &[BigInt], n_max: usize) -> Result<ConvergenceReport, AsymError> {
    check_class(class)?;
    if coeffs.len() < n_max + 2 {
        return Err(AsymError::SeriesTooShort {
            needed: n_max + 2,
            have: coeffs.len(),
        });
    }
    let bits = 256;
    let g = growth_constant(class, bits)?;
    let gf64 = g.to_f64();
    let mut rows = Vec::new();
    for n in checkpoints(n_max) {
        if n < 3 {
            continue;
        }
        let (a, b) = (&coeffs[n], &coeffs[n + 1]);
        if a.sign() != Sign::Plus {
            return Err(AsymError::BadCoefficient(n));
        }
        let ratio = Fixed::from_int(b.clone(), bits)
            .div(&Fixed::from_int(a.clone(), bits))
            .to_f64();
        let est = asym_at(class, n, bits);
        let pre = Fixed::from_int(a.clone(), bits).div(&est).to_f64();
        rows.push(ReportRow {
            n,
            exact_count: a.to_string(),
            ratio,
            ratio_dev: (ratio - gf64).abs() / gf64,
            prefactor_ratio: pre,
        });
    }
    let dev = |n: usize, f: fn(&ReportRow) -> f64| rows.iter().find(|r| r.n == n).map(f);
    let cp = checkpoints(n_max);
    let better = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(x), Some(y)) => x.partial_cmp(&y) == Some(Ordering::Less),
        _ => false,
    };
    let ratio_improving = better(dev(cp[4], |r| r.ratio_dev), dev(cp[2], |r| r.ratio_dev));
    let pre_dev = |r: &ReportRow| (r.prefactor_ratio - 1.0).abs();
    let prefactor_improving = better(dev(cp[3], pre_dev), dev(cp[1], pre_dev));
    Ok(ConvergenceReport {
        class,
        n_max,
        growth: g.to_sci(30),
        rows,
        ratio_improving,
        prefactor_improving,
    })
}

/// Generates the exact series to `n_max + 2` terms and reports convergence.
pub fn convergence_report(class: Class, n_max: usize) -> Result<ConvergenceReport, AsymError> {
    let coeffs = exact_series(class, n_max + 2)?;
    convergence_report_from(class, &coeffs, n_max)
}
