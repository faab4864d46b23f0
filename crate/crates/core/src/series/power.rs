use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::laurent::Laurent;
use super::SeriesError;

/// Univariate power series in `p`, truncated at order `N` (coefficients
/// `c[0] .. c[N-1]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order],
        }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I, order: usize) -> Self {
        let mut v: Vec<BigRational> = coeffs
            .into_iter()
            .map(|x| BigRational::from_integer(x.into()))
            .collect();
        v.resize(order, BigRational::zero());
        v.truncate(order);
        PowerSeries { coeffs: v }
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        PowerSeries {
            coeffs: coeffs.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `p^n`; zero past the truncation order is *not* implied,
    /// so this panics on `n >= order`.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs[..order.min(self.order())].to_vec(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Integer coefficients, if all coefficients are integers.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub(crate) fn to_laurent(&self) -> Laurent {
        Laurent::from_rationals(&self.coeffs, self.order() as i64)
    }

    pub(crate) fn from_laurent(l: &Laurent, order: usize) -> Result<Self, SeriesError> {
        Ok(PowerSeries {
            coeffs: l.to_rationals(order)?,
        })
    }

    fn check_orders(&self, other: &PowerSeries) -> Result<usize, SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self.order())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.check_orders(other)?;
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.check_orders(other)?;
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Multiplies by `p^k`, discarding terms at or beyond the order. Negative
    /// `k` requires the low coefficients to vanish.
    pub fn shift(&self, k: i64) -> Result<PowerSeries, SeriesError> {
        let n = self.order();
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = i as i64 + k;
            if j < 0 {
                if !c.is_zero() {
                    return Err(SeriesError::NegativePower(j));
                }
                continue;
            }
            if (j as usize) < n {
                out[j as usize] = c.clone();
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `p -> -p`.
    pub fn reflect(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }
}

/// Cauchy product truncated at the common order.
pub fn ps_mul(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let n = a.check_orders(b)?;
    let l = a.to_laurent().mul(&b.to_laurent(), n as i64);
    PowerSeries::from_laurent(&l, n)
}

/// Quotient `a / b` for a divisor with nonzero constant term.
pub fn ps_div(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let n = a.check_orders(b)?;
    if n == 0 {
        return Ok(a.clone());
    }
    if b.coeffs[0].is_zero() {
        return Err(SeriesError::NonUnitDivisor);
    }
    let l = a.to_laurent().div(&b.to_laurent(), n as i64)?;
    PowerSeries::from_laurent(&l, n)
}

/// Square root with `s[0] = +sqrt(a[0])`; `a[0]` must be a nonzero rational
/// square.
pub fn ps_sqrt(a: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let n = a.order();
    if n == 0 {
        return Ok(a.clone());
    }
    if a.coeffs[0].is_zero() || super::laurent::rational_sqrt(&a.coeffs[0]).is_none() {
        return Err(SeriesError::NonSquareConstant(a.coeffs[0].to_string()));
    }
    let l = a.to_laurent().sqrt()?;
    PowerSeries::from_laurent(&l, n)
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PowerSeries {
    /// `c0 + c1*p + c2*p^2 + ... + O(p^N)`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = fmt_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "p")?
                    } else {
                        write!(f, "p^{i}")?
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(p^{})", self.order())
    }
}

#[derive(Serialize)]
struct Term {
    n: usize,
    num: String,
    den: String,
}

impl Serialize for PowerSeries {
    /// Array of `{"n", "num", "den"}` objects, one per coefficient.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.order()))?;
        for (n, c) in self.coeffs.iter().enumerate() {
            seq.serialize_element(&Term {
                n,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })?;
        }
        seq.end()
    }
}

/// `"num/den"` rendering used by the CLI.
pub fn rational_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], n: usize) -> PowerSeries {
        PowerSeries::from_ints(c.iter().copied(), n)
    }

    #[test]
    fn products() {
        assert_eq!(ps_mul(&s(&[1, 1], 5), &s(&[1, 1], 5)).unwrap(), s(&[1, 2, 1], 5));
        assert_eq!(
            ps_mul(&s(&[1, 2, 3], 5), &PowerSeries::zero(5)).unwrap(),
            PowerSeries::zero(5)
        );
        let geo = s(&[1; 8], 8);
        assert_eq!(ps_mul(&s(&[1, -1], 8), &geo).unwrap(), s(&[1], 8));
        assert!(matches!(
            ps_mul(&s(&[1], 3), &s(&[1], 4)),
            Err(SeriesError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn quotients() {
        assert_eq!(ps_div(&s(&[1], 10), &s(&[1, -1], 10)).unwrap(), s(&[1; 10], 10));
        let num = s(&[0, 0, 0, 0, 1, 1, -1], 12);
        let den = s(&[1, 0, -3, -1, 1], 12);
        let q = ps_div(&num, &den).unwrap();
        assert_eq!(&q.coeffs()[4..8], s(&[1, 1, 2, 4], 4).coeffs());
        assert_eq!(ps_mul(&q, &den).unwrap(), num);
        assert_eq!(ps_div(&s(&[1], 4), &s(&[0, 1], 4)), Err(SeriesError::NonUnitDivisor));
    }

    #[test]
    fn roots() {
        let a = s(&[1, 0, -4], 10);
        assert_eq!(ps_sqrt(&a).unwrap(), s(&[1, 0, -2, 0, -2, 0, -4, 0, -10], 10));
        let m = ps_sqrt(&s(&[1, -2, -3], 6)).unwrap();
        assert_eq!(m, s(&[1, -1, -2, -2, -4, -8], 6));
        assert_eq!(ps_sqrt(&s(&[1], 6)).unwrap(), s(&[1], 6));
        assert!(ps_sqrt(&s(&[2, 1], 6)).is_err());
    }

    #[test]
    fn display_and_json() {
        let a = PowerSeries::new(vec![
            BigRational::zero(),
            BigRational::one(),
            BigRational::new((-1).into(), 2.into()),
        ]);
        assert_eq!(a.to_string(), "p - 1/2*p^2 + O(p^3)");
        let j = serde_json::to_string(&a).unwrap();
        assert!(j.starts_with(r#"[{"n":0,"num":"0","den":"1"}"#));
        assert!(j.contains(r#"{"n":2,"num":"-1","den":"2"}"#));
    }
}
