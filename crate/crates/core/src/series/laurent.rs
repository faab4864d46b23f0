//! Truncated Laurent series with a shared denominator.
//!
//! Value: `sum_i num[i] / den * p^(val + i)`, known modulo `p^prec`.
//! All products are computed on integer numerators; rational arithmetic only
//! appears once per coefficient in the recurrences for inverse and square root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::SeriesError;

/// Work threshold above which convolutions run in parallel.
const PAR_WORK: usize = 4096;

#[derive(Debug, Clone)]
pub(crate) struct Laurent {
    pub val: i64,
    pub prec: i64,
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a == b {
        return a.clone();
    }
    a.lcm(b)
}

/// `sum_{(i, x) in sparse, i <= k} x * dense[k - i]`.
fn sparse_dot(sparse: &[(usize, &BigInt)], dense: &[BigInt], k: usize, skip_first: bool) -> BigInt {
    let mut acc = BigInt::zero();
    for &(i, x) in sparse {
        if i > k {
            break;
        }
        if skip_first && i == 0 {
            continue;
        }
        let y = &dense[k - i];
        if !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn nonzeros(v: &[BigInt]) -> Vec<(usize, &BigInt)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

impl Laurent {
    pub fn zero(prec: i64) -> Self {
        Laurent {
            val: prec,
            prec,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn constant(c: &BigRational, prec: i64) -> Self {
        Self::monomial(c, 0, prec)
    }

    pub fn monomial(c: &BigRational, exp: i64, prec: i64) -> Self {
        if c.is_zero() || exp >= prec {
            return Self::zero(prec);
        }
        Laurent {
            val: exp,
            prec,
            num: vec![c.numer().clone()],
            den: c.denom().clone(),
        }
        .pad()
    }

    /// From coefficients `c[0] + c[1] p + ...` known modulo `p^prec`.
    pub fn from_rationals(c: &[BigRational], prec: i64) -> Self {
        let n = (prec.max(0) as usize).min(c.len());
        let mut den = BigInt::one();
        for x in &c[..n] {
            if !x.denom().is_one() {
                den = lcm(&den, x.denom());
            }
        }
        let num = c[..n].iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Laurent { val: 0, prec, num, den }.pad().normalized()
    }

    fn len(&self) -> usize {
        (self.prec - self.val).max(0) as usize
    }

    /// Extends `num` with zeros up to the known precision.
    fn pad(mut self) -> Self {
        let n = self.len();
        self.num.resize(n, BigInt::zero());
        self.num.truncate(n);
        self
    }

    /// Strips leading zero coefficients.
    pub fn normalized(mut self) -> Self {
        let lead = self.num.iter().position(|x| !x.is_zero());
        match lead {
            None => Self::zero(self.prec),
            Some(0) => self,
            Some(i) => {
                self.num.drain(..i);
                self.val += i as i64;
                self
            }
        }
    }

    /// Divides numerators and denominator by their common gcd.
    fn reduced(mut self) -> Self {
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        if exp < self.val {
            return BigRational::zero();
        }
        debug_assert!(exp < self.prec);
        BigRational::new(self.num[(exp - self.val) as usize].clone(), self.den.clone())
    }

    pub fn leading(&self) -> Option<BigRational> {
        self.num.first().map(|x| BigRational::new(x.clone(), self.den.clone()))
    }

    /// Coefficients of `p^0 .. p^(n-1)`; fails if precision is insufficient or
    /// a negative power is present.
    pub fn to_rationals(&self, n: usize) -> Result<Vec<BigRational>, SeriesError> {
        if self.prec < n as i64 {
            return Err(SeriesError::PrecisionLoss {
                needed: n,
                available: self.prec.max(0) as usize,
            });
        }
        if !self.is_zero() && self.val < 0 {
            return Err(SeriesError::NegativePower(self.val));
        }
        Ok((0..n as i64).map(|e| self.coeff(e)).collect())
    }

    fn rescaled(&self, den: &BigInt) -> Vec<BigInt> {
        if &self.den == den {
            return self.num.clone();
        }
        let f = den / &self.den;
        self.num.iter().map(|x| x * &f).collect()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return other.with_prec(prec);
        }
        if other.is_zero() {
            return self.with_prec(prec);
        }
        let val = self.val.min(other.val);
        if val >= prec {
            return Self::zero(prec);
        }
        let den = lcm(&self.den, &other.den);
        let n = (prec - val) as usize;
        let mut num = vec![BigInt::zero(); n];
        for src in [self, other] {
            let scaled = src.rescaled(&den);
            let off = (src.val - val) as usize;
            for (i, x) in scaled.into_iter().enumerate() {
                if off + i >= n {
                    break;
                }
                num[off + i] += x;
            }
        }
        Laurent { val, prec, num, den }.normalized().reduced()
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            val: self.val,
            prec: self.prec,
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    /// Lowers the known precision.
    pub fn with_prec(&self, prec: i64) -> Laurent {
        if prec >= self.prec {
            return self.clone();
        }
        if self.val >= prec {
            return Self::zero(prec);
        }
        let mut out = self.clone();
        out.prec = prec;
        out.num.truncate(out.len());
        out
    }

    /// Substitutes `p -> -p`.
    pub fn reflect(&self) -> Laurent {
        let num = self
            .num
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if (self.val + i as i64).rem_euclid(2) == 1 {
                    -x
                } else {
                    x.clone()
                }
            })
            .collect();
        Laurent {
            val: self.val,
            prec: self.prec,
            num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Laurent, cap: i64) -> Laurent {
        if self.is_zero() || other.is_zero() {
            let prec = (self.val + other.prec).min(other.val + self.prec).min(cap);
            return Self::zero(prec);
        }
        let val = self.val + other.val;
        let prec = (self.val + other.prec).min(other.val + self.prec).min(cap);
        if val >= prec {
            return Self::zero(prec);
        }
        let n = (prec - val) as usize;
        let (a, b) = (&self.num, &other.num);
        let (na, nb) = (nonzeros(a), nonzeros(b));
        let (sparse, dense) = if na.len() <= nb.len() { (na, b) } else { (nb, a) };
        let work = sparse.len() * n;
        let coef = |k: usize| -> BigInt {
            let mut acc = BigInt::zero();
            for &(i, x) in &sparse {
                if i > k {
                    break;
                }
                if let Some(y) = dense.get(k - i) {
                    if !y.is_zero() {
                        acc += x * y;
                    }
                }
            }
            acc
        };
        let num: Vec<BigInt> = if work > PAR_WORK {
            (0..n).into_par_iter().map(coef).collect()
        } else {
            (0..n).map(coef).collect()
        };
        Laurent {
            val,
            prec,
            num,
            den: &self.den * &other.den,
        }
        .normalized()
        .reduced()
    }

    /// Appends `r` to a running common-denominator coefficient list.
    fn push_running(num: &mut Vec<BigInt>, den: &mut BigInt, r: BigRational) {
        let (n, d) = r.into();
        if (&*den % &d).is_zero() {
            num.push(n * (&*den / d));
            return;
        }
        let new_den = lcm(den, &d);
        let f = &new_den / &*den;
        let scale = |x: &mut BigInt| *x = &*x * &f;
        if num.len() > 256 {
            num.par_iter_mut().for_each(scale);
        } else {
            num.iter_mut().for_each(scale);
        }
        num.push(n * (&new_den / d));
        *den = new_den;
    }

    pub fn inv(&self) -> Result<Laurent, SeriesError> {
        let b = self.clone().normalized();
        if b.is_zero() {
            return Err(SeriesError::VanishingDivisor);
        }
        let n = b.len();
        let b0 = b.num[0].clone();
        let sparse = nonzeros(&b.num);
        let mut q: Vec<BigInt> = Vec::with_capacity(n);
        let mut dq = BigInt::one();
        Self::push_running(&mut q, &mut dq, BigRational::new(b.den.clone(), b0.clone()));
        for k in 1..n {
            let s = if sparse.len() * k > PAR_WORK {
                sparse
                    .par_iter()
                    .filter(|(i, _)| *i >= 1 && *i <= k)
                    .map(|&(i, x)| x * &q[k - i])
                    .reduce(BigInt::zero, |a, b| a + b)
            } else {
                sparse_dot(&sparse, &q, k, true)
            };
            // q_k = -(sum_j b_j q_{k-j}) / b_0, with b_j = B_j/db, q = Q/dq
            let r = BigRational::new(-s, &dq * &b0);
            Self::push_running(&mut q, &mut dq, r);
        }
        Ok(Laurent {
            val: -b.val,
            prec: -b.val + n as i64,
            num: q,
            den: dq,
        }
        .reduced())
    }

    pub fn div(&self, other: &Laurent, cap: i64) -> Result<Laurent, SeriesError> {
        Ok(self.mul(&other.inv()?, cap))
    }

    /// Square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Laurent, SeriesError> {
        let a = self.clone().normalized();
        if a.is_zero() {
            return Err(SeriesError::VanishingDivisor);
        }
        if a.val.rem_euclid(2) != 0 {
            return Err(SeriesError::OddValuation(a.val));
        }
        let a0 = a.leading().unwrap();
        let root = rational_sqrt(&a0).ok_or_else(|| SeriesError::NonSquareConstant(a0.to_string()))?;
        let n = a.len();
        let mut s: Vec<BigInt> = Vec::with_capacity(n);
        let mut ds = BigInt::one();
        Self::push_running(&mut s, &mut ds, root.clone());
        let two_root = &root * BigInt::from(2);
        for k in 1..n {
            // t = sum_{j=1}^{k-1} S_j S_{k-j}, symmetric
            let half = (k - 1) / 2;
            let pair = |j: usize| &s[j] * &s[k - j];
            let mut t = if half > 64 {
                (1..=half).into_par_iter().map(pair).reduce(BigInt::zero, |a, b| a + b)
            } else {
                (1..=half).map(pair).fold(BigInt::zero(), |a, b| a + b)
            };
            t *= 2;
            if k >= 2 && k % 2 == 0 {
                t += &s[k / 2] * &s[k / 2];
            }
            let ak = BigRational::new(a.num[k].clone(), a.den.clone());
            let r = (ak - BigRational::new(t, &ds * &ds)) / &two_root;
            Self::push_running(&mut s, &mut ds, r);
        }
        Ok(Laurent {
            val: a.val / 2,
            prec: a.val / 2 + n as i64,
            num: s,
            den: ds,
        }
        .reduced())
    }

    pub fn powi(&self, k: i64, cap: i64) -> Result<Laurent, SeriesError> {
        if k < 0 {
            return self.inv()?.powi(-k, cap);
        }
        let mut result = Laurent::constant(&BigRational::one(), cap);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, cap);
            }
        }
        Ok(result)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub(crate) fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() || x.is_zero() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}
