use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::rational_sqrt;
use super::power::PowerSeries;
use super::SeriesError;

/// Bivariate series in `(p, u)`: dense grid of `p^n u^m` coefficients for
/// `n < N`, `m <= M`, i.e. arithmetic modulo the ideal `(p^N, u^(M+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    n: usize,
    m: usize,
    c: Vec<BigRational>,
}

impl BiSeries {
    pub fn zero(p_order: usize, u_degree: usize) -> Self {
        BiSeries {
            n: p_order,
            m: u_degree,
            c: vec![BigRational::zero(); p_order * (u_degree + 1)],
        }
    }

    pub fn constant(x: BigRational, p_order: usize, u_degree: usize) -> Self {
        let mut s = Self::zero(p_order, u_degree);
        if p_order > 0 {
            s.c[0] = x;
        }
        s
    }

    /// `p^i u^j`.
    pub fn monomial(i: usize, j: usize, p_order: usize, u_degree: usize) -> Self {
        let mut s = Self::zero(p_order, u_degree);
        if i < p_order && j <= u_degree {
            *s.at_mut(i, j) = BigRational::one();
        }
        s
    }

    /// Embeds a univariate series as a `u`-constant.
    pub fn from_p_series(a: &PowerSeries, u_degree: usize) -> Self {
        let mut s = Self::zero(a.order(), u_degree);
        for (i, c) in a.coeffs().iter().enumerate() {
            *s.at_mut(i, 0) = c.clone();
        }
        s
    }

    /// From rows `rows[m]` = coefficient series of `u^m`.
    pub fn from_u_rows(rows: &[PowerSeries], p_order: usize, u_degree: usize) -> Self {
        let mut s = Self::zero(p_order, u_degree);
        for (j, row) in rows.iter().enumerate().take(u_degree + 1) {
            for (i, c) in row.coeffs().iter().enumerate().take(p_order) {
                *s.at_mut(i, j) = c.clone();
            }
        }
        s
    }

    pub fn p_order(&self) -> usize {
        self.n
    }

    pub fn u_degree(&self) -> usize {
        self.m
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.m + 1) + j
    }

    /// Coefficient of `p^i u^j`.
    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.c[self.idx(i, j)]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        let k = self.idx(i, j);
        &mut self.c[k]
    }

    /// Coefficient series of `u^j`.
    pub fn u_coefficient(&self, j: usize) -> PowerSeries {
        PowerSeries::new((0..self.n).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// First nonzero coefficient in `(p, u)` lexicographic order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, BigRational)> {
        (0..self.n)
            .flat_map(|i| (0..=self.m).map(move |j| (i, j)))
            .find(|&(i, j)| !self.at(i, j).is_zero())
            .map(|(i, j)| (i, j, self.at(i, j).clone()))
    }

    fn check(&self, o: &BiSeries) -> Result<(), SeriesError> {
        if self.n != o.n || self.m != o.m {
            return Err(SeriesError::OrderMismatch {
                left: self.n,
                right: o.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &BiSeries) -> Result<BiSeries, SeriesError> {
        self.check(o)?;
        Ok(BiSeries {
            n: self.n,
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &BiSeries) -> Result<BiSeries, SeriesError> {
        self.check(o)?;
        Ok(BiSeries {
            n: self.n,
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> BiSeries {
        BiSeries {
            n: self.n,
            m: self.m,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, x: &BigRational) -> BiSeries {
        BiSeries {
            n: self.n,
            m: self.m,
            c: self.c.iter().map(|a| a * x).collect(),
        }
    }

    /// `p -> -p`.
    pub fn reflect(&self) -> BiSeries {
        let mut out = self.clone();
        for i in (1..self.n).step_by(2) {
            for j in 0..=self.m {
                let v = -out.at(i, j).clone();
                *out.at_mut(i, j) = v;
            }
        }
        out
    }

    fn nonzero_terms(&self) -> Vec<(usize, usize, &BigRational)> {
        let mut v = Vec::new();
        for i in 0..self.n {
            for j in 0..=self.m {
                let x = self.at(i, j);
                if !x.is_zero() {
                    v.push((i, j, x));
                }
            }
        }
        v
    }

    pub fn mul(&self, o: &BiSeries) -> Result<BiSeries, SeriesError> {
        self.check(o)?;
        let mut out = Self::zero(self.n, self.m);
        let (a, b) = (self.nonzero_terms(), o.nonzero_terms());
        for &(i1, j1, x) in &a {
            for &(i2, j2, y) in &b {
                let (i, j) = (i1 + i2, j1 + j2);
                if i < self.n && j <= self.m {
                    *out.at_mut(i, j) += x * y;
                }
            }
        }
        Ok(out)
    }

    /// Inverse for a series with nonzero constant term.
    pub fn inv(&self) -> Result<BiSeries, SeriesError> {
        let c0 = self.at(0, 0).clone();
        if c0.is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let terms: Vec<(usize, usize, &BigRational)> = self
            .nonzero_terms()
            .into_iter()
            .filter(|&(i, j, _)| (i, j) != (0, 0))
            .collect();
        let mut q = Self::zero(self.n, self.m);
        for i in 0..self.n {
            for j in 0..=self.m {
                let mut s = if (i, j) == (0, 0) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                for &(a, b, x) in &terms {
                    if a <= i && b <= j {
                        let y = q.at(i - a, j - b);
                        if !y.is_zero() {
                            s -= x * y;
                        }
                    }
                }
                *q.at_mut(i, j) = s / &c0;
            }
        }
        Ok(q)
    }

    pub fn div(&self, o: &BiSeries) -> Result<BiSeries, SeriesError> {
        self.mul(&o.inv()?)
    }

    /// Square root with positive constant term.
    pub fn sqrt(&self) -> Result<BiSeries, SeriesError> {
        let c0 = self.at(0, 0).clone();
        let r0 = rational_sqrt(&c0).ok_or_else(|| SeriesError::NonSquareConstant(c0.to_string()))?;
        let mut s = Self::zero(self.n, self.m);
        let two_r0 = &r0 * BigRational::from_integer(2.into());
        *s.at_mut(0, 0) = r0;
        for i in 0..self.n {
            for j in 0..=self.m {
                if (i, j) == (0, 0) {
                    continue;
                }
                let mut acc = self.at(i, j).clone();
                for a in 0..=i {
                    for b in 0..=j {
                        if (a, b) == (0, 0) || (a, b) == (i, j) {
                            continue;
                        }
                        let x = s.at(a, b);
                        let y = s.at(i - a, j - b);
                        if !x.is_zero() && !y.is_zero() {
                            acc -= x * y;
                        }
                    }
                }
                *s.at_mut(i, j) = acc / &two_r0;
            }
        }
        Ok(s)
    }

    pub fn powi(&self, k: i64) -> Result<BiSeries, SeriesError> {
        if k < 0 {
            return self.inv()?.powi(-k);
        }
        let mut r = Self::constant(BigRational::one(), self.n, self.m);
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Specializes `u` to a constant.
    pub fn at_u(&self, x: &BigRational) -> PowerSeries {
        let mut out = vec![BigRational::zero(); self.n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = BigRational::zero();
            for j in (0..=self.m).rev() {
                acc = acc * x + self.at(i, j);
            }
            *o = acc;
        }
        PowerSeries::new(out)
    }

    /// Truncates to a smaller `p`-order.
    pub fn truncate_p(&self, p_order: usize) -> BiSeries {
        let n = p_order.min(self.n);
        let mut out = Self::zero(n, self.m);
        for i in 0..n {
            for j in 0..=self.m {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        out
    }
}

/// Formal partial derivative in `u`; the `u`-degree bound drops by one.
pub fn ps_diff_u(f: &BiSeries) -> BiSeries {
    let m = f.u_degree().saturating_sub(1);
    let mut out = BiSeries::zero(f.p_order(), m);
    for i in 0..f.p_order() {
        for j in 1..=f.u_degree() {
            *out.at_mut(i, j - 1) = f.at(i, j) * BigRational::from_integer((j as i64).into());
        }
    }
    out
}

/// Replaces `u` by `g(p)`; `g` must have zero constant term so that the
/// `u`-truncation does not leak into the retained orders.
pub fn ps_subst_u(f: &BiSeries, g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    if g.order() > 0 && !g.coeff(0).is_zero() {
        return Err(SeriesError::SubstitutionUndefined);
    }
    let n = f.p_order().min(g.order());
    if n > f.u_degree() + 1 {
        // u^(M+1) = O(p^(M+1)) would otherwise be missing.
        return Err(SeriesError::PrecisionLoss {
            needed: n,
            available: f.u_degree() + 1,
        });
    }
    let g = g.truncate(n);
    let mut acc = PowerSeries::zero(n);
    for j in (0..=f.u_degree()).rev() {
        acc = super::power::ps_mul(&acc, &g)?;
        acc = acc.add(&f.u_coefficient(j).truncate(n))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn derivative() {
        let f = BiSeries::monomial(1, 2, 4, 3);
        let d = ps_diff_u(&f);
        assert_eq!(d.u_degree(), 2);
        assert_eq!(d.at(1, 1), &r(2));
        let c = BiSeries::monomial(2, 0, 4, 3);
        assert!(ps_diff_u(&c).is_zero());
        // p^4 u (1 + p - p^2 u) -> p^4 (1 + p - 2 p^2 u); at u = 1: p^4 + p^5 - 2p^6
        let (n, m) = (8, 3);
        let mut f = BiSeries::zero(n, m);
        *f.at_mut(4, 1) = r(1);
        *f.at_mut(5, 1) = r(1);
        *f.at_mut(6, 2) = r(-1);
        let d = ps_diff_u(&f).at_u(&r(1));
        assert_eq!(d, PowerSeries::from_ints([0, 0, 0, 0, 1, 1, -2], 8));
    }

    #[test]
    fn inverse_and_root() {
        let (n, m) = (6, 4);
        let mut a = BiSeries::constant(r(1), n, m);
        *a.at_mut(1, 1) = r(-1);
        let inv = a.inv().unwrap();
        for k in 0..5 {
            assert_eq!(inv.at(k, k), &r(1));
        }
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.sqrt().unwrap(), a);
        assert_eq!(a.mul(&inv).unwrap(), BiSeries::constant(r(1), n, m));
    }

    #[test]
    fn substitution_requires_zero_constant() {
        let f = BiSeries::monomial(0, 1, 6, 6);
        let g = PowerSeries::from_ints([0, 1, 1], 6);
        assert_eq!(ps_subst_u(&f, &g).unwrap(), g);
        let g1 = PowerSeries::from_ints([1, 1], 6);
        assert_eq!(ps_subst_u(&f, &g1), Err(SeriesError::SubstitutionUndefined));
    }
}
