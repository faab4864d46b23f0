//! Expression trees evaluated to exact truncated series.
//!
//! Nodes are reference counted; a subtree that appears several times in a
//! formula (by cloning the same [`Expr`]) is evaluated once per evaluation.

use std::collections::HashMap;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::bi::BiSeries;
use super::laurent::Laurent;
use super::power::PowerSeries;
use super::SeriesError;

#[derive(Debug)]
pub enum Node {
    P,
    U,
    Const(BigRational),
    /// Polynomial in `p`, lowest degree first.
    Poly(Vec<BigRational>),
    Named(String),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    Sqrt(Expr),
    Pow(Expr, i64),
    /// `p -> -p`.
    Reflect(Expr),
}

#[derive(Debug, Clone)]
pub struct Expr(Arc<Node>);

impl Expr {
    fn node(n: Node) -> Self {
        Expr(Arc::new(n))
    }

    pub fn p() -> Self {
        Self::node(Node::P)
    }

    pub fn u() -> Self {
        Self::node(Node::U)
    }

    pub fn int(n: i64) -> Self {
        Self::node(Node::Const(BigRational::from_integer(n.into())))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Self::node(Node::Const(BigRational::new(n.into(), d.into())))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::node(Node::Const(c))
    }

    /// `sum c[i] p^i`.
    pub fn poly(c: &[i64]) -> Self {
        Self::node(Node::Poly(
            c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
        ))
    }

    /// Polynomial from `(exponent, coefficient)` pairs.
    pub fn sparse_poly(terms: &[(usize, i64)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut c = vec![0i64; deg + 1];
        for &(e, x) in terms {
            c[e] += x;
        }
        Self::poly(&c)
    }

    pub fn named(name: &str) -> Self {
        Self::node(Node::Named(name.to_string()))
    }

    /// `p^k`, `k` may be negative.
    pub fn p_pow(k: i64) -> Self {
        Self::p().pow(k)
    }

    pub fn sqrt(&self) -> Self {
        Self::node(Node::Sqrt(self.clone()))
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::node(Node::Pow(self.clone(), k))
    }

    pub fn reflect(&self) -> Self {
        Self::node(Node::Reflect(self.clone()))
    }

    pub fn kind(&self) -> &Node {
        &self.0
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Rebuilds the tree with every `u` replaced by `v`; shared subtrees stay
    /// shared.
    pub fn subst_u(&self, v: &Expr) -> Expr {
        fn go(e: &Expr, v: &Expr, memo: &mut HashMap<usize, Expr>) -> Expr {
            if let Some(r) = memo.get(&e.key()) {
                return r.clone();
            }
            let r = match e.kind() {
                Node::U => v.clone(),
                Node::P | Node::Const(_) | Node::Poly(_) | Node::Named(_) => e.clone(),
                Node::Add(a, b) => Expr::node(Node::Add(go(a, v, memo), go(b, v, memo))),
                Node::Sub(a, b) => Expr::node(Node::Sub(go(a, v, memo), go(b, v, memo))),
                Node::Mul(a, b) => Expr::node(Node::Mul(go(a, v, memo), go(b, v, memo))),
                Node::Div(a, b) => Expr::node(Node::Div(go(a, v, memo), go(b, v, memo))),
                Node::Neg(a) => Expr::node(Node::Neg(go(a, v, memo))),
                Node::Sqrt(a) => Expr::node(Node::Sqrt(go(a, v, memo))),
                Node::Pow(a, k) => Expr::node(Node::Pow(go(a, v, memo), *k)),
                Node::Reflect(a) => Expr::node(Node::Reflect(go(a, v, memo))),
            };
            memo.insert(e.key(), r.clone());
            r
        }
        if !self.uses_u() {
            return self.clone();
        }
        go(self, v, &mut HashMap::new())
    }

    /// Whether the symbol `u` occurs (named bindings are not followed).
    pub fn uses_u(&self) -> bool {
        match &*self.0 {
            Node::U => true,
            Node::P | Node::Const(_) | Node::Poly(_) | Node::Named(_) => false,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => a.uses_u() || b.uses_u(),
            Node::Neg(a) | Node::Sqrt(a) | Node::Pow(a, _) | Node::Reflect(a) => a.uses_u(),
        }
    }

    /// Univariate evaluation to order `n`.
    pub fn eval(&self, n: usize, env: &Env) -> Result<PowerSeries, SeriesError> {
        let mut cap = n as i64 + env.margin;
        for _ in 0..8 {
            let mut ev = UniEval {
                cap,
                env,
                memo: HashMap::new(),
                u_memo: None,
            };
            let l = ev.eval(self)?;
            if l.prec >= n as i64 {
                return PowerSeries::from_laurent(&l, n);
            }
            cap += (n as i64 - l.prec) + env.margin;
        }
        Err(SeriesError::PrecisionLoss {
            needed: n,
            available: 0,
        })
    }

    /// Bivariate evaluation modulo `(p^n, u^(m+1))`. Divisors and square-root
    /// arguments must have a nonzero constant term.
    pub fn eval_bi(&self, n: usize, m: usize, env: &Env) -> Result<BiSeries, SeriesError> {
        let mut ev = BiEval {
            n,
            m,
            env,
            memo: HashMap::new(),
        };
        ev.eval(self)
    }
}

/// Value bound to a [`Node::Named`] symbol.
#[derive(Debug, Clone)]
pub enum Binding {
    Expr(Expr),
    Series(PowerSeries),
}

/// Evaluation environment: named bindings, an optional value for `u` in
/// univariate mode, and the initial precision margin.
#[derive(Debug, Clone)]
pub struct Env {
    pub names: HashMap<String, Binding>,
    pub u: Option<Expr>,
    pub margin: i64,
}

impl Default for Env {
    fn default() -> Self {
        Env {
            names: HashMap::new(),
            u: None,
            margin: 8,
        }
    }
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_u(mut self, u: Expr) -> Self {
        self.u = Some(u);
        self
    }

    pub fn bind(mut self, name: &str, b: Binding) -> Self {
        self.names.insert(name.to_string(), b);
        self
    }
}

struct UniEval<'a> {
    cap: i64,
    env: &'a Env,
    memo: HashMap<usize, Laurent>,
    u_memo: Option<Laurent>,
}

impl UniEval<'_> {
    fn eval(&mut self, e: &Expr) -> Result<Laurent, SeriesError> {
        if let Some(v) = self.memo.get(&e.key()) {
            return Ok(v.clone());
        }
        let cap = self.cap;
        let v = match e.kind() {
            Node::P => Laurent::monomial(&BigRational::one(), 1, cap),
            Node::U => {
                if let Some(u) = &self.u_memo {
                    u.clone()
                } else {
                    let ue = self.env.u.clone().ok_or(SeriesError::UnboundU)?;
                    let v = self.eval(&ue)?;
                    self.u_memo = Some(v.clone());
                    v
                }
            }
            Node::Const(c) => Laurent::constant(c, cap),
            Node::Poly(c) => Laurent::from_rationals(c, cap),
            Node::Named(name) => match self.env.names.get(name) {
                None => return Err(SeriesError::UnboundName(name.clone())),
                Some(Binding::Series(s)) => s.to_laurent().with_prec(cap),
                Some(Binding::Expr(x)) => {
                    let x = x.clone();
                    self.eval(&x)?
                }
            },
            Node::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Node::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Node::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?, cap),
            Node::Div(a, b) => self.eval(a)?.div(&self.eval(b)?, cap)?,
            Node::Neg(a) => self.eval(a)?.neg(),
            Node::Sqrt(a) => self.eval(a)?.sqrt()?,
            Node::Pow(a, k) => self.eval(a)?.powi(*k, cap)?,
            Node::Reflect(a) => self.eval(a)?.reflect(),
        };
        self.memo.insert(e.key(), v.clone());
        Ok(v)
    }
}

struct BiEval<'a> {
    n: usize,
    m: usize,
    env: &'a Env,
    memo: HashMap<usize, BiSeries>,
}

impl BiEval<'_> {
    fn eval(&mut self, e: &Expr) -> Result<BiSeries, SeriesError> {
        if let Some(v) = self.memo.get(&e.key()) {
            return Ok(v.clone());
        }
        let (n, m) = (self.n, self.m);
        let v = match e.kind() {
            Node::P => BiSeries::monomial(1, 0, n, m),
            Node::U => BiSeries::monomial(0, 1, n, m),
            Node::Const(c) => BiSeries::constant(c.clone(), n, m),
            Node::Poly(c) => {
                let mut s = BiSeries::zero(n, m);
                for (i, x) in c.iter().enumerate().take(n) {
                    *s.at_mut(i, 0) = x.clone();
                }
                s
            }
            Node::Named(name) => match self.env.names.get(name) {
                None => return Err(SeriesError::UnboundName(name.clone())),
                Some(Binding::Series(s)) => {
                    if s.order() < n {
                        return Err(SeriesError::PrecisionLoss {
                            needed: n,
                            available: s.order(),
                        });
                    }
                    BiSeries::from_p_series(&s.truncate(n), m)
                }
                Some(Binding::Expr(x)) => {
                    let x = x.clone();
                    self.eval(&x)?
                }
            },
            Node::Add(a, b) => self.eval(a)?.add(&self.eval(b)?)?,
            Node::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?)?,
            Node::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?)?,
            Node::Div(a, b) => self.eval(a)?.div(&self.eval(b)?)?,
            Node::Neg(a) => self.eval(a)?.neg(),
            Node::Sqrt(a) => self.eval(a)?.sqrt()?,
            Node::Pow(a, k) => self.eval(a)?.powi(*k)?,
            Node::Reflect(a) => self.eval(a)?.reflect(),
        };
        self.memo.insert(e.key(), v.clone());
        Ok(v)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $node:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                Expr::node(Node::$node(self, rhs))
            }
        }
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $f(self, rhs: &Expr) -> Expr {
                Expr::node(Node::$node(self.clone(), rhs.clone()))
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $f(self, rhs: &Expr) -> Expr {
                Expr::node(Node::$node(self, rhs.clone()))
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                Expr::node(Node::$node(self.clone(), rhs))
            }
        }
        impl $tr<i64> for Expr {
            type Output = Expr;
            fn $f(self, rhs: i64) -> Expr {
                Expr::node(Node::$node(self, Expr::int(rhs)))
            }
        }
        impl $tr<i64> for &Expr {
            type Output = Expr;
            fn $f(self, rhs: i64) -> Expr {
                Expr::node(Node::$node(self.clone(), Expr::int(rhs)))
            }
        }
        impl $tr<Expr> for i64 {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                Expr::node(Node::$node(Expr::int(self), rhs))
            }
        }
        impl $tr<&Expr> for i64 {
            type Output = Expr;
            fn $f(self, rhs: &Expr) -> Expr {
                Expr::node(Node::$node(Expr::int(self), rhs.clone()))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::node(Node::Neg(self))
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::node(Node::Neg(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64], n: usize) -> PowerSeries {
        PowerSeries::from_ints(c.iter().copied(), n)
    }

    #[test]
    fn square_of_binomial_cancels() {
        let p = Expr::p();
        let e = (1 + &p).pow(2) - Expr::poly(&[1, 2, 1]);
        assert_eq!(e.eval(10, &Env::new()).unwrap(), PowerSeries::zero(10));
    }

    #[test]
    fn sqrt_round_trip() {
        let x = Expr::poly(&[1, 0, -4]).sqrt();
        assert_eq!((&x * &x).eval(12, &Env::new()).unwrap(), ints(&[1, 0, -4], 12));
    }

    #[test]
    fn negative_powers_cancel() {
        let p = Expr::p();
        let e = (Expr::poly(&[1, 1]) - Expr::poly(&[1, 0, 3])) / p.pow(1) - 1;
        assert_eq!(e.eval(6, &Env::new()).unwrap(), ints(&[0, -3], 6));
        let bad = Expr::int(1) / Expr::p();
        assert!(matches!(bad.eval(4, &Env::new()), Err(SeriesError::NegativePower(-1))));
    }

    #[test]
    fn u_binding_and_bivariate_agree() {
        let p = Expr::p();
        let u = Expr::u();
        let e = &u * &p / (1 - &p * &u);
        let bi = e.eval_bi(8, 8, &Env::new()).unwrap();
        let at1 = e.eval(8, &Env::new().with_u(Expr::int(1))).unwrap();
        assert_eq!(bi.at_u(&BigRational::one()), at1);
        assert_eq!(at1, ints(&[0, 1, 1, 1, 1, 1, 1, 1], 8));
        assert!(matches!(e.eval(4, &Env::new()), Err(SeriesError::UnboundU)));
    }

    #[test]
    fn named_bindings() {
        let env = Env::new()
            .bind("g", Binding::Series(ints(&[1, 1], 6)))
            .bind("h", Binding::Expr(Expr::poly(&[0, 0, 1])));
        let e = Expr::named("g") * Expr::named("h");
        assert_eq!(e.eval(6, &env).unwrap(), ints(&[0, 0, 1, 1], 6));
        assert!(matches!(
            Expr::named("zz").eval(3, &env),
            Err(SeriesError::UnboundName(_))
        ));
    }

    #[test]
    fn shared_subtrees_survive_precision_retries() {
        // p^-6 (p^6 + p^7): needs six extra orders.
        let p = Expr::p();
        let x = Expr::poly(&[0, 0, 0, 0, 0, 0, 1, 1]);
        let e = &x * p.pow(-6) + &x * p.pow(-6);
        let env = Env {
            margin: 1,
            ..Env::new()
        };
        assert_eq!(e.eval(5, &env).unwrap(), ints(&[2, 2], 5));
    }
}
