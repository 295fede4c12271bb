//! Scalars: exact rationals, the quadratic field Q(√2), complex doubles, and
//! second-order jets over complex doubles.
//!
//! Every algebraic routine downstream is generic over [`ScalarRing`], so the
//! same code evaluates identities exactly over [`QSqrt2`] and numerically over
//! [`Complex64`] or [`Jet`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always normalized (denominator > 0, reduced).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// An element `a + b√2` of Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QSqrt2 {
    a: Rational,
    b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt2::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        QSqrt2::new(rat(n, d), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rational::zero(), Rational::one())
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √2.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm();
        if n.is_zero() {
            // a² = 2b² forces a = b = 0 since √2 is irrational.
            assert!(self.a.is_zero() && self.b.is_zero());
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QSqrt2::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

impl QSqrt2 {
    /// Always `"a+b*sqrt2"`, the serialized form.
    pub fn to_canonical_string(&self) -> String {
        format!("{}+{}*sqrt2", self.a, self.b)
    }
}

/// Short form: the bare rational when `b = 0`.
impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl FromStr for QSqrt2 {
    type Err = ScalarError;

    /// Accepts `"a+b*sqrt2"` or a bare rational, as produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.strip_suffix("*sqrt2") {
            Some(body) => {
                // The separator is the last '+' that is not a sign of b.
                let idx = body
                    .char_indices()
                    .skip(1)
                    .filter(|&(i, c)| c == '+' && !body[..i].ends_with(['e', 'E']))
                    .map(|(i, _)| i)
                    .last()
                    .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
                Ok(QSqrt2::new(
                    parse_rational(&body[..idx])?,
                    parse_rational(&body[idx + 1..])?,
                ))
            }
            None => Ok(QSqrt2::new(parse_rational(t)?, Rational::zero())),
        }
    }
}

impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

impl<'de> Deserialize<'de> for QSqrt2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = Rational::from_integer(2.into());
        QSqrt2::new(
            &self.a * &o.a + two * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        &self * &o
    }
}

impl Div for QSqrt2 {
    type Output = QSqrt2;
    /// Panics on division by zero; use [`QSqrt2::inv`] for a checked inverse.
    fn div(self, o: QSqrt2) -> QSqrt2 {
        self * o.inv().expect("division by zero in Q(sqrt2)")
    }
}

/// Product of two elements, spelled out for callers that want the named op.
pub fn qs2_mul(x: &QSqrt2, y: &QSqrt2) -> QSqrt2 {
    x * y
}

pub fn qs2_inv(x: &QSqrt2) -> Result<QSqrt2, ScalarError> {
    x.inv()
}

/// Common interface of the coefficient rings.
pub trait ScalarRing:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when equality is decidable (exact arithmetic).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn sqrt2() -> Self;
    /// Exact test for zero (structural for exact rings, `== 0.0` otherwise).
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Result<Self, ScalarError>;
    /// Value as a complex double (the jet's value part for jets).
    fn to_complex(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn try_div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * o.try_inv()?)
    }

    /// `self^k` for small non-negative `k`.
    fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r * self.clone();
        }
        r
    }

    /// Equality for exact rings; `|x − y| ≤ tol·max(1, |y|)` for numeric rings.
    fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == o
        } else {
            let (x, y) = (self.to_complex(), o.to_complex());
            (x - y).norm() <= tol * y.norm().max(1.0)
        }
    }
}

impl ScalarRing for QSqrt2 {
    const EXACT: bool = true;
    fn zero() -> Self {
        QSqrt2::default()
    }
    fn one() -> Self {
        QSqrt2::from_int(1)
    }
    fn from_rational(r: &Rational) -> Self {
        QSqrt2::new(r.clone(), Rational::zero())
    }
    fn sqrt2() -> Self {
        QSqrt2::sqrt2()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.inv()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
}

impl ScalarRing for Complex64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn sqrt2() -> Self {
        Complex64::new(std::f64::consts::SQRT_2, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if ScalarRing::is_zero(self) {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.inv())
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Truncated second-order Taylor expansion `v + g·dx + ½ dxᵀ h dx` in `n`
/// complex variables. Constants carry empty `g`/`h` and broadcast.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub v: Complex64,
    pub g: Vec<Complex64>,
    /// Row-major `n × n` Hessian.
    pub h: Vec<Complex64>,
}

impl Jet {
    pub fn constant(v: Complex64) -> Self {
        Jet { v, g: Vec::new(), h: Vec::new() }
    }

    /// The `k`-th coordinate function of `n` variables, evaluated at `v`.
    pub fn variable(v: Complex64, k: usize, n: usize) -> Self {
        let mut g = vec![C0; n];
        g[k] = C1;
        Jet { v, g, h: vec![C0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    fn widen(&self, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        if self.g.is_empty() {
            (vec![C0; n], vec![C0; n * n])
        } else {
            (self.g.clone(), self.h.clone())
        }
    }

    fn scale(&self, c: Complex64) -> Jet {
        Jet {
            v: self.v * c,
            g: self.g.iter().map(|x| x * c).collect(),
            h: self.h.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let n = self.dim().max(o.dim());
        if n == 0 {
            return Jet::constant(self.v + o.v);
        }
        let (g1, h1) = self.widen(n);
        let (g2, h2) = o.widen(n);
        Jet {
            v: self.v + o.v,
            g: g1.iter().zip(&g2).map(|(a, b)| a + b).collect(),
            h: h1.iter().zip(&h2).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-C1)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        if o.g.is_empty() {
            return self.scale(o.v);
        }
        if self.g.is_empty() {
            return o.scale(self.v);
        }
        let n = self.dim();
        let mut h = vec![C0; n * n];
        for i in 0..n {
            for j in 0..n {
                h[i * n + j] = self.v * o.h[i * n + j]
                    + o.v * self.h[i * n + j]
                    + self.g[i] * o.g[j]
                    + o.g[i] * self.g[j];
            }
        }
        Jet {
            v: self.v * o.v,
            g: (0..n).map(|i| self.v * o.g[i] + o.v * self.g[i]).collect(),
            h,
        }
    }
}

impl ScalarRing for Jet {
    const EXACT: bool = false;
    fn zero() -> Self {
        Jet::constant(C0)
    }
    fn one() -> Self {
        Jet::constant(C1)
    }
    fn from_rational(r: &Rational) -> Self {
        Jet::constant(Complex64::from_rational(r))
    }
    fn sqrt2() -> Self {
        Jet::constant(<Complex64 as ScalarRing>::sqrt2())
    }
    fn is_zero(&self) -> bool {
        ScalarRing::is_zero(&self.v)
            && self.g.iter().all(ScalarRing::is_zero)
            && self.h.iter().all(ScalarRing::is_zero)
    }
    fn try_inv(&self) -> Result<Self, ScalarError> {
        if ScalarRing::is_zero(&self.v) {
            return Err(ScalarError::DivisionByZero);
        }
        let r = self.v.inv();
        let n = self.dim();
        let r2 = r * r;
        let r3 = r2 * r;
        let mut h = vec![C0; n * n];
        for i in 0..n {
            for j in 0..n {
                h[i * n + j] = -self.h[i * n + j] * r2 + self.g[i] * self.g[j] * r3 * 2.0;
            }
        }
        Ok(Jet { v: r, g: self.g.iter().map(|x| -x * r2).collect(), h })
    }
    fn to_complex(&self) -> Complex64 {
        self.v
    }
}
