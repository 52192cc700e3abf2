//! Series root of `c0 - c1 x + c2 x^2 + c3 x^3 + ... = 0`.
//!
//! Note the sign convention: the linear coefficient enters with a minus sign.
//! The root is
//!
//! ```text
//!   x = sum_m C_m c0^(V_m - 1) / c1^(E_m) * c2^m2 c3^m3 ...
//!     = (c0 / c1) S[z2, z3, ...],   z_i = c0^(i-1) c_i / c1^i,
//! ```
//!
//! summed over subdigon types `m` with `E_m - 1 <= N`. No claim of
//! convergence is made; [`convergence_profile`] reports what happens.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::combinatorics::hyper_catalan;
use crate::error::{Error, Result};
use crate::types::type_vectors_with_grade;

/// Field operations the solver needs; implemented for exact rationals and `f64`.
pub trait Number: Clone + PartialEq + PartialOrd + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn abs(&self) -> Self;
    fn from_count(n: &BigUint) -> Self;

    fn powu(&self, exp: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Number for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn from_count(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }
}

impl Number for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn from_count(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Coefficients `c0, c1, ..., cd` of `c0 - c1 x + c2 x^2 + ... + cd x^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialProblem<T> {
    coefficients: Vec<T>,
}

impl<T: Number> PolynomialProblem<T> {
    /// Needs at least `c0` and `c1`, with `c1 != 0`.
    pub fn new(coefficients: Vec<T>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::TooFewCoefficients);
        }
        if coefficients[1].is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Scaled variables `z_i = c0^(i-1) c_i / c1^i` for `i = 2..=d`, zeros omitted.
    fn scaled_variables(&self) -> Vec<(u32, T)> {
        let c0 = &self.coefficients[0];
        let c1 = &self.coefficients[1];
        (2..=self.degree())
            .filter(|&i| !self.coefficients[i].is_zero())
            .map(|i| {
                let e = i as u64;
                let z = c0.powu(e - 1).mul(&self.coefficients[i]).div(&c1.powu(e));
                (i as u32, z)
            })
            .collect()
    }
}

/// Partial sums of the series root: entry `g` sums all terms of edge grade
/// `<= g`, for `g = 0..=order`. Terms are added grade by grade in graded-lex
/// order, so floating results are reproducible.
pub fn partial_sums<T: Number>(p: &PolynomialProblem<T>, order: u64) -> Vec<T> {
    let c0 = &p.coefficients[0];
    let c1 = &p.coefficients[1];
    let lead = c0.div(c1);
    let vars = p.scaled_variables();
    let indices: Vec<u32> = vars.iter().map(|(i, _)| *i).collect();
    let value_of = |i: u32| &vars.iter().find(|(j, _)| *j == i).expect("index in use").1;

    let mut sums = Vec::with_capacity(order as usize + 1);
    let mut acc = T::zero();
    for grade in 0..=order {
        for m in type_vectors_with_grade(grade, &indices) {
            let weight = m
                .iter()
                .fold(T::from_count(&hyper_catalan(&m)), |w, (i, e)| {
                    w.mul(&value_of(i).powu(e))
                });
            acc = acc.add(&lead.mul(&weight));
        }
        sums.push(acc.clone());
    }
    sums
}

/// The series root truncated at edge grade `order`.
pub fn wildberger_root<T: Number>(p: &PolynomialProblem<T>, order: u64) -> T {
    partial_sums(p, order).pop().expect("at least grade 0")
}

/// `c0 - c1 x + c2 x^2 + ...`, by Horner's rule from the highest degree down.
pub fn residual<T: Number>(p: &PolynomialProblem<T>, x: &T) -> T {
    let c = &p.coefficients;
    let signed = |i: usize| {
        if i == 1 {
            T::zero().sub(&c[1])
        } else {
            c[i].clone()
        }
    };
    (0..c.len() - 1)
        .rev()
        .fold(signed(c.len() - 1), |acc, i| acc.mul(x).add(&signed(i)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow<T> {
    pub order: u64,
    pub partial_sum: T,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceProfile<T> {
    pub rows: Vec<ProfileRow<T>>,
}

impl<T: Number> ConvergenceProfile<T> {
    /// True when `|residual|` drops at every successive row.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].residual.abs() < w[0].residual.abs())
    }

    /// True when `|residual|` never grows from one row to the next.
    pub fn non_increasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].residual.abs() <= w[0].residual.abs())
    }
}

/// Partial sum and residual at every truncation grade `0..=max_order`.
pub fn convergence_profile<T: Number>(
    p: &PolynomialProblem<T>,
    max_order: u64,
) -> ConvergenceProfile<T> {
    let rows = partial_sums(p, max_order)
        .into_iter()
        .enumerate()
        .map(|(g, x)| ProfileRow {
            order: g as u64,
            residual: residual(p, &x),
            partial_sum: x,
        })
        .collect();
    ConvergenceProfile { rows }
}

/// Parsed coefficient list: exact unless some literal is a decimal and none
/// is a fraction.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

/// Parses literals such as `3`, `-1/7`, `0.25`, `1e-3`.
///
/// Integers and fractions give exact rationals. Decimal literals switch to
/// floating point, unless a fraction is also present, in which case the
/// decimals are read exactly.
pub fn parse_coefficients<S: AsRef<str>>(literals: &[S]) -> Result<Coefficients> {
    let mut exact = Vec::with_capacity(literals.len());
    let mut any_fraction = false;
    let mut any_decimal = false;
    for lit in literals {
        let lit = lit.as_ref().trim();
        let bad = || Error::BadNumber(lit.to_owned());
        if let Some((n, d)) = lit.split_once('/') {
            any_fraction = true;
            let n: BigInt = parse_integer(n).ok_or_else(bad)?;
            let d: BigInt = parse_integer(d).ok_or_else(bad)?;
            if d == BigInt::ZERO {
                return Err(bad());
            }
            exact.push(BigRational::new(n, d));
        } else if let Some(i) = parse_integer(lit) {
            exact.push(BigRational::from_integer(i));
        } else {
            any_decimal = true;
            exact.push(parse_decimal(lit).ok_or_else(bad)?);
        }
    }
    if any_decimal && !any_fraction {
        let floats = literals
            .iter()
            .map(|l| {
                let l = l.as_ref().trim();
                l.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::BadNumber(l.to_owned()))
            })
            .collect::<Result<Vec<f64>>>()?;
        return Ok(Coefficients::Float(floats));
    }
    Ok(Coefficients::Exact(exact))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

/// Exact value of a decimal literal: `[-+]digits[.digits][e[-+]digits]`.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("0{whole}{frac}").parse().ok()?;
    let scale = exponent - i32::try_from(frac.len()).ok()?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(digits) * num_traits::pow::Pow::pow(ten, scale);
    if negative {
        value = -value;
    }
    Some(value)
}
