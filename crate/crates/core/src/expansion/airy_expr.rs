//! P(y) Ai(y) + Q(y) Ai'(y) with exact rational polynomial coefficients.
//!
//! Differentiation never leaves this form: Ai'' = y Ai, so
//! d/dy (P Ai + Q Ai') = (P' + y Q) Ai + (P + Q') Ai'.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::mpoly::{format_rational, MPoly};

/// Dense polynomial in y, coefficient i multiplies y^i. No trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct YPoly(Vec<BigRational>);

impl YPoly {
    pub fn zero() -> Self {
        YPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        YPoly(vec![c]).trimmed()
    }

    pub fn from_coeffs(c: Vec<BigRational>) -> Self {
        YPoly(c).trimmed()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn derivative(&self) -> Self {
        YPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trimmed()
    }

    pub fn times_y(&self) -> Self {
        if self.is_zero() {
            return YPoly::zero();
        }
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(BigRational::zero());
        v.extend(self.0.iter().cloned());
        YPoly(v)
    }

    pub fn add(&self, other: &YPoly) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        YPoly((0..n).map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z)).collect()).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        YPoly(self.0.iter().map(|v| v * c).collect()).trimmed()
    }

    /// The polynomial at y = -x, as a polynomial in x.
    pub fn at_minus_x(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (i, c) in self.0.iter().enumerate() {
            let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
            out = out + MPoly::x_pow(i as i32).scale(&sign);
        }
        out
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * y + super::mpoly::to_f64(c))
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*y", format_rational(c)),
                _ => format!("{}*y^{i}", format_rational(c)),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AiryExpr {
    pub p: YPoly,
    pub q: YPoly,
}

/// Serialisable form: coefficient lists as "p/q" strings, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AiryExprRecord {
    pub ai_coeffs: Vec<String>,
    pub aip_coeffs: Vec<String>,
}

impl AiryExpr {
    /// Ai itself.
    pub fn ai() -> Self {
        AiryExpr { p: YPoly::constant(BigRational::one()), q: YPoly::zero() }
    }

    /// Ai'.
    pub fn ai_prime() -> Self {
        AiryExpr { p: YPoly::zero(), q: YPoly::constant(BigRational::one()) }
    }

    pub fn differentiate(&self) -> Self {
        AiryExpr { p: self.p.derivative().add(&self.q.times_y()), q: self.p.add(&self.q.derivative()) }
    }

    /// k-fold derivative.
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |e, _| e.differentiate())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        AiryExpr { p: self.p.scale(c), q: self.q.scale(c) }
    }

    /// Numeric value given Ai(y) and Ai'(y).
    pub fn eval(&self, y: f64, ai: f64, aip: f64) -> f64 {
        self.p.eval(y) * ai + self.q.eval(y) * aip
    }

    pub fn to_record(&self) -> AiryExprRecord {
        AiryExprRecord {
            ai_coeffs: self.p.coeffs().iter().map(format_rational).collect(),
            aip_coeffs: self.q.coeffs().iter().map(format_rational).collect(),
        }
    }
}

impl fmt::Display for AiryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*Ai(y) + ({})*Ai'(y)", self.p, self.q)
    }
}

pub fn differentiate(expr: &AiryExpr) -> AiryExpr {
    expr.differentiate()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftedFunction {
    Ai,
    AiPrime,
}

/// Coefficients of delta^k in f(y + delta) for k = 0..=order:
/// the k-th derivative of f divided by k!.
pub fn taylor_shift(which: ShiftedFunction, order: usize) -> Vec<AiryExpr> {
    let mut current = match which {
        ShiftedFunction::Ai => AiryExpr::ai(),
        ShiftedFunction::AiPrime => AiryExpr::ai_prime(),
    };
    let mut factorial = BigRational::one();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        if k > 0 {
            current = current.differentiate();
            factorial *= BigRational::from_integer(BigInt::from(k));
        }
        out.push(current.scale(&factorial.recip()));
    }
    out
}
