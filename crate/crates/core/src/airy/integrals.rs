//! Closed-form antiderivatives of products of shifted Airy functions.
//!
//! With A = Ai(x - beta1), B = Ai(x - beta2) (B = A when the shifts agree):
//!
//! same shift, y = x - beta:
//!   int A^2      = y A^2 - A'^2
//!   int x A^2    = (x^2 + beta x - 2 beta^2) A^2 / 3 + A A' / 3 - (x + 2 beta) A'^2 / 3
//!   int x^2 A^2  = (3x^3 + beta x^2 + 4 beta^2 x - 8 beta^3 - 3) A^2 / 15
//!                  + 2 (3x + 2 beta) A A' / 15 - (3x^2 + 4 beta x + 8 beta^2) A'^2 / 15
//!   int A'^2     = [2 A A' + y A'^2 - y^2 A^2] / 3
//!
//! cross shift, d = beta2 - beta1, W = A'B - AB':
//!   int A B      = W / d
//!   int x A B    = (beta1 + beta2 - 2x) A B / d^2 + (x/d + 2/d^3) W + 2 A'B' / d^2
//!
//! The sign of the last cross-shift term is fixed by exact differentiation
//! (see `tests::cross_moment1_differentiates_to_integrand`): with a minus sign
//! the derivative leaves a residual 4 [(x - beta2) A'B + (x - beta1) A B'] / d^2.

use std::ops::{Add, Div, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::ai;
use crate::error::{Error, Result};

/// Smallest |beta1 - beta2| accepted by the cross-shift identities.
pub const CROSS_SHIFT_MIN_SEPARATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Moment {
    Zero,
    One,
    Two,
}

impl Moment {
    pub fn power(self) -> i32 {
        match self {
            Moment::Zero => 0,
            Moment::One => 1,
            Moment::Two => 2,
        }
    }
}

impl TryFrom<u32> for Moment {
    type Error = Error;
    fn try_from(m: u32) -> Result<Self> {
        match m {
            0 => Ok(Moment::Zero),
            1 => Ok(Moment::One),
            2 => Ok(Moment::Two),
            other => Err(Error::UnsupportedIdentity(other)),
        }
    }
}

/// Scalars the closed forms are evaluated in: plain f64, or a [`Jet`]
/// carrying an exact first derivative.
pub trait AiryScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn constant(c: f64) -> Self;
    /// (Ai(self), Ai'(self)).
    fn airy(self) -> (Self, Self);
}

impl AiryScalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }

    fn airy(self) -> (f64, f64) {
        ai(self)
    }
}

/// Value and derivative with respect to one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub slope: f64,
}

impl Jet {
    pub fn variable(x: f64) -> Self {
        Jet { value: x, slope: 1.0 }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { value: self.value + o.value, slope: self.slope + o.slope }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { value: self.value - o.value, slope: self.slope - o.slope }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet { value: self.value * o.value, slope: self.slope * o.value + self.value * o.slope }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        Jet {
            value: self.value / o.value,
            slope: (self.slope * o.value - self.value * o.slope) / (o.value * o.value),
        }
    }
}

impl AiryScalar for Jet {
    fn constant(c: f64) -> Self {
        Jet { value: c, slope: 0.0 }
    }

    // Ai' = Ai', Ai'' = u Ai
    fn airy(self) -> (Jet, Jet) {
        let (a, ap) = ai(self.value);
        (Jet { value: a, slope: ap * self.slope }, Jet { value: ap, slope: self.value * a * self.slope })
    }
}

/// Antiderivative of x^m Ai(x - beta1) Ai(x - beta2) evaluated at `x`.
///
/// `beta1 == beta2` selects the same-shift identities; otherwise the
/// cross-shift ones, which exist only for moments 0 and 1.
pub fn antideriv_product(x: f64, beta1: f64, beta2: f64, moment: Moment) -> Result<f64> {
    antideriv_product_in(x, beta1, beta2, moment)
}

pub fn antideriv_product_in<T: AiryScalar>(x: T, beta1: f64, beta2: f64, moment: Moment) -> Result<T> {
    if beta1 == beta2 {
        return Ok(same_shift(x, beta1, moment));
    }
    let d = beta2 - beta1;
    if moment == Moment::Two {
        return Err(Error::UnsupportedIdentity(2));
    }
    if d.abs() < CROSS_SHIFT_MIN_SEPARATION {
        return Err(Error::IllConditioned(d.abs()));
    }
    let c = T::constant;
    let (a, ap) = (x - c(beta1)).airy();
    let (b, bp) = (x - c(beta2)).airy();
    let w = ap * b - a * bp;
    Ok(match moment {
        Moment::Zero => w * c(1.0 / d),
        Moment::One => {
            let d2 = d * d;
            (c(beta1 + beta2) - c(2.0) * x) * c(1.0 / d2) * a * b
                + (x * c(1.0 / d) + c(2.0 / (d2 * d))) * w
                + c(2.0 / d2) * ap * bp
        }
        Moment::Two => unreachable!(),
    })
}

fn same_shift<T: AiryScalar>(x: T, beta: f64, moment: Moment) -> T {
    let c = T::constant;
    let y = x - c(beta);
    let (a, ap) = y.airy();
    let aa = a * a;
    let cross = c(2.0) * a * ap;
    let pp = ap * ap;
    match moment {
        Moment::Zero => y * aa - pp,
        Moment::One => {
            (x * x + c(beta) * x - c(2.0 * beta * beta)) * aa * c(1.0 / 3.0) + cross * c(1.0 / 6.0)
                - (x + c(2.0 * beta)) * pp * c(1.0 / 3.0)
        }
        Moment::Two => {
            let b2 = beta * beta;
            (c(3.0) * x * x * x + c(beta) * x * x + c(4.0 * b2) * x - c(8.0 * b2 * beta + 3.0))
                * aa
                * c(1.0 / 15.0)
                + (c(3.0) * x + c(2.0 * beta)) * cross * c(1.0 / 15.0)
                - (c(3.0) * x * x + c(4.0 * beta) * x + c(8.0 * b2)) * pp * c(1.0 / 15.0)
        }
    }
}

/// Antiderivative of Ai'(x - beta)^2 evaluated at `x`.
pub fn antideriv_derivative_product(x: f64, beta: f64) -> f64 {
    antideriv_derivative_product_in(x, beta)
}

pub fn antideriv_derivative_product_in<T: AiryScalar>(x: T, beta: f64) -> T {
    let c = T::constant;
    let y = x - c(beta);
    let (a, ap) = y.airy();
    (c(2.0) * a * ap + y * ap * ap - y * y * a * a) * c(1.0 / 3.0)
}

/// int_{lower}^{inf} x^m Ai(x - beta1) Ai(x - beta2) dx.
///
/// The antiderivative is taken to vanish at +inf (every term carries
/// Ai or Ai' of a large positive argument).
pub fn definite_product_from(lower: f64, beta1: f64, beta2: f64, moment: Moment) -> Result<f64> {
    Ok(-antideriv_product(lower, beta1, beta2, moment)?)
}

/// int_{-inf}^{inf} |x|^m Ai(|x| - beta1) Ai(|x| - beta2) dx, split at 0.
pub fn definite_product_folded(beta1: f64, beta2: f64, moment: Moment) -> Result<f64> {
    Ok(2.0 * definite_product_from(0.0, beta1, beta2, moment)?)
}

/// int_{lower}^{inf} Ai'(x - beta)^2 dx.
pub fn definite_derivative_product_from(lower: f64, beta: f64) -> f64 {
    -antideriv_derivative_product(lower, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exact derivative of an antiderivative built from Ai/Ai' at two shifts.
    // d/dx Ai(x - b) = Ai'(x - b), d/dx Ai'(x - b) = (x - b) Ai(x - b).
    fn integrand(x: f64, b1: f64, b2: f64, m: i32) -> f64 {
        x.powi(m) * ai(x - b1).0 * ai(x - b2).0
    }

    fn cross_moment1_derivative(x: f64, b1: f64, b2: f64, last_sign: f64) -> f64 {
        let (a, ap) = ai(x - b1);
        let (b, bp) = ai(x - b2);
        let app = (x - b1) * a;
        let bpp = (x - b2) * b;
        let d = b2 - b1;
        let d2 = d * d;
        let w = ap * b - a * bp;
        let dw = app * b - a * bpp;
        -2.0 / d2 * a * b
            + (b1 + b2 - 2.0 * x) / d2 * (ap * b + a * bp)
            + w / d
            + (x / d + 2.0 / (d2 * d)) * dw
            + last_sign * 2.0 / d2 * (app * bp + ap * bpp)
    }

    #[test]
    fn cross_moment1_differentiates_to_integrand() {
        for &(x, b1, b2) in &[(0.3, 2.3, 4.1), (1.7, -0.5, 3.2), (-2.0, 1.0, 1.5)] {
            let f = integrand(x, b1, b2, 1);
            let plus = cross_moment1_derivative(x, b1, b2, 1.0);
            let minus = cross_moment1_derivative(x, b1, b2, -1.0);
            assert!((plus - f).abs() < 1e-12, "{plus} vs {f}");
            assert!((minus - f).abs() > 1e-3);
        }
    }

    #[test]
    fn jet_derivatives_reproduce_integrands() {
        for &(x, b1, b2) in &[(0.3, 2.3, 4.1), (1.7, -0.5, 3.2), (-2.0, 1.0, 1.0)] {
            for m in [Moment::Zero, Moment::One, Moment::Two] {
                let Ok(j) = antideriv_product_in(Jet::variable(x), b1, b2, m) else {
                    continue;
                };
                let f = integrand(x, b1, b2, m.power());
                assert!((j.slope - f).abs() < 1e-12, "{m:?} {} vs {f}", j.slope);
            }
            let j = antideriv_derivative_product_in(Jet::variable(x), b1);
            assert!((j.slope - ai(x - b1).1.powi(2)).abs() < 1e-12);
            assert_eq!(j.value, antideriv_derivative_product(x, b1));
        }
    }

    #[test]
    fn normalization_of_first_bouncer_state() {
        let z1 = super::super::find_zero(super::super::ZeroKind::Ai, 1).unwrap();
        let n = definite_product_from(0.0, z1, z1, Moment::Zero).unwrap();
        let aip = ai(-z1).1;
        assert!((n - aip * aip).abs() < 1e-14);
    }

    #[test]
    fn cross_moment_two_is_unsupported() {
        assert_eq!(antideriv_product(0.0, 1.0, 2.0, Moment::Two), Err(Error::UnsupportedIdentity(2)));
        assert!(Moment::try_from(3).is_err());
    }

    #[test]
    fn nearly_equal_shifts_rejected() {
        assert!(matches!(
            antideriv_product(0.0, 1.0, 1.0 + 1e-8, Moment::Zero),
            Err(Error::IllConditioned(_))
        ));
    }
}
