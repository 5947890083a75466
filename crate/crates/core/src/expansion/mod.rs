//! Exact order-by-order expansion of the perturbed eigenvalue conditions.
//!
//! With E = x e0 (1 + R_1 d + R_2 d^2 + ...), every Airy argument is
//! -x + delta(d) and Ai(-x + delta) = sum delta^k / k! Ai^(k)(-x). Each
//! derivative reduces to P Ai + Q Ai', so the condition becomes a series in
//! d whose coefficients are quadratic forms in a = Ai(-x), b = Ai'(-x).
//! The vanishing rule (a = 0 for odd states, b = 0 for even ones) leaves a
//! single surviving square, and each d^k coefficient is linear in R_k.

pub mod airy_expr;
pub mod mpoly;
pub mod truncated;

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use airy_expr::{differentiate, taylor_shift, AiryExpr, AiryExprRecord, ShiftedFunction, YPoly};
pub use mpoly::{format_rational, rat, MPoly, Monomial};
pub use truncated::Truncated;

use crate::error::{Error, Result};
use crate::Parity;

pub const ENGINE_MAX_ORDER: usize = 8;

/// Which eigenvalue condition is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Ai(-E / (e0 (1 + d)^(2/3))) = 0.
    Bouncer,
    /// G(E, d) = 0 about a zero of Ai (odd) or Ai' (even).
    Symmetric(Parity),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Bouncer => write!(f, "bouncer"),
            Condition::Symmetric(Parity::Even) => write!(f, "even"),
            Condition::Symmetric(Parity::Odd) => write!(f, "odd"),
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > ENGINE_MAX_ORDER {
        return Err(Error::OrderTooHigh { requested: order, limit: ENGINE_MAX_ORDER });
    }
    if order == 0 {
        return Err(Error::InvalidParameter("expansion order must be >= 1".into()));
    }
    Ok(())
}

/// a * Ai(-x) + b * Ai'(-x) with series coefficients.
struct Linear {
    a: Truncated,
    b: Truncated,
}

/// Quadratic form aa Ai^2 + ab Ai Ai' + bb Ai'^2.
struct Quadratic {
    aa: Truncated,
    ab: Truncated,
    bb: Truncated,
}

impl Linear {
    fn times(&self, other: &Linear) -> Quadratic {
        Quadratic {
            aa: self.a.mul(&other.a),
            ab: self.a.mul(&other.b).add(&self.b.mul(&other.a)),
            bb: self.b.mul(&other.b),
        }
    }
}

impl Quadratic {
    fn add(&self, other: &Quadratic) -> Quadratic {
        Quadratic { aa: self.aa.add(&other.aa), ab: self.ab.add(&other.ab), bb: self.bb.add(&other.bb) }
    }

    fn scale(&self, s: &Truncated) -> Quadratic {
        Quadratic { aa: self.aa.mul(s), ab: self.ab.mul(s), bb: self.bb.mul(s) }
    }
}

/// 1 + R_1 d + ... + R_order d^order with symbolic R_i.
fn ansatz(order: usize) -> Truncated {
    let mut c = vec![MPoly::one()];
    c.extend((1..=order).map(MPoly::unknown));
    Truncated::from_coeffs(order, c)
}

/// Shift delta(d) such that -E / (e0 (1 + sign d)^(2/3)) = -x + delta.
fn argument_shift(order: usize, sign: i64) -> Truncated {
    let scaled = ansatz(order).mul(&Truncated::binomial(order, sign, &rat(-2, 3)));
    let minus_one = Truncated::constant(order, MPoly::one());
    scaled.sub(&minus_one).scale(&MPoly::x_pow(1).scale(&rat(-1, 1)))
}

/// f(-x + delta) for f = Ai or Ai' as a linear form in Ai(-x), Ai'(-x).
fn shifted(which: ShiftedFunction, delta: &Truncated) -> Linear {
    let order = delta.order();
    let taylor = taylor_shift(which, order);
    let mut a = Truncated::zero(order);
    let mut b = Truncated::zero(order);
    let mut power = Truncated::constant(order, MPoly::one());
    for (k, term) in taylor.iter().enumerate() {
        if k > 0 {
            power = power.mul(delta);
        }
        a = a.add(&power.scale(&term.p.at_minus_x()));
        b = b.add(&power.scale(&term.q.at_minus_x()));
    }
    Linear { a, b }
}

/// Delta-coefficients of an eigenvalue condition after the vanishing rule.
///
/// The omitted overall factor is Ai'(-x)^2 for odd states, Ai(-x)^2 for
/// even states and Ai'(-x) for the bouncer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionExpansion {
    pub condition: Condition,
    /// coefficients[k] multiplies d^k; each is a polynomial in x, R_1..R_order.
    pub coefficients: Vec<MPoly>,
}

pub fn expand_condition(condition: Condition, order: usize) -> Result<ConditionExpansion> {
    check_order(order)?;
    let coefficients = match condition {
        Condition::Bouncer => {
            let ai = shifted(ShiftedFunction::Ai, &argument_shift(order, 1));
            ai.b.into_coeffs()
        }
        Condition::Symmetric(parity) => {
            let shift_r = argument_shift(order, 1);
            let shift_l = argument_shift(order, -1);
            let ai_r = shifted(ShiftedFunction::Ai, &shift_r);
            let aip_r = shifted(ShiftedFunction::AiPrime, &shift_r);
            let ai_l = shifted(ShiftedFunction::Ai, &shift_l);
            let aip_l = shifted(ShiftedFunction::AiPrime, &shift_l);
            let third = rat(1, 3);
            let g = ai_l
                .times(&aip_r)
                .scale(&Truncated::binomial(order, 1, &third))
                .add(&ai_r.times(&aip_l).scale(&Truncated::binomial(order, -1, &third)));
            match parity {
                Parity::Odd => g.bb.into_coeffs(),
                Parity::Even => g.aa.into_coeffs(),
            }
        }
    };
    Ok(ConditionExpansion { condition, coefficients })
}

/// Symmetric-well condition G expanded about an odd or even level.
pub fn expand_g(parity: Parity, order: usize) -> Result<ConditionExpansion> {
    expand_condition(Condition::Symmetric(parity), order)
}

/// Solved shift coefficients R_1..R_order, each a Laurent polynomial in x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSeries {
    pub condition: Condition,
    pub coefficients: Vec<MPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub x_power: i32,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSeriesRecord {
    pub condition: Condition,
    pub order: usize,
    /// Human-readable R_k.
    pub display: Vec<String>,
    pub coefficients: Vec<Vec<TermRecord>>,
}

impl DeltaSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// R_k (1-indexed).
    pub fn coefficient(&self, k: usize) -> Option<&MPoly> {
        k.checked_sub(1).and_then(|i| self.coefficients.get(i))
    }

    /// The R_k as exact rationals, if none depends on x.
    pub fn as_constants(&self) -> Option<Vec<BigRational>> {
        self.coefficients.iter().map(|c| c.as_constant()).collect()
    }

    /// Numeric R_k at a given dimensionless eigenvalue x.
    pub fn values_at(&self, x: f64) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.eval(x, &[])).collect()
    }

    /// x (1 + sum R_k d^k) through `through` (capped at the series order).
    pub fn energy(&self, x: f64, delta: f64, through: usize) -> f64 {
        let r = self.values_at(x);
        let mut sum = 0.0;
        let mut p = 1.0;
        for rk in r.iter().take(through) {
            p *= delta;
            sum += rk * p;
        }
        x * (1.0 + sum)
    }

    pub fn to_record(&self) -> DeltaSeriesRecord {
        DeltaSeriesRecord {
            condition: self.condition,
            order: self.order(),
            display: self.coefficients.iter().map(|c| c.to_string()).collect(),
            coefficients: self
                .coefficients
                .iter()
                .map(|c| {
                    c.terms()
                        .map(|(m, q)| TermRecord {
                            x_power: m.exponent(0),
                            numerator: q.numer().to_string(),
                            denominator: q.denom().to_string(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Solves the expanded condition for R_1..R_order in sequence.
pub fn solve_condition(condition: Condition, order: usize) -> Result<DeltaSeries> {
    let expansion = expand_condition(condition, order)?;
    let mut solved: Vec<MPoly> = Vec::with_capacity(order);
    for k in 1..=order {
        let mut c = expansion.coefficients[k].clone();
        for (i, r) in solved.iter().enumerate() {
            c = c.substitute(i + 1, r);
        }
        if c.degree_in(k) != 1 || (k + 1..=order).any(|j| c.degree_in(j) != 0) {
            return Err(Error::InconsistentSystem(k));
        }
        let lead = c.coefficient_of(k, 1);
        let rest = c.coefficient_of(k, 0);
        let (lc, le) = lead.as_x_monomial().ok_or(Error::InconsistentSystem(k))?;
        solved.push(rest.div_x_monomial(&(-lc), le));
    }
    Ok(DeltaSeries { condition, coefficients: solved })
}

pub fn solve_r(parity: Parity, order: usize) -> Result<DeltaSeries> {
    solve_condition(Condition::Symmetric(parity), order)
}

/// The bouncer series, which must reproduce the binomial series of (1 + d)^(2/3).
pub fn solve_bouncer(order: usize) -> Result<DeltaSeries> {
    solve_condition(Condition::Bouncer, order)
}

/// Exact Stark ratio of the second-order coefficients, kept for reports.
pub fn second_order_mean(even: &BigRational, odd: &BigRational) -> BigRational {
    (even + odd) / (BigRational::one() + BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::x_pow(1)
    }

    fn r(i: usize) -> MPoly {
        MPoly::unknown(i)
    }

    fn c(n: i64, d: i64) -> MPoly {
        MPoly::constant(rat(n, d))
    }

    #[test]
    fn odd_low_order_coefficients() {
        let g = expand_g(Parity::Odd, 3).unwrap();
        assert!(g.coefficients[0].is_zero());
        assert_eq!(g.coefficients[1], (x() * r(1)).scale(&rat(-2, 1)));
        let d2 = g.coefficients[2].substitute(1, &MPoly::zero());
        assert_eq!(d2, (c(14, 1) + c(18, 1) * r(2)) * x() * c(-1, 9));
    }

    #[test]
    fn odd_third_order() {
        // independent of R2; checked against high-precision Taylor coefficients of G
        let g = expand_g(Parity::Odd, 3).unwrap();
        let want = (c(3, 1) * r(3) + c(2, 1) * r(1) - c(2, 1) * r(1) * r(1) * r(1) * x() * x() * x())
            * x()
            * c(-2, 3);
        assert_eq!(g.coefficients[3], want);
    }

    #[test]
    fn second_order_coefficients() {
        let odd = solve_r(Parity::Odd, 3).unwrap().as_constants().unwrap();
        assert_eq!(odd, vec![rat(0, 1), rat(-7, 9), rat(0, 1)]);
        let even = solve_r(Parity::Even, 2).unwrap().as_constants().unwrap();
        assert_eq!(even, vec![rat(0, 1), rat(-5, 9)]);
        assert_eq!(second_order_mean(&even[1], &odd[1]), rat(-2, 3));
    }

    #[test]
    fn bouncer_reproduces_binomial() {
        let s = solve_bouncer(6).unwrap().as_constants().unwrap();
        let b = Truncated::binomial(6, 1, &rat(2, 3));
        for k in 1..=6 {
            assert_eq!(Some(s[k - 1].clone()), b.coeff(k).as_constant());
        }
        assert_eq!(&s[..3], &[rat(2, 3), rat(-1, 9), rat(4, 81)]);
    }

    #[test]
    fn odd_orders_vanish() {
        for parity in [Parity::Odd, Parity::Even] {
            let s = solve_r(parity, 6).unwrap();
            for k in [1, 3, 5] {
                assert!(s.coefficient(k).unwrap().is_zero(), "{parity:?} R{k}");
            }
        }
    }

    #[test]
    fn fourth_order_depends_on_x() {
        let odd = solve_r(Parity::Odd, 4).unwrap();
        assert_eq!(odd.coefficient(4).unwrap(), &(c(4, 243) * x() * x() * x() - c(19, 243)));
        let even = solve_r(Parity::Even, 4).unwrap();
        assert_eq!(even.coefficient(4).unwrap(), &(c(-4, 243) * x() * x() * x() - c(29, 243)));
        assert!(odd.as_constants().is_none());
    }

    #[test]
    fn record_round_trip() {
        let rec = solve_r(Parity::Odd, 4).unwrap().to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: DeltaSeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(rec.display[1], "-7/9");
        assert_eq!(rec.coefficients[1][0].numerator, "-7");
    }

    #[test]
    fn order_limit() {
        assert_eq!(
            solve_r(Parity::Odd, ENGINE_MAX_ORDER + 1),
            Err(Error::OrderTooHigh { requested: ENGINE_MAX_ORDER + 1, limit: ENGINE_MAX_ORDER })
        );
    }
}
