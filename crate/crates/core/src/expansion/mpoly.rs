//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Variable 0 is the unperturbed eigenvalue x (negative powers allowed);
//! variable i >= 1 is the unknown shift coefficient R_i.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    fn normalized(mut v: Vec<i32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponent(&self, var: usize) -> i32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    fn with_exponent(&self, var: usize, e: i32) -> Self {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = e;
        Monomial::normalized(v)
    }

    fn product(&self, other: &Monomial) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::normalized(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn one() -> Self {
        MPoly::constant(BigRational::one())
    }

    /// x^e.
    pub fn x_pow(e: i32) -> Self {
        MPoly::monomial(0, e)
    }

    /// The unknown R_i.
    pub fn unknown(i: usize) -> Self {
        assert!(i >= 1, "unknowns are numbered from 1");
        MPoly::monomial(i, 1)
    }

    fn monomial(var: usize, e: i32) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::default().with_exponent(var, e), BigRational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    /// Highest power of `var` present (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Whether any variable other than x occurs.
    pub fn depends_on_unknowns(&self) -> bool {
        self.terms.keys().any(|m| m.0.len() > 1)
    }

    /// Part of the polynomial multiplying var^power, with var removed.
    pub fn coefficient_of(&self, var: usize, power: i32) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m.exponent(var) == power {
                out.add_term(m.with_exponent(var, 0), c.clone());
            }
        }
        out
    }

    /// Replaces `var` (non-negative powers only) by `value`.
    pub fn substitute(&self, var: usize, value: &MPoly) -> Self {
        let mut out = MPoly::zero();
        let mut powers: Vec<MPoly> = vec![MPoly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            assert!(e >= 0, "cannot substitute into a negative power");
            while powers.len() <= e as usize {
                let next = powers.last().expect("non-empty") * value;
                powers.push(next);
            }
            let rest = MPoly::constant(c.clone()) * MPoly::from_monomial(m.with_exponent(var, 0));
            out = out + rest * powers[e as usize].clone();
        }
        out
    }

    fn from_monomial(m: Monomial) -> Self {
        let mut p = MPoly::zero();
        p.add_term(m, BigRational::one());
        p
    }

    /// If the polynomial is c * x^e, returns (c, e).
    pub fn as_x_monomial(&self) -> Option<(BigRational, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        (m.0.len() <= 1).then(|| (c.clone(), m.exponent(0)))
    }

    /// Exact division by c * x^e.
    pub fn div_x_monomial(&self, c: &BigRational, e: i32) -> Self {
        let inv = c.recip();
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.with_exponent(0, m.exponent(0) - e), v * &inv))
                .collect(),
        }
    }

    /// Numeric value with x = `x` and every unknown set from `unknowns[i-1]`.
    pub fn eval(&self, x: f64, unknowns: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = to_f64(c) * x.powi(m.exponent(0));
                for (i, &e) in m.0.iter().enumerate().skip(1) {
                    v *= unknowns.get(i - 1).copied().unwrap_or(0.0).powi(e);
                }
                v
            })
            .sum()
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

/// "p/q" (or "p" when q = 1).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total x power first for readability
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (var, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if var == 0 { "x".to_string() } else { format!("R{var}") };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            let coeff = format_rational(&mag);
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x = MPoly::x_pow(1);
        let r1 = MPoly::unknown(1);
        let p = (x.clone() * r1.clone()).scale(&rat(-2, 1)) + MPoly::constant(rat(1, 3));
        assert_eq!(p.to_string(), "-2*x*R1 + 1/3");
        assert_eq!((p.clone() - p.clone()), MPoly::zero());
        let sq = &p * &p;
        assert_eq!(sq.degree_in(1), 2);
        assert_eq!(sq.coefficient_of(1, 2), MPoly::x_pow(2).scale(&rat(4, 1)));
    }

    #[test]
    fn substitution_and_monomial_division() {
        let x = MPoly::x_pow(1);
        let r1 = MPoly::unknown(1);
        let p = &(&r1 * &r1) * &x;
        let q = p.substitute(1, &MPoly::constant(rat(-7, 9)));
        assert_eq!(q.as_x_monomial(), Some((rat(49, 81), 1)));
        let d = q.div_x_monomial(&rat(7, 9), 3);
        assert_eq!(d.as_x_monomial(), Some((rat(7, 9), -2)));
        assert!((d.eval(2.0, &[]) - 7.0 / 36.0).abs() < 1e-15);
    }
}
