//! Power series in delta truncated at a fixed order, with MPoly coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::mpoly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncated {
    /// coeffs[k] multiplies delta^k, k = 0..=order.
    coeffs: Vec<MPoly>,
}

impl Truncated {
    pub fn zero(order: usize) -> Self {
        Truncated { coeffs: vec![MPoly::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: MPoly) -> Self {
        let mut s = Truncated::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<MPoly>) -> Self {
        coeffs.resize(order + 1, MPoly::zero());
        Truncated { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MPoly {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<MPoly> {
        self.coeffs
    }

    pub fn add(&self, other: &Truncated) -> Truncated {
        Truncated {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Truncated) -> Truncated {
        Truncated {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &MPoly) -> Truncated {
        Truncated { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Truncated) -> Truncated {
        let n = self.order();
        let mut out = Truncated::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = std::mem::take(&mut out.coeffs[i + j]) + a * b;
                }
            }
        }
        out
    }

    /// Generalised binomial series of (1 + sign * delta)^p.
    pub fn binomial(order: usize, sign: i64, p: &BigRational) -> Truncated {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = BigRational::one();
        let s = BigRational::from_integer(BigInt::from(sign));
        for k in 0..=order {
            if k > 0 {
                let kk = BigRational::from_integer(BigInt::from(k));
                c = c * (p - &kk + BigRational::one()) / kk * &s;
            }
            coeffs.push(MPoly::constant(c.clone()));
        }
        Truncated { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::mpoly::rat;

    #[test]
    fn binomial_two_thirds() {
        let s = Truncated::binomial(3, 1, &rat(2, 3));
        let want = [rat(1, 1), rat(2, 3), rat(-1, 9), rat(4, 81)];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(s.coeff(k).as_constant(), Some(w.clone()));
        }
    }

    #[test]
    fn inverse_product_is_one() {
        let a = Truncated::binomial(6, -1, &rat(-2, 3));
        let b = Truncated::binomial(6, -1, &rat(2, 3));
        let p = a.mul(&b);
        assert_eq!(p.coeff(0).as_constant(), Some(rat(1, 1)));
        for k in 1..=6 {
            assert!(p.coeff(k).is_zero());
        }
    }
}
