//! Real-argument Airy functions, their zeros, and closed-form antiderivatives
//! of Airy products.

mod asymptotic;
mod dd;
pub mod integrals;
mod series;
pub mod zeros;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use integrals::{
    antideriv_derivative_product, antideriv_derivative_product_in, antideriv_product, antideriv_product_in,
    definite_derivative_product_from, definite_product_folded, definite_product_from, AiryScalar, Jet,
    Moment,
};
pub use zeros::{find_zero, handbook_density_seed, handbook_seed, ZeroKind, ZeroTable};

/// |x| at and beyond which the asymptotic expansions are used.
///
/// At |x| = 9 the optimally truncated asymptotic series is accurate to a few
/// ulps (zeta = 18), while the double-double Maclaurin sum still has ~14
/// digits to spare after cancellation. Both branches agree to ~1e-13
/// (relative to the local envelope) on [8, 10].
pub const X_SWITCH: f64 = 9.0;

/// Ai, Ai', Bi, Bi' at one point. Second derivatives follow from y'' = x y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryPair {
    pub x: f64,
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

impl AiryPair {
    pub fn aipp(&self) -> f64 {
        self.x * self.ai
    }

    pub fn bipp(&self) -> f64 {
        self.x * self.bi
    }

    /// Ai Bi' - Ai' Bi, which equals 1/pi identically.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bip - self.aip * self.bi
    }
}

/// Evaluates Ai, Ai', Bi, Bi' at a finite real `x`.
pub fn airy_eval(x: f64) -> Result<AiryPair> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    Ok(airy_unchecked(x))
}

pub(crate) fn airy_unchecked(x: f64) -> AiryPair {
    let (ai, aip, bi, bip) =
        if x.abs() < X_SWITCH { series::airy_series(x) } else { asymptotic::airy_asymptotic(x) };
    AiryPair { x, ai, aip, bi, bip }
}

/// Ai(x) and Ai'(x) only.
#[inline]
pub fn ai(x: f64) -> (f64, f64) {
    let p = airy_unchecked(x);
    (p.ai, p.aip)
}

/// Both branches evaluated at the same point, for overlap diagnostics.
pub fn branch_values(x: f64) -> (AiryPair, AiryPair) {
    let (ai, aip, bi, bip) = series::airy_series(x);
    let s = AiryPair { x, ai, aip, bi, bip };
    let (ai, aip, bi, bip) = asymptotic::airy_asymptotic(x);
    (s, AiryPair { x, ai, aip, bi, bip })
}

/// Magnitude envelope used to compare values across branches: the
/// non-oscillating modulus for x < 0 and the leading exponential otherwise.
pub fn envelope(x: f64) -> (f64, f64, f64, f64) {
    let t = x.abs().max(1.0);
    let q = t.powf(0.25);
    let r = 1.0 / std::f64::consts::PI.sqrt();
    if x < 0.0 {
        (r / q, r * q, r / q, r * q)
    } else {
        let zeta = 2.0 / 3.0 * t * t.sqrt();
        let d = (-zeta).exp();
        let g = zeta.exp();
        (0.5 * r / q * d, 0.5 * r * q * d, r / q * g, r * q * g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // 40-digit reference evaluation, rounded to f64
    const REFERENCE: &[(f64, f64, f64, f64, f64)] = &[
        (-30.0, -0.08796818845684216, 1.228620602637485, -0.22444694220056632, -0.48369472582768147),
        (-20.0, -0.1764061270779847, 0.8928628567364713, -0.20013930932265134, -0.7914290338395364),
        (-9.0, -0.022133721547341403, -0.9756639809263316, 0.3249473234552449, -0.05740051384366925),
        (-5.0, 0.35076100902411433, 0.32719281855444315, -0.13836913490160058, 0.7784117730018992),
        (-1.0, 0.5355608832923521, -0.01016056711664521, 0.1039973894969446, 0.5923756264227924),
        (1.0, 0.13529241631288141, -0.1591474412967932, 1.2074235949528713, 0.9324359333927756),
        (5.0, 0.00010834442813607442, -0.0002474138908684625, 657.7920441711711, 1435.8190802179824),
        (9.0, 2.47116843087249e-09, -7.480641389658946e-09, 21472868.891435347, 63807489.78090821),
        (12.0, 1.3931846888753607e-13, -4.854736554985309e-13, 329807225829.07416, 1135507502443.3708),
        (25.0, 8.116026824691387e-38, -4.066089337243281e-37, 3.9220307780413816e+35, 1.957073508323331e+36),
    ];

    fn close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * scale
    }

    #[test]
    fn origin_values() {
        let p = airy_eval(0.0).unwrap();
        assert!((p.ai - 0.355028053887817).abs() < 1e-15);
        assert!((p.aip + 0.258819403792807).abs() < 1e-15);
        assert!((p.wronskian() - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn matches_reference_table() {
        for &(x, ai, aip, bi, bip) in REFERENCE {
            let p = airy_eval(x).unwrap();
            let (ea, eap, eb, ebp) = envelope(x);
            assert!(close(p.ai, ai, ea, 1e-12), "Ai({x}) = {} vs {ai}", p.ai);
            assert!(close(p.aip, aip, eap, 1e-12), "Ai'({x}) = {} vs {aip}", p.aip);
            assert!(close(p.bi, bi, eb, 1e-12), "Bi({x}) = {} vs {bi}", p.bi);
            assert!(close(p.bip, bip, ebp, 1e-12), "Bi'({x}) = {} vs {bip}", p.bip);
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(airy_eval(f64::NAN), Err(Error::NonFinite(_))));
        assert!(airy_eval(f64::INFINITY).is_err());
    }

    #[test]
    fn branches_agree_in_overlap_window() {
        let mut x = 8.0;
        while x <= 10.0 {
            for &s in &[-1.0, 1.0] {
                let (a, b) = branch_values(s * x);
                let (ea, eap, eb, ebp) = envelope(s * x);
                assert!((a.ai - b.ai).abs() / ea < 1e-11, "Ai at {}", s * x);
                assert!((a.aip - b.aip).abs() / eap < 1e-11, "Ai' at {}", s * x);
                assert!((a.bi - b.bi).abs() / eb < 1e-11, "Bi at {}", s * x);
                assert!((a.bip - b.bip).abs() / ebp < 1e-11, "Bi' at {}", s * x);
            }
            x += 0.05;
        }
    }

    #[test]
    fn second_difference_reproduces_airy_equation() {
        let h = 1e-3;
        for &x in &[-7.3, -2.0, 0.4, 3.1, 9.5] {
            let d2 = (ai(x + h).0 - 2.0 * ai(x).0 + ai(x - h).0) / (h * h);
            let expect = x * ai(x).0;
            assert!((d2 - expect).abs() < 1e-6 * (1.0 + expect.abs()), "{x}: {d2} vs {expect}");
        }
    }
}
