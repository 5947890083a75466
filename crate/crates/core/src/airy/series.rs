//! Maclaurin expansion of Ai, Ai', Bi, Bi' about the origin.
//!
//! With f(x) = sum 1*4*...*(3k-2) x^{3k}/(3k)! and
//! g(x) = sum 2*5*...*(3k-1) x^{3k+1}/(3k+1)!:
//!
//!   Ai = Ai(0) f + Ai'(0) g,   Bi = Bi(0) f + Bi'(0) g
//!
//! and the same relations hold for the derivatives with f', g'.

use super::dd::Dd;

pub(crate) const AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
pub(crate) const AIP0: Dd = Dd::new(-0.2588194037928068, 2.522243111610832e-17);
pub(crate) const BI0: Dd = Dd::new(0.6149266274460007, 5.0899207794891416e-17);
pub(crate) const BIP0: Dd = Dd::new(0.4482883573538264, -2.5363237774417305e-17);

const MAX_TERMS: usize = 400;
const TERM_CUTOFF: f64 = 1e-36;

/// Returns (Ai, Ai', Bi, Bi') at `x` from the power series.
pub(crate) fn airy_series(x: f64) -> (f64, f64, f64, f64) {
    if x == 0.0 {
        return (AI0.to_f64(), AIP0.to_f64(), BI0.to_f64(), BIP0.to_f64());
    }
    let xd = Dd::from_f64(x);
    let x3 = xd * xd * xd;

    let mut f = Dd::from_f64(1.0);
    let mut fp = Dd::ZERO;
    let mut g = xd;
    let mut gp = Dd::from_f64(1.0);

    // term_f = c_k x^{3k}, term_g = d_k x^{3k+1}
    let mut term_f = Dd::from_f64(1.0);
    let mut term_g = xd;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term_f = (term_f * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        term_g = (term_g * x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        f = f + term_f;
        g = g + term_g;
        fp = fp + term_f.mul_f64(3.0 * kf).div_f64(x);
        gp = gp + term_g.mul_f64(3.0 * kf + 1.0).div_f64(x);
        if term_f.abs_f64().max(term_g.abs_f64()) < TERM_CUTOFF {
            break;
        }
    }

    let ai = AI0 * f + AIP0 * g;
    let aip = AI0 * fp + AIP0 * gp;
    let bi = BI0 * f + BIP0 * g;
    let bip = BI0 * fp + BIP0 * gp;
    (ai.to_f64(), aip.to_f64(), bi.to_f64(), bip.to_f64())
}
