//! Large-|x| asymptotic expansions in zeta = (2/3)|x|^{3/2}.
//!
//! u_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1)),
//! v_k = -(6k+1)/(6k-1) u_k.
//! Sums are cut at the smallest term (optimal truncation).

use std::f64::consts::{FRAC_PI_4, PI};

const MAX_TERMS: usize = 60;

fn coefficients() -> ([f64; MAX_TERMS], [f64; MAX_TERMS]) {
    let mut u = [0.0; MAX_TERMS];
    let mut v = [0.0; MAX_TERMS];
    u[0] = 1.0;
    v[0] = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

/// Sums of c_k / zeta^k split by parity of k, each with alternating sign,
/// plus the plain alternating and non-alternating sums.
struct Sums {
    alternating: f64,
    direct: f64,
    even_alt: f64,
    odd_alt: f64,
}

fn sums(c: &[f64; MAX_TERMS], zeta: f64) -> Sums {
    let mut s = Sums { alternating: 0.0, direct: 0.0, even_alt: 0.0, odd_alt: 0.0 };
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    for (k, &ck) in c.iter().enumerate() {
        let term = ck * power;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        let alt = if k % 2 == 0 { term } else { -term };
        s.alternating += alt;
        s.direct += term;
        // (-1)^j c_{2j} / zeta^{2j} and (-1)^j c_{2j+1} / zeta^{2j+1}
        let j = k / 2;
        let signed = if j % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            s.even_alt += signed;
        } else {
            s.odd_alt += signed;
        }
        if term.abs() < 1e-18 * s.direct.abs().max(1.0) {
            break;
        }
        power /= zeta;
    }
    s
}

/// (Ai, Ai', Bi, Bi') for large |x|.
pub(crate) fn airy_asymptotic(x: f64) -> (f64, f64, f64, f64) {
    let (u, v) = coefficients();
    let t = x.abs();
    let zeta = 2.0 / 3.0 * t * t.sqrt();
    let q = t.powf(0.25);
    let rsqpi = 1.0 / PI.sqrt();
    let su = sums(&u, zeta);
    let sv = sums(&v, zeta);
    if x > 0.0 {
        let decay = (-zeta).exp();
        let growth = zeta.exp();
        let ai = 0.5 * rsqpi / q * decay * su.alternating;
        let aip = -0.5 * rsqpi * q * decay * sv.alternating;
        let bi = rsqpi / q * growth * su.direct;
        let bip = rsqpi * q * growth * sv.direct;
        (ai, aip, bi, bip)
    } else {
        let phase = zeta - FRAC_PI_4;
        let (s, c) = phase.sin_cos();
        let ai = rsqpi / q * (c * su.even_alt + s * su.odd_alt);
        let aip = rsqpi * q * (s * sv.even_alt - c * sv.odd_alt);
        let bi = rsqpi / q * (-s * su.even_alt + c * su.odd_alt);
        let bip = rsqpi * q * (c * sv.even_alt + s * sv.odd_alt);
        (ai, aip, bi, bip)
    }
}
