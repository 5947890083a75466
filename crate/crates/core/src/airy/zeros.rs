//! Zeros of Ai and Ai' on the negative axis.
//!
//! Both are returned as positive magnitudes: Ai(-zeta_n) = 0 and
//! Ai'(-chi_n) = 0, numbered from 1.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ai;
use crate::error::{Error, Result};

/// Default residual tolerance for |Ai(-zeta_n)| and |Ai'(-chi_n)|.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-12;

const MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    /// Zeros of Ai.
    Ai,
    /// Zeros of Ai'.
    AiPrime,
}

impl ZeroKind {
    /// Phase offset in [3 pi (n - offset) / 2]^{2/3}.
    fn offset(self) -> f64 {
        match self {
            ZeroKind::Ai => 0.25,
            ZeroKind::AiPrime => 0.75,
        }
    }

    /// The function whose root is sought and its derivative with respect to t,
    /// both evaluated at x = -t.
    fn eval(self, t: f64) -> (f64, f64) {
        let (a, ap) = ai(-t);
        match self {
            ZeroKind::Ai => (a, -ap),
            // d/dt Ai'(-t) = -Ai''(-t) = t Ai(-t)
            ZeroKind::AiPrime => (ap, t * a),
        }
    }
}

fn phase_to_magnitude(phase: f64) -> f64 {
    (1.5 * PI * phase).max(0.0).powf(2.0 / 3.0)
}

/// Handbook asymptotic estimate [3 pi (n - 1/4) / 2]^{2/3} for zeta_n and
/// [3 pi (n - 3/4) / 2]^{2/3} for chi_n.
pub fn handbook_seed(kind: ZeroKind, n: usize) -> f64 {
    handbook_density_seed(kind, n as f64)
}

/// The same estimate at a real-valued index, for smooth tail integrals.
pub fn handbook_density_seed(kind: ZeroKind, k: f64) -> f64 {
    phase_to_magnitude(k - kind.offset())
}

/// The `n`-th zero magnitude of Ai (`ZeroKind::Ai`) or Ai' (`ZeroKind::AiPrime`).
///
/// Newton from the handbook seed, safeguarded by a sign-change bracket built
/// half a period either side of the seed; any step leaving the bracket is
/// replaced by bisection.
pub fn find_zero(kind: ZeroKind, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    let phase = n as f64 - kind.offset();
    let mut lo = phase_to_magnitude(phase - 0.5);
    let mut hi = phase_to_magnitude(phase + 0.5);
    let (mut f_lo, _) = kind.eval(lo);
    let (f_hi, _) = kind.eval(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { lo, hi });
    }

    let mut t = handbook_seed(kind, n);
    for _ in 0..MAX_ITER {
        let (f, df) = kind.eval(t);
        if f == 0.0 {
            return Ok(t);
        }
        if f.signum() == f_lo.signum() {
            lo = t;
            f_lo = f;
        } else {
            hi = t;
        }
        let newton = t - f / df;
        let next = if df != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let step = (next - t).abs();
        t = next;
        if step <= 2.0 * f64::EPSILON * t || hi - lo <= 2.0 * f64::EPSILON * t {
            return Ok(polish(kind, t));
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITER })
}

/// The neighbouring double with the smallest residual.
fn polish(kind: ZeroKind, t: f64) -> f64 {
    [t.next_down(), t, t.next_up()]
        .into_iter()
        .min_by(|a, b| kind.eval(*a).0.abs().total_cmp(&kind.eval(*b).0.abs()))
        .unwrap_or(t)
}

/// First `count` zeros of Ai and of Ai', verified against a residual tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    zeta: Vec<f64>,
    chi: Vec<f64>,
    residual_tol: f64,
}

impl ZeroTable {
    pub fn build(count: usize) -> Result<Self> {
        Self::build_with_tolerance(count, DEFAULT_RESIDUAL_TOL)
    }

    /// Residual checks scale with the local slope of the function at the
    /// root (|Ai'(-zeta)| ~ zeta^{1/4}, |Ai''(-chi)| ~ chi^{3/4}) once that
    /// slope exceeds one; the nominal tolerance applies below that.
    pub fn build_with_tolerance(count: usize, residual_tol: f64) -> Result<Self> {
        let mut zeta = Vec::with_capacity(count);
        let mut chi = Vec::with_capacity(count);
        for n in 1..=count {
            let z = find_zero(ZeroKind::Ai, n)?;
            let c = find_zero(ZeroKind::AiPrime, n)?;
            for (kind, root) in [(ZeroKind::Ai, z), (ZeroKind::AiPrime, c)] {
                let (f, df) = kind.eval(root);
                let tol = residual_tol * df.abs().max(1.0);
                if f.abs() >= tol {
                    return Err(Error::ResidualTooLarge { n, residual: f.abs(), tolerance: tol });
                }
            }
            zeta.push(z);
            chi.push(c);
        }
        Ok(ZeroTable { zeta, chi, residual_tol })
    }

    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    /// zeta_n, 1-indexed.
    pub fn zeta(&self, n: usize) -> f64 {
        self.zeta[n - 1]
    }

    /// chi_n, 1-indexed.
    pub fn chi(&self, n: usize) -> f64 {
        self.chi[n - 1]
    }

    pub fn get(&self, kind: ZeroKind, n: usize) -> f64 {
        match kind {
            ZeroKind::Ai => self.zeta(n),
            ZeroKind::AiPrime => self.chi(n),
        }
    }

    pub fn zetas(&self) -> &[f64] {
        &self.zeta
    }

    pub fn chis(&self) -> &[f64] {
        &self.chi
    }

    /// First index n (1-based) where chi_n < zeta_n < chi_{n+1} fails, if any.
    pub fn interleaving_violation(&self) -> Option<usize> {
        (0..self.len()).find_map(|i| {
            let ok_low = self.chi[i] < self.zeta[i];
            let ok_high = i + 1 >= self.len() || self.zeta[i] < self.chi[i + 1];
            (!(ok_low && ok_high)).then_some(i + 1)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // plain f64 Maclaurin evaluation, adequate for |x| < 3
    fn ai_plain(x: f64) -> (f64, f64) {
        let c1 = 0.355_028_053_887_817_2;
        let c2 = 0.258_819_403_792_806_8;
        let (mut f, mut g, mut fp, mut gp) = (1.0, x, 0.0, 1.0);
        let (mut tf, mut tg) = (1.0, x);
        let x3 = x * x * x;
        for k in 1..60 {
            let k = k as f64;
            tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
            tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
            f += tf;
            g += tg;
            fp += tf * 3.0 * k / x;
            gp += tg * (3.0 * k + 1.0) / x;
        }
        (c1 * f - c2 * g, c1 * fp - c2 * gp)
    }

    fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let flo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn first_zeros_match_bisection_oracle() {
        let z1 = bisect(-3.0, -2.0, |x| ai_plain(x).0);
        let c1 = bisect(-2.0, -1.0, |x| ai_plain(x).1);
        assert!((-z1 - 2.338_107_41).abs() < 1e-8);
        assert!((-c1 - 1.018_792_97).abs() < 1e-8);
        assert!((find_zero(ZeroKind::Ai, 1).unwrap() + z1).abs() < 1e-12);
        assert!((find_zero(ZeroKind::AiPrime, 1).unwrap() + c1).abs() < 1e-12);
    }

    #[test]
    fn hundredth_zero_close_to_seed() {
        let z = find_zero(ZeroKind::Ai, 100).unwrap();
        let seed = handbook_seed(ZeroKind::Ai, 100);
        assert!(((z - seed) / seed).abs() < 1e-6);
        // 60.455557274116699 from a 40-digit evaluation
        assert!((z - 60.455_557_274_116_7).abs() < 1e-11);
    }

    #[test]
    fn zero_index_rejected() {
        assert_eq!(find_zero(ZeroKind::Ai, 0), Err(Error::InvalidIndex(0)));
    }

    #[test]
    fn table_is_interleaved_and_increasing() {
        let t = ZeroTable::build(50).unwrap();
        assert_eq!(t.interleaving_violation(), None);
        assert!(t.zetas().windows(2).all(|w| w[0] < w[1]));
        assert!(t.chis().windows(2).all(|w| w[0] < w[1]));
        assert!((t.zeta(2) - 4.087_949_444_130_97).abs() < 1e-12);
        assert!((t.chi(2) - 3.248_197_582_179_836).abs() < 1e-12);
    }
}
