use linstark::Parity;
use linstark_web::demo::{eigencondition_curve, stark_curve, wavefunction};

#[test]
fn curve_roots_are_sign_changes() {
    let c = eigencondition_curve(0.3, 12.0, 2001).unwrap();
    assert_eq!(c.energy.len(), 2001);
    let crossings = c.g.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert_eq!(crossings, c.roots.len());
    assert_eq!(c.roots[0].parity, Parity::Even);
    assert!(c.roots.windows(2).all(|w| w[0].energy < w[1].energy));
}

#[test]
fn wavefunction_is_normalised() {
    let w = wavefunction(Parity::Odd, 2, 0.5, 20.0, 4001).unwrap();
    let h = w.z[1] - w.z[0];
    let norm: f64 = w.psi.iter().map(|p| p * p * h).sum();
    assert!((norm - 1.0).abs() < 1e-6, "{norm}");
    assert!(w.energy < w.unperturbed_energy);
}

#[test]
fn stark_curve_starts_at_unperturbed_level() {
    let s = stark_curve(Parity::Even, 1, 0.5, 11).unwrap();
    assert_eq!(s.coefficients[1], "-5/9");
    assert!((s.exact[0] - 1.018792971647471).abs() < 1e-13);
    assert!((s.series[1] - s.exact[1]).abs() < 1e-9);
    assert!(s.exact.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(eigencondition_curve(0.3, 12.0, 1).is_err());
    assert!(eigencondition_curve(1.2, 12.0, 100).is_err());
    assert!(wavefunction(Parity::Even, 0, 0.1, 10.0, 100).is_err());
    assert!(stark_curve(Parity::Odd, 1, 0.99, 10).is_err());
}
