//! The l1-norm of coherence, the relative entropy of coherence and the
//! coherence of formation, with qubit closed forms and the recursions that
//! track both l1 and relative-entropy coherence through a one-step pure-state lift.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binary_entropy, shannon_entropy, spectral_entropy};
use crate::states::{canonicalize_qubit, BlochQubit, DensityMatrix, PureState, NORM_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Sum of off-diagonal magnitudes.
    L1,
    /// S(rho_diag) - S(rho).
    RelEnt,
    /// Convex roof of the dephased entropy; closed forms for pure states and qubits.
    Formation,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::L1, Measure::RelEnt, Measure::Formation];

    /// Short CLI name.
    pub fn name(self) -> &'static str {
        match self {
            Measure::L1 => "l1",
            Measure::RelEnt => "relent",
            Measure::Formation => "formation",
        }
    }

    /// Conventional symbol, e.g. `C_l1`.
    pub fn symbol(self) -> &'static str {
        match self {
            Measure::L1 => "C_l1",
            Measure::RelEnt => "C_r",
            Measure::Formation => "C_f",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" | "c_l1" => Ok(Measure::L1),
            "relent" | "r" | "c_r" => Ok(Measure::RelEnt),
            "formation" | "f" | "c_f" => Ok(Measure::Formation),
            other => Err(Error::Parse(format!("unknown measure '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceValue {
    pub measure: Measure,
    pub value: f64,
}

impl CoherenceValue {
    fn new(measure: Measure, value: f64) -> Self {
        CoherenceValue { measure, value }
    }
}

impl fmt::Display for CoherenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:.6}", self.measure.symbol(), self.value)
    }
}

pub fn c_l1(rho: &DensityMatrix) -> CoherenceValue {
    let m = rho.matrix();
    let n = rho.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm();
            }
        }
    }
    CoherenceValue::new(Measure::L1, sum)
}

pub fn c_r(rho: &DensityMatrix) -> Result<CoherenceValue> {
    let diag_entropy = shannon_entropy(&clamped_populations(rho))?;
    let spectrum = rho.spectrum()?;
    let value = diag_entropy - spectral_entropy(spectrum.eigenvalues());
    Ok(CoherenceValue::new(Measure::RelEnt, value))
}

/// Coherence of formation of a pure state: entropy of its populations.
pub fn c_f_pure(phi: &PureState) -> CoherenceValue {
    let value = phi
        .probabilities()
        .iter()
        .map(|&p| if p > 0.0 { -p * p.log2() } else { 0.0 })
        .sum();
    CoherenceValue::new(Measure::Formation, value)
}

/// H(1/2 + sqrt(1 - t^2)/2).
pub fn c_f_qubit(q: &BlochQubit) -> CoherenceValue {
    let s = (1.0 - q.t() * q.t()).max(0.0).sqrt();
    let value = binary_entropy(0.5 + 0.5 * s).expect("argument lies in [1/2, 1]");
    CoherenceValue::new(Measure::Formation, value)
}

/// Coherence of formation for the inputs where it has a closed form: qubits
/// and pure states of any dimension.
pub fn c_f(rho: &DensityMatrix) -> Result<CoherenceValue> {
    if rho.dim() == 2 {
        return Ok(c_f_qubit(&canonicalize_qubit(rho)?));
    }
    if rho.dim() == 1 || rho.is_pure()? {
        let value = shannon_entropy(&clamped_populations(rho))?;
        return Ok(CoherenceValue::new(Measure::Formation, value));
    }
    Err(Error::UnsupportedInput(format!(
        "coherence of formation of a mixed state in dimension {}",
        rho.dim()
    )))
}

pub fn c_l1_qubit(q: &BlochQubit) -> CoherenceValue {
    CoherenceValue::new(Measure::L1, q.t())
}

/// H(1/2 - |z|/2) - H(1/2 - sqrt(z^2 + t^2)/2).
pub fn c_r_qubit(q: &BlochQubit) -> CoherenceValue {
    let r = q.radius().min(1.0);
    let z = q.z().abs().min(1.0);
    let value = binary_entropy(0.5 - 0.5 * z).expect("argument lies in [0, 1/2]")
        - binary_entropy(0.5 - 0.5 * r).expect("argument lies in [0, 1/2]");
    CoherenceValue::new(Measure::RelEnt, value)
}

/// Evaluates `measure` on a density matrix.
pub fn evaluate(rho: &DensityMatrix, measure: Measure) -> Result<CoherenceValue> {
    match measure {
        Measure::L1 => Ok(c_l1(rho)),
        Measure::RelEnt => c_r(rho),
        Measure::Formation => c_f(rho),
    }
}

/// Evaluates `measure` on a pure state without forming the density matrix
/// where a closed form exists.
pub fn evaluate_pure(phi: &PureState, measure: Measure) -> Result<CoherenceValue> {
    match measure {
        Measure::L1 => {
            // sum_{i != j} |a_i||a_j|
            let mags: Vec<f64> = phi.amplitudes().iter().map(|a| a.norm()).collect();
            let mut value = 0.0;
            for i in 0..mags.len() {
                for j in (i + 1)..mags.len() {
                    value += 2.0 * mags[i] * mags[j];
                }
            }
            Ok(CoherenceValue::new(Measure::L1, value))
        }
        Measure::RelEnt => Ok(CoherenceValue::new(Measure::RelEnt, c_f_pure(phi).value)),
        Measure::Formation => Ok(c_f_pure(phi)),
    }
}

fn clamped_populations(rho: &DensityMatrix) -> Vec<f64> {
    rho.populations().into_iter().map(|p| p.max(0.0)).collect()
}

/// l1 coherence of alpha|phi> + beta|d> from C_l1(phi):
/// |alpha|^2 c_prev + 2|alpha beta| sqrt(1 + c_prev).
pub fn c_l1_lift_recursion(c_prev: f64, alpha: Complex64, beta: Complex64) -> Result<f64> {
    if c_prev.is_nan() || c_prev < 0.0 {
        return Err(Error::Domain(format!(
            "previous coherence {c_prev} must be non-negative"
        )));
    }
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    let residual = (norm_sq - 1.0).abs();
    if residual > NORM_TOL {
        return Err(Error::Normalization { norm_sq, residual });
    }
    Ok(alpha.norm_sqr() * c_prev + 2.0 * alpha.norm() * beta.norm() * (1.0 + c_prev).sqrt())
}

/// Relative entropy of coherence of alpha|phi> + beta|d> from C_r(phi):
/// |alpha|^2 c_prev + H(|alpha|^2).
pub fn c_r_lift_recursion(c_prev: f64, alpha_sq: f64) -> Result<f64> {
    if c_prev.is_nan() || c_prev < 0.0 {
        return Err(Error::Domain(format!(
            "previous coherence {c_prev} must be non-negative"
        )));
    }
    if !(alpha_sq > 0.0 && alpha_sq < 1.0) {
        return Err(Error::Domain(format!(
            "|alpha|^2 = {alpha_sq} must lie in (0, 1)"
        )));
    }
    Ok(alpha_sq * c_prev + binary_entropy(alpha_sq)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{from_bloch_xyz, lift_pure, maximally_coherent};

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn rho1() -> DensityMatrix {
        from_bloch_xyz(0.8, 0.0, 0.6).unwrap()
    }

    fn rho2() -> DensityMatrix {
        from_bloch_xyz(2.0 / 6f64.sqrt(), 0.0, 0.0).unwrap()
    }

    fn phi1() -> PureState {
        PureState::from_real(&[(12.0f64 / 25.0).sqrt(), (12.0f64 / 25.0).sqrt(), 0.2]).unwrap()
    }

    fn phi2() -> PureState {
        PureState::from_real(&[0.7f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()]).unwrap()
    }

    #[test]
    fn l1_values() {
        close(c_l1(&rho1()).value, 0.8, 1e-15);
        close(c_l1(&rho2()).value, 2.0 / 6f64.sqrt(), 1e-15);
        close(c_l1(&phi1().density()).value, 1.5143, 5e-5);
        close(c_l1(&phi2().density()).value, 1.5603, 5e-5);
        close(
            c_l1(&maximally_coherent(3).unwrap().density()).value,
            2.0,
            1e-14,
        );
    }

    #[test]
    fn relative_entropy_values() {
        close(c_r(&rho1()).unwrap().value, 0.7219, 5e-5);
        close(c_r(&rho2()).unwrap().value, 0.5576, 5e-4);
        let delta = DensityMatrix::from_populations(&[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(c_r(&delta).unwrap().value, 0.0);
    }

    #[test]
    fn formation_values() {
        close(c_f_pure(&phi2()).value, 1.1568, 5e-5);
        assert_eq!(c_f_pure(&PureState::basis(4, 2).unwrap()).value, 0.0);
        close(
            c_f_pure(&maximally_coherent(5).unwrap()).value,
            5f64.log2(),
            1e-14,
        );

        close(
            c_f_qubit(&BlochQubit::new(0.8, 0.6).unwrap()).value,
            0.7219,
            5e-5,
        );
        close(
            c_f_qubit(&BlochQubit::new(2.0 / 6f64.sqrt(), 0.0).unwrap()).value,
            0.7440,
            5e-5,
        );
        assert_eq!(c_f_qubit(&BlochQubit::new(0.0, 0.3).unwrap()).value, 0.0);
    }

    #[test]
    fn formation_dispatch() {
        close(c_f(&rho2()).unwrap().value, 0.7440, 5e-5);
        close(c_f(&phi1().density()).unwrap().value, 1.2023, 5e-5);
        let mixed = DensityMatrix::maximally_mixed(3);
        assert!(matches!(c_f(&mixed), Err(Error::UnsupportedInput(_))));
    }

    #[test]
    fn qubit_closed_forms() {
        let q = BlochQubit::new(0.8, 0.6).unwrap();
        assert_eq!(c_l1_qubit(&q).value, 0.8);
        assert_eq!(c_l1_qubit(&BlochQubit::new(0.0, 0.3).unwrap()).value, 0.0);
        assert_eq!(c_l1_qubit(&BlochQubit::new(1.0, 0.0).unwrap()).value, 1.0);

        close(c_r_qubit(&q).value, 0.7219, 5e-5);
        close(
            c_r_qubit(&BlochQubit::new(2.0 / 6f64.sqrt(), 0.0).unwrap()).value,
            0.5576,
            5e-4,
        );
        assert_eq!(c_r_qubit(&BlochQubit::new(0.0, -0.4).unwrap()).value, 0.0);
        // even in z
        let a = c_r_qubit(&BlochQubit::new(0.3, 0.5).unwrap()).value;
        let b = c_r_qubit(&BlochQubit::new(0.3, -0.5).unwrap()).value;
        assert_eq!(a, b);
    }

    #[test]
    fn pure_evaluation_matches_density() {
        for phi in [phi1(), phi2()] {
            for m in [Measure::L1, Measure::RelEnt, Measure::Formation] {
                let direct = evaluate(&phi.density(), m).unwrap().value;
                let pure = evaluate_pure(&phi, m).unwrap().value;
                close(direct, pure, 1e-12);
            }
        }
    }

    #[test]
    fn lift_recursion_examples() {
        let s = Complex64::new(0.5f64.sqrt(), 0.0);
        close(c_l1_lift_recursion(0.0, s, s).unwrap(), 1.0, 1e-15);
        close(
            c_l1_lift_recursion(1.5143, s, s).unwrap(),
            0.75715 + 2.5143f64.sqrt(),
            1e-12,
        );
        let a = Complex64::new(3f64.sqrt() / 2.0, 0.0);
        let b = Complex64::new(0.5, 0.0);
        close(c_l1_lift_recursion(2.0, a, b).unwrap(), 3.0, 1e-14);

        close(c_r_lift_recursion(0.0, 0.5).unwrap(), 1.0, 1e-15);
        close(c_r_lift_recursion(1.2023, 0.5).unwrap(), 1.60115, 1e-12);
        close(c_r_lift_recursion(1.1568, 0.5).unwrap(), 1.5784, 1e-12);

        assert!(matches!(
            c_l1_lift_recursion(1.0, s, Complex64::new(0.9, 0.0)),
            Err(Error::Normalization { .. })
        ));
        assert!(c_r_lift_recursion(1.0, 1.0).is_err());
        assert!(c_r_lift_recursion(1.0, 0.0).is_err());
        assert!(c_r_lift_recursion(-0.1, 0.5).is_err());
    }

    #[test]
    fn recursions_against_direct_lift() {
        let s = Complex64::new(0.5f64.sqrt(), 0.0);
        let lifted = lift_pure(&phi1(), s, &[s]).unwrap();
        let direct_l1 = c_l1(&lifted.density()).value;
        let prev_l1 = c_l1(&phi1().density()).value;
        close(
            c_l1_lift_recursion(prev_l1, s, s).unwrap(),
            direct_l1,
            1e-12,
        );
        close(direct_l1, 2.3428, 5e-5);

        let direct_r = c_r(&lifted.density()).unwrap().value;
        let prev_r = c_f_pure(&phi1()).value;
        close(c_r_lift_recursion(prev_r, 0.5).unwrap(), direct_r, 1e-12);
        close(direct_r, 0.5 * prev_r + 1.0, 1e-12);

        // maximally coherent qutrit lifted with |alpha|^2 = 3/4 is maximally coherent in d = 4
        let m3 = maximally_coherent(3).unwrap();
        let a = Complex64::new(3f64.sqrt() / 2.0, 0.0);
        let b = Complex64::new(0.5, 0.0);
        let lifted = lift_pure(&m3, a, &[b]).unwrap();
        close(c_l1(&lifted.density()).value, 3.0, 1e-13);
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("trace".parse::<Measure>().is_err());
    }
}
