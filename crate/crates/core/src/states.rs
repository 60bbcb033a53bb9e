//! Validated density matrices, pure states and the canonical qubit form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, Spectrum, HERMITIAN_TOL};

/// Allowed |tr(rho) - 1|.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as positive semidefinite.
pub const PSD_SLACK: f64 = 1e-9;
/// Allowed |norm^2 - 1| for pure states and lift coefficients.
pub const NORM_TOL: f64 = 1e-10;
/// Default off-diagonal cutoff for incoherence.
pub const INCOHERENCE_TOL: f64 = 1e-10;
/// Slack on t^2 + z^2 <= 1.
pub const BLOCH_TOL: f64 = 1e-12;

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m`, checking Hermiticity, then trace, then positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = m.hermitian_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let trace = m.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace {
                trace,
                residual: (trace - 1.0).abs(),
            });
        }
        let spectrum = hermitian_eigenvalues(&m)?;
        if spectrum.min() < -PSD_SLACK {
            return Err(Error::NotPositive {
                min_eigenvalue: spectrum.min(),
            });
        }
        Ok(DensityMatrix { matrix: m })
    }

    /// Diagonal (incoherent) state with the given populations.
    pub fn from_populations(p: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(p))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn from_pure(phi: &PureState) -> Self {
        DensityMatrix {
            matrix: ComplexMatrix::outer(phi.amplitudes()),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Diagonal populations, real parts of rho_ii.
    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// True when the state is rank one up to the PSD slack.
    pub fn is_pure(&self) -> Result<bool> {
        Ok(self.spectrum()?.max() >= 1.0 - PSD_SLACK)
    }
}

/// Validates a matrix as a density matrix.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(m)
}

/// A unit-norm amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Domain(
                "pure state needs at least one amplitude".into(),
            ));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        check_norm(&amplitudes)?;
        Ok(PureState { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Computational basis state |index>.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::Domain(format!(
                "basis index {index} out of range for dim {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(PureState { amplitudes: amps })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Populations |a_i|^2.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

fn check_norm(amplitudes: &[Complex64]) -> Result<()> {
    let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    let residual = (norm_sq - 1.0).abs();
    if residual > NORM_TOL {
        return Err(Error::Normalization { norm_sq, residual });
    }
    Ok(())
}

/// Canonical real qubit form rho(t, z) = 1/2 [[1+z, t], [t, 1-z]].
///
/// `t` is the off-diagonal magnitude (equal to the l1 coherence); `z` is kept
/// signed, measures only depend on |z|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochQubit {
    t: f64,
    z: f64,
}

impl BlochQubit {
    pub fn new(t: f64, z: f64) -> Result<Self> {
        if !t.is_finite() || !z.is_finite() {
            return Err(Error::NonFinite);
        }
        if t < 0.0 {
            return Err(Error::Domain(format!("t = {t} must be non-negative")));
        }
        if t > 1.0 + BLOCH_TOL {
            return Err(Error::Domain(format!("t = {t} exceeds 1")));
        }
        if t * t + z * z > 1.0 + BLOCH_TOL {
            return Err(Error::Domain(format!(
                "(t, z) = ({t}, {z}) lies outside the Bloch ball"
            )));
        }
        Ok(BlochQubit { t, z })
    }

    /// Pure qubit with off-diagonal magnitude `t` and z = +sqrt(1 - t^2).
    pub fn pure(t: f64) -> Result<Self> {
        if !(0.0..=1.0 + BLOCH_TOL).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [0, 1]")));
        }
        let t = t.min(1.0);
        Self::new(t, (1.0 - t * t).max(0.0).sqrt())
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Bloch vector length sqrt(t^2 + z^2).
    pub fn radius(&self) -> f64 {
        self.t.hypot(self.z)
    }

    pub fn to_density(&self) -> DensityMatrix {
        let h = 0.5;
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = Complex64::new(h * (1.0 + self.z), 0.0);
        m[(0, 1)] = Complex64::new(h * self.t, 0.0);
        m[(1, 0)] = Complex64::new(h * self.t, 0.0);
        m[(1, 1)] = Complex64::new(h * (1.0 - self.z), 0.0);
        DensityMatrix { matrix: m }
    }
}

/// rho = 1/2 [[1+z, x-iy], [x+iy, 1-z]].
pub fn from_bloch_xyz(x: f64, y: f64, z: f64) -> Result<DensityMatrix> {
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(Error::NonFinite);
    }
    let r2 = x * x + y * y + z * z;
    if r2 > 1.0 + BLOCH_TOL {
        return Err(Error::Domain(format!(
            "Bloch vector ({x}, {y}, {z}) has squared length {r2} > 1"
        )));
    }
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex64::new(0.5 * (1.0 + z), 0.0);
    m[(0, 1)] = Complex64::new(0.5 * x, -0.5 * y);
    m[(1, 0)] = Complex64::new(0.5 * x, 0.5 * y);
    m[(1, 1)] = Complex64::new(0.5 * (1.0 - z), 0.0);
    Ok(DensityMatrix { matrix: m })
}

/// Reads off (t, z) from a qubit state. The phase is removed by
/// `diag(1, e^{i alpha})` with `alpha` from [`qubit_alignment_phase`].
pub fn canonicalize_qubit(rho: &DensityMatrix) -> Result<BlochQubit> {
    if rho.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.dim(),
        });
    }
    let mut t = 2.0 * rho.entry(0, 1).norm();
    let mut z = rho.entry(0, 0).re - rho.entry(1, 1).re;
    // validated states may sit just outside the ball by the PSD slack
    let r = t.hypot(z);
    if r > 1.0 {
        t /= r;
        z /= r;
    }
    BlochQubit::new(t, z)
}

/// Phase `alpha` such that `diag(1, e^{i alpha})` makes rho_10 real and non-negative.
///
/// Equals -arctan(y/x) for x > 0 and extends it to the other quadrants.
pub fn qubit_alignment_phase(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.dim(),
        });
    }
    let lower = rho.entry(1, 0);
    Ok(if lower.norm() == 0.0 {
        0.0
    } else {
        -lower.arg()
    })
}

/// diag(1, e^{i alpha}).
pub fn diagonal_phase_unitary(alpha: f64) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, alpha)])
}

/// Zeroes all off-diagonal entries.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix {
        matrix: ComplexMatrix::from_real_diagonal(&rho.populations()),
    }
}

pub fn is_incoherent(rho: &DensityMatrix, tol: f64) -> bool {
    rho.matrix.max_off_diagonal() <= tol
}

/// Uniform superposition of all `d` basis states.
pub fn maximally_coherent(d: usize) -> Result<PureState> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let a = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    PureState::new(vec![a; d])
}

/// 1/2 (delta ⊕ rho) for an incoherent `delta` and a qubit `rho`.
pub fn embed_mixed(delta: &DensityMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.dim(),
        });
    }
    let residual = delta.matrix.max_off_diagonal();
    if residual > INCOHERENCE_TOL {
        return Err(Error::NotIncoherent { residual });
    }
    let sum = delta.matrix.direct_sum(&rho.matrix).scale_real(0.5);
    DensityMatrix::new(sum)
}

/// alpha * phi followed by the tail amplitudes `betas`.
///
/// With one beta this is a single-step lift by one dimension; several betas
/// append several basis states at once.
pub fn lift_pure(phi: &PureState, alpha: Complex64, betas: &[Complex64]) -> Result<PureState> {
    if betas.is_empty() {
        return Err(Error::Domain(
            "lift needs at least one tail amplitude".into(),
        ));
    }
    let norm_sq = alpha.norm_sqr() + betas.iter().map(|b| b.norm_sqr()).sum::<f64>();
    let residual = (norm_sq - 1.0).abs();
    if residual > NORM_TOL {
        return Err(Error::Normalization { norm_sq, residual });
    }
    let alpha_abs = alpha.norm();
    if alpha_abs <= BLOCH_TOL || alpha_abs >= 1.0 - BLOCH_TOL {
        return Err(Error::DegenerateLift { alpha_abs });
    }
    let amplitudes = phi
        .amplitudes()
        .iter()
        .map(|&a| alpha * a)
        .chain(betas.iter().copied())
        .collect();
    PureState::new(amplitudes)
}
