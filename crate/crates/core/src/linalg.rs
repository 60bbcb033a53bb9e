//! Dense complex matrices, a cyclic Jacobi eigensolver for Hermitian
//! matrices, and base-2 entropies.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum entrywise |m - m^dagger| accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
pub const JACOBI_CONVERGED: f64 = 1e-12;
/// Residual off-diagonal norm that is still accepted once the sweep budget is spent.
pub const JACOBI_ACCEPTABLE: f64 = 1e-8;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Slack allowed below 0 and above 1 for probability arguments.
pub const PROB_SLACK: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Domain("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        let m = ComplexMatrix { dim, entries };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Outer product |v><v|.
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Computes `self * m * self^dagger`.
    pub fn conjugate(&self, m: &Self) -> Result<Self> {
        self.matmul(m)?.matmul(&self.adjoint())
    }

    /// Largest entrywise |m_ij - conj(m_ji)|.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise |a_ij - b_ij|.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest |m_ij| over i != j.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    worst = worst.max(self[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    sum += self[(i, j)].norm_sqr();
                }
            }
        }
        sum.sqrt()
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim + other.dim;
        let mut out = Self::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                out[(self.dim + i, self.dim + j)] = other[(i, j)];
            }
        }
        out
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on a dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.entries.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.first().copied().unwrap_or(f64::NAN)
    }

    pub fn min(&self) -> f64 {
        self.0.last().copied().unwrap_or(f64::NAN)
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each pivot `(p, q)` is first phase-aligned with `diag(1, e^{-i phi})` so that
/// the 2x2 block becomes real symmetric, then annihilated with a real rotation.
/// Iteration stops once the off-diagonal Frobenius norm drops below
/// [`JACOBI_CONVERGED`]. If the sweep budget runs out, the result is still
/// accepted when the residual is below [`JACOBI_ACCEPTABLE`].
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }

    let n = m.dim();
    let mut a = m.clone();
    // symmetrize so rounding in the input does not leak into the rotations
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }

    let mut off = a.off_diagonal_norm();
    let mut sweeps = 0;
    while off >= JACOBI_CONVERGED && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
        off = a.off_diagonal_norm();
    }
    if off >= JACOBI_ACCEPTABLE {
        return Err(Error::NoConvergence {
            sweeps,
            off_norm: off,
        });
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum(eigs))
}

fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let b_abs = b.norm();
    if b_abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * b_abs);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
    let phase_conj = (b / b_abs).conj();
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase_conj * (-s);
    let j_qq = phase_conj * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// `-x log2 x`, with the 0 log 0 = 0 convention.
fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Binary Shannon entropy H(x) in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-PROB_SLACK..=1.0 + PROB_SLACK).contains(&x) {
        return Err(Error::Domain(format!(
            "binary entropy argument {x} outside [0, 1]"
        )));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(plogp(x) + plogp(1.0 - x))
}

/// Shannon entropy in bits; small negative entries are clamped to zero.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if let Some(bad) = p.iter().find(|&&x| x.is_nan() || x < -PROB_SLACK) {
        return Err(Error::Domain(format!("negative probability {bad}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }
    Ok(p.iter().map(|&x| plogp(x.max(0.0))).sum())
}

/// Entropy of an eigenvalue list, each clamped into [0, 1].
pub fn spectral_entropy(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|&l| plogp(l.clamp(0.0, 1.0))).sum()
}

/// Von Neumann entropy S(rho) = -tr(rho log2 rho) in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let spectrum = hermitian_eigenvalues(rho)?;
    Ok(spectral_entropy(spectrum.eigenvalues()))
}
