//! Random states, qubits and unitaries for property checks and campaigns.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::ComplexMatrix;
use crate::states::{BlochQubit, DensityMatrix, PureState};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Haar-random pure state.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        let v = v.into_iter().map(|z| z / norm).collect();
        return PureState::new(v).expect("normalized");
    }
}

/// Random density matrix G G^dagger / tr with a Ginibre factor of random rank.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let rank = rng.random_range(1..=dim);
    random_density_with_rank(dim, rank, rng)
}

pub fn random_density_with_rank<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for _ in 0..rank {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        m = m.add(&ComplexMatrix::outer(&v)).expect("same dimension");
    }
    let tr = m.trace().re;
    let m = m.scale_real(1.0 / tr);
    DensityMatrix::new(hermitize(m)).expect("Gram matrix is a valid state")
}

/// Random diagonal state with Dirichlet(1, ..., 1) populations.
pub fn random_incoherent<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    DensityMatrix::from_populations(&random_probability(dim, rng)).expect("normalized")
}

/// Uniform sample from the probability simplex.
pub fn random_probability<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Uniform point of the (t >= 0) half Bloch disc, z signed.
pub fn random_bloch<R: Rng + ?Sized>(rng: &mut R) -> BlochQubit {
    loop {
        let t: f64 = rng.random();
        let z: f64 = rng.random_range(-1.0..=1.0);
        if t * t + z * z <= 1.0 {
            return BlochQubit::new(t, z).expect("inside the disc");
        }
    }
}

/// Random pure qubit in canonical form, t uniform on [0, 1].
pub fn random_pure_bloch<R: Rng + ?Sized>(rng: &mut R) -> BlochQubit {
    let t: f64 = rng.random();
    let z = (1.0 - t * t).sqrt();
    let z = if rng.random::<bool>() { z } else { -z };
    BlochQubit::new(t, z).expect("on the sphere")
}

/// Random unitary built from a random diagonal phase and a product of complex Givens rotations.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let phases: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let mut u = ComplexMatrix::from_diagonal(&phases);
    for _ in 0..2 {
        for p in 0..dim {
            for q in (p + 1)..dim {
                let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let mut g = ComplexMatrix::identity(dim);
                let (s, c) = theta.sin_cos();
                let e = Complex64::from_polar(1.0, phi);
                g[(p, p)] = Complex64::new(c, 0.0);
                g[(p, q)] = -e.conj() * s;
                g[(q, p)] = e * s;
                g[(q, q)] = Complex64::new(c, 0.0);
                u = g.matmul(&u).expect("same dimension");
            }
        }
    }
    u
}

/// Averages m with its adjoint to remove rounding asymmetry.
pub(crate) fn hermitize(m: ComplexMatrix) -> ComplexMatrix {
    let adj = m.adjoint();
    m.add(&adj).expect("same dimension").scale_real(0.5)
}
