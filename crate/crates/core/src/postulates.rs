//! Checks of the coherence-measure postulates under incoherent channels.
//!
//! * C1: a measure vanishes exactly on incoherent states.
//! * C2: it does not increase under an incoherent channel.
//! * C3: it does not increase on average under selective measurements.
//! * C4: it is convex.
//!
//! A Kraus operator is treated as incoherent when every column has at most one
//! nonzero entry. Such an operator sends each basis projector to a multiple of a
//! basis projector, so diagonal states stay diagonal.

use std::fmt;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::measures::{evaluate, Measure};
use crate::random::{
    hermitize, random_density, random_incoherent, random_probability, random_pure,
};
use crate::states::{is_incoherent, DensityMatrix, INCOHERENCE_TOL};

/// Allowed violation of any postulate inequality.
pub const VIOLATION_MARGIN: f64 = 1e-9;
/// Entrywise tolerance on sum_i K_i^dagger K_i = 1.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Entries at or below this magnitude count as zero in the column test.
pub const KRAUS_ZERO: f64 = 1e-12;
/// Branches with smaller probability are skipped in the selective check.
pub const BRANCH_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = operators
            .first()
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?
            .dim();
        if let Some(bad) = operators.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.dim(),
            });
        }
        Ok(KrausSet { dim, operators })
    }

    /// Projectors onto the basis states; the completely dephasing channel.
    pub fn dephasing(dim: usize) -> Self {
        let operators = (0..dim)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(dim);
                k[(i, i)] = Complex64::new(1.0, 0.0);
                k
            })
            .collect();
        KrausSet { dim, operators }
    }

    pub fn single(op: ComplexMatrix) -> Self {
        KrausSet {
            dim: op.dim(),
            operators: vec![op],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }
}

/// Result of [`validate_icptp`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelCheck {
    pub valid: bool,
    /// First violated condition, if any.
    pub diagnostic: Option<String>,
}

pub fn validate_icptp(ks: &KrausSet) -> ChannelCheck {
    let n = ks.dim;
    for (idx, k) in ks.operators.iter().enumerate() {
        for col in 0..n {
            let nonzero = (0..n)
                .filter(|&row| k[(row, col)].norm() > KRAUS_ZERO)
                .count();
            if nonzero > 1 {
                return ChannelCheck {
                    valid: false,
                    diagnostic: Some(format!(
                        "incoherence: operator {idx} column {col} has {nonzero} nonzero entries"
                    )),
                };
            }
        }
    }
    let mut sum = ComplexMatrix::zeros(n);
    for k in &ks.operators {
        sum = sum
            .add(&k.adjoint().matmul(k).expect("same dimension"))
            .expect("same dimension");
    }
    let residual = sum
        .max_abs_diff(&ComplexMatrix::identity(n))
        .expect("same dimension");
    if residual > COMPLETENESS_TOL {
        return ChannelCheck {
            valid: false,
            diagnostic: Some(format!(
                "completeness: max |sum K^dagger K - 1| = {residual:e}"
            )),
        };
    }
    ChannelCheck {
        valid: true,
        diagnostic: None,
    }
}

/// sum_i K_i rho K_i^dagger.
pub fn apply_channel(ks: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let check = validate_icptp(ks);
    if !check.valid {
        return Err(Error::InvalidChannel(check.diagnostic.unwrap_or_default()));
    }
    if ks.dim != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: ks.dim,
            right: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(ks.dim);
    for k in &ks.operators {
        out = out.add(&k.conjugate(rho.matrix())?)?;
    }
    DensityMatrix::new(hermitize(out))
}

/// Normalized branches K_i rho K_i^dagger / p_i with their probabilities.
pub fn branches(ks: &KrausSet, rho: &DensityMatrix) -> Result<Vec<(f64, DensityMatrix)>> {
    if ks.dim != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: ks.dim,
            right: rho.dim(),
        });
    }
    let mut out = Vec::with_capacity(ks.operators.len());
    for k in &ks.operators {
        let branch = k.conjugate(rho.matrix())?;
        let p = branch.trace().re;
        if p < BRANCH_CUTOFF {
            continue;
        }
        out.push((
            p,
            DensityMatrix::new(hermitize(branch.scale_real(1.0 / p)))?,
        ));
    }
    Ok(out)
}

fn permutation_with_phases<R: Rng + ?Sized>(d: usize, weight: f64, rng: &mut R) -> ComplexMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let amp = weight.sqrt();
    let mut k = ComplexMatrix::zeros(d);
    for (col, &row) in perm.iter().enumerate() {
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        k[(row, col)] = Complex64::from_polar(amp, phase);
    }
    k
}

/// Deterministic random incoherent channel with `n_kraus` operators.
///
/// Operators are sqrt(p_i) D_i P_i with P_i a permutation and D_i a diagonal
/// phase. When `n_kraus >= d`, one draw in four instead mixes the dephasing
/// projectors (weight w) with such weighted permutations (weight 1 - w).
pub fn random_incoherent_channel(d: usize, n_kraus: usize, seed: u64) -> Result<KrausSet> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "channel dimension must be at least 2, got {d}"
        )));
    }
    if n_kraus < 1 {
        return Err(Error::Domain(
            "channel needs at least one Kraus operator".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut operators = Vec::with_capacity(n_kraus);
    if n_kraus >= d && rng.random::<f64>() < 0.25 {
        let w: f64 = if n_kraus == d {
            1.0
        } else {
            rng.random_range(0.2..0.8)
        };
        for i in 0..d {
            let mut k = ComplexMatrix::zeros(d);
            k[(i, i)] = Complex64::new(w.sqrt(), 0.0);
            operators.push(k);
        }
        let rest = n_kraus - d;
        if rest > 0 {
            for p in random_probability(rest, &mut rng) {
                operators.push(permutation_with_phases(d, (1.0 - w) * p, &mut rng));
            }
        }
    } else {
        for p in random_probability(n_kraus, &mut rng) {
            operators.push(permutation_with_phases(d, p, &mut rng));
        }
    }
    KrausSet::new(operators)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Postulate {
    /// Zero exactly on incoherent states.
    C1,
    /// Monotone under incoherent channels.
    C2,
    /// Monotone on average under selective incoherent operations.
    C3,
    /// Convex.
    C4,
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Postulate::C1 => "C1",
            Postulate::C2 => "C2",
            Postulate::C3 => "C3",
            Postulate::C4 => "C4",
        };
        f.write_str(s)
    }
}

/// One postulate evaluation. `margin >= -VIOLATION_MARGIN` means the inequality
/// held; for C1 the margin is the measured value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostulateCheck {
    pub postulate: Postulate,
    pub measure: Measure,
    pub passed: bool,
    pub margin: f64,
}

/// C1: `C(rho) <= VIOLATION_MARGIN` exactly when `rho` is incoherent.
pub fn check_faithfulness(rho: &DensityMatrix, measure: Measure) -> Result<PostulateCheck> {
    let value = evaluate(rho, measure)?.value;
    let incoherent = is_incoherent(rho, INCOHERENCE_TOL);
    Ok(PostulateCheck {
        postulate: Postulate::C1,
        measure,
        passed: value >= -VIOLATION_MARGIN && (value <= VIOLATION_MARGIN) == incoherent,
        margin: value,
    })
}

/// C2: `C(rho) >= C(Phi(rho)) - VIOLATION_MARGIN`.
pub fn check_monotonicity(
    ks: &KrausSet,
    rho: &DensityMatrix,
    measure: Measure,
) -> Result<PostulateCheck> {
    let out = apply_channel(ks, rho)?;
    let margin = evaluate(rho, measure)?.value - evaluate(&out, measure)?.value;
    Ok(PostulateCheck {
        postulate: Postulate::C2,
        measure,
        passed: margin >= -VIOLATION_MARGIN,
        margin,
    })
}

/// C3: `C(rho) + VIOLATION_MARGIN >= sum_i p_i C(rho_i)` over the channel branches.
pub fn check_selective_monotonicity(
    ks: &KrausSet,
    rho: &DensityMatrix,
    measure: Measure,
) -> Result<PostulateCheck> {
    let check = validate_icptp(ks);
    if !check.valid {
        return Err(Error::InvalidChannel(check.diagnostic.unwrap_or_default()));
    }
    let mut average = 0.0;
    for (p, branch) in branches(ks, rho)? {
        average += p * evaluate(&branch, measure)?.value;
    }
    let margin = evaluate(rho, measure)?.value - average;
    Ok(PostulateCheck {
        postulate: Postulate::C3,
        measure,
        passed: margin >= -VIOLATION_MARGIN,
        margin,
    })
}

/// C4: `C(sum_i w_i rho_i) <= sum_i w_i C(rho_i) + VIOLATION_MARGIN`.
pub fn check_convexity(
    states: &[DensityMatrix],
    weights: &[f64],
    measure: Measure,
) -> Result<PostulateCheck> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::Domain(format!(
            "{} states with {} weights",
            states.len(),
            weights.len()
        )));
    }
    let dim = states[0].dim();
    if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: bad.dim(),
        });
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-10 || weights.iter().any(|&w| w < 0.0) {
        return Err(Error::Domain(format!(
            "weights must form a probability vector, sum {total}"
        )));
    }
    let mut mix = ComplexMatrix::zeros(dim);
    let mut average = 0.0;
    for (s, &w) in states.iter().zip(weights) {
        mix = mix.add(&s.matrix().scale_real(w))?;
        average += w * evaluate(s, measure)?.value;
    }
    let mixed = DensityMatrix::new(hermitize(mix))?;
    let margin = average - evaluate(&mixed, measure)?.value;
    Ok(PostulateCheck {
        postulate: Postulate::C4,
        measure,
        passed: margin >= -VIOLATION_MARGIN,
        margin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialLine {
    pub trial_id: usize,
    pub dim: usize,
    pub check: PostulateCheck,
}

impl fmt::Display for TrialLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}, {}, {}, {:+.3e}",
            self.trial_id,
            self.check.postulate,
            self.check.measure,
            self.dim,
            if self.check.passed { "PASS" } else { "FAIL" },
            self.check.margin
        )
    }
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub measures: Vec<Measure>,
}

#[derive(Debug, Clone, Default)]
pub struct CampaignReport {
    pub lines: Vec<TrialLine>,
    /// Trials where C3 and branch convexity held but C2 failed.
    pub implication_violations: usize,
}

impl CampaignReport {
    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.check.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0 && self.implication_violations == 0
    }

    /// Count of lines for one postulate and measure.
    pub fn count(&self, postulate: Postulate, measure: Measure) -> usize {
        self.lines
            .iter()
            .filter(|l| l.check.postulate == postulate && l.check.measure == measure)
            .count()
    }

    /// Most negative margin seen for one postulate and measure (C2 to C4).
    pub fn worst_margin(&self, postulate: Postulate, measure: Measure) -> f64 {
        self.lines
            .iter()
            .filter(|l| l.check.postulate == postulate && l.check.measure == measure)
            .map(|l| l.check.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

impl fmt::Display for CampaignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trial_id, postulate, measure, dim, verdict, margin")?;
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        write!(
            f,
            "# {} checks, {} failures, {} implication violations",
            self.lines.len(),
            self.failures(),
            self.implication_violations
        )
    }
}

/// Runs all four postulate checks per trial on random states and channels.
///
/// Each trial draws a state (incoherent, pure or mixed), an incoherent
/// channel, and an independent mixture for C4. It also checks that C3 plus
/// convexity over the channel's own branches implies C2.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    if cfg.dim < 2 {
        return Err(Error::Domain(format!(
            "campaign dimension must be at least 2, got {}",
            cfg.dim
        )));
    }
    let d = cfg.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = CampaignReport::default();
    for trial_id in 0..cfg.trials {
        let roll: f64 = rng.random();
        let rho = if roll < 0.2 {
            random_incoherent(d, &mut rng)
        } else if roll < 0.4 {
            random_pure(d, &mut rng).density()
        } else {
            random_density(d, &mut rng)
        };
        let n_kraus = rng.random_range(1..=d + 2);
        let ks = random_incoherent_channel(d, n_kraus, rng.random())?;
        let k = rng.random_range(2..=4);
        let mixture: Vec<DensityMatrix> = (0..k).map(|_| random_density(d, &mut rng)).collect();
        let weights = random_probability(k, &mut rng);

        let branch_list = branches(&ks, &rho)?;
        let (branch_weights, branch_states): (Vec<f64>, Vec<DensityMatrix>) =
            branch_list.into_iter().unzip();
        let weight_total: f64 = branch_weights.iter().sum();
        let branch_weights: Vec<f64> = branch_weights.iter().map(|w| w / weight_total).collect();

        for &measure in &cfg.measures {
            let c1 = check_faithfulness(&rho, measure)?;
            let c2 = check_monotonicity(&ks, &rho, measure)?;
            let c3 = check_selective_monotonicity(&ks, &rho, measure)?;
            let c4 = check_convexity(&mixture, &weights, measure)?;
            let c4_branches = check_convexity(&branch_states, &branch_weights, measure)?;
            if c3.passed && c4_branches.passed && !c2.passed {
                report.implication_violations += 1;
            }
            for check in [c1, c2, c3, c4] {
                report.lines.push(TrialLine {
                    trial_id,
                    dim: d,
                    check,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        dephase, diagonal_phase_unitary, from_bloch_xyz, maximally_coherent, qubit_alignment_phase,
    };

    fn hadamard() -> ComplexMatrix {
        let s = 0.5f64.sqrt();
        ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap()
    }

    #[test]
    fn validator_examples() {
        assert!(validate_icptp(&KrausSet::dephasing(3)).valid);
        assert!(validate_icptp(&KrausSet::single(diagonal_phase_unitary(0.7))).valid);
        let h = validate_icptp(&KrausSet::single(hadamard()));
        assert!(!h.valid);
        assert!(h.diagnostic.unwrap().contains("operator 0 column 0"));

        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let c = validate_icptp(&KrausSet::single(half));
        assert!(!c.valid);
        assert!(c.diagnostic.unwrap().starts_with("completeness"));
    }

    #[test]
    fn channel_application() {
        let rho = from_bloch_xyz(0.48, 0.64, 0.6).unwrap();
        let out = apply_channel(&KrausSet::dephasing(2), &rho).unwrap();
        assert!(out.matrix().max_abs_diff(dephase(&rho).matrix()).unwrap() < 1e-15);

        let alpha = qubit_alignment_phase(&rho).unwrap();
        let out = apply_channel(&KrausSet::single(diagonal_phase_unitary(alpha)), &rho).unwrap();
        let canonical = from_bloch_xyz(0.8, 0.0, 0.6).unwrap();
        assert!(out.matrix().max_abs_diff(canonical.matrix()).unwrap() < 1e-15);

        let id = apply_channel(&KrausSet::single(ComplexMatrix::identity(2)), &rho).unwrap();
        assert_eq!(id, rho);

        assert!(matches!(
            apply_channel(&KrausSet::single(hadamard()), &rho),
            Err(Error::InvalidChannel(_))
        ));
        assert!(matches!(
            apply_channel(&KrausSet::dephasing(3), &rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn generator_properties() {
        let single = random_incoherent_channel(2, 1, 99).unwrap();
        assert_eq!(single.operators().len(), 1);
        let u = &single.operators()[0];
        let uu = u.adjoint().matmul(u).unwrap();
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-14);

        let ks = random_incoherent_channel(3, 4, 7).unwrap();
        assert_eq!(ks.operators().len(), 4);
        assert!(validate_icptp(&ks).valid);

        assert_eq!(random_incoherent_channel(3, 4, 7).unwrap(), ks);
        assert!(random_incoherent_channel(1, 1, 0).is_err());
        assert!(random_incoherent_channel(2, 0, 0).is_err());
    }

    #[test]
    fn generator_preserves_incoherence() {
        let delta = DensityMatrix::from_populations(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        for seed in 0..200 {
            let ks = random_incoherent_channel(4, 1 + (seed as usize % 6), seed).unwrap();
            assert!(validate_icptp(&ks).valid, "seed {seed}");
            let out = apply_channel(&ks, &delta).unwrap();
            assert!(is_incoherent(&out, 1e-10), "seed {seed}");
            assert!((out.matrix().trace().re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn named_checks() {
        let rho = from_bloch_xyz(0.3, -0.4, 0.2).unwrap();
        for m in [Measure::L1, Measure::RelEnt] {
            let c = check_monotonicity(&KrausSet::dephasing(2), &rho, m).unwrap();
            assert!(c.passed);
            assert!(c.margin > 0.0);
            let c = check_selective_monotonicity(&KrausSet::dephasing(2), &rho, m).unwrap();
            assert!(c.passed);
            let unitary = KrausSet::single(diagonal_phase_unitary(1.1));
            let c = check_selective_monotonicity(&unitary, &rho, m).unwrap();
            assert!(c.passed && c.margin.abs() < 1e-12);
            let c = check_convexity(&[rho.clone(), rho.clone()], &[0.3, 0.7], m).unwrap();
            assert!(c.passed && c.margin.abs() < 1e-12);
        }

        let plus = maximally_coherent(2).unwrap().density();
        let minus = crate::PureState::from_real(&[0.5f64.sqrt(), -(0.5f64.sqrt())])
            .unwrap()
            .density();
        let c = check_convexity(&[plus, minus], &[0.5, 0.5], Measure::L1).unwrap();
        assert!(c.passed);
        assert!((c.margin - 1.0).abs() < 1e-12);

        let bad = check_convexity(std::slice::from_ref(&rho), &[0.5], Measure::L1);
        assert!(bad.is_err());
        let mism = check_convexity(
            &[rho.clone(), DensityMatrix::maximally_mixed(3)],
            &[0.5, 0.5],
            Measure::L1,
        );
        assert!(matches!(mism, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn faithfulness() {
        let delta = DensityMatrix::from_populations(&[0.3, 0.7]).unwrap();
        let rho = from_bloch_xyz(0.3, 0.0, 0.2).unwrap();
        for m in Measure::ALL {
            assert!(check_faithfulness(&delta, m).unwrap().passed);
            assert!(check_faithfulness(&rho, m).unwrap().passed);
        }
    }

    #[test]
    fn small_campaign_passes() {
        for dim in 2..=3 {
            let cfg = CampaignConfig {
                dim,
                trials: 50,
                seed: 11,
                measures: vec![Measure::L1, Measure::RelEnt],
            };
            let report = run_campaign(&cfg).unwrap();
            assert_eq!(report.lines.len(), 50 * 2 * 4);
            assert!(report.all_passed(), "{report}");
        }
        let text = run_campaign(&CampaignConfig {
            dim: 2,
            trials: 1,
            seed: 0,
            measures: vec![Measure::L1],
        })
        .unwrap()
        .to_string();
        assert!(text.lines().nth(1).unwrap().starts_with("0, C1, l1, 2, "));
    }
}
