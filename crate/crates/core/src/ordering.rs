//! Ordering comparison of two coherence measures on a pair of states.
//!
//! Two measures `A` and `B` give the same ordering on `(rho1, rho2)` when
//! `A(rho1) <= A(rho2)` exactly when `B(rho1) <= B(rho2)`. A pair on which
//! the two strict orders disagree is an *ordering-different pair*.
//!
//! For qubits in the canonical form `rho(t, z)` the l1 coherence is `t`, so an
//! ordering-different pair for (l1, relative entropy) needs `t1 < t2` and
//! `C_r(t1, z1) > C_r(t2, z2)`. Because `C_r` grows with both `t` and `|z|`,
//! such `(z1, z2)` exist iff the extreme choice `z1 = sqrt(1 - t1^2)`,
//! `z2 = 0` works, which gives the closed test in [`qubit_pair_feasible`].
//!
//! Higher-dimensional pairs come from two constructions: a block embedding
//! `1/2 (delta ⊕ rho)` of the reference qubit pair, and lifting the reference
//! qutrit pair with extra basis amplitudes.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::binary_entropy;
use crate::measures::{c_r, c_r_qubit, evaluate, evaluate_pure, Measure};
use crate::states::{embed_mixed, lift_pure, BlochQubit, DensityMatrix, PureState};

/// Default margin on both measure gaps.
pub const ORDER_TOL: f64 = 1e-9;
/// |lhs - rhs| at or below which a feasibility query is reported as a boundary case.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    SameOrder,
    OrderingDifferent,
    TieAtTolerance,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::SameOrder => "same-order",
            Verdict::OrderingDifferent => "ordering-different",
            Verdict::TieAtTolerance => "tie-at-tolerance",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingVerdict {
    pub measure_a: Measure,
    pub measure_b: Measure,
    pub value_a1: f64,
    pub value_a2: f64,
    pub value_b1: f64,
    pub value_b2: f64,
    pub verdict: Verdict,
    pub tolerance: f64,
}

impl OrderingVerdict {
    /// Classifies four precomputed values.
    pub fn from_values(
        (measure_a, value_a1, value_a2): (Measure, f64, f64),
        (measure_b, value_b1, value_b2): (Measure, f64, f64),
        tolerance: f64,
    ) -> Self {
        let gap_a = value_a1 - value_a2;
        let gap_b = value_b1 - value_b2;
        let verdict = if gap_a.abs() <= tolerance || gap_b.abs() <= tolerance {
            Verdict::TieAtTolerance
        } else if gap_a.signum() != gap_b.signum() {
            Verdict::OrderingDifferent
        } else {
            Verdict::SameOrder
        };
        OrderingVerdict {
            measure_a,
            measure_b,
            value_a1,
            value_a2,
            value_b1,
            value_b2,
            verdict,
            tolerance,
        }
    }
}

fn relation(a: f64, b: f64, tol: f64) -> char {
    if (a - b).abs() <= tol {
        '='
    } else if a < b {
        '<'
    } else {
        '>'
    }
}

impl fmt::Display for OrderingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {:.6} {} {:.6}",
            self.measure_a,
            self.value_a1,
            relation(self.value_a1, self.value_a2, self.tolerance),
            self.value_a2
        )?;
        writeln!(
            f,
            "{}: {:.6} {} {:.6}",
            self.measure_b,
            self.value_b1,
            relation(self.value_b1, self.value_b2, self.tolerance),
            self.value_b2
        )?;
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Compares `rho1` and `rho2` under measures `a` and `b`.
pub fn classify_pair(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    a: Measure,
    b: Measure,
    tol: f64,
) -> Result<OrderingVerdict> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            left: rho1.dim(),
            right: rho2.dim(),
        });
    }
    Ok(OrderingVerdict::from_values(
        (a, evaluate(rho1, a)?.value, evaluate(rho2, a)?.value),
        (b, evaluate(rho1, b)?.value, evaluate(rho2, b)?.value),
        tol,
    ))
}

/// Same as [`classify_pair`] for pure states, using amplitude formulas.
pub fn classify_pure_pair(
    phi1: &PureState,
    phi2: &PureState,
    a: Measure,
    b: Measure,
    tol: f64,
) -> Result<OrderingVerdict> {
    if phi1.dim() != phi2.dim() {
        return Err(Error::DimensionMismatch {
            left: phi1.dim(),
            right: phi2.dim(),
        });
    }
    Ok(OrderingVerdict::from_values(
        (
            a,
            evaluate_pure(phi1, a)?.value,
            evaluate_pure(phi2, a)?.value,
        ),
        (
            b,
            evaluate_pure(phi1, b)?.value,
            evaluate_pure(phi2, b)?.value,
        ),
        tol,
    ))
}

/// The reference qubit pair: rho1 = rho(4/5, 3/5), rho2 = rho(2/sqrt6, 0).
pub fn reference_qubit_pair() -> (DensityMatrix, DensityMatrix) {
    let q1 = BlochQubit::new(0.8, 0.6).expect("pure state on the sphere");
    let q2 = BlochQubit::new(2.0 / 6f64.sqrt(), 0.0).expect("inside the ball");
    (q1.to_density(), q2.to_density())
}

/// The reference qutrit pair with populations (12/25, 12/25, 1/25) and (7/10, 1/5, 1/10).
pub fn reference_qutrit_pair() -> (PureState, PureState) {
    let phi1 = PureState::from_real(&[(12.0f64 / 25.0).sqrt(), (12.0f64 / 25.0).sqrt(), 0.2])
        .expect("unit norm");
    let phi2 =
        PureState::from_real(&[0.7f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()]).expect("unit norm");
    (phi1, phi2)
}

/// Outcome of the closed-form existence test for qubit ordering-different pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub t1: f64,
    pub t2: f64,
    /// Largest C_r reachable at t1: H((1 - sqrt(1 - t1^2)) / 2).
    pub lhs: f64,
    /// Smallest C_r reachable at t2: 1 - H((1 - t2) / 2).
    pub rhs: f64,
    pub feasible: bool,
    /// lhs and rhs agree within [`BOUNDARY_TOL`].
    pub boundary: bool,
}

impl fmt::Display for FeasibilityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t1: {:.6}", self.t1)?;
        writeln!(f, "t2: {:.6}", self.t2)?;
        writeln!(f, "lhs: {:.6}", self.lhs)?;
        writeln!(f, "rhs: {:.6}", self.rhs)?;
        writeln!(f, "boundary: {}", self.boundary)?;
        write!(f, "feasible: {}", self.feasible)
    }
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::Domain(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

/// Decides whether some (z1, z2) make rho(t1, z1), rho(t2, z2) an
/// ordering-different pair for (l1, relative entropy).
///
/// With `t1 == t2` the l1 values tie, so the result is never feasible.
pub fn qubit_pair_feasible(t1: f64, t2: f64) -> Result<FeasibilityResult> {
    check_unit_interval("t1", t1)?;
    check_unit_interval("t2", t2)?;
    if t1 > t2 {
        return Err(Error::Domain(format!(
            "t1 = {t1} must not exceed t2 = {t2}"
        )));
    }
    let lhs = binary_entropy((1.0 - (1.0 - t1 * t1).sqrt()) / 2.0)?;
    let rhs = 1.0 - binary_entropy((1.0 - t2) / 2.0)?;
    let boundary = (lhs - rhs).abs() <= BOUNDARY_TOL;
    let feasible = t1 < t2 && lhs > rhs && !boundary;
    Ok(FeasibilityResult {
        t1,
        t2,
        lhs,
        rhs,
        feasible,
        boundary,
    })
}

/// The extremal witness (sqrt(1 - t1^2), 0) when one exists.
pub fn find_witness(t1: f64, t2: f64) -> Result<Option<(f64, f64)>> {
    check_unit_interval("t1", t1)?;
    check_unit_interval("t2", t2)?;
    if t1 >= t2 {
        return Err(Error::Domain(format!(
            "witness search needs t1 < t2, got {t1}, {t2}"
        )));
    }
    let res = qubit_pair_feasible(t1, t2)?;
    Ok(res.feasible.then(|| ((1.0 - t1 * t1).max(0.0).sqrt(), 0.0)))
}

/// Difference of relative-entropy coherence over a (z1, z2) grid at fixed t1, t2.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub t1: f64,
    pub t2: f64,
    pub z1_axis: Vec<f64>,
    pub z2_axis: Vec<f64>,
    /// `delta_cr[i][j] = C_r(t1, z1_axis[i]) - C_r(t2, z2_axis[j])`.
    pub delta_cr: Vec<Vec<f64>>,
}

fn axis(t: f64, n: usize) -> Vec<f64> {
    let top = (1.0 - t * t).max(0.0).sqrt();
    (0..n)
        .map(|i| {
            if i + 1 == n {
                top
            } else {
                top * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Uniform scan of z1 in [0, sqrt(1 - t1^2)] and z2 in [0, sqrt(1 - t2^2)].
pub fn scan_delta_cr(t1: f64, t2: f64, n1: usize, n2: usize) -> Result<ScanGrid> {
    check_unit_interval("t1", t1)?;
    check_unit_interval("t2", t2)?;
    if n1 < 2 || n2 < 2 {
        return Err(Error::Domain(format!(
            "grid needs at least 2 points per axis, got {n1}x{n2}"
        )));
    }
    let z1_axis = axis(t1, n1);
    let z2_axis = axis(t2, n2);
    let row_terms: Vec<f64> = z1_axis
        .iter()
        .map(|&z| BlochQubit::new(t1, z).map(|q| c_r_qubit(&q).value))
        .collect::<Result<_>>()?;
    let col_terms: Vec<f64> = z2_axis
        .iter()
        .map(|&z| BlochQubit::new(t2, z).map(|q| c_r_qubit(&q).value))
        .collect::<Result<_>>()?;
    let delta_cr = row_terms
        .iter()
        .map(|&a| col_terms.iter().map(|&b| a - b).collect())
        .collect();
    Ok(ScanGrid {
        t1,
        t2,
        z1_axis,
        z2_axis,
        delta_cr,
    })
}

const CSV_CORNER: &str = "z1\\z2";

fn fmt12(v: f64) -> String {
    format!("{v:.11e}")
}

impl ScanGrid {
    pub fn max_delta(&self) -> f64 {
        self.delta_cr
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices of the cell holding the largest value.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut best_v = f64::NEG_INFINITY;
        for (i, row) in self.delta_cr.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > best_v {
                    best_v = v;
                    best = (i, j);
                }
            }
        }
        best
    }

    /// Number of cells with delta above `threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.delta_cr
            .iter()
            .flatten()
            .filter(|&&v| v > threshold)
            .count()
    }

    /// Largest deviation from matrix-based evaluation over every `stride`-th row and column.
    pub fn cross_check(&self, stride: usize) -> Result<f64> {
        let stride = stride.max(1);
        let mut worst = 0.0f64;
        let col_values: Vec<(usize, f64)> = (0..self.z2_axis.len())
            .step_by(stride)
            .map(|j| {
                let q = BlochQubit::new(self.t2, self.z2_axis[j])?;
                Ok((j, c_r(&q.to_density())?.value))
            })
            .collect::<Result<_>>()?;
        for i in (0..self.z1_axis.len()).step_by(stride) {
            let q = BlochQubit::new(self.t1, self.z1_axis[i])?;
            let a = c_r(&q.to_density())?.value;
            for &(j, b) in &col_values {
                worst = worst.max((self.delta_cr[i][j] - (a - b)).abs());
            }
        }
        Ok(worst)
    }

    /// Writes the grid as CSV: a header row with the z2 values, then one row
    /// per z1 value, all numbers with 12 significant digits.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<String> = std::iter::once(CSV_CORNER.to_string())
            .chain(self.z2_axis.iter().map(|&z| fmt12(z)))
            .collect();
        w.write_record(&header).map_err(csv_err)?;
        for (z1, row) in self.z1_axis.iter().zip(&self.delta_cr) {
            let rec: Vec<String> = std::iter::once(fmt12(*z1))
                .chain(row.iter().map(|&v| fmt12(v)))
                .collect();
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses the format of [`ScanGrid::write_csv`]. The t values are not
    /// stored in the file and are supplied by the caller.
    pub fn read_csv<R: std::io::Read>(input: R, t1: f64, t2: f64) -> Result<ScanGrid> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(input);
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| Error::Parse("empty scan file".into()))?
            .map_err(csv_err)?;
        if header.get(0) != Some(CSV_CORNER) {
            return Err(Error::Parse(format!(
                "scan header must start with '{CSV_CORNER}'"
            )));
        }
        let z2_axis = header
            .iter()
            .skip(1)
            .map(parse_f64)
            .collect::<Result<Vec<_>>>()?;
        let mut z1_axis = Vec::new();
        let mut delta_cr = Vec::new();
        for rec in records {
            let rec = rec.map_err(csv_err)?;
            let mut cells = rec.iter();
            let z1 = parse_f64(
                cells
                    .next()
                    .ok_or_else(|| Error::Parse("empty row".into()))?,
            )?;
            let row = cells.map(parse_f64).collect::<Result<Vec<_>>>()?;
            if row.len() != z2_axis.len() {
                return Err(Error::Parse(format!(
                    "row for z1 = {z1} has {} cells, expected {}",
                    row.len(),
                    z2_axis.len()
                )));
            }
            z1_axis.push(z1);
            delta_cr.push(row);
        }
        Ok(ScanGrid {
            t1,
            t2,
            z1_axis,
            z2_axis,
            delta_cr,
        })
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad number '{s}': {e}")))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Lifts both reference qutrit states by `alpha` and the tail amplitudes `betas`.
pub fn build_lifted_pair(
    d: usize,
    alpha: Complex64,
    betas: &[Complex64],
) -> Result<(PureState, PureState)> {
    if d < 4 {
        return Err(Error::Domain(format!("lifted pairs need d >= 4, got {d}")));
    }
    if betas.len() + 3 != d {
        return Err(Error::Dimension {
            expected: d - 3,
            found: betas.len(),
        });
    }
    let (phi1, phi2) = reference_qutrit_pair();
    Ok((
        lift_pure(&phi1, alpha, betas)?,
        lift_pure(&phi2, alpha, betas)?,
    ))
}

/// Real alpha with equal real tails filling the remaining weight.
pub fn uniform_tail(d: usize, alpha: f64) -> Result<(Complex64, Vec<Complex64>)> {
    if d < 4 {
        return Err(Error::Domain(format!("lifted pairs need d >= 4, got {d}")));
    }
    if alpha.is_nan() || alpha.abs() > 1.0 {
        return Err(Error::Domain(format!("|alpha| = {alpha} exceeds 1")));
    }
    let tails = d - 3;
    let beta = ((1.0 - alpha * alpha) / tails as f64).max(0.0).sqrt();
    Ok((
        Complex64::new(alpha, 0.0),
        vec![Complex64::new(beta, 0.0); tails],
    ))
}

/// (1/2 (delta1 ⊕ rho1), 1/2 (delta2 ⊕ rho2)) with the reference qubit pair.
pub fn build_embedded_pair(
    d: usize,
    delta1: &DensityMatrix,
    delta2: &DensityMatrix,
) -> Result<(DensityMatrix, DensityMatrix)> {
    if d < 3 {
        return Err(Error::Domain(format!(
            "embedded pairs need d >= 3, got {d}"
        )));
    }
    for delta in [delta1, delta2] {
        if delta.dim() != d - 2 {
            return Err(Error::Dimension {
                expected: d - 2,
                found: delta.dim(),
            });
        }
    }
    let (rho1, rho2) = reference_qubit_pair();
    Ok((embed_mixed(delta1, &rho1)?, embed_mixed(delta2, &rho2)?))
}
