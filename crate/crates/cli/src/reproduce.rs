//! Self-contained table of the published reference values.

use std::io::Write;

use cohorder::linalg::{binary_entropy, shannon_entropy};
use cohorder::measures::{
    c_f, c_f_pure, c_f_qubit, c_l1, c_l1_qubit, c_r, c_r_qubit, evaluate_pure, Measure,
};
use cohorder::ordering::{
    build_embedded_pair, classify_pair, find_witness, qubit_pair_feasible, reference_qubit_pair,
    reference_qutrit_pair, scan_delta_cr, Verdict, ORDER_TOL,
};
use cohorder::postulates::{check_monotonicity, validate_icptp, KrausSet};
use cohorder::states::{
    canonicalize_qubit, dephase, diagonal_phase_unitary, embed_mixed, from_bloch_xyz,
    is_incoherent, maximally_coherent, qubit_alignment_phase, INCOHERENCE_TOL,
};
use cohorder::{BlochQubit, DensityMatrix, Result};

/// Tolerance against the published four-decimal digits.
pub const REFERENCE_TOL: f64 = 5e-4;

struct Row {
    name: &'static str,
    computed: String,
    expected: String,
    pass: bool,
}

fn num(name: &'static str, computed: f64, expected: f64) -> Row {
    Row {
        name,
        computed: format!("{computed:.6}"),
        expected: format!("{expected:.4}"),
        pass: (computed - expected).abs() <= REFERENCE_TOL,
    }
}

fn flag(name: &'static str, computed: impl ToString, expected: impl ToString) -> Row {
    let (c, e) = (computed.to_string(), expected.to_string());
    Row {
        name,
        pass: c == e,
        computed: c,
        expected: e,
    }
}

fn rows() -> Result<Vec<Row>> {
    let (rho1, rho2) = reference_qubit_pair();
    let (phi1, phi2) = reference_qutrit_pair();
    let t2 = 2.0 / 6f64.sqrt();
    let q1 = BlochQubit::new(0.8, 0.6)?;
    let q2 = BlochQubit::new(t2, 0.0)?;
    let mut rows = vec![
        num("H(0.2)", binary_entropy(0.2)?, 0.7219),
        num(
            "H(12/25, 12/25, 1/25)",
            shannon_entropy(&[0.48, 0.48, 0.04])?,
            1.2023,
        ),
    ];

    let built = from_bloch_xyz(0.8, 0.0, 0.6)?;
    rows.push(num(
        "bloch (4/5, 0, 3/5) vs rho1, max deviation",
        built.matrix().max_abs_diff(rho1.matrix())?,
        0.0,
    ));
    let canon = canonicalize_qubit(&rho2)?;
    rows.push(num("canonical t of rho2", canon.t(), t2));
    rows.push(num("canonical z of rho2", canon.z(), 0.0));
    let deph = dephase(&rho1).populations();
    rows.push(num("dephased rho1, population 0", deph[0], 0.8));
    rows.push(num("dephased rho1, population 1", deph[1], 0.2));
    rows.push(flag(
        "rho2 incoherent",
        is_incoherent(&rho2, INCOHERENCE_TOL),
        false,
    ));
    rows.push(num(
        "C_l1 maximally coherent, d = 3",
        c_l1(&maximally_coherent(3)?.density()).value,
        2.0,
    ));
    let delta = DensityMatrix::maximally_mixed(1);
    rows.push(num(
        "C_l1 of embedded rho1",
        c_l1(&embed_mixed(&delta, &rho1)?).value,
        0.4,
    ));

    rows.push(num("C_l1(rho1)", c_l1(&rho1).value, 0.8));
    rows.push(num("C_l1(rho2)", c_l1(&rho2).value, 0.8165));
    rows.push(num(
        "C_l1(phi1)",
        evaluate_pure(&phi1, Measure::L1)?.value,
        1.5143,
    ));
    rows.push(num(
        "C_l1(phi2)",
        evaluate_pure(&phi2, Measure::L1)?.value,
        1.5603,
    ));
    rows.push(num("C_r(rho1)", c_r(&rho1)?.value, 0.7219));
    rows.push(num("C_r(rho2)", c_r(&rho2)?.value, 0.5576));
    rows.push(num(
        "C_r(phi1)",
        evaluate_pure(&phi1, Measure::RelEnt)?.value,
        1.2023,
    ));
    rows.push(num(
        "C_r(phi2)",
        evaluate_pure(&phi2, Measure::RelEnt)?.value,
        1.1568,
    ));
    rows.push(num("C_f(phi2)", c_f_pure(&phi2).value, 1.1568));
    rows.push(num("C_f(rho1)", c_f(&rho1)?.value, 0.7219));
    rows.push(num("C_f(rho2)", c_f(&rho2)?.value, 0.7440));
    rows.push(num("C_f qubit (4/5, 3/5)", c_f_qubit(&q1).value, 0.7219));
    rows.push(num("C_l1 qubit (0.8, 0.6)", c_l1_qubit(&q1).value, 0.8));
    rows.push(num("C_r qubit (4/5, 3/5)", c_r_qubit(&q1).value, 0.7219));
    rows.push(num("C_r qubit (2/sqrt6, 0)", c_r_qubit(&q2).value, 0.5576));

    let od = Verdict::OrderingDifferent;
    rows.push(flag(
        "rho1 vs rho2 under (l1, relent)",
        classify_pair(&rho1, &rho2, Measure::L1, Measure::RelEnt, ORDER_TOL)?.verdict,
        od,
    ));
    rows.push(flag(
        "rho1 vs rho2 under (formation, relent)",
        classify_pair(&rho1, &rho2, Measure::Formation, Measure::RelEnt, ORDER_TOL)?.verdict,
        od,
    ));
    rows.push(flag(
        "feasible (3/5, 4/5)",
        qubit_pair_feasible(0.6, 0.8)?.feasible,
        false,
    ));
    rows.push(flag(
        "feasible (4/5, 2/sqrt6)",
        qubit_pair_feasible(0.8, t2)?.feasible,
        true,
    ));

    let grid = scan_delta_cr(0.8, t2, 201, 201)?;
    let i = grid.z1_axis.iter().position(|z| (z - 0.6).abs() < 1e-9);
    let j = grid.z2_axis.iter().position(|z| z.abs() < 1e-9);
    let at_ref = match (i, j) {
        (Some(i), Some(j)) => grid.delta_cr[i][j],
        _ => f64::NAN,
    };
    rows.push(num(
        "scan (4/5, 2/sqrt6): delta C_r at (0.6, 0)",
        at_ref,
        0.1643,
    ));
    let infeasible = scan_delta_cr(0.6, 0.8, 201, 201)?;
    rows.push(flag(
        "scan (3/5, 4/5): max delta C_r <= 0",
        infeasible.max_delta() <= 0.0,
        true,
    ));

    match find_witness(0.8, t2)? {
        Some((z1, z2)) => {
            rows.push(num("witness (4/5, 2/sqrt6): z1", z1, 0.6));
            rows.push(num("witness (4/5, 2/sqrt6): z2", z2, 0.0));
        }
        None => rows.push(flag("witness (4/5, 2/sqrt6)", "NONE", "(0.6, 0)")),
    }
    let none =
        find_witness(0.6, 0.8)?.map_or("NONE".to_string(), |(a, b)| format!("({a:.6}, {b:.6})"));
    rows.push(flag("witness (3/5, 4/5)", none, "NONE"));

    let (e1, e2) = build_embedded_pair(3, &delta, &delta)?;
    rows.push(flag(
        "embedded pair d = 3 under (l1, relent)",
        classify_pair(&e1, &e2, Measure::L1, Measure::RelEnt, ORDER_TOL)?.verdict,
        od,
    ));

    let u = diagonal_phase_unitary(0.7);
    rows.push(flag(
        "U_alpha incoherent and unitary",
        validate_icptp(&KrausSet::single(u)).valid,
        true,
    ));
    let (x, y, z) = (0.3, 0.4, 0.5);
    let general = from_bloch_xyz(x, y, z)?;
    let alpha = qubit_alignment_phase(&general)?;
    let rotated = diagonal_phase_unitary(alpha).conjugate(general.matrix())?;
    let target = BlochQubit::new(x.hypot(y), z)?.to_density();
    rows.push(num(
        "U_alpha maps rho(x, y, z) onto rho(t, z), max deviation",
        rotated.max_abs_diff(target.matrix())?,
        0.0,
    ));
    let ks = KrausSet::single(diagonal_phase_unitary(alpha));
    let mut worst: f64 = 0.0;
    for m in [Measure::L1, Measure::RelEnt, Measure::Formation] {
        worst = worst.max(check_monotonicity(&ks, &general, m)?.margin.abs());
    }
    rows.push(num(
        "U_alpha leaves every measure unchanged, max change",
        worst,
        0.0,
    ));

    Ok(rows)
}

/// Prints the table and returns whether every row passed.
pub fn run(out: &mut dyn Write) -> std::result::Result<bool, super::Failure> {
    let rows = rows()?;
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    writeln!(
        out,
        "{:<width$}  {:>18}  {:>18}  result",
        "check", "computed", "expected"
    )?;
    let mut passed = 0;
    for r in &rows {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{:<width$}  {:>18}  {:>18}  {verdict}",
            r.name, r.computed, r.expected
        )?;
        passed += usize::from(r.pass);
    }
    writeln!(
        out,
        "# {passed}/{} checks passed (tolerance {REFERENCE_TOL:.0e})",
        rows.len()
    )?;
    Ok(passed == rows.len())
}
