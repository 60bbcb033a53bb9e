//! `cohorder` command-line front end.
//!
//! Exit codes are part of the interface:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success; `classify` pair has the same ordering |
//! | 1    | `postulates` or `reproduce` found a failing check |
//! | 2    | usage error |
//! | 3    | file or parse error |
//! | 4    | numerical-domain error |
//! | 10   | `classify`: ordering-different pair |
//! | 11   | `classify`: tie at tolerance |

mod reproduce;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use cohorder::io::{parse_bloch, parse_state, LoadedState};
use cohorder::measures::{evaluate, Measure};
use cohorder::ordering::{
    build_embedded_pair, build_lifted_pair, classify_pair, find_witness, qubit_pair_feasible,
    scan_delta_cr, uniform_tail, OrderingVerdict, Verdict, ORDER_TOL,
};
use cohorder::postulates::{run_campaign, CampaignConfig};
use cohorder::{DensityMatrix, Error, PureState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;
pub const EXIT_ORDERING_DIFFERENT: i32 = 10;
pub const EXIT_TIE: i32 = 11;

#[derive(Debug, Parser)]
#[command(
    name = "cohorder",
    version,
    about = "Coherence measures and ordering-different pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print C_l1, C_r and (when defined) C_f of one state.
    Measure {
        /// State file (JSON).
        file: Option<PathBuf>,
        /// Qubit in canonical form, `t,z`.
        #[arg(long, allow_hyphen_values = true)]
        bloch: Option<String>,
    },
    /// Compare two states under two measures.
    Classify {
        /// State files (JSON); together with --bloch exactly two states.
        files: Vec<PathBuf>,
        /// Qubit shorthand `t,z`; may be repeated.
        #[arg(long, allow_hyphen_values = true)]
        bloch: Vec<String>,
        /// Two comma-separated measures out of l1, relent, formation.
        #[arg(long, default_value = "l1,relent")]
        measures: String,
        #[arg(long, default_value_t = ORDER_TOL)]
        tol: f64,
    },
    /// Closed-form test for qubit ordering-different pairs at (t1, t2).
    Feasible {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
    },
    /// Write the Delta C_r grid over (z1, z2) as CSV.
    Scan {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
        #[arg(long, default_value_t = 201)]
        n1: usize,
        #[arg(long, default_value_t = 201)]
        n2: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the extremal (z1, z2) witness or NONE.
    Witness {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
    },
    /// Lift the reference qutrit pair to dimension d.
    Lift {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Embed the reference qubit pair into dimension d.
    Embed {
        #[arg(long)]
        d: usize,
    },
    /// Run the postulate campaign.
    Postulates {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "l1,relent")]
        measures: String,
    },
    /// Check every published reference value.
    Reproduce,
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(out, "{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                };
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{first}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_IO
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERIC
            } else {
                EXIT_IO
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Measure { file, bloch } => cmd_measure(file, bloch, out),
        Command::Classify {
            files,
            bloch,
            measures,
            tol,
        } => cmd_classify(files, bloch, &measures, tol, out),
        Command::Feasible { t1, t2 } => {
            let res = qubit_pair_feasible(t1, t2)?;
            writeln!(out, "{res}")?;
            Ok(EXIT_OK)
        }
        Command::Scan {
            t1,
            t2,
            n1,
            n2,
            out: path,
        } => cmd_scan(t1, t2, n1, n2, &path, out),
        Command::Witness { t1, t2 } => {
            match find_witness(t1, t2)? {
                Some((z1, z2)) => writeln!(out, "z1: {z1:.6}\nz2: {z2:.6}")?,
                None => writeln!(out, "NONE")?,
            }
            Ok(EXIT_OK)
        }
        Command::Lift { d, alpha } => cmd_lift(d, alpha, out),
        Command::Embed { d } => cmd_embed(d, out),
        Command::Postulates {
            dim,
            trials,
            seed,
            measures,
        } => {
            let measures = parse_measures(&measures)?;
            let report = run_campaign(&CampaignConfig {
                dim,
                trials,
                seed,
                measures,
            })?;
            writeln!(out, "{report}")?;
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Reproduce => {
            let passed = reproduce::run(out)?;
            Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn parse_measures(spec: &str) -> Result<Vec<Measure>, Failure> {
    spec.split(',')
        .map(|s| {
            s.parse::<Measure>()
                .map_err(|e| Failure::Usage(e.to_string()))
        })
        .collect()
}

fn load_state(path: &Path) -> Result<LoadedState, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text).map_err(|e| match e {
        Error::Parse(msg) => Failure::Io(format!("{}: {msg}", path.display())),
        other => Failure::Lib(other),
    })
}

fn print_values(rho: &DensityMatrix, out: &mut dyn Write) -> Result<(), Failure> {
    for m in Measure::ALL {
        match evaluate(rho, m) {
            Ok(v) => writeln!(out, "{v}")?,
            Err(Error::UnsupportedInput(why)) => {
                writeln!(out, "{} = undefined ({why})", m.symbol())?
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn cmd_measure(file: Option<PathBuf>, bloch: Option<String>, out: &mut dyn Write) -> CmdResult {
    let rho = match (file, bloch) {
        (Some(path), None) => load_state(&path)?.density(),
        (None, Some(spec)) => parse_bloch(&spec)?.to_density(),
        _ => {
            return Err(Failure::Usage(
                "measure needs exactly one of a state file or --bloch".into(),
            ))
        }
    };
    writeln!(out, "dim: {}", rho.dim())?;
    print_values(&rho, out)?;
    Ok(EXIT_OK)
}

fn verdict_code(v: &OrderingVerdict) -> i32 {
    match v.verdict {
        Verdict::SameOrder => EXIT_OK,
        Verdict::OrderingDifferent => EXIT_ORDERING_DIFFERENT,
        Verdict::TieAtTolerance => EXIT_TIE,
    }
}

fn cmd_classify(
    files: Vec<PathBuf>,
    bloch: Vec<String>,
    measures: &str,
    tol: f64,
    out: &mut dyn Write,
) -> CmdResult {
    let measures = parse_measures(measures)?;
    if measures.len() != 2 {
        return Err(Failure::Usage(format!(
            "--measures needs two measures, got {}",
            measures.len()
        )));
    }
    if files.len() + bloch.len() != 2 {
        return Err(Failure::Usage(format!(
            "classify needs two states, got {}",
            files.len() + bloch.len()
        )));
    }
    let mut states = Vec::with_capacity(2);
    for path in &files {
        states.push(load_state(path)?.density());
    }
    for spec in &bloch {
        states.push(parse_bloch(spec)?.to_density());
    }
    let v = classify_pair(&states[0], &states[1], measures[0], measures[1], tol)?;
    writeln!(out, "{v}")?;
    Ok(verdict_code(&v))
}

fn cmd_scan(t1: f64, t2: f64, n1: usize, n2: usize, path: &Path, out: &mut dyn Write) -> CmdResult {
    let file = fs::File::create(path)
        .map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display())))?;
    let grid = scan_delta_cr(t1, t2, n1, n2)?;
    grid.write_csv(std::io::BufWriter::new(file))?;
    let (i, j) = grid.argmax();
    writeln!(out, "grid: {n1} x {n2} written to {}", path.display())?;
    writeln!(out, "positive cells: {}", grid.count_above(0.0))?;
    writeln!(
        out,
        "max delta C_r: {:.6} at z1 = {:.6}, z2 = {:.6}",
        grid.delta_cr[i][j], grid.z1_axis[i], grid.z2_axis[j]
    )?;
    writeln!(
        out,
        "matrix cross-check (every 16th point): {:.3e}",
        grid.cross_check(16)?
    )?;
    Ok(EXIT_OK)
}

fn fmt_amplitudes(phi: &PureState) -> String {
    let parts: Vec<String> = phi
        .amplitudes()
        .iter()
        .map(|a| {
            if a.im == 0.0 {
                format!("{:.6}", a.re)
            } else {
                format!("{:.6}{:+.6}i", a.re, a.im)
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn print_pair_report(
    r1: &DensityMatrix,
    r2: &DensityMatrix,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    for (label, rho) in [("state 1", r1), ("state 2", r2)] {
        writeln!(out, "{label}:")?;
        print_values(rho, out)?;
    }
    for b in [Measure::RelEnt, Measure::Formation] {
        match classify_pair(r1, r2, Measure::L1, b, ORDER_TOL) {
            Ok(v) => writeln!(out, "(l1, {b}): {}", v.verdict)?,
            Err(Error::UnsupportedInput(_)) => writeln!(out, "(l1, {b}): undefined")?,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn cmd_lift(d: usize, alpha: f64, out: &mut dyn Write) -> CmdResult {
    let (a, betas) = uniform_tail(d, alpha)?;
    let (p1, p2) = build_lifted_pair(d, a, &betas)?;
    writeln!(out, "phi1: {}", fmt_amplitudes(&p1))?;
    writeln!(out, "phi2: {}", fmt_amplitudes(&p2))?;
    print_pair_report(&p1.density(), &p2.density(), out)?;
    Ok(EXIT_OK)
}

fn fmt_matrix(rho: &DensityMatrix) -> String {
    rho.matrix()
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|z| format!("{:.6}", z.re)).collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_embed(d: usize, out: &mut dyn Write) -> CmdResult {
    if d < 3 {
        return Err(Error::Domain(format!("embedded pairs need d >= 3, got {d}")).into());
    }
    let delta = DensityMatrix::maximally_mixed(d - 2);
    let (r1, r2) = build_embedded_pair(d, &delta, &delta)?;
    writeln!(out, "rho1:\n{}", fmt_matrix(&r1))?;
    writeln!(out, "rho2:\n{}", fmt_matrix(&r2))?;
    print_pair_report(&r1, &r2, out)?;
    Ok(EXIT_OK)
}
