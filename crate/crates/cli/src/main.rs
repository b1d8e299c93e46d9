//! Command-line surface for the two-fermion superselection toolkit.
//!
//! Exit codes: 0 success, 2 unreadable input / schema / parameter range,
//! 3 physics validation failure (non-Hermitian, unnormalized, off-sector,
//! indefinite), 4 numerical non-convergence. Machine-readable reasons go to
//! standard error; results go to standard output or `--output`.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twoferm::entanglement::{eof_closed_form, eof_oracle, wootters_concurrence, OracleConfig};
use twoferm::frames::{
    find_separable_frame, random_group_element, transform_state, BogoliubovParams, ParamsDoc,
};
use twoferm::matrix::{C64, CMat4};
use twoferm::states::{
    validate, werner, SSRState, StateDoc, Subsystem, WernerParam, VALIDATION_TOL,
};
use twoferm::thirring::{entanglement_trajectory, ThirringParams};
use twoferm::{Error, Sector};

mod selftest;

#[derive(Parser)]
#[command(
    name = "twoferm",
    version,
    about = "Two fermionic modes under the parity superselection rule: \
             states, entanglement, observer frames, dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a state file and report separability and occupations
    Validate {
        /// JSON state file ({"w", "v", "b"} or {"matrix"})
        state: PathBuf,
        /// Validation tolerance for Hermiticity, trace, sector support,
        /// and positivity
        #[arg(long, default_value_t = VALIDATION_TOL)]
        tol: f64,
    },
    /// Entanglement of formation (closed form, optionally the ensemble
    /// oracle)
    Eof {
        state: PathBuf,
        /// Also run the direct minimization over sector-pure ensembles
        #[arg(long)]
        oracle: bool,
        /// Local searches per sector for the oracle
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        /// Oracle master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Wootters concurrence of the state's density matrix
    Concurrence { state: PathBuf },
    /// Tabulate eof and concurrence across the Werner family
    WernerScan {
        /// Grid start:stop:steps with gamma in [-1/3, 1]
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        gamma_grid: Grid,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Destination file (standard output if omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Conjugate a state by the frame unitary of a parameter file
    Transform {
        state: PathBuf,
        /// JSON file {"alpha", "beta", "zeta", "omega", "chi"}, or a
        /// frame document written by find-frame
        params: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Find a frame in which the state is diagonal (hence separable)
    FindFrame {
        state: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report whether the state stays separable in every frame
    SuperseparableCheck {
        state: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random frames to scan for coherence creation
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Separability tolerance on the coherences
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Entanglement trajectory under the two-mode Thirring Hamiltonian
    Evolve {
        state: PathBuf,
        /// Mass (units of inverse time)
        #[arg(long, allow_hyphen_values = true)]
        m: f64,
        /// Coupling (units of inverse time)
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Time grid start:stop:steps
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        t_grid: Grid,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Direct ensemble minimization, reported next to the closed form
    Oracle {
        state: PathBuf,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Regenerate and verify the library's reference numbers
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Inclusive evenly spaced grid; `steps` is the point count.
#[derive(Clone, Copy, Debug)]
struct Grid {
    start: f64,
    stop: f64,
    steps: usize,
}

impl Grid {
    fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|k| {
                if k == self.steps - 1 {
                    self.stop
                } else {
                    self.start + span * k as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }
}

fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:steps, got '{text}'"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|e| format!("bad grid start '{}': {e}", parts[0]))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|e| format!("bad grid stop '{}': {e}", parts[1]))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|e| format!("bad grid steps '{}': {e}", parts[2]))?;
    if !start.is_finite() || !stop.is_finite() {
        return Err(format!("grid endpoints must be finite, got '{text}'"));
    }
    if steps == 0 {
        return Err("grid needs at least one point".into());
    }
    Ok(Grid { start, stop, steps })
}

/// A failed command: message for standard error plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn from_core(e: Error) -> Self {
        let code = match e {
            Error::NotHermitian(_)
            | Error::NotNormalized(_)
            | Error::SsrViolated(_)
            | Error::NotPositive(_)
            | Error::NotAState(_)
            | Error::MixedParity(_)
            | Error::NotUnitary(_) => 3,
            Error::OutOfRange(_) | Error::InvalidParams(_) | Error::InvalidConfig(_) => 2,
            Error::DegenerateSector | Error::ReconstructionFailed(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("input-error: {}: {e}", path.display())))
}

/// State files carry either the six sector components or a raw 4x4 matrix
/// of [re, im] pairs; the latter goes through full physics validation and
/// is how inadmissible matrices are reported.
fn load_state(path: &Path, tol: f64) -> Result<SSRState, Failure> {
    let text = read_file(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("schema-error: {}: {e}", path.display())))?;
    if value.get("matrix").is_some() {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawDoc {
            matrix: [[[f64; 2]; 4]; 4],
        }
        let raw: RawDoc = serde_json::from_value(value)
            .map_err(|e| Failure::input(format!("schema-error: {}: {e}", path.display())))?;
        let mut m = CMat4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = C64::new(raw.matrix[r][c][0], raw.matrix[r][c][1]);
            }
        }
        validate(&m, tol).map_err(Failure::from_core)
    } else {
        let doc: StateDoc = serde_json::from_value(value)
            .map_err(|e| Failure::input(format!("schema-error: {}: {e}", path.display())))?;
        SSRState::try_from(doc).map_err(Failure::from_core)
    }
}

fn load_params(path: &Path) -> Result<BogoliubovParams, Failure> {
    let text = read_file(path)?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("schema-error: {}: {e}", path.display())))?;
    // A frame document produced by find-frame nests the parameters; accept
    // it directly so its output feeds straight into transform.
    if let Some(inner) = value.get_mut("params") {
        value = inner.take();
    }
    let doc: ParamsDoc = serde_json::from_value(value)
        .map_err(|e| Failure::input(format!("schema-error: {}: {e}", path.display())))?;
    BogoliubovParams::try_from(doc).map_err(Failure::from_core)
}

fn write_output(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("output-error: {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}

/// Full-precision float for machine-readable files: 17 significant digits.
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn sector_name(s: Sector) -> &'static str {
    match s {
        Sector::Even => "even",
        Sector::Odd => "odd",
    }
}

#[derive(Serialize)]
struct ScanRow {
    gamma: f64,
    eof: f64,
    concurrence: f64,
}

#[derive(Serialize)]
struct FrameDoc {
    params: ParamsDoc,
    diagonal: StateDoc,
}

#[derive(Serialize)]
struct TrajectoryRow {
    t: f64,
    #[serde(rename = "E")]
    e: f64,
}

#[derive(Serialize)]
struct MemberDoc {
    weight: f64,
    sector: &'static str,
    amplitudes: [[f64; 2]; 2],
}

#[derive(Serialize)]
struct OracleReport {
    closed_form: f64,
    minimum: f64,
    gap: f64,
    converged: bool,
    ensemble: Vec<MemberDoc>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Validate { state, tol } => {
            let s = load_state(&state, tol)?;
            println!("state: valid");
            println!("separable: {}", s.is_separable(1e-12));
            println!("superseparable: {}", s.is_superseparable(1e-12));
            let m1 = s.partial_trace(Subsystem::Mode1);
            let m2 = s.partial_trace(Subsystem::Mode2);
            println!("mode-1 occupation (p0, p1): ({:.6}, {:.6})", m1.p0, m1.p1);
            println!("mode-2 occupation (p0, p1): ({:.6}, {:.6})", m2.p0, m2.p1);
            Ok(ExitCode::SUCCESS)
        }
        Command::Eof {
            state,
            oracle,
            restarts,
            seed,
        } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            let analysis = eof_closed_form(&s);
            println!("closed form: {:.6}", analysis.total);
            for (label, sec) in ["even", "odd"].iter().zip(analysis.sectors.iter()) {
                let xi = match sec.xi {
                    Some(x) => format!("{x:.6}"),
                    None => "(degenerate)".into(),
                };
                println!(
                    "  {label} sector: weight {:.6}, xi {xi}, entropy {:.6}",
                    sec.weight, sec.entropy
                );
            }
            if !oracle {
                return Ok(ExitCode::SUCCESS);
            }
            let config = OracleConfig {
                restarts,
                seed,
                ..OracleConfig::default()
            };
            let result = eof_oracle(&s, &config).map_err(Failure::from_core)?;
            println!("oracle minimum: {:.6}", result.minimum);
            println!("gap (closed form - oracle): {:.6}", analysis.total - result.minimum);
            if result.minimum < analysis.total - 1e-6 {
                println!(
                    "DISAGREES: the ensemble search found a decomposition below the \
                     closed form; the closed form is the sector-spectral value"
                );
            }
            println!("converged: {}", result.converged);
            if result.converged {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("non-convergence: iteration cap reached; values are best-so-far");
                Ok(ExitCode::from(4))
            }
        }
        Command::Concurrence { state } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            let c = wootters_concurrence(&s.to_matrix()).map_err(Failure::from_core)?;
            println!("concurrence: {c:.6}");
            Ok(ExitCode::SUCCESS)
        }
        Command::WernerScan {
            gamma_grid,
            format,
            output,
        } => {
            let mut rows = Vec::new();
            for gamma in gamma_grid.points() {
                let param = WernerParam::new(gamma).map_err(Failure::from_core)?;
                let s = werner(param);
                let eof = eof_closed_form(&s).total;
                let concurrence =
                    wootters_concurrence(&s.to_matrix()).map_err(Failure::from_core)?;
                rows.push(ScanRow {
                    gamma,
                    eof,
                    concurrence,
                });
            }
            let text = match format {
                Format::Csv => {
                    let mut out = String::from("gamma,eof,concurrence\n");
                    for row in &rows {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            full(row.gamma),
                            full(row.eof),
                            full(row.concurrence)
                        ));
                    }
                    out
                }
                Format::Json => pretty(&rows),
            };
            write_output(output.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            state,
            params,
            output,
        } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            let p = load_params(&params)?;
            let moved = transform_state(&p, &s);
            write_output(output.as_ref(), &pretty(&StateDoc::from(&moved)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FindFrame { state, output } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            let frame = find_separable_frame(&s);
            let doc = FrameDoc {
                params: ParamsDoc::from(&frame.params),
                diagonal: StateDoc::from(&frame.diagonal),
            };
            write_output(output.as_ref(), &pretty(&doc))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SuperseparableCheck {
            state,
            seed,
            samples,
            tol,
        } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            if !s.is_separable(tol) {
                println!("superseparable: false");
                println!(
                    "not separable in its own frame: |b1| = {:.6}, |b2| = {:.6}",
                    s.b1().norm(),
                    s.b2().norm()
                );
                return Ok(ExitCode::SUCCESS);
            }
            let superseparable = s.is_superseparable(tol);
            println!("superseparable: {superseparable}");
            let mut largest = 0.0_f64;
            let mut witness = 0usize;
            for k in 0..samples {
                let p = random_group_element(seed.wrapping_add(k as u64));
                let moved = transform_state(&p, &s);
                let coherence = moved.b1().norm().max(moved.b2().norm());
                if coherence > largest {
                    largest = coherence;
                    witness = k;
                }
            }
            if superseparable {
                println!(
                    "largest coherence created over {samples} random frames: {largest:.3e}"
                );
            } else {
                println!(
                    "witness: frame sample {witness} creates coherence {largest:.6}"
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Evolve {
            state,
            m,
            lambda,
            t_grid,
            format,
            output,
        } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            let p = ThirringParams::new(m, lambda).map_err(Failure::from_core)?;
            let rows: Vec<TrajectoryRow> = entanglement_trajectory(&s, p, &t_grid.points())
                .into_iter()
                .map(|(t, e)| TrajectoryRow { t, e })
                .collect();
            let text = match format {
                Format::Csv => {
                    let mut out = String::from("t,E\n");
                    for row in &rows {
                        out.push_str(&format!("{},{}\n", full(row.t), full(row.e)));
                    }
                    out
                }
                Format::Json => pretty(&rows),
            };
            write_output(output.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            state,
            restarts,
            seed,
            output,
        } => {
            let s = load_state(&state, VALIDATION_TOL)?;
            let config = OracleConfig {
                restarts,
                seed,
                ..OracleConfig::default()
            };
            let closed = eof_closed_form(&s).total;
            let result = eof_oracle(&s, &config).map_err(Failure::from_core)?;
            let report = OracleReport {
                closed_form: closed,
                minimum: result.minimum,
                gap: closed - result.minimum,
                converged: result.converged,
                ensemble: result
                    .ensemble
                    .members
                    .iter()
                    .map(|m| MemberDoc {
                        weight: m.weight,
                        sector: sector_name(m.sector),
                        amplitudes: [
                            [m.amplitudes[0].re, m.amplitudes[0].im],
                            [m.amplitudes[1].re, m.amplitudes[1].im],
                        ],
                    })
                    .collect(),
            };
            write_output(output.as_ref(), &pretty(&report))?;
            if result.converged {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("non-convergence: iteration cap reached; values are best-so-far");
                Ok(ExitCode::from(4))
            }
        }
        Command::Selftest => {
            if selftest::run() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
