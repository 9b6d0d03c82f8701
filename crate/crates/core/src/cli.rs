//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification command found a failing check,
//! 2 bad arguments or config, 3 inadmissible data, 4 numeric failure.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classical::{
    classical_residuals, convergence_probe, solve_classical, ConvergenceTable, ProbeRow,
};
use crate::error::Error;
use crate::field::{FieldSpec, SimilarityField};
use crate::inverse::{
    consistent_data, solve_case, system_residuals, CaseId, Coefficients, KnownCoefficients,
    ProblemData, RESIDUAL_TOLERANCE,
};
use crate::specfun::SeriesPolicy;

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// Ground truth used by `roundtrip`.
pub const ROUNDTRIP_TRUTH: Coefficients = Coefficients {
    k: 1.5,
    rho: 0.8,
    c: 2.0,
    l: 1.2,
};

const DEFAULT_PROBE_ALPHAS: [f64; 3] = [0.9, 0.99, 0.999];

#[derive(Debug, Parser)]
#[command(
    name = "fracstefan",
    version,
    about = "Inverse one-phase fractional Stefan problem solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Problem configuration (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Case 1-6; overrides the config's `case`.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub case: Option<u8>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recover the two unknown coefficients of one case.
    Solve(InputArgs),
    /// Solve at each order of a grid and compare with the classical solution.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<f64>>,
    },
    /// Sample the temperature on an (x, t) grid.
    Field {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        x_grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        t_grid: Vec<f64>,
    },
    /// Rebuild consistent data from a known coefficient set and recover it in every case.
    Roundtrip {
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Largest accepted relative coefficient error.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Classical solution and the deviation of the fractional one as the order tends to 1.
    Limit {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<f64>>,
        /// Largest accepted final-row relative deviation.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Solve(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Solve(Error::Inadmissible { .. }) => EXIT_INADMISSIBLE,
            CliError::Solve(Error::Probe { source, .. })
                if matches!(**source, Error::Inadmissible { .. }) =>
            {
                EXIT_INADMISSIBLE
            }
            CliError::Solve(Error::InvalidData(_) | Error::MissingCoefficient { .. }) => {
                EXIT_SCHEMA
            }
            CliError::Solve(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "config error: {m}"),
            CliError::Solve(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Solve(e)
    }
}

fn one() -> f64 {
    1.0
}

/// On-disk problem configuration.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub alpha: f64,
    #[serde(default = "one")]
    pub mu: f64,
    #[serde(default = "one")]
    pub nu: f64,
    #[serde(rename = "T_m")]
    pub t_m: f64,
    #[serde(rename = "T_0")]
    pub t_0: f64,
    pub q_0: f64,
    pub sigma: f64,
    #[serde(default)]
    pub known: KnownCoefficients,
    #[serde(default)]
    pub case: Option<u8>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn data(&self) -> ProblemData {
        ProblemData {
            alpha: self.alpha,
            mu: self.mu,
            nu: self.nu,
            t_m: self.t_m,
            t_0: self.t_0,
            q_0: self.q_0,
            sigma: self.sigma,
            known: self.known,
        }
    }

    /// `flag` wins over the file; one of them must be present.
    pub fn case(&self, flag: Option<u8>) -> Result<CaseId, CliError> {
        let id = flag
            .or(self.case)
            .ok_or_else(|| CliError::Schema("no case given (use --case or \"case\")".into()))?;
        CaseId::from_index(id).map_err(|e| CliError::Schema(e.to_string()))
    }
}

fn load(input: &InputArgs) -> Result<(ProblemData, CaseId), CliError> {
    let config = Config::load(&input.input)?;
    let case = config.case(input.case)?;
    let data = config.data();
    data.validate()?;
    Ok((data, case))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutput {
    pub case: u8,
    pub alpha: f64,
    pub xi: f64,
    pub lambda: f64,
    pub k: f64,
    pub rho: f64,
    pub c: f64,
    pub l: f64,
    pub recovered: [String; 2],
    pub residual_eq1: f64,
    pub residual_eq2: f64,
}

/// Solve one case; `α = 1` goes through the classical closed forms, whose
/// `ξ*` is reported as `ξ = 2ξ*`.
pub fn solve(
    case: CaseId,
    data: &ProblemData,
    policy: &SeriesPolicy,
) -> Result<SolveOutput, CliError> {
    let recovered = case.unknowns().map(|c| c.to_string());
    if data.alpha == 1.0 {
        let sol = solve_classical(case, data)?;
        let (r1, r2) = classical_residuals(&sol);
        let c = sol.coefficients;
        return Ok(SolveOutput {
            case: case.index(),
            alpha: 1.0,
            xi: 2.0 * sol.xi_star,
            lambda: sol.lambda,
            k: c.k,
            rho: c.rho,
            c: c.c,
            l: c.l,
            recovered,
            residual_eq1: r1,
            residual_eq2: r2,
        });
    }
    let report = solve_case(case, data, policy)?;
    let c = report.coefficients;
    Ok(SolveOutput {
        case: case.index(),
        alpha: report.alpha,
        xi: report.xi,
        lambda: report.lambda,
        k: c.k,
        rho: c.rho,
        c: c.c,
        l: c.l,
        recovered,
        residual_eq1: report.residual_eq1,
        residual_eq2: report.residual_eq2,
    })
}

impl SolveOutput {
    pub fn coefficients(&self) -> Coefficients {
        Coefficients {
            k: self.k,
            rho: self.rho,
            c: self.c,
            l: self.l,
        }
    }

    /// Recompute the residuals from the emitted values.
    pub fn revalidate(
        &self,
        data: &ProblemData,
        policy: &SeriesPolicy,
    ) -> crate::Result<(f64, f64)> {
        system_residuals(self.xi, &self.coefficients(), data, policy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeLine {
    pub alpha: f64,
    pub xi: f64,
    pub xi_deviation: f64,
    pub xi_relative_deviation: f64,
    pub coefficient_deviations: BTreeMap<String, f64>,
}

impl From<&ProbeRow> for ProbeLine {
    fn from(row: &ProbeRow) -> Self {
        ProbeLine {
            alpha: row.alpha,
            xi: row.xi,
            xi_deviation: row.xi_deviation,
            xi_relative_deviation: row.xi_relative_deviation,
            coefficient_deviations: row
                .coefficient_deviations
                .iter()
                .map(|(c, d)| (c.to_string(), *d))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub case: u8,
    pub two_xi_star: f64,
    pub xi_deviation_decreasing: bool,
    pub rows: Vec<ProbeLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitOutput {
    pub case: u8,
    pub sigma_star: f64,
    pub xi_star: f64,
    pub k: f64,
    pub rho: f64,
    pub c: f64,
    pub l: f64,
    pub residual_eq1: f64,
    pub residual_eq2: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
    pub rows: Vec<ProbeLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripCase {
    pub case: u8,
    pub xi: f64,
    pub max_relative_error: f64,
    pub residual_eq1: f64,
    pub residual_eq2: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripOutput {
    pub alpha: f64,
    #[serde(rename = "T_m")]
    pub t_m: f64,
    #[serde(rename = "T_0")]
    pub t_0: f64,
    pub sigma: f64,
    pub q_0: f64,
    pub xi: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub cases: Vec<RoundtripCase>,
}

/// Recover `ROUNDTRIP_TRUTH` in all six cases from data built at `alpha`
/// with `T0 - Tm = 1` and `μ = ν = 1`.
pub fn roundtrip(alpha: f64, tol: f64, policy: &SeriesPolicy) -> Result<RoundtripOutput, CliError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Schema(format!(
            "--alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let truth = ROUNDTRIP_TRUTH;
    let (t_m, t_0) = (0.0, 1.0);
    let cd = consistent_data(&truth, alpha, 1.0, 1.0, t_m, t_0, policy)?;
    let mut cases = Vec::with_capacity(6);
    for case in CaseId::ALL {
        let data = ProblemData {
            alpha,
            mu: 1.0,
            nu: 1.0,
            t_m,
            t_0,
            q_0: cd.q_0,
            sigma: cd.sigma,
            known: truth.known_for(case),
        };
        let report = solve_case(case, &data, policy)?;
        let max_relative_error = case
            .unknowns()
            .iter()
            .map(|&c| (report.coefficients.get(c) - truth.get(c)).abs() / truth.get(c))
            .fold(0.0, f64::max);
        let pass = max_relative_error <= tol
            && report.residual_eq1 <= RESIDUAL_TOLERANCE
            && report.residual_eq2 <= RESIDUAL_TOLERANCE;
        cases.push(RoundtripCase {
            case: case.index(),
            xi: report.xi,
            max_relative_error,
            residual_eq1: report.residual_eq1,
            residual_eq2: report.residual_eq2,
            pass,
        });
    }
    Ok(RoundtripOutput {
        alpha,
        t_m,
        t_0,
        sigma: cd.sigma,
        q_0: cd.q_0,
        xi: cd.xi,
        tolerance: tol,
        pass: cases.iter().all(|c| c.pass),
        cases,
    })
}

fn probe_grid(grid: &Option<Vec<f64>>) -> Result<Vec<f64>, CliError> {
    let grid = grid
        .clone()
        .unwrap_or_else(|| DEFAULT_PROBE_ALPHAS.to_vec());
    if grid.is_empty() || grid.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
        return Err(CliError::Schema(format!(
            "--alpha-grid values must lie in (0, 1), got {grid:?}"
        )));
    }
    Ok(grid)
}

fn probe(
    case: CaseId,
    data: &ProblemData,
    alphas: &[f64],
    policy: &SeriesPolicy,
) -> Result<ConvergenceTable, CliError> {
    let mu = data.mu;
    let nu = data.nu;
    Ok(convergence_probe(
        case,
        data,
        alphas,
        &|_| mu,
        &|_| nu,
        policy,
    )?)
}

/// What a command produced: the report text and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn num(v: f64) -> String {
    // Same shortest round-trip text the JSON reports use.
    serde_json::to_string(&v).expect("finite floats serialize")
}

fn probe_csv(rows: &[ProbeLine]) -> String {
    csv(
        "alpha,xi,xi_deviation,xi_relative_deviation,coefficient,deviation,coefficient,deviation",
        rows.iter().map(|r| {
            let mut cells = vec![
                num(r.alpha),
                num(r.xi),
                num(r.xi_deviation),
                num(r.xi_relative_deviation),
            ];
            for (name, d) in &r.coefficient_deviations {
                cells.push(name.clone());
                cells.push(num(*d));
            }
            cells
        }),
    )
}

/// Execute a parsed command and render its report.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let policy = SeriesPolicy::default();
    let format = cli.format;
    let done = |text| {
        Ok(Outcome {
            text,
            success: true,
        })
    };
    match &cli.command {
        Command::Solve(input) => {
            let (data, case) = load(input)?;
            let out = solve(case, &data, &policy)?;
            match format {
                Format::Json => done(json(&out)),
                Format::Csv => done(csv(
                    "case,alpha,xi,k,rho,c,l,residual_eq1,residual_eq2",
                    [vec![
                        out.case.to_string(),
                        num(out.alpha),
                        num(out.xi),
                        num(out.k),
                        num(out.rho),
                        num(out.c),
                        num(out.l),
                        num(out.residual_eq1),
                        num(out.residual_eq2),
                    ]],
                )),
            }
        }
        Command::Sweep { input, alpha_grid } => {
            let (data, case) = load(input)?;
            let alphas = probe_grid(alpha_grid)?;
            let table = probe(case, &data, &alphas, &policy)?;
            let out = SweepOutput {
                case: case.index(),
                two_xi_star: 2.0 * table.classical.xi_star,
                xi_deviation_decreasing: table.xi_deviation_decreasing(),
                rows: table.rows.iter().map(ProbeLine::from).collect(),
            };
            match format {
                Format::Json => done(json(&out)),
                Format::Csv => done(probe_csv(&out.rows)),
            }
        }
        Command::Field {
            input,
            x_grid,
            t_grid,
        } => {
            let (data, case) = load(input)?;
            let field = if data.alpha == 1.0 {
                SimilarityField::from_classical(&solve_classical(case, &data)?)?
            } else {
                SimilarityField::from_report(&solve_case(case, &data, &policy)?, &data, &policy)?
            };
            let t_max = t_grid.iter().cloned().fold(f64::NAN, f64::max);
            let x_grid = match x_grid {
                Some(g) => g.clone(),
                None => {
                    let s = field.front(t_max);
                    (1..=20).map(|i| s * i as f64 / 20.0).collect()
                }
            };
            let spec = FieldSpec::new(field, x_grid, t_grid.clone())
                .map_err(|e| CliError::Schema(e.to_string()))?;
            let points = spec.evaluate()?;
            match format {
                Format::Csv => done(csv(
                    "x,t,T",
                    points
                        .iter()
                        .map(|p| vec![num(p.x), num(p.t), num(p.temperature)]),
                )),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Point {
                        x: f64,
                        t: f64,
                        #[serde(rename = "T")]
                        temperature: f64,
                    }
                    let pts: Vec<Point> = points
                        .iter()
                        .map(|p| Point {
                            x: p.x,
                            t: p.t,
                            temperature: p.temperature,
                        })
                        .collect();
                    done(json(&pts))
                }
            }
        }
        Command::Roundtrip { alpha, tol } => {
            let out = roundtrip(*alpha, *tol, &policy)?;
            let text = match format {
                Format::Json => json(&out),
                Format::Csv => csv(
                    "case,xi,max_relative_error,residual_eq1,residual_eq2,pass",
                    out.cases.iter().map(|c| {
                        vec![
                            c.case.to_string(),
                            num(c.xi),
                            num(c.max_relative_error),
                            num(c.residual_eq1),
                            num(c.residual_eq2),
                            c.pass.to_string(),
                        ]
                    }),
                ),
            };
            Ok(Outcome {
                text,
                success: out.pass,
            })
        }
        Command::Limit {
            input,
            alpha_grid,
            tol,
        } => {
            let (data, case) = load(input)?;
            let alphas = probe_grid(alpha_grid)?;
            let table = probe(case, &data, &alphas, &policy)?;
            let sol = &table.classical;
            let (r1, r2) = classical_residuals(sol);
            let within = table.final_within(*tol);
            let out = LimitOutput {
                case: case.index(),
                sigma_star: sol.sigma_star,
                xi_star: sol.xi_star,
                k: sol.coefficients.k,
                rho: sol.coefficients.rho,
                c: sol.coefficients.c,
                l: sol.coefficients.l,
                residual_eq1: r1,
                residual_eq2: r2,
                tolerance: *tol,
                within_tolerance: within,
                rows: table.rows.iter().map(ProbeLine::from).collect(),
            };
            let text = match format {
                Format::Json => json(&out),
                Format::Csv => probe_csv(&out.rows),
            };
            Ok(Outcome {
                text,
                success: within,
            })
        }
    }
}

/// Parse `args`, run, write the report, and return the process exit code.
/// Diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_SCHEMA } else { 0 };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(m) = written {
        eprintln!("error: {m}");
        return EXIT_NUMERIC;
    }
    if outcome.success {
        0
    } else {
        eprintln!("error: verification failed (see report)");
        EXIT_CHECK_FAILED
    }
}
