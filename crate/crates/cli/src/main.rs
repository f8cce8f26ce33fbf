mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heis_core::eta::{decompose_full, decompose_once, homogeneous_degree};
use heis_core::group::GroupSpec;
use heis_core::harmonic::{dim_table, harmonic_basis, triangular_basis_h1};
use heis_core::sphere::moments::MAX_PRECISION;
use heis_core::sphere::{gram_matrix, project, Method, QuadratureRule, Weight, DEFAULT_RULE};
use heis_core::verify::{run_all, run_claim, VerifyConfig, VerifyReport, CLAIM_IDS, DEFAULT_SEED};
use heis_core::{parse_poly, Error, Polynomial, Signature};
use thiserror::Error as ThisError;

/// Directory that relative `--out` paths are resolved against.
pub const OUT_DIR_ENV: &str = "HEIS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "heis", version, about = "Harmonic polynomials on Heisenberg groups")]
struct Cli {
    /// Output format; csv is accepted only for flat tables (dims, gram, moments).
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout. Relative paths are
    /// resolved against $HEIS_OUT_DIR when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisMethod {
    Generic,
    Triangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GramMethod {
    Moments,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    None,
    Horizontal,
}

impl From<GramMethod> for Method {
    fn from(m: GramMethod) -> Self {
        match m {
            GramMethod::Moments => Method::Moments,
            GramMethod::Quadrature => Method::Quadrature,
        }
    }
}

impl From<WeightArg> for Weight {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::None => Weight::None,
            WeightArg::Horizontal => Weight::Horizontal,
        }
    }
}

#[derive(Debug, Args)]
struct RuleArgs {
    /// Trapezoid nodes in θ.
    #[arg(long, default_value_t = DEFAULT_RULE.0)]
    n_theta: usize,
    /// Gauss–Legendre nodes in ψ.
    #[arg(long, default_value_t = DEFAULT_RULE.1)]
    n_psi: usize,
}

impl RuleArgs {
    fn rule(&self) -> Result<QuadratureRule, CliError> {
        QuadratureRule::new(self.n_theta, self.n_psi).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basis of the harmonic polynomials of one weighted degree.
    Basis {
        /// Built-in group (h1, h2, h3) or path to a JSON group spec.
        #[arg(long, default_value = "h1")]
        group: String,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = BasisMethod::Generic)]
        method: BasisMethod,
    },
    /// Table of dim P_m, dim H_m and the closed forms.
    Dims {
        #[arg(long, default_value = "h1")]
        group: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Split a homogeneous polynomial on h1 as h + eta^2 q.
    Decompose {
        #[arg(long)]
        poly: String,
        /// Iterate down to degree 0 or 1 and print the whole chain.
        #[arg(long)]
        full: bool,
    },
    /// Gram matrix of harmonic traces on the Koranyi sphere of h1.
    Gram {
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = GramMethod::Moments)]
        method: GramMethod,
        #[arg(long, value_enum, default_value_t = WeightArg::None)]
        weight: WeightArg,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Least-squares fit of a polynomial trace by harmonic traces.
    Project {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Run the claim ledger.
    Verify {
        /// Run a single claim by id.
        #[arg(long)]
        claim: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Closed-form sphere moments of x^a y^b t^c, or of a polynomial.
    Moments {
        /// Largest a + b + 2c listed.
        #[arg(long, default_value_t = 4, conflicts_with = "poly")]
        max_degree: u32,
        /// Integrate this polynomial instead of listing monomials.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, value_enum, default_value_t = WeightArg::None)]
        weight: WeightArg,
        /// Decimal places of the printed values.
        #[arg(long, default_value_t = 30)]
        precision: usize,
    },
}

#[derive(Debug, ThisError)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::DegreeTooLarge { .. }
            | Error::NotHeisenberg(_)
            | Error::NotHomogeneous
            | Error::InvalidSpec(_)
            | Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

fn load_group(name: &str) -> Result<GroupSpec, CliError> {
    if let Some(spec) = GroupSpec::builtin(name) {
        return Ok(spec);
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| CliError::Usage(format!("group `{name}` is not built in and cannot be read: {e}")))?;
    Ok(GroupSpec::from_json(&text)?)
}

fn h1_poly(text: &str) -> Result<Polynomial, CliError> {
    Ok(parse_poly(text, &Signature::heisenberg(1))?)
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--format {format:?} is not supported by `{command}`").to_lowercase()))
    }
}

/// Text to emit, and whether the run recorded an asserted failure.
struct Outcome {
    body: String,
    failed: bool,
}

impl From<String> for Outcome {
    fn from(body: String) -> Self {
        Outcome { body, failed: false }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    use Format::*;
    let format = cli.format;
    match &cli.command {
        Command::Basis { group, degree, method } => {
            require_format(format, &[Text, Json], "basis")?;
            let spec = load_group(group)?;
            let basis = match method {
                BasisMethod::Generic => harmonic_basis(&spec, *degree)?,
                BasisMethod::Triangular => {
                    if spec.heisenberg_rank() != Some(1) {
                        return Err(CliError::Usage("--method triangular requires --group h1".into()));
                    }
                    triangular_basis_h1(*degree)?
                }
            };
            Ok(render::basis(&spec, &basis, format == Json).into())
        }
        Command::Dims { group, max_degree } => {
            let spec = load_group(group)?;
            Ok(render::dims(&spec, &dim_table(&spec, *max_degree)?, format).into())
        }
        Command::Decompose { poly, full } => {
            require_format(format, &[Text, Json], "decompose")?;
            let p = h1_poly(poly)?;
            let m = homogeneous_degree(&p)?;
            if *full {
                Ok(render::chain(&p, m, &decompose_full(&p, m)?, format == Json).into())
            } else {
                Ok(render::decomposition(&p, &decompose_once(&p, m)?, format == Json).into())
            }
        }
        Command::Gram {
            max_degree,
            method,
            weight,
            rule,
        } => {
            let report = gram_matrix(*max_degree, (*method).into(), (*weight).into(), &rule.rule()?)?;
            Ok(render::gram(&report, format).into())
        }
        Command::Project { poly, max_degree, rule } => {
            require_format(format, &[Text, Json], "project")?;
            let report = project(&h1_poly(poly)?, *max_degree, &rule.rule()?)?;
            Ok(render::projection(&report, format == Json).into())
        }
        Command::Verify { claim, seed, rule } => {
            require_format(format, &[Text, Json], "verify")?;
            rule.rule()?;
            let config = VerifyConfig {
                seed: *seed,
                n_theta: rule.n_theta,
                n_psi: rule.n_psi,
            };
            let report = match claim {
                None => run_all(&config)?,
                Some(id) => {
                    if !CLAIM_IDS.contains(&id.as_str()) {
                        return Err(CliError::Usage(format!(
                            "unknown claim `{id}`; expected one of {}",
                            CLAIM_IDS.join(", ")
                        )));
                    }
                    let entry = run_claim(id, &config)?;
                    let failures = usize::from(entry.status == heis_core::verify::Status::AssertedFail);
                    VerifyReport {
                        seed: config.seed,
                        n_theta: config.n_theta,
                        n_psi: config.n_psi,
                        claims: vec![entry],
                        asserted_failures: failures,
                    }
                }
            };
            Ok(Outcome {
                body: render::ledger(&report, format == Json),
                failed: report.has_failures(),
            })
        }
        Command::Moments {
            max_degree,
            poly,
            weight,
            precision,
        } => {
            if *precision > MAX_PRECISION {
                return Err(CliError::Usage(format!(
                    "--precision {precision} exceeds the maximum of {MAX_PRECISION}"
                )));
            }
            match poly {
                Some(text) => {
                    require_format(format, &[Text, Json], "moments --poly")?;
                    render::poly_moment(&h1_poly(text)?, (*weight).into(), *precision, format == Json)
                        .map(Outcome::from)
                        .map_err(CliError::from)
                }
                None => Ok(render::moment_table(*max_degree, (*weight).into(), *precision, format).into()),
            }
        }
    }
}

fn resolve_out(path: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let path = resolve_out(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, body)?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| emit(&cli, &o.body).map(|_| o));
    match outcome {
        Ok(o) if o.failed => {
            if cli.out.is_some() {
                eprint!("{}", o.body);
            }
            eprintln!("error: at least one asserted claim failed");
            ExitCode::from(1)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
