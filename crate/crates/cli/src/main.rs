use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qudit_ineq::tomography::{AxisDirection, OptimizerConfig, QuadratureOrder};
use qudit_ineq::{IndexCoding, Measure, StateLabel};
use qudit_ineq_cli::{
    json_line, run, CliError, CliResult, Command, EnsembleSpec, Family, OutputFormat, RunConfig, StateSource, EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "qudit-ineq", version, about = "Check entropic and tomographic inequalities on qudit states")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Validate density matrices.
    Validate(Common),
    /// Run one inequality family.
    Check(Common),
    /// Tomographic information chain with I_q, I_t, <I> and the gap.
    Tomo(Common),
}

#[derive(Args)]
struct Common {
    /// Matrix JSON file (one record or an array of records).
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Named state, e.g. bell_phi_plus, werner(0.5), max_mixed(4).
    #[arg(long, group = "source")]
    state: Option<String>,
    /// Number of random states.
    #[arg(long, group = "source")]
    ensemble: Option<usize>,
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Defaults to the full dimension.
    #[arg(long)]
    rank: Option<usize>,
    /// hilbert_schmidt or pure_haar.
    #[arg(long, default_value = "hilbert_schmidt")]
    measure: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// two_qubit, spin_three_half or triplet_singlet.
    #[arg(long, default_value = "two_qubit")]
    coding: String,
    /// subadditivity, permutation_scan, improved_chain or tomo_chain.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 32)]
    quad_theta: usize,
    #[arg(long, default_value_t = 32)]
    quad_phi: usize,
    /// Grid points per angle in the I_t search.
    #[arg(long, default_value_t = 12)]
    grid: usize,
    #[arg(long, default_value_t = 1e-4)]
    step_tol: f64,
    /// Fixed axes theta1,phi1,theta2,phi2 for the information bound.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    axes: Option<Vec<f64>>,
    /// json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report stream here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn core<T>(r: qudit_ineq::Result<T>) -> CliResult<T> {
    r.map_err(CliError::from)
}

fn build_config(command: Command, c: Common) -> CliResult<RunConfig> {
    let source = match (c.input, c.state, c.ensemble) {
        (Some(p), None, None) => StateSource::Input(p),
        (None, Some(s), None) => StateSource::Label(core(s.parse::<StateLabel>())?),
        (None, None, Some(count)) => StateSource::Ensemble(EnsembleSpec {
            count,
            dim: c.dim,
            rank: c.rank.unwrap_or(c.dim),
            measure: core(c.measure.parse::<Measure>())?,
            seed: c.seed,
        }),
        _ => return Err(CliError::Usage("exactly one of --input, --state, --ensemble is required".into())),
    };
    let mut config = RunConfig::new(command, source);
    config.coding = core(c.coding.parse::<IndexCoding>())?;
    config.family = match command {
        Command::Check => Some(
            c.family
                .as_deref()
                .ok_or_else(|| CliError::Usage("check needs --family".into()))?
                .parse::<Family>()?,
        ),
        _ => c.family.as_deref().map(str::parse).transpose()?,
    };
    config.tolerance = c.tol;
    config.quadrature = QuadratureOrder {
        n_theta: c.quad_theta,
        n_phi: c.quad_phi,
    };
    config.optimizer = OptimizerConfig {
        grid: c.grid,
        step_tol: c.step_tol,
        seed: c.seed,
        ..OptimizerConfig::default()
    };
    if let Some(a) = c.axes {
        config.axes = (core(AxisDirection::new(a[0], a[1]))?, core(AxisDirection::new(a[2], a[3]))?);
    }
    config.format = c.format.parse::<OutputFormat>()?;
    config.out = c.out;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Validate(c) => (Command::Validate, c),
        Sub::Check(c) => (Command::Check, c),
        Sub::Tomo(c) => (Command::Tomo, c),
    };
    let result = build_config(command, common).and_then(|config| {
        let outcome = run(&config)?;
        if config.out.is_none() {
            std::io::stdout()
                .write_all(&outcome.output)
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
        if config.format == OutputFormat::Csv {
            let mut line = Vec::new();
            json_line(&outcome.summary, &mut line);
            std::io::stderr().write_all(&line).ok();
        }
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
