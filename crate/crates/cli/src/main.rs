use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use parity_bias::parity::{
    bias_report, bound_report, brute_force_oracle, cross_check, MethodChoice,
};
use parity_bias::seqgen::{
    attack_cost, simulate, sliding_window_bias, AttackCost, Ensemble, Generator, GeneratorJson,
};
use parity_bias::{BooleanFunction, DyadicRational, Error, ParityCheckSpec};

mod render;

const THREADS_VAR: &str = "PARITY_BIAS_THREADS";

#[derive(Parser)]
#[command(
    name = "parity-bias",
    version,
    about = "Exact and bounded biases of parity-check relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report to this file (atomically) instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral properties of a Boolean function.
    Analyze(FunctionArgs),
    /// Exact bias of a parity-check relation, with bounds.
    Bias {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
    },
    /// Lower bound, closed form and plateaued bound without enumeration.
    Bound {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Empirical bias of a relation over a generator.
    Simulate {
        /// Generator config (JSON).
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Estimator::RandomContent)]
        estimator: Estimator,
    },
    /// Brute-force bias straight from the definition.
    Oracle {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Every method on one instance, checked against each other.
    CrossCheck {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Args)]
struct FunctionArgs {
    /// Hex truth table, most significant digit first.
    #[arg(long, conflicts_with = "anf", requires = "n")]
    tt: Option<String>,
    /// Algebraic normal form, e.g. "x1 + x2*x3".
    #[arg(long)]
    anf: Option<String>,
    /// Number of variables (required with --tt).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimator {
    RandomContent,
    RandomPhase,
    SlidingWindow,
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::VariableCount(_)
            | Error::TableLength { .. }
            | Error::TableEntry(_)
            | Error::Hex(_)
            | Error::Anf(_)
            | Error::Spec(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl FunctionArgs {
    fn parse(&self) -> Result<BooleanFunction, Failure> {
        match (&self.tt, &self.anf) {
            (Some(hex), None) => {
                let n = self.n.ok_or_else(|| Failure::parse("--tt needs --n"))?;
                Ok(BooleanFunction::from_hex(n, hex)?)
            }
            (None, Some(expr)) => Ok(BooleanFunction::from_anf(expr, self.n)?),
            _ => Err(Failure::parse("give exactly one of --tt or --anf")),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn read_spec(path: &Path) -> Result<ParityCheckSpec, Failure> {
    read_json(path)
}

#[derive(Serialize)]
pub struct FunctionInfo {
    pub n: usize,
    pub hex: String,
    pub anf: String,
}

impl FunctionInfo {
    fn of(f: &BooleanFunction) -> Self {
        Self {
            n: f.num_vars(),
            hex: f.to_hex(),
            anf: f.to_anf(),
        }
    }
}

#[derive(Serialize)]
pub struct Analysis {
    pub function: FunctionInfo,
    pub weight: usize,
    pub bias: DyadicRational,
    pub resiliency_order: i32,
    pub correlation_immunity_order: i32,
    pub max_abs_walsh: i64,
    pub nonlinearity: u64,
    pub plateaued_amplitude: Option<DyadicRational>,
    /// Full spectrum, only for n <= 10.
    pub walsh: Option<Vec<i64>>,
}

#[derive(Serialize)]
pub struct BiasOutput {
    pub function: FunctionInfo,
    pub spec: ParityCheckSpec,
    pub report: parity_bias::BiasReport,
    pub attack_cost: Option<AttackCost>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Output {
    Analysis(Analysis),
    Bias(BiasOutput),
    Simulation(parity_bias::seqgen::SimulationReport),
    Estimate(parity_bias::seqgen::EmpiricalEstimate),
    CrossCheck(parity_bias::parity::CrossCheck),
}

fn analyze(f: &BooleanFunction) -> Analysis {
    let spectrum = f.walsh_transform();
    let max_abs_walsh = spectrum.coeffs().iter().map(|w| w.abs()).max().unwrap_or(0);
    Analysis {
        function: FunctionInfo::of(f),
        weight: f.weight(),
        bias: f.bias(),
        resiliency_order: spectrum.resiliency_order(),
        correlation_immunity_order: spectrum.correlation_immunity_order(),
        max_abs_walsh,
        nonlinearity: ((1u64 << f.num_vars()) - max_abs_walsh as u64) / 2,
        plateaued_amplitude: spectrum.plateaued_amplitude(),
        walsh: (f.num_vars() <= 10).then(|| spectrum.coeffs().to_vec()),
    }
}

fn with_cost(
    f: &BooleanFunction,
    spec: ParityCheckSpec,
    report: parity_bias::BiasReport,
) -> BiasOutput {
    let attack_cost = report
        .exact
        .as_ref()
        .and_then(|eps| attack_cost(&eps.abs(), &spec).ok());
    BiasOutput {
        function: FunctionInfo::of(f),
        spec,
        report,
        attack_cost,
    }
}

fn run(command: &Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Analyze(function) => Output::Analysis(analyze(&function.parse()?)),
        Command::Bias {
            function,
            spec,
            method,
        } => {
            let f = function.parse()?;
            let spec = read_spec(spec)?;
            // The CLI always holds the spectrum, so auto resolves to Walsh.
            let spectrum = f.walsh_transform();
            let mut report = bias_report(&f, &spec, *method, Some(&spectrum))?;
            if report.method == parity_bias::Method::Walsh {
                // Charge the full transform computed above.
                let n = f.num_vars() as u64;
                report.function_evaluations = 1 << n;
                report.precomputation_ops = n << n;
            }
            Output::Bias(with_cost(&f, spec, report))
        }
        Command::Bound { function, spec } => {
            let f = function.parse()?;
            let spec = read_spec(spec)?;
            let report = bound_report(&f, &spec)?;
            Output::Bias(with_cost(&f, spec, report))
        }
        Command::Oracle { function, spec } => {
            let f = function.parse()?;
            let spec = read_spec(spec)?;
            let report = brute_force_oracle(&f, &spec)?;
            Output::Bias(with_cost(&f, spec, report))
        }
        Command::CrossCheck { function, spec } => {
            let f = function.parse()?;
            let spec = read_spec(spec)?;
            Output::CrossCheck(cross_check(&f, &spec)?)
        }
        Command::Simulate {
            config,
            spec,
            trials,
            seed,
            estimator,
        } => {
            let config: GeneratorJson = read_json(config)?;
            let generator = Generator::from_json(&config)?;
            let spec = read_spec(spec)?;
            match estimator {
                Estimator::RandomContent => Output::Simulation(simulate(
                    &generator,
                    &spec,
                    *trials,
                    *seed,
                    Ensemble::RandomContent,
                )?),
                Estimator::RandomPhase => Output::Simulation(simulate(
                    &generator,
                    &spec,
                    *trials,
                    *seed,
                    Ensemble::RandomPhase,
                )?),
                Estimator::SlidingWindow => {
                    Output::Estimate(sliding_window_bias(&generator, &spec, *trials)?)
                }
            }
        }
    })
}

/// Writes next to the target and renames, so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path.file_name().unwrap_or_default().to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut file = fs::File::create(&tmp)?;
    file.write_all(contents.as_bytes())?;
    file.sync_all()?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::parse(format!("{THREADS_VAR}={value:?} is not a positive integer"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::parse(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli.command));
    let output = match result {
        Ok(output) => output,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            return ExitCode::from(failure.code);
        }
    };
    let mut text = if cli.pretty {
        render::pretty(&output)
    } else {
        serde_json::to_string_pretty(&output).expect("reports serialize")
    };
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
