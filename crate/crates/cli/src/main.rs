//! `tlg`: fit, compare, sample and tabulate the transmuted Lindley-geometric
//! distribution from the command line.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tlg_core::curves::{CurveTable, Grid};
use tlg_core::data::{bank_waiting_times, ingest_csv};
use tlg_core::estimation::{fit, Method, Model};
use tlg_core::model_select::compare_models;
use tlg_core::moments::{mgf, skewness_kurtosis};
use tlg_core::order_stats::{order_stat_moment, order_stat_shape};
use tlg_core::sampling::sample_tlg;
use tlg_core::{Dataset, OptimizerOptions, OrderSpec, RandomSource, SeriesConfig, TlgParams};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "tlg", version, about = "Transmuted Lindley-geometric distribution toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit one model by one method.
    Fit(FitArgs),
    /// Fit several models by maximum likelihood and compare them.
    Compare(CompareArgs),
    /// Draw a random sample.
    Sample(SampleArgs),
    /// Raw moments, skewness, kurtosis and the moment generating function.
    Moments(MomentsArgs),
    /// Moments of an order statistic.
    OrderStat(OrderStatArgs),
    /// Tabulate pdf, cdf, survival and hazard over a grid.
    Curves(CurvesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Lindley,
    Lg,
    Tlg,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Lindley => Model::Lindley,
            ModelArg::Lg => Model::Lg,
            ModelArg::Tlg => Model::Tlg,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Mle,
    Lse,
    Wlse,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Mle => Method::Mle,
            MethodArg::Lse => Method::Lse,
            MethodArg::Wlse => Method::Wlse,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// CSV file of positive values; the bundled bank waiting times if omitted.
    data: Option<PathBuf>,
}

impl DataArgs {
    fn load(&self) -> Result<Dataset, CliError> {
        match &self.data {
            Some(path) => Ok(ingest_csv(path)?),
            None => Ok(bank_waiting_times()),
        }
    }
}

#[derive(Debug, Args)]
struct OptimizerArgs {
    /// Number of deterministic starting points.
    #[arg(long, default_value_t = 8)]
    starts: usize,
    /// Iteration cap per start.
    #[arg(long, default_value_t = 5000)]
    max_iter: usize,
    /// Objective spread across the simplex at convergence.
    #[arg(long, default_value_t = 1e-10)]
    ftol: f64,
}

impl OptimizerArgs {
    fn options(&self) -> Result<OptimizerOptions, CliError> {
        if self.starts == 0 || self.max_iter == 0 {
            return Err(CliError::Usage("--starts and --max-iter must be positive".into()));
        }
        if self.ftol.is_nan() || self.ftol <= 0.0 {
            return Err(CliError::Usage("--ftol must be positive".into()));
        }
        Ok(OptimizerOptions {
            starts: self.starts,
            max_iter: self.max_iter,
            ftol: self.ftol,
            ..OptimizerOptions::default()
        })
    }
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Scale parameter θ > 0.
    #[arg(long)]
    theta: f64,
    /// Geometric parameter p in (−1, 1).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    p: f64,
    /// Transmutation parameter λ in [−1, 1].
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<TlgParams, CliError> {
        TlgParams::new(self.theta, self.p, self.lambda).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Outer series truncation.
    #[arg(long, default_value_t = 500)]
    max_j: usize,
    /// Tail block threshold.
    #[arg(long, default_value_t = 1e-12)]
    series_tol: f64,
}

impl SeriesArgs {
    fn config(&self) -> Result<SeriesConfig, CliError> {
        SeriesConfig::new(self.max_j, self.series_tol).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 40.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = 401)]
    points: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<Grid, CliError> {
        Grid::new(self.x_min, self.x_max, self.points).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Tlg)]
    model: ModelArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Mle)]
    method: MethodArg,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    data: DataArgs,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Comma-separated models to compare.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ModelArg::Lindley, ModelArg::Lg, ModelArg::Tlg])]
    models: Vec<ModelArg>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Directory for fitted curve and empirical cdf CSV files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    data: DataArgs,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Number of draws.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    series: SeriesArgs,
    /// Points at which to evaluate the moment generating function.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OrderStatArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Sample size.
    #[arg(long)]
    n: u32,
    /// Rank, 1 for the minimum.
    #[arg(long)]
    r: u32,
    /// Moment order.
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CurvesArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Also write curves.csv into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Convergence(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Convergence(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Convergence(m) => m,
        }
    }
}

impl From<tlg_core::Error> for CliError {
    fn from(e: tlg_core::Error) -> Self {
        use tlg_core::Error as E;
        let msg = e.to_string();
        match e {
            E::InvalidParameter(_) | E::Domain(_) => CliError::Usage(msg),
            E::Data(_) | E::Parse { .. } => CliError::Data(msg),
            E::RootNotConverged { .. }
            | E::SeriesNotConverged { .. }
            | E::QuadratureNotConverged { .. }
            | E::Optimization(_)
            | E::SingularInformation { .. }
            | E::DegenerateVariance(_) => CliError::Convergence(msg),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Data(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

fn run_fit(args: &FitArgs, out: &mut impl Write) -> Result<(), CliError> {
    let data = args.data.load()?;
    let result = fit(args.model.into(), args.method.into(), &data, &args.optimizer.options()?)?;
    output::fit(&result, args.output.format, out)?;
    if !result.converged {
        return Err(CliError::Convergence(format!(
            "{} {} fit did not converge within {} iterations per start",
            result.model, result.method, args.optimizer.max_iter
        )));
    }
    Ok(())
}

fn run_compare(args: &CompareArgs, out: &mut impl Write) -> Result<(), CliError> {
    let data = args.data.load()?;
    let opts = args.optimizer.options()?;
    let mut models: Vec<Model> = Vec::new();
    for &m in &args.models {
        let m = Model::from(m);
        if !models.contains(&m) {
            models.push(m);
        }
    }
    let fits = models
        .iter()
        .map(|&m| fit(m, Method::Mle, &data, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = compare_models(&fits, &data)?;
    if let Some(dir) = &args.out_dir {
        let grid = args.grid.grid()?;
        for f in &fits {
            let table = CurveTable::evaluate(&f.params()?, &grid)?;
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            write_file(dir, &format!("curves_{}.csv", f.model), &buf)?;
        }
        let mut buf = Vec::new();
        output::empirical_with_fits(&data, &fits, &mut buf)?;
        write_file(dir, "empirical_cdf.csv", &buf)?;
    }
    output::compare(&fits, &rows, args.output.format, out)?;
    if let Some(f) = fits.iter().find(|f| !f.converged) {
        return Err(CliError::Convergence(format!("{} fit did not converge", f.model)));
    }
    Ok(())
}

fn run_sample(args: &SampleArgs, out: &mut impl Write) -> Result<(), CliError> {
    let params = args.params.params()?;
    let values = sample_tlg(&params, &mut RandomSource::from_seed(args.seed), args.n)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    output::sample(&params, args.seed, &values, args.output.format, out)?;
    Ok(())
}

fn run_moments(args: &MomentsArgs, out: &mut impl Write) -> Result<(), CliError> {
    let params = args.params.params()?;
    let cfg = args.series.config()?;
    let set = skewness_kurtosis(&params, &cfg)?;
    let mgf_values = args
        .t
        .iter()
        .map(|&t| mgf(&params, t, &cfg).map(|v| (t, v)))
        .collect::<Result<Vec<_>, _>>()?;
    output::moments(&params, &cfg, &set, &mgf_values, args.output.format, out)?;
    Ok(())
}

fn run_order_stat(args: &OrderStatArgs, out: &mut impl Write) -> Result<(), CliError> {
    let params = args.params.params()?;
    let spec = OrderSpec::new(args.n, args.r).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let moment = order_stat_moment(&params, &spec, args.k)?;
    let shape = order_stat_shape(&params, &spec)?;
    output::order_stat(&params, &spec, args.k, moment, &shape, args.output.format, out)?;
    Ok(())
}

fn run_curves(args: &CurvesArgs, out: &mut impl Write) -> Result<(), CliError> {
    let params = args.params.params()?;
    let grid = args.grid.grid()?;
    let table = CurveTable::evaluate(&params, &grid)?;
    if let Some(dir) = &args.out_dir {
        let mut buf = Vec::new();
        table.write_csv(&mut buf)?;
        write_file(dir, "curves.csv", &buf)?;
    }
    output::curves(&params, &grid, &table, args.output.format, out)?;
    Ok(())
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Fit(a) => run_fit(a, out),
        Command::Compare(a) => run_compare(a, out),
        Command::Sample(a) => run_sample(a, out),
        Command::Moments(a) => run_moments(a, out),
        Command::OrderStat(a) => run_order_stat(a, out),
        Command::Curves(a) => run_curves(a, out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("tlg: {e}");
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tlg: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
