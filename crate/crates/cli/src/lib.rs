//! The `kuroda` command line.
//!
//! Exit codes: 0 when the query succeeded and every checked property
//! holds, 1 when a checked property fails, 2 for bad input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use kuroda::blowup::{
    block_formula_check, boundary_census, cond_all_polynomial, cond_all_triple, pole_profile,
    polynomial_pole_profile, pullback_trace, region_inequality_pullback, BlockFormulaReport,
    ChartTriple, CondVerdicts, PoleProfile, RegionPullbackReport, TowerTrace,
};
use kuroda::config::{
    validate, Axis, AxisTower, ConfigError, KurodaConfig, ValidConfig, ValidationReport,
};
use kuroda::expr::parse_polynomial;
use kuroda::membership::{
    enumerate_t_generators, oracle_check, star_check, OracleReport, StarReport,
};
use kuroda::regions::{
    boundedness_probe, export_surface_cloud, sample_region, sandwich_check, CloudRegion,
    ProbeReport, RegionKind, RegionSpec, SandwichReport, DIVERGENCE_THRESHOLD,
};
use kuroda::{Polynomial, VarSystem};

pub mod report;

use report::{emit, open_output, Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "kuroda",
    version,
    about = "Kuroda's non-finitely-generated rings: exact checks and numeric probes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Configuration file: {"delta": [[..4..], [..4..], [..4..]], "gamma": g}
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    /// Axis 1, 2 or 3.
    #[arg(long, default_value_t = 1)]
    pub axis: u8,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r3: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RegionArg {
    SPrime,
    SDoublePrime,
    S,
    STilde,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sign pattern, validity condition, derived constants.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Continued fractions, block partitions, and the boundary census.
    Tower {
        #[command(flatten)]
        common: Common,
    },
    /// Indecomposable elements of M up to a degree bound.
    Generators {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree_bound: i64,
    },
    /// Membership of a Π-polynomial in R by the star criterion and the oracle.
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
    },
    /// Cond₁, Cond₂, Cond₃ for a chart triple or a Π-polynomial.
    Cond {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, conflicts_with_all = ["r1", "r2", "r3"])]
        expr: Option<String>,
    },
    /// Trace through the tower and pole analysis of the region inequality.
    Pullback {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Sampled sup of |f| on a region and values along the escape sequence.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum)]
        region: Option<RegionArg>,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50.0)]
        radius: f64,
        /// Escape indices run over 16..=k-max.
        #[arg(long, default_value_t = 10_000)]
        k_max: u64,
    },
    /// Numeric check of (½S) ∩ C ⊂ S̃ ∩ C ⊂ (2S) ∩ C.
    Sandwich {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Near-boundary point cloud of S″ or S̃ as CSV x,y,z,margin.
    Cloud {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "s-double-prime")]
        region: RegionArg,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 5.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.02)]
        band: f64,
    },
}

/// Failure of a subcommand, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// I/O trouble writing the report: exit 2.
    Output(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

type Outcome = Result<bool, Failure>;

/// Parse arguments and run; returns the process exit code. Diagnostics go
/// to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Output(e)) => {
            eprintln!("error: cannot write output: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate { common } => cmd_validate(&common),
        Command::Tower { common } => cmd_tower(&common),
        Command::Generators {
            common,
            degree_bound,
        } => cmd_generators(&common, degree_bound),
        Command::Member { common, expr } => cmd_member(&common, &expr),
        Command::Cond {
            common,
            triple,
            expr,
        } => cmd_cond(&common, &triple, expr.as_deref()),
        Command::Pullback { common, triple } => cmd_pullback(&common, &triple),
        Command::Probe {
            common,
            expr,
            region,
            lambda,
            samples,
            seed,
            radius,
            k_max,
        } => cmd_probe(
            &common, &expr, region, &lambda, samples, seed, radius, k_max,
        ),
        Command::Sandwich {
            common,
            samples,
            seed,
        } => cmd_sandwich(&common, samples, seed),
        Command::Cloud {
            common,
            region,
            grid,
            radius,
            band,
        } => cmd_cloud(&common, region, grid, radius, band),
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read_config(common: &Common) -> Result<KurodaConfig, Failure> {
    let path = common
        .config
        .as_ref()
        .ok_or_else(|| Failure::Input("--config is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    KurodaConfig::from_json(&text).map_err(input)
}

fn valid_config(common: &Common) -> Result<ValidConfig, Failure> {
    match ValidConfig::new(read_config(common)?) {
        Ok(c) => Ok(c),
        Err(ConfigError::Invalid(report)) => Err(Failure::Input(format!(
            "invalid configuration: {}",
            report.summary()
        ))),
        Err(e) => Err(input(e)),
    }
}

fn axis_arg(n: u8) -> Result<Axis, Failure> {
    Axis::from_number(n).ok_or_else(|| Failure::Input(format!("--axis must be 1, 2 or 3, got {n}")))
}

fn pi_polynomial(text: &str) -> Result<Polynomial, Failure> {
    let f = parse_polynomial(text, VarSystem::Pi3)
        .map_err(|e| Failure::Input(format!("--expr {e}")))?;
    if f.system() != VarSystem::Pi3 {
        return Err(Failure::Input(format!(
            "--expr must use P1, P2, P3; found {} variables",
            f.system()
        )));
    }
    Ok(f)
}

/// `p/q`, an integer, or a decimal literal, read exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let bad = || format!("`{text}` is not a rational number");
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            s => s.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let value = BigRational::new(int * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    t.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

fn write_report<T: Serialize>(
    common: &Common,
    report: &T,
    table: Option<Table>,
) -> Result<(), Failure> {
    if common.format == Format::Csv && table.is_none() {
        return Err(Failure::Input(
            "this subcommand has no CSV form; use json or text".into(),
        ));
    }
    let mut out = open_output(common.out.as_deref())?;
    emit(report, common.format, table.as_ref(), &mut out)?;
    Ok(())
}

#[derive(Serialize)]
struct ValidateReport {
    config: serde_json::Value,
    report: ValidationReport,
}

fn cmd_validate(common: &Common) -> Outcome {
    let config = read_config(common)?;
    let report = validate(&config);
    let valid = report.valid;
    let config = serde_json::from_str(&config.to_json()).expect("config json");
    write_report(common, &ValidateReport { config, report }, None)?;
    Ok(valid)
}

#[derive(Serialize)]
struct TowerSummary<'a> {
    tower: &'a AxisTower,
    block_count: usize,
    total: i64,
    blocks: Vec<Vec<i64>>,
    j1: Vec<i64>,
    j2: Vec<i64>,
}

#[derive(Serialize)]
struct TowerReport<'a> {
    towers: Vec<TowerSummary<'a>>,
    census: kuroda::blowup::Census,
}

fn cmd_tower(common: &Common) -> Outcome {
    let config = valid_config(common)?;
    let census = boundary_census(&config);
    let mut table = Table::new(vec!["axis", "n", "in_z1", "in_z2", "label"]);
    for e in &census.entries {
        table.push(vec![
            e.axis.map(|a| a.number().to_string()).unwrap_or_default(),
            e.n.map(|n| n.to_string()).unwrap_or_default(),
            e.in_z1.to_string(),
            e.in_z2.to_string(),
            e.label.clone(),
        ]);
    }
    let towers = Axis::ALL
        .iter()
        .map(|&a| {
            let t = config.tower().axis(a);
            TowerSummary {
                tower: t,
                block_count: t.block_count(),
                total: t.total(),
                blocks: t.blocks(),
                j1: t.j1(),
                j2: t.j2(),
            }
        })
        .collect();
    write_report(common, &TowerReport { towers, census }, Some(table))?;
    Ok(true)
}

fn cmd_generators(common: &Common, degree_bound: i64) -> Outcome {
    let config = valid_config(common)?;
    let list = enumerate_t_generators(config.raw(), degree_bound);
    let mut table = Table::new(vec!["n1", "n2", "n3", "n4", "degree"]);
    for g in &list.generators {
        let mut row: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        row.push(g.iter().sum::<i64>().to_string());
        table.push(row);
    }
    write_report(common, &list, Some(table))?;
    Ok(true)
}

#[derive(Serialize)]
struct MemberReport {
    expr: String,
    polynomial: Polynomial,
    star: StarReport,
    oracle: OracleReport,
    agree: bool,
}

fn cmd_member(common: &Common, expr: &str) -> Outcome {
    let config = valid_config(common)?;
    let f = pi_polynomial(expr)?;
    let star = star_check(&f, &config).map_err(input)?;
    let oracle = oracle_check(&f, config.raw()).map_err(input)?;
    let agree = star.member == oracle.member;
    if !agree {
        eprintln!("star criterion and oracle disagree on {f}");
    }
    write_report(
        common,
        &MemberReport {
            expr: expr.to_string(),
            polynomial: f,
            star,
            oracle,
            agree,
        },
        None,
    )?;
    Ok(agree)
}

fn triple_of(args: &TripleArgs) -> Option<ChartTriple> {
    match (args.r1, args.r2, args.r3) {
        (None, None, None) => None,
        (r1, r2, r3) => Some(ChartTriple::new(
            r1.unwrap_or(0),
            r2.unwrap_or(0),
            r3.unwrap_or(0),
        )),
    }
}

fn trace_table(trace: &TowerTrace, profile: &PoleProfile, tower: &AxisTower) -> Table {
    let mut table = Table::new(vec!["n", "k", "r1", "r3", "pole"]);
    for (n, t) in trace.triples.iter().enumerate() {
        let k = tower.block_index(n as i64).expect("n within tower");
        table.push(vec![
            n.to_string(),
            k.to_string(),
            t.r1.to_string(),
            t.r3.to_string(),
            profile.pole_at[n].to_string(),
        ]);
    }
    table
}

#[derive(Serialize)]
struct CondReport {
    axis: Axis,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<ChartTriple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    verdicts: CondVerdicts,
    agree: bool,
    profile: PoleProfile,
}

fn cmd_cond(common: &Common, args: &TripleArgs, expr: Option<&str>) -> Outcome {
    let config = valid_config(common)?;
    let axis = axis_arg(args.axis)?;
    let tower = config.tower().axis(axis);
    let (report, table) = match (triple_of(args), expr) {
        (Some(t), _) => {
            let trace = pullback_trace(t, tower);
            let profile = pole_profile(&trace, tower);
            let table = trace_table(&trace, &profile, tower);
            let verdicts = cond_all_triple(t, axis, &config);
            (
                CondReport {
                    axis,
                    triple: Some(t),
                    expr: None,
                    agree: verdicts.agree(),
                    verdicts,
                    profile,
                },
                Some(table),
            )
        }
        (None, Some(text)) => {
            let f = pi_polynomial(text)?;
            let verdicts = cond_all_polynomial(&f, axis, &config).map_err(input)?;
            let profile = polynomial_pole_profile(&f, axis, &config).map_err(input)?;
            (
                CondReport {
                    axis,
                    triple: None,
                    expr: Some(text.to_string()),
                    agree: verdicts.agree(),
                    verdicts,
                    profile,
                },
                None,
            )
        }
        (None, None) => return Err(Failure::Input("give --r1/--r2/--r3 or --expr".into())),
    };
    let agree = report.agree;
    if !agree {
        eprintln!("Cond1, Cond2, Cond3 disagree: {:?}", report.verdicts);
    }
    write_report(common, &report, table)?;
    Ok(agree)
}

#[derive(Serialize)]
struct TripleTrace {
    trace: TowerTrace,
    profile: PoleProfile,
    block_formula: BlockFormulaReport,
}

#[derive(Serialize)]
struct PullbackReport {
    axis: Axis,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<TripleTrace>,
    region_inequality: RegionPullbackReport,
}

fn cmd_pullback(common: &Common, args: &TripleArgs) -> Outcome {
    let config = valid_config(common)?;
    let axis = axis_arg(args.axis)?;
    let tower = config.tower().axis(axis);
    let region_inequality = region_inequality_pullback(axis, &config).map_err(input)?;
    let mut ok = region_inequality.every_z2_divisor_has_pole;
    let (triple, table) = match triple_of(args) {
        Some(t) => {
            let trace = pullback_trace(t, tower);
            let profile = pole_profile(&trace, tower);
            let block_formula = block_formula_check(t, tower);
            ok &= block_formula.consistent;
            let table = trace_table(&trace, &profile, tower);
            (
                Some(TripleTrace {
                    trace,
                    profile,
                    block_formula,
                }),
                Some(table),
            )
        }
        None => (None, None),
    };
    write_report(
        common,
        &PullbackReport {
            axis,
            triple,
            region_inequality,
        },
        table,
    )?;
    Ok(ok)
}

fn region_kind(arg: RegionArg) -> RegionKind {
    match arg {
        RegionArg::SPrime => RegionKind::SPrime,
        RegionArg::SDoublePrime => RegionKind::SDoublePrime,
        RegionArg::S => RegionKind::S,
        RegionArg::STilde => RegionKind::STilde,
    }
}

#[derive(Serialize)]
struct ProbeOutput {
    expr: String,
    region: RegionKind,
    lambda: f64,
    radius: f64,
    acceptance_rate: f64,
    probe: ProbeReport,
}

#[allow(clippy::too_many_arguments)]
fn cmd_probe(
    common: &Common,
    expr: &str,
    region: Option<RegionArg>,
    lambda: &str,
    samples: usize,
    seed: u64,
    radius: f64,
    k_max: u64,
) -> Outcome {
    let config = valid_config(common)?;
    let f = parse_polynomial(expr, VarSystem::Pi3)
        .map_err(|e| Failure::Input(format!("--expr {e}")))?;
    let kind = match (region, f.system()) {
        (Some(r), _) => region_kind(r),
        (None, VarSystem::Y4) => RegionKind::SPrime,
        (None, VarSystem::Pi3) => RegionKind::STilde,
        (None, other) => {
            return Err(Failure::Input(format!(
                "probe needs Y or P variables, found {other}"
            )))
        }
    };
    let lambda = parse_rational(lambda).map_err(Failure::Input)?;
    let lambda_f = lambda.to_f64().unwrap_or(f64::NAN);
    let spec = RegionSpec::new(kind, lambda_f).map_err(input)?;
    if k_max < 16 {
        return Err(Failure::Input("--k-max must be at least 16".into()));
    }
    let set = sample_region(&spec, samples, seed, radius, &config).map_err(input)?;
    let ks: Vec<u64> = (16..=k_max).collect();
    let probe = boundedness_probe(&f, &set, &ks, DIVERGENCE_THRESHOLD, &config).map_err(input)?;
    let ok = probe.bound_holds != Some(false);
    let output = ProbeOutput {
        expr: expr.to_string(),
        region: kind,
        lambda: lambda_f,
        radius,
        acceptance_rate: set.acceptance_rate(),
        probe,
    };
    write_report(common, &output, None)?;
    Ok(ok)
}

fn cmd_sandwich(common: &Common, samples: usize, seed: u64) -> Outcome {
    let config = valid_config(common)?;
    let report: SandwichReport = sandwich_check(&config, samples, seed).map_err(input)?;
    let ok = report.violations.is_empty();
    write_report(common, &report, None)?;
    Ok(ok)
}

fn cmd_cloud(common: &Common, region: RegionArg, grid: usize, radius: f64, band: f64) -> Outcome {
    let config = valid_config(common)?;
    let which = match region {
        RegionArg::SDoublePrime => CloudRegion::SDoublePrime,
        RegionArg::STilde => CloudRegion::STilde,
        _ => {
            return Err(Failure::Input(
                "cloud supports s-double-prime and s-tilde".into(),
            ))
        }
    };
    if grid == 0 || radius.is_nan() || radius <= 0.0 {
        return Err(Failure::Input(
            "--grid and --radius must be positive".into(),
        ));
    }
    // The cloud itself is CSV regardless of --format; the summary goes to
    // standard error.
    let out = open_output(common.out.as_deref())?;
    let report =
        export_surface_cloud(&config, which, grid, radius, band, out).map_err(|e| match e {
            kuroda::regions::RegionError::Io(io) => Failure::Output(io),
            other => input(other),
        })?;
    eprintln!(
        "{} boundary points, octant counts {:?}",
        report.points, report.octant_counts
    );
    Ok(true)
}
