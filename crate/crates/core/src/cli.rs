//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a measured ratio exceeds its closed form, a table
//! cell disagrees, or a manipulation was found, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::bounds::{ratio, Bound};
use crate::analysis::search::{measure_both, Mode, RatioReport, SearchConfig};
use crate::analysis::spec::{Advice, AdviceKind, Family, MechanismSpec, Outcome, PhantomRule};
use crate::analysis::strategyproof::check_strategyproof;
use crate::analysis::sweep::{default_params, is_tradeoff_monotone, tradeoff_sweep};
use crate::analysis::table::{check_table, render, Status};
use crate::mechanisms::{PhantomProfile, Prediction, PredictionPair};
use crate::model::{Instance, Location, Objective};
use crate::{Error, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "facloc",
    version,
    about = "Facility location mechanisms with predictions, in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a mechanism on one instance.
    Run(RunArgs),
    /// Measure worst-case ratios by grid search and compare with closed forms.
    Ratio(RatioArgs),
    /// Closed-form consistency/robustness trade-off as CSV.
    Sweep(SweepArgs),
    /// Recompute the summary table and compare with the published values.
    Table(TableArgs),
    /// Search for profitable misreports.
    Sp(SpArgs),
}

#[derive(Debug, Args)]
pub struct MechArgs {
    /// minmaxp, minmaxp-gamma, midornearest, genmedian, leftmost, rightmost,
    /// median, lrm, lrmt, lrmp, lrmtp, minmax2p, minmax2p-lambda, randends,
    /// randends2p, broken-third
    #[arg(long)]
    pub mech: String,
    /// gamma, delta, lambda, theta, or the constant phantom of genmedian.
    #[arg(long, value_parser = parse_rational)]
    pub param: Option<Rational>,
    /// Explicit phantom profile for genmedian (n - 1 values).
    #[arg(long, value_delimiter = ',', value_parser = parse_location, alias = "phantom")]
    pub phantoms: Option<Vec<Location>>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Grid resolution (step 1/res).
    #[arg(long, env = "FM_RESOLUTION", default_value_t = 20)]
    pub res: u32,
    #[arg(long, default_value_t = 4)]
    pub max_agents: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub mech: MechArgs,
    /// Agent reports, e.g. 0,0.5,1/3.
    #[arg(long, value_delimiter = ',', value_parser = parse_location, required = true)]
    pub agents: Vec<Location>,
    /// One prediction, or two for two-facility mechanisms.
    #[arg(long, value_delimiter = ',', value_parser = parse_location)]
    pub pred: Option<Vec<Location>>,
    /// Report one objective; both when omitted.
    #[arg(long, value_parser = parse_objective)]
    pub obj: Option<Objective>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Consistency,
    Robustness,
    Both,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[command(flatten)]
    pub mech: MechArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    /// Report one objective; both when omitted.
    #[arg(long, value_parser = parse_objective)]
    pub obj: Option<Objective>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub mech: String,
    #[arg(long, value_parser = parse_objective, default_value = "min-utility")]
    pub obj: Objective,
    /// Evenly spaced parameters over the legal range: steps + 1 rows.
    #[arg(long, default_value_t = 20)]
    pub steps: u32,
    /// Explicit parameter list instead of the even grid.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    pub params: Option<Vec<Rational>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpArgs {
    #[command(flatten)]
    pub mech: MechArgs,
    #[arg(long, env = "FM_RESOLUTION", default_value_t = 20)]
    pub res: u32,
    #[arg(long, default_value_t = 3)]
    pub max_agents: usize,
    /// Number of violations to print.
    #[arg(long, default_value_t = 5)]
    pub show: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

fn parse_location(s: &str) -> Result<Location, String> {
    Location::new(parse_rational(s)?).map_err(|e| e.to_string())
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn family_of(name: &str) -> Result<Family, Error> {
    Ok(match name {
        "minmaxp" => Family::MinMaxP,
        "minmaxp-gamma" => Family::MinMaxPGamma,
        "midornearest" => Family::MidOrNearest,
        "genmedian" | "leftmost" | "rightmost" | "median" => Family::GenMedian,
        "lrm" | "lrmp" => Family::LrmP,
        "lrmt" | "lrmtp" => Family::LrmtP,
        "minmax2p" => Family::MinMax2P,
        "minmax2p-lambda" => Family::MinMax2PLambda,
        "randends" => Family::RandEnds,
        "randends2p" => Family::RandEnds2P,
        "broken-third" => Family::BrokenThird,
        other => return Err(Error::Parse(format!("unknown mechanism '{other}'"))),
    })
}

/// Resolves a mechanism name and its flags.
pub fn parse_mechanism(
    name: &str,
    param: Option<Rational>,
    phantoms: Option<&[Location]>,
) -> Result<MechanismSpec, Error> {
    let family = family_of(name)?;
    let fixed = |rule: PhantomRule| {
        if param.is_some() || phantoms.is_some() {
            Err(Error::Parse(format!("{name} takes no parameter")))
        } else {
            Ok(MechanismSpec::GenMedian(rule))
        }
    };
    match name {
        "leftmost" => return fixed(PhantomRule::Constant(Location::ZERO)),
        "rightmost" => return fixed(PhantomRule::Constant(Location::ONE)),
        "median" => return fixed(PhantomRule::Median),
        "lrm" | "lrmt" => {
            if param.is_some() {
                return Err(Error::Parse(format!("{name} takes no parameter")));
            }
            let half = Some(Rational::HALF);
            return MechanismSpec::new(family, half);
        }
        "genmedian" => {
            return match (param, phantoms) {
                (Some(_), Some(_)) => Err(Error::Parse(
                    "give either --param or --phantoms, not both".into(),
                )),
                (None, Some(p)) => Ok(MechanismSpec::GenMedian(PhantomRule::Explicit(
                    PhantomProfile::new(p.to_vec()),
                ))),
                (p, None) => MechanismSpec::new(family, p),
            }
        }
        _ => {}
    }
    if phantoms.is_some() {
        return Err(Error::Parse(format!("{name} takes no phantoms")));
    }
    if family.param_range().is_none() && param.is_some() {
        return Err(Error::Parse(format!("{name} takes no parameter")));
    }
    MechanismSpec::new(family, param)
}

fn mechanism(args: &MechArgs) -> Result<MechanismSpec, Error> {
    parse_mechanism(&args.mech, args.param, args.phantoms.as_deref())
}

fn render_location(l: Location) -> String {
    format!("{l} ({})", l.value().to_decimal(6))
}

fn render_rational(v: Rational) -> String {
    format!("{v} ({})", v.to_decimal(6))
}

fn advice_from(spec: &MechanismSpec, pred: Option<&[Location]>) -> Result<Advice, Error> {
    let kind = spec.advice_kind();
    match (kind, pred) {
        (AdviceKind::None, None) => Ok(Advice::None),
        (AdviceKind::None, Some(_)) => Err(Error::Parse(format!("{spec} takes no prediction"))),
        (AdviceKind::Single, Some([p])) => Ok(Advice::Single(Prediction(*p))),
        (AdviceKind::Pair, Some([a, b])) => Ok(Advice::Pair(PredictionPair::new(*a, *b))),
        (AdviceKind::Single, _) => Err(Error::Parse(format!(
            "{spec} needs --pred with one location"
        ))),
        (AdviceKind::Pair, _) => Err(Error::Parse(format!(
            "{spec} needs --pred with two locations"
        ))),
    }
}

fn objectives(obj: Option<Objective>) -> Vec<Objective> {
    obj.map_or_else(|| Objective::ALL.to_vec(), |o| vec![o])
}

fn cmd_run(args: &RunArgs) -> Result<(String, u8), Error> {
    let spec = mechanism(&args.mech)?;
    let instance = Instance::new(args.agents.clone())?;
    if !spec.accepts(instance.len()) {
        return Err(Error::Parse(format!(
            "{spec} is not defined for {} agents",
            instance.len()
        )));
    }
    let advice = advice_from(&spec, args.pred.as_deref())?;
    let outcome = spec.apply(&instance, &advice)?;
    let opt = spec.optimum(&instance);

    let mut s = String::new();
    let _ = writeln!(s, "mechanism: {spec}");
    let _ = writeln!(s, "agents: {instance}");
    if advice != Advice::None {
        let _ = writeln!(s, "prediction: {advice}");
    }
    match &outcome {
        Outcome::Deterministic(p) => {
            let facilities: Vec<String> =
                p.facilities().iter().map(|&l| render_location(l)).collect();
            let _ = writeln!(s, "placement: {}", facilities.join(", "));
        }
        Outcome::Randomized(l) => {
            let _ = writeln!(s, "lottery: {l}");
        }
    }
    let _ = writeln!(s, "optimum: {}", opt.placement);
    for objective in objectives(args.obj) {
        let value = outcome.value(&instance, objective);
        let best = opt.value(objective);
        let expected = if spec.is_randomized() {
            "expected "
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "{objective}: {expected}value {}, optimum {}, ratio {}",
            render_rational(value),
            render_rational(best),
            ratio(objective, best, value).render()
        );
    }
    Ok((s, 0))
}

fn render_report(rep: &RatioReport) -> String {
    let closed = rep.closed_form.map_or("none".to_string(), |b| b.render());
    let verdict = if rep.is_sound() {
        "ok"
    } else {
        "EXCEEDS CLOSED FORM"
    };
    let mut s = format!(
        "{} {} {}: measured {}, closed form {}, {verdict}\n",
        rep.mechanism,
        rep.objective,
        rep.mode,
        rep.measured.render(),
        closed
    );
    match &rep.witness {
        Some(w) => {
            let _ = writeln!(s, "  witness: {w}, ratio {}", rep.witness_ratio.render());
        }
        None => s.push_str("  witness: none\n"),
    }
    let _ = writeln!(s, "  instances searched: {}", rep.instances_searched);
    s
}

fn cmd_ratio(args: &RatioArgs) -> Result<(String, u8), Error> {
    let spec = mechanism(&args.mech)?;
    let config = SearchConfig::new(args.grid.res, args.grid.max_agents)?;
    let modes = match args.mode {
        ModeArg::Consistency => vec![Mode::Consistency],
        ModeArg::Robustness => vec![Mode::Robustness],
        ModeArg::Both => vec![Mode::Consistency, Mode::Robustness],
    };
    let wanted = objectives(args.obj);
    let mut s = String::new();
    let mut code = 0;
    for mode in modes {
        for rep in measure_both(&spec, mode, &config) {
            if !wanted.contains(&rep.objective) {
                continue;
            }
            if !rep.is_sound() {
                code = 1;
            }
            s.push_str(&render_report(&rep));
        }
    }
    Ok((s, code))
}

fn csv_bound(b: Bound) -> String {
    match b {
        Bound::Finite(v) => format!("{v},{}", v.to_decimal(6)),
        Bound::Unbounded => "inf,inf".to_string(),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(String, u8), Error> {
    let family = family_of(&args.mech)?;
    if family.param_range().is_none() || matches!(args.mech.as_str(), "lrm" | "lrmt") {
        return Err(Error::Parse(format!(
            "{} has no trade-off parameter",
            args.mech
        )));
    }
    let params = match &args.params {
        Some(p) => p.clone(),
        None => default_params(family, args.steps)?,
    };
    let rows = tradeoff_sweep(family, &params, args.obj)?;
    let mut s = String::from(
        "param,param_decimal,consistency,consistency_decimal,robustness,robustness_decimal\n",
    );
    for row in &rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            row.param,
            row.param.to_decimal(6),
            csv_bound(row.consistency),
            csv_bound(row.robustness)
        );
    }
    if !is_tradeoff_monotone(&rows) {
        eprintln!("note: curve is not monotone in the parameter");
    }
    Ok((s, 0))
}

fn cmd_table() -> (String, u8) {
    let rows = check_table();
    let mismatches = rows.iter().filter(|r| r.status == Status::Mismatch).count();
    let mut s = render(&rows);
    let _ = writeln!(s, "{mismatches} mismatching rows");
    (s, u8::from(mismatches > 0))
}

fn cmd_sp(args: &SpArgs) -> Result<(String, u8), Error> {
    let spec = mechanism(&args.mech)?;
    let config = SearchConfig::new(args.res, args.max_agents)?;
    let violations = check_strategyproof(&spec, &config);
    let mut s = format!(
        "{spec}: {} violations (resolution {}, up to {} agents)\n",
        violations.len(),
        config.resolution,
        config.max_agents
    );
    for v in violations.iter().take(args.show) {
        let _ = writeln!(s, "  {v}");
    }
    Ok((s, u8::from(!violations.is_empty())))
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (path, result) = match out {
        Some(path) => (path.clone(), std::fs::write(path, text)),
        None => (PathBuf::from("<stdout>"), stdout.write_all(text.as_bytes())),
    };
    result.map_err(|source| CliError::Io { path, source })
}

/// Runs one command, writing its report to `stdout` or to `--out`.
/// Returns the process exit code for a completed run.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let (text, code, out) = match &cli.command {
        Command::Run(a) => {
            let (t, c) = cmd_run(a)?;
            (t, c, a.out.as_ref())
        }
        Command::Ratio(a) => {
            let (t, c) = cmd_ratio(a)?;
            (t, c, a.out.as_ref())
        }
        Command::Sweep(a) => {
            let (t, c) = cmd_sweep(a)?;
            (t, c, a.out.as_ref())
        }
        Command::Table(a) => {
            let (t, c) = cmd_table();
            (t, c, a.out.as_ref())
        }
        Command::Sp(a) => {
            let (t, c) = cmd_sp(a)?;
            (t, c, a.out.as_ref())
        }
    };
    emit(&text, out, stdout)?;
    Ok(code)
}
