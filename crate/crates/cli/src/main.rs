//! quantrap: spectra, momentum distributions, finite-well convergence,
//! barrier dynamics and deficiency classification as plot-ready CSV/JSON
//! tables.
//!
//! Configuration comes from an optional flat JSON file merged under the
//! command-line flags (flags win). Relative output paths resolve under
//! QUANTRAP_OUTPUT_DIR when that variable is set. Exit status: 0 on
//! success, 2 on validation failure, 3 on an unwritable output path.

mod table;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use quantrap_core as core;
use quantrap_core::{
    classify, reference_cases, Expression, ExtensionParameter, Grid, IntervalSpec,
    ModelSpec, SpectralDecomposition, Verdict, WaveFunction,
};
use table::{Table, Value};

#[derive(Parser, Debug)]
#[command(name = "quantrap", version, about = "Quantum trapping-model numerics")]
struct Cli {
    /// Flat JSON configuration file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (stdout when omitted). Relative paths go under
    /// QUANTRAP_OUTPUT_DIR when set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Momentum/energy spectrum of the boundary-twist family on [0, pi].
    Spectrum {
        /// Twist angle alpha in radians.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Emit rows for n in [-n_max, n_max].
        #[arg(long)]
        n_max: Option<i64>,
    },
    /// Momentum density of an infinite-well eigenstate.
    Momentum {
        /// Eigenstate index (n >= 1).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p_max: Option<f64>,
        #[arg(long)]
        p_points: Option<usize>,
    },
    /// One finite-well bound state against the large-V0 law.
    FiniteWell {
        #[arg(long)]
        v0: Option<f64>,
        /// Bound-state index (n >= 1).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Finite-well convergence sweep toward the infinite well.
    Convergence {
        #[arg(long)]
        n: Option<u32>,
        /// Increasing barrier heights, comma separated.
        #[arg(long, value_delimiter = ',')]
        v0_list: Option<Vec<f64>>,
    },
    /// Spectral-theorem evolution snapshots of a model packet.
    Evolve {
        /// well | alpha | multitrap | calogero
        #[arg(long)]
        model: Option<Model>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        segment: Option<i64>,
        /// Number of low modes mixed into the initial packet.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        t_max: Option<f64>,
        #[arg(long)]
        t_steps: Option<usize>,
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// Calogero levels E_n = 4n + 2 + sqrt(1 + 4 gamma) with residuals.
    Calogero {
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<f64>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// Per-segment spectrum of the multi-trap Hamiltonian.
    Multitrap {
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        segment: Option<i64>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Deficiency-index classification.
    Deficiency {
        /// Emit the full five-case reference table.
        #[arg(long)]
        all: bool,
        /// first | second
        #[arg(long)]
        expression: Option<ExprArg>,
        /// bounded | half-line | full-line
        #[arg(long)]
        interval: Option<IntervalArg>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
enum Model {
    Well,
    Alpha,
    Multitrap,
    Calogero,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExprArg {
    First,
    Second,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum IntervalArg {
    Bounded,
    HalfLine,
    FullLine,
}

/// File-level defaults, merged under the flags.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(default)]
struct FileConfig {
    alpha: Option<f64>,
    gamma: Option<f64>,
    q: Option<f64>,
    segment: Option<i64>,
    v0: Option<f64>,
    v0_list: Option<Vec<f64>>,
    n: Option<u32>,
    n_max: Option<i64>,
    model: Option<Model>,
    grid_points: Option<usize>,
    p_max: Option<f64>,
    p_points: Option<usize>,
    t_max: Option<f64>,
    t_steps: Option<usize>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

enum Failure {
    /// Violated precondition or malformed configuration -> exit 2.
    Validation(String),
    /// Output path cannot be created or written -> exit 3.
    Unwritable(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Unwritable(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Unwritable(m) => m,
        }
    }
}

impl From<core::Error> for Failure {
    fn from(e: core::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(f) => {
            eprintln!("quantrap: {}", f.message());
            std::process::exit(f.code());
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file_cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Validation(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str::<FileConfig>(&text).map_err(|e| {
                Failure::Validation(format!("malformed config {}: {e}", path.display()))
            })?
        }
        None => FileConfig::default(),
    };

    let table = build_table(&cli.command, &file_cfg)?;

    let format = cli.format.or(file_cfg.format).unwrap_or(Format::Csv);
    let output = cli.output.clone().or(file_cfg.output);
    emit(&table, format, output.as_deref())
}

fn build_table(command: &Command, cfg: &FileConfig) -> Result<Table, Failure> {
    match command {
        Command::Spectrum { alpha, n_max } => {
            let alpha = ExtensionParameter::new(alpha.or(cfg.alpha).unwrap_or(0.0));
            let n_max = n_max.or(cfg.n_max).unwrap_or(5);
            if n_max < 0 {
                return Err(Failure::Validation("n_max must be nonnegative".into()));
            }
            let mut t = Table::new(vec!["n", "p", "E"]);
            for n in -n_max..=n_max {
                t.push(vec![
                    Value::Int(n),
                    Value::Float(core::momentum_eigenvalue(n, alpha)),
                    Value::Float(core::energy_eigenvalue_alpha(n, alpha)),
                ]);
            }
            Ok(t)
        }

        Command::Momentum { n, p_max, p_points } => {
            let n = n.or(cfg.n).unwrap_or(1);
            let p_max = p_max.or(cfg.p_max).unwrap_or(60.0);
            let p_points = p_points.or(cfg.p_points).unwrap_or(1201);
            if n < 1 {
                return Err(Failure::Validation(
                    "well eigenstates are indexed by n >= 1".into(),
                ));
            }
            if !(p_max > 0.0) || p_points < 3 {
                return Err(Failure::Validation(
                    "momentum grid needs p_max > 0 and p_points >= 3".into(),
                ));
            }
            let grid = core::uniform_p_grid(p_max, p_points);
            let dist = core::well_momentum_density(n, &grid)?;
            let mut t = Table::new(vec!["p", "density"]);
            for (p, d) in dist.p_grid().iter().zip(dist.density()) {
                t.push(vec![Value::Float(*p), Value::Float(*d)]);
            }
            Ok(t)
        }

        Command::FiniteWell { v0, n } => {
            let v0 = v0.or(cfg.v0).unwrap_or(1e4);
            let n = n.or(cfg.n).unwrap_or(1);
            finite_well_table(n, &[v0])
        }

        Command::Convergence { n, v0_list } => {
            let n = n.or(cfg.n).unwrap_or(1);
            let list = v0_list
                .clone()
                .or_else(|| cfg.v0_list.clone())
                .unwrap_or_else(|| vec![1e2, 1e3, 1e4]);
            finite_well_table(n, &list)
        }

        Command::Evolve {
            model,
            alpha,
            gamma,
            q,
            segment,
            n,
            t_max,
            t_steps,
            grid_points,
        } => {
            let model_kind = model.or(cfg.model).unwrap_or(Model::Well);
            let modes = n.or(cfg.n).unwrap_or(5).max(1);
            let t_max = t_max.or(cfg.t_max).unwrap_or(2.0 * PI);
            let t_steps = t_steps.or(cfg.t_steps).unwrap_or(5).max(1);
            let grid_points = grid_points.or(cfg.grid_points).unwrap_or(2001);
            if grid_points < 3 {
                return Err(Failure::Validation("grid needs at least 3 points".into()));
            }
            evolve_table(
                model_kind,
                alpha.or(cfg.alpha).unwrap_or(0.0),
                gamma.or(cfg.gamma).unwrap_or(2.0),
                q.or(cfg.q).unwrap_or(2.0),
                segment.or(cfg.segment).unwrap_or(1),
                modes,
                t_max,
                t_steps,
                grid_points,
            )
        }

        Command::Calogero { gamma, n_max, grid_points } => {
            let gamma = gamma.or(cfg.gamma).unwrap_or(2.0);
            let n_max = n_max.or(cfg.n.map(|v| v)).or(cfg.n_max.map(|v| v as u32)).unwrap_or(4);
            let points = grid_points.or(cfg.grid_points).unwrap_or(core::singular::RADIAL_POINTS);
            let spec = core::CalogeroSpec::singular(gamma)?;
            let grid = core::radial_grid(points.max(101));
            let mut t = Table::new(vec!["n", "gamma", "E", "residual"]);
            let model = ModelSpec::Calogero { gamma, epsilon: 0.0 };
            for n in 0..=n_max {
                let state = core::calogero_eigenstate(n, &spec)?;
                let r = core::residual(&model, &state.sample(grid.clone()), state.energy());
                t.push(vec![
                    Value::Int(n as i64),
                    Value::Float(gamma),
                    Value::Float(state.energy()),
                    Value::Float(r),
                ]);
            }
            Ok(t)
        }

        Command::Multitrap { q, segment, n_max } => {
            let q = q.or(cfg.q).unwrap_or(2.0);
            let segment = segment.or(cfg.segment).unwrap_or(1);
            let n_max = n_max.or(cfg.n).unwrap_or(5).max(1);
            let spec = core::MultiTrapSpec::new(q, segment)?;
            let mut t = Table::new(vec!["m", "n", "q", "E"]);
            for n in 1..=n_max {
                t.push(vec![
                    Value::Int(spec.segment_index()),
                    Value::Int(n as i64),
                    Value::Float(q),
                    Value::Float(core::segment_energy(n, q)),
                ]);
            }
            Ok(t)
        }

        Command::Deficiency { all, expression, interval } => {
            let cases: Vec<(Expression, IntervalSpec)> = if *all {
                reference_cases()
            } else {
                match (expression, interval) {
                    (Some(e), Some(iv)) => {
                        let expr = match e {
                            ExprArg::First => Expression::FirstOrder,
                            ExprArg::Second => Expression::SecondOrder,
                        };
                        let interval = match iv {
                            IntervalArg::Bounded => IntervalSpec::Bounded { a: 0.0, b: PI },
                            IntervalArg::HalfLine => {
                                IntervalSpec::half_line(0.0, core::Direction::Positive)
                            }
                            IntervalArg::FullLine => IntervalSpec::FullLine,
                        };
                        vec![(expr, interval)]
                    }
                    _ => {
                        return Err(Failure::Validation(
                            "deficiency needs --all or both --expression and --interval".into(),
                        ))
                    }
                }
            };
            let mut t = Table::new(vec!["expression", "interval", "m", "n", "verdict"]);
            for (expr, iv) in cases {
                let report = classify(expr, iv);
                t.push(vec![
                    Value::Str(expression_label(expr).into()),
                    Value::Str(interval_label(&iv)),
                    Value::Int(report.m as i64),
                    Value::Int(report.n as i64),
                    Value::Str(verdict_label(&report.verdict)),
                ]);
            }
            Ok(t)
        }
    }
}

fn finite_well_table(n: u32, v0_list: &[f64]) -> Result<Table, Failure> {
    let rows = core::convergence_study(n, v0_list)?;
    let mut t = Table::new(vec!["n", "v0", "E_solved", "E_asymptote", "l2_dist"]);
    for row in rows {
        match row.data {
            Some(d) => t.push(vec![
                Value::Int(n as i64),
                Value::Float(row.v0),
                Value::Float(d.e_solved),
                Value::Float(d.e_asymptote),
                Value::Float(d.l2_distance_to_limit),
            ]),
            None => eprintln!(
                "quantrap: state {n} is not bound at v0 = {}; row omitted",
                row.v0
            ),
        }
    }
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
fn evolve_table(
    model_kind: Model,
    alpha: f64,
    gamma: f64,
    q: f64,
    segment: i64,
    modes: u32,
    t_max: f64,
    t_steps: usize,
    grid_points: usize,
) -> Result<Table, Failure> {
    let (model, grid) = match model_kind {
        Model::Well => (
            ModelSpec::InfiniteWell,
            Grid::bounded(0.0, PI, grid_points)?,
        ),
        Model::Alpha => (
            ModelSpec::ExtensionFamily { alpha: ExtensionParameter::new(alpha) },
            Grid::bounded(0.0, PI, grid_points)?,
        ),
        Model::Multitrap => {
            let spec = core::MultiTrapSpec::new(q, segment)?;
            let (lo, hi) = spec.segment_bounds();
            (
                ModelSpec::MultiTrap { q, segment },
                Grid::bounded(lo - 0.5, hi + 0.5, grid_points)?,
            )
        }
        Model::Calogero => (
            ModelSpec::Calogero { gamma, epsilon: 0.0 },
            Grid::bounded(-core::singular::X_MAX, core::singular::X_MAX, grid_points)?,
        ),
    };
    let basis = model.basis(128)?;
    let k = (modes as usize).min(basis.len());
    // deterministic packet: equal-weight mix of the k lowest modes
    let weight = Complex64::new(1.0 / (k as f64).sqrt(), 0.0);
    let initial = {
        let basis = basis.as_ref();
        WaveFunction::from_fn(grid, |x| {
            (0..k).map(|i| weight * basis.evaluate(i, x)).sum()
        })
        .normalized()
    };
    let decomp = SpectralDecomposition::expand(basis.as_ref(), &initial);
    let times: Vec<f64> = (0..t_steps)
        .map(|i| t_max * i as f64 / (t_steps.max(2) - 1).max(1) as f64)
        .collect();
    let result = core::evolve(&decomp, &times)?;
    let mut t = Table::new(vec!["t", "x", "re", "im", "prob"]);
    for (time, snap) in result.times.iter().zip(&result.snapshots) {
        for (x, s) in snap.grid().points().zip(snap.samples()) {
            t.push(vec![
                Value::Float(*time),
                Value::Float(x),
                Value::Float(s.re),
                Value::Float(s.im),
                Value::Float(s.norm_sqr()),
            ]);
        }
    }
    Ok(t)
}

fn expression_label(e: Expression) -> &'static str {
    match e {
        Expression::FirstOrder => "first-order",
        Expression::SecondOrder => "second-order",
    }
}

// labels are comma-free so the CSV re-parses by naive splitting
fn interval_label(iv: &IntervalSpec) -> String {
    match iv {
        IntervalSpec::Bounded { .. } => "bounded(0..pi)".to_string(),
        IntervalSpec::HalfLine { direction, .. } => match direction {
            core::Direction::Positive => "half-line(0..+inf)".to_string(),
            core::Direction::Negative => "half-line(-inf..0)".to_string(),
        },
        IntervalSpec::FullLine => "full-line".to_string(),
    }
}

fn verdict_label(v: &Verdict) -> String {
    match v {
        Verdict::EssentiallySelfAdjoint => "essentially-self-adjoint".to_string(),
        Verdict::ExtensionFamily(k) => format!("extension-family({k})"),
        Verdict::NoExtension => "no-extension".to_string(),
    }
}

fn emit(table: &Table, format: Format, output: Option<&Path>) -> Result<(), Failure> {
    let resolved = output.map(|p| {
        if p.is_relative() {
            match std::env::var_os("QUANTRAP_OUTPUT_DIR") {
                Some(root) => PathBuf::from(root).join(p),
                None => p.to_path_buf(),
            }
        } else {
            p.to_path_buf()
        }
    });
    let mut sink: Box<dyn Write> = match &resolved {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| {
                Failure::Unwritable(format!("cannot create {}: {e}", path.display()))
            })?;
            Box::new(std::io::BufWriter::new(file))
        }
        None => Box::new(std::io::stdout().lock()),
    };
    let write_result = match format {
        Format::Csv => table.write_csv(&mut sink),
        Format::Json => table.write_json(&mut sink),
    };
    write_result
        .and_then(|()| sink.flush())
        .map_err(|e| Failure::Unwritable(format!("write failed: {e}")))
}
