//! Command implementations behind the `fuzzy-shadow` binary.
//!
//! Each command returns an [`Outcome`]: an exit code, a one-line summary and
//! a JSON report. [`run`] parses arguments, writes the report and any other
//! artifacts under `--out`, prints the summary and returns the exit code.
//!
//! Exit codes: `0` found or pass, `1` negative verdict, `2` usage or input error.

mod reproduce;
mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fuzzy_metric::{check_axioms as check_metric_axioms, Ball, FuzzyMetric, MetricKind};
use crate::orbits::{
    chain_mixing_check, chain_search, density, load_orbit, npo_set, random_pseudo_orbit, skeleton, DensityVerdict,
};
use crate::shadowing::{classical_shadow_search, ergodic_shadow_search, shadow_search, topological_mixing_probe};
use crate::space::Grid;
use crate::systems::{Dynamics, MapSpec};
use crate::tnorm::{check_axioms as check_tnorm_axioms, TNorm};
use crate::OrbitSequence;

pub use reproduce::{run_case, Case, CaseReport, Check};
pub use svg::render_maps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub summary: String,
    /// Base name of the JSON report under `--out`.
    pub name: String,
    pub report: Value,
    /// Extra `(file name, contents)` pairs written next to the report.
    pub artifacts: Vec<(String, String)>,
}

impl Outcome {
    fn new(name: impl Into<String>, found: bool, summary: String, report: Value) -> Self {
        Outcome {
            code: if found { EXIT_OK } else { EXIT_NEGATIVE },
            summary,
            name: name.into(),
            report,
            artifacts: Vec::new(),
        }
    }

    /// Writes `<name>.json` and the artifacts into `dir`, returning the paths.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let report = dir.join(format!("{}.json", self.name));
        fs::write(&report, report_bytes(&self.report))?;
        written.push(report);
        for (file, contents) in &self.artifacts {
            let path = dir.join(file);
            fs::write(&path, contents)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Pretty JSON with a trailing newline. Keys come out sorted, so equal
/// reports are byte-identical.
pub fn report_bytes(report: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("JSON values always serialise");
    bytes.push(b'\n');
    bytes
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

/// Shared run parameters.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// `tent:<beta>`, `example43` or `g:<alpha>`
    #[arg(long, default_value = "tent:2")]
    pub map: MapSpec,
    /// `standard`, `ratio-phi` or `ratio`
    #[arg(long, default_value = "standard")]
    pub metric: MetricKind,
    /// `product`, `minimum` or `lukasiewicz`
    #[arg(long, default_value = "product")]
    pub tnorm: TNorm,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t0: f64,
    /// Grid step
    #[arg(long, default_value_t = 1e-4)]
    pub grid: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for reports and artifacts
    #[arg(long, default_value = "fuzzy-shadow-out")]
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            map: MapSpec::Tent(crate::systems::Beta(crate::systems::Coeff::Exact(2.into()))),
            metric: MetricKind::Standard,
            tnorm: TNorm::Product,
            eps: 0.1,
            delta: 0.01,
            t0: 1.0,
            grid: 1e-4,
            seed: 0,
            out: PathBuf::from("fuzzy-shadow-out"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |what, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::domain(what, v, "(0, 1)"))
            }
        };
        unit("eps", self.eps)?;
        unit("delta", self.delta)?;
        unit("grid", self.grid)?;
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(Error::domain("t0", self.t0, "(0, inf)"));
        }
        Ok(())
    }

    /// The metric on the map's domain. The ratio metrics need `(0, 1]`.
    pub fn metric_for(&self, f: &impl Dynamics) -> Result<FuzzyMetric> {
        let dom = f.domain();
        if self.metric != MetricKind::Standard && !(dom.lo_open && dom.lo == 0.0 && dom.hi == 1.0) {
            return Err(Error::Precondition(format!(
                "metric {} lives on (0, 1] but the map acts on {}",
                self.metric,
                dom.describe()
            )));
        }
        Ok(FuzzyMetric::from_kind(self.metric, dom).with_tnorm(self.tnorm))
    }

    fn grid_for(&self, f: &impl Dynamics) -> Result<Grid> {
        Grid::uniform(f.domain(), self.grid)
    }

    fn echo(&self) -> Value {
        json!({
            "map": self.map.to_string(),
            "metric": self.metric,
            "tnorm": self.tnorm,
            "eps": self.eps,
            "delta": self.delta,
            "t0": self.t0,
            "grid": self.grid,
            "seed": self.seed,
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fuzzy-shadow",
    version,
    about = "Fuzzy-metric shadowing experiments on interval maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sampled fuzzy-metric axiom check
    CheckMetric {
        name: MetricKind,
        #[arg(long, default_value = "product")]
        tnorm: TNorm,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fuzzy-shadow-out")]
        out: PathBuf,
    },
    /// Sampled t-norm axiom check
    CheckTnorm {
        name: TNorm,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fuzzy-shadow-out")]
        out: PathBuf,
    },
    /// Re-run a worked example and compare with its claim
    Reproduce {
        case: Case,
        #[arg(long, default_value = "fuzzy-shadow-out")]
        out: PathBuf,
    },
    /// Search the grid for a point whose orbit traces a pseudo-orbit
    Shadow {
        #[command(flatten)]
        config: RunConfig,
        /// Orbit CSV (`index,value`); a seeded random pseudo-orbit otherwise
        #[arg(long)]
        orbit: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        start: f64,
        #[arg(long, value_enum, default_value = "fuzzy")]
        mode: ShadowMode,
    },
    /// Shortest δ-F-chain between two points
    Chain {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
    },
    /// Chain mixing and topological mixing between two points
    Mix {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
    },
    /// Prefix density of a skeleton or of an orbit's broken steps
    Density {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_enum)]
        construction: Option<Construction>,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, required_unless_present = "construction")]
        orbit: Option<PathBuf>,
    },
    /// Tabulate shadowing verdicts over (eps, delta) pairs
    Sweep {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2")]
        eps_list: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.001,0.01,0.05")]
        delta_list: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        start: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ShadowMode {
    Fuzzy,
    Classical,
    Ergodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Construction {
    #[value(name = "theorem-3.3")]
    Theorem33,
}

pub fn cmd_check_metric(kind: MetricKind, tnorm: TNorm, samples: usize, seed: u64) -> Outcome {
    let m = FuzzyMetric::from_kind(kind, crate::space::Space::unit_half_open()).with_tnorm(tnorm);
    let r = check_metric_axioms(&m, samples, seed);
    let pass = r.all_pass();
    Outcome::new(
        format!("check-metric-{kind}"),
        pass,
        format!("check-metric {kind} ({tnorm}): {}", if pass { "PASS" } else { "FAIL" }),
        json!({ "command": "check-metric", "metric": kind, "tnorm": tnorm, "pass": pass, "report": r }),
    )
}

pub fn cmd_check_tnorm(t: TNorm, samples: usize, seed: u64) -> Outcome {
    let r = check_tnorm_axioms(t, samples, seed);
    let pass = r.all_pass();
    Outcome::new(
        format!("check-tnorm-{t}"),
        pass,
        format!("check-tnorm {t}: {}", if pass { "PASS" } else { "FAIL" }),
        json!({ "command": "check-tnorm", "tnorm": t, "pass": pass, "report": r }),
    )
}

pub fn cmd_reproduce(case: Case) -> Result<Outcome> {
    let (report, artifacts) = run_case(case)?;
    let pass = report.pass();
    let passed = report.checks.iter().filter(|c| c.pass).count();
    let mut out = Outcome::new(
        case.id(),
        pass,
        format!(
            "{}: {} ({passed}/{} checks)",
            case.id(),
            report.verdict,
            report.checks.len()
        ),
        to_value(&report),
    );
    out.artifacts = artifacts;
    Ok(out)
}

fn orbit_or_random(
    cfg: &RunConfig,
    orbit: Option<&Path>,
    f: &impl Dynamics,
    m: &FuzzyMetric,
    n: usize,
    start: f64,
) -> Result<(OrbitSequence, Value)> {
    match orbit {
        Some(path) => Ok((load_orbit(path)?, json!({ "file": path.display().to_string() }))),
        None => Ok((
            random_pseudo_orbit(f, m, cfg.delta, cfg.t0, start, n, cfg.seed)?,
            json!({ "random": { "length": n, "start": start, "seed": cfg.seed } }),
        )),
    }
}

pub fn cmd_shadow(cfg: &RunConfig, orbit: Option<&Path>, n: usize, start: f64, mode: ShadowMode) -> Result<Outcome> {
    cfg.validate()?;
    let f = cfg.map.build()?;
    let m = cfg.metric_for(&f)?;
    let grid = cfg.grid_for(&f)?;
    let (seq, source) = orbit_or_random(cfg, orbit, &f, &m, n, start)?;
    let broken = npo_set(&seq, &f, &m, cfg.delta, cfg.t0);
    let (found, detail, witness, worst_index, worst_value) = match mode {
        ShadowMode::Fuzzy | ShadowMode::Classical => {
            let v = if mode == ShadowMode::Fuzzy {
                shadow_search(&seq, &f, &m, cfg.eps, cfg.t0, &grid)?
            } else {
                classical_shadow_search(&seq, &f, cfg.eps, &grid)?
            };
            (v.found(), to_value(&v), v.witness, v.worst_index, v.worst_value)
        }
        ShadowMode::Ergodic => {
            let v = ergodic_shadow_search(&seq, &f, &m, cfg.eps, cfg.t0, &grid)?;
            let c = v.candidate;
            (v.shadowed, to_value(&v), v.shadowed.then_some(c), None, None)
        }
    };
    let verdict = if found { "witness-found" } else { "none" };
    let mut report = cfg.echo();
    let obj = report.as_object_mut().unwrap();
    obj.insert("command".into(), json!("shadow"));
    obj.insert("mode".into(), to_value(format!("{mode:?}").to_lowercase()));
    obj.insert("verdict".into(), json!(verdict));
    obj.insert("witness".into(), json!(witness));
    obj.insert("worst_index".into(), json!(worst_index));
    obj.insert("worst_value".into(), json!(worst_value));
    obj.insert("orbit".into(), source);
    obj.insert("orbit_length".into(), json!(seq.len()));
    obj.insert("broken_steps".into(), to_value(&broken));
    obj.insert("search".into(), detail);
    let summary = match witness {
        Some(w) => format!("shadow: witness {w} ({} on {})", cfg.metric, cfg.map),
        None => format!("shadow: none ({} on {})", cfg.metric, cfg.map),
    };
    Ok(Outcome::new("shadow", found, summary, report))
}

pub fn cmd_chain(cfg: &RunConfig, from: f64, to: f64) -> Result<Outcome> {
    cfg.validate()?;
    let f = cfg.map.build()?;
    let m = cfg.metric_for(&f)?;
    let grid = cfg.grid_for(&f)?;
    let chain = chain_search(from, to, &f, &m, cfg.delta, cfg.t0, &grid)?;
    let found = chain.is_some();
    let mut report = cfg.echo();
    let obj = report.as_object_mut().unwrap();
    obj.insert("command".into(), json!("chain"));
    obj.insert("from".into(), json!(from));
    obj.insert("to".into(), json!(to));
    obj.insert("verdict".into(), json!(if found { "chain-found" } else { "none" }));
    obj.insert("length".into(), json!(chain.as_ref().map(|c| c.len() - 1)));
    obj.insert("chain".into(), json!(chain.as_ref().map(|c| &c.states)));
    let summary = match &chain {
        Some(c) => format!("chain: {from} -> {to} in {} steps", c.len() - 1),
        None => format!("chain: none from {from} to {to}"),
    };
    Ok(Outcome::new("chain", found, summary, report))
}

pub fn cmd_mix(cfg: &RunConfig, from: f64, to: f64, n_max: usize) -> Result<Outcome> {
    cfg.validate()?;
    let f = cfg.map.build()?;
    let m = cfg.metric_for(&f)?;
    let grid = cfg.grid_for(&f)?;
    let chains = chain_mixing_check(from, to, &f, &m, cfg.delta, cfg.t0, &grid, n_max)?;
    let u = Ball::open(from, cfg.delta, cfg.t0)?;
    let v = Ball::open(to, cfg.delta, cfg.t0)?;
    let probe = topological_mixing_probe(&f, &u, &v, &m, n_max, &grid)?;
    let found = chains.is_cofinite() && probe.is_cofinite();
    let mut report = cfg.echo();
    let obj = report.as_object_mut().unwrap();
    obj.insert("command".into(), json!("mix"));
    obj.insert("from".into(), json!(from));
    obj.insert("to".into(), json!(to));
    obj.insert("n_max".into(), json!(n_max));
    obj.insert(
        "chain_mixing".into(),
        json!({ "cofinite": chains.is_cofinite(), "report": chains }),
    );
    obj.insert(
        "topological_mixing".into(),
        json!({ "cofinite": probe.is_cofinite(), "report": probe }),
    );
    obj.insert("verdict".into(), json!(if found { "cofinite" } else { "not-cofinite" }));
    let summary = format!(
        "mix: chain {} / probe {} within {n_max}",
        if chains.is_cofinite() {
            "cofinite"
        } else {
            "not cofinite"
        },
        if probe.is_cofinite() {
            "cofinite"
        } else {
            "not cofinite"
        },
    );
    Ok(Outcome::new("mix", found, summary, report))
}

pub fn cmd_density(
    cfg: &RunConfig,
    construction: Option<Construction>,
    n: usize,
    orbit: Option<&Path>,
) -> Result<Outcome> {
    let (set, source) = match (construction, orbit) {
        (Some(Construction::Theorem33), _) => {
            if n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            (skeleton(n), json!({ "construction": "theorem-3.3", "n": n }))
        }
        (None, Some(path)) => {
            cfg.validate()?;
            let f = cfg.map.build()?;
            let m = cfg.metric_for(&f)?;
            let seq = load_orbit(path)?;
            let mut src = cfg.echo();
            src.as_object_mut()
                .unwrap()
                .insert("orbit".into(), json!(path.display().to_string()));
            (npo_set(&seq, &f, &m, cfg.delta, cfg.t0), src)
        }
        (None, None) => return Err(Error::Precondition("give --construction or --orbit".into())),
    };
    let r = density(&set)?;
    let zero = r.verdict == DensityVerdict::PlausiblyZero;
    let mut csv = String::from("n,density\n");
    for p in &r.curve {
        csv.push_str(&format!("{},{}\n", p.n, p.density));
    }
    let summary = format!("density: {} at n={} ({:?})", r.final_density, set.universe(), r.verdict);
    let mut out = Outcome::new(
        "density",
        zero,
        summary,
        json!({ "command": "density", "source": source, "count": set.len(), "universe": set.universe(), "report": r }),
    );
    out.artifacts.push(("density.csv".into(), csv));
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub eps: f64,
    pub delta: f64,
    pub found: bool,
    pub witness: Option<f64>,
    pub worst_index: Option<usize>,
}

/// Fuzzy shadowing verdicts for every `(eps, delta)` pair, each on its own
/// seeded random δ-F-pseudo-orbit at `t0`. Always exits 0.
pub fn cmd_sweep(cfg: &RunConfig, eps_list: &[f64], delta_list: &[f64], n: usize, start: f64) -> Result<Outcome> {
    cfg.validate()?;
    let f = cfg.map.build()?;
    let m = cfg.metric_for(&f)?;
    let grid = cfg.grid_for(&f)?;
    let mut rows = Vec::new();
    for &delta in delta_list {
        let seq = random_pseudo_orbit(&f, &m, delta, cfg.t0, start, n, cfg.seed)?;
        for &eps in eps_list {
            let v = shadow_search(&seq, &f, &m, eps, cfg.t0, &grid)?;
            rows.push(SweepRow {
                eps,
                delta,
                found: v.found(),
                witness: v.witness,
                worst_index: v.worst_index,
            });
        }
    }
    let mut csv = String::from("eps,delta,found,witness\n");
    for r in &rows {
        let w = r.witness.map(|w| w.to_string()).unwrap_or_default();
        csv.push_str(&format!("{},{},{},{}\n", r.eps, r.delta, r.found, w));
    }
    let found = rows.iter().filter(|r| r.found).count();
    let mut report = cfg.echo();
    let obj = report.as_object_mut().unwrap();
    obj.insert("command".into(), json!("sweep"));
    obj.insert("orbit_length".into(), json!(n));
    obj.insert("start".into(), json!(start));
    obj.insert("rows".into(), to_value(&rows));
    let mut out = Outcome::new(
        "sweep",
        true,
        format!("sweep: {found}/{} pairs shadowed", rows.len()),
        report,
    );
    out.artifacts.push(("sweep.csv".into(), csv));
    Ok(out)
}

/// Runs a parsed command. Reproduce and check commands write to their own
/// `--out`; the rest use the run config's.
pub fn execute(cli: Cli) -> Result<(Outcome, PathBuf)> {
    Ok(match cli.command {
        Command::CheckMetric {
            name,
            tnorm,
            samples,
            seed,
            out,
        } => (cmd_check_metric(name, tnorm, samples, seed), out),
        Command::CheckTnorm {
            name,
            samples,
            seed,
            out,
        } => (cmd_check_tnorm(name, samples, seed), out),
        Command::Reproduce { case, out } => (cmd_reproduce(case)?, out),
        Command::Shadow {
            config,
            orbit,
            n,
            start,
            mode,
        } => (cmd_shadow(&config, orbit.as_deref(), n, start, mode)?, config.out),
        Command::Chain { config, from, to } => (cmd_chain(&config, from, to)?, config.out),
        Command::Mix {
            config,
            from,
            to,
            n_max,
        } => (cmd_mix(&config, from, to, n_max)?, config.out),
        Command::Density {
            config,
            construction,
            n,
            orbit,
        } => (cmd_density(&config, construction, n, orbit.as_deref())?, config.out),
        Command::Sweep {
            config,
            eps_list,
            delta_list,
            n,
            start,
        } => (cmd_sweep(&config, &eps_list, &delta_list, n, start)?, config.out),
    })
}

/// Parses `args` (program name first), runs the command, writes artifacts and
/// prints the summary line. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli).and_then(|(outcome, dir)| outcome.write_to(&dir).map(|files| (outcome, files))) {
        Ok((outcome, files)) => {
            println!("{}  [{}]", outcome.summary, files[0].display());
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
