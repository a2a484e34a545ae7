mod cache;
mod config;
mod exit;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use selfdual::dynamics::{self, Controls, ParticleState};
use selfdual::intertwiner::{self, AnsatzSpec, DEFAULT_CAP};
use selfdual::numerics::{airy_ai, eval_function, NumFn};
use selfdual::suite::{run_suite, SuiteOptions};

use config::{positive, FileConfig};
use exit::{CliError, DYNAMICS_ABORT, EMPTY_SPACE, FAILURE, OK, USAGE};

#[derive(Parser)]
#[command(name = "selfdual", version, about = "Intertwiners, eigenfunction checks and particle dynamics for the Airy-deformed Calogero-Moser system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the intertwiner D_n and write it with an exact certificate
    Construct(ConstructArgs),
    /// Run the exact and numeric verification suite for one n
    Verify(VerifyArgs),
    /// Integrate the classical particle system and write a trajectory CSV
    Simulate(SimulateArgs),
    /// Evaluate psi, sigma, psi_tilde or sigma_tilde at a point
    Eval(EvalArgs),
    /// Evaluate Ai and Ai' at a real argument
    Airy(AiryArgs),
}

#[derive(Args)]
struct Common {
    /// JSON file with the same keys as the long flags (`dt_tol` for `--dt-tol`)
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CacheArgs {
    /// Load D_n from the operator cache instead of solving
    #[arg(long)]
    use_cached: bool,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    max_order: Option<u32>,
    #[arg(long)]
    num_degree: Option<u32>,
    #[arg(long)]
    den_exponent: Option<u32>,
    /// Largest ansatz dimension attempted
    #[arg(long)]
    cap: Option<usize>,
    /// Solve only at the given bounds
    #[arg(long)]
    no_grow: bool,
    #[command(flatten)]
    cache: CacheArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Permit n = 4
    #[arg(long)]
    allow_large: bool,
    /// Random points per finite-difference cross-check
    #[arg(long)]
    fd_points: Option<usize>,
    #[command(flatten)]
    cache: CacheArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Named initial condition (free for n=1, spread for n=2,3)
    #[arg(long)]
    preset: Option<String>,
    /// JSON file {"x": [...], "y": [...]}
    #[arg(long)]
    init: Option<PathBuf>,
    /// End time
    #[arg(long)]
    t: Option<f64>,
    /// Relative and absolute step tolerance
    #[arg(long)]
    dt_tol: Option<f64>,
    /// Time between output rows
    #[arg(long)]
    sample_dt: Option<f64>,
    #[arg(long)]
    collision_threshold: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "fn")]
    func: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated positions
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Comma-separated spectral parameters
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[command(flatten)]
    cache: CacheArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AiryArgs {
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[command(flatten)]
    common: Common,
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn require<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--{name} is required")))
}

fn cache_dir(cfg: &FileConfig, args: &CacheArgs) -> Result<PathBuf, CliError> {
    Ok(cfg.pick(args.cache_dir.clone(), "cache_dir")?.unwrap_or_else(|| PathBuf::from(cache::DEFAULT_DIR)))
}

/// Installs the cached default-bounds `D_n` so later lookups use it.
fn use_cached(n: usize, dir: &Path) -> Result<(), CliError> {
    let stem = cache::stem(&AnsatzSpec::default_for(n), true, DEFAULT_CAP);
    let d = cache::load(dir, &stem)?;
    if d.n() != n {
        return Err(CliError::new(exit::MISSING_ARTIFACT, format!("cached operator has n = {}", d.n())));
    }
    intertwiner::install_intertwiner(&d)?;
    Ok(())
}

const COMMON_KEYS: [&str; 3] = ["config", "seed", "out"];

fn keys(extra: &[&'static str]) -> Vec<&'static str> {
    COMMON_KEYS.iter().chain(extra).copied().collect()
}

#[derive(Serialize)]
struct EmptyReport {
    n: usize,
    spec: AnsatzSpec,
    seed: u64,
    solution_space_dimension: usize,
    status: &'static str,
}

fn construct(a: ConstructArgs) -> Result<i32, CliError> {
    let cfg = FileConfig::load(
        a.common.config.as_deref(),
        &keys(&["n", "max_order", "num_degree", "den_exponent", "cap", "no_grow", "use_cached", "cache_dir"]),
    )?;
    let n = require(cfg.pick(a.n, "n")?, "n")?;
    if n < 2 {
        return Err(CliError::usage(format!("construct needs n >= 2, got {n}")));
    }
    let d0 = AnsatzSpec::default_for(n);
    let spec = AnsatzSpec::new(
        n,
        cfg.pick(a.max_order, "max_order")?.unwrap_or(d0.max_order),
        cfg.pick(a.num_degree, "num_degree")?.unwrap_or(d0.num_degree),
        cfg.pick(a.den_exponent, "den_exponent")?.unwrap_or(d0.den_exponent),
    )?;
    let cap = cfg.pick(a.cap, "cap")?.unwrap_or(DEFAULT_CAP);
    let grow = !cfg.flag(a.no_grow, "no_grow")?;
    let seed = cfg.pick(a.common.seed, "seed")?.unwrap_or(0);
    let out = cfg.pick(a.common.out.clone(), "out")?;
    let dir = cache_dir(&cfg, &a.cache)?;
    let stem = cache::stem(&spec, grow, cap);

    let (op, cert) = if cfg.flag(a.cache.use_cached, "use_cached")? {
        let d = cache::load(&dir, &stem)?;
        let cert = intertwiner::certify(&d, Some(spec), 1, 1)?;
        (d, cert)
    } else {
        let c = intertwiner::construct_intertwiner(n, &spec, cap, grow)?;
        let Some(d) = c.operator else {
            let report = EmptyReport {
                n,
                spec: c.result.spec,
                seed,
                solution_space_dimension: c.space_dimension,
                status: if c.space_dimension == 0 { "empty" } else { "no unique translation-invariant element" },
            };
            emit(out.as_deref(), &cache::to_json(&report))?;
            return Ok(EMPTY_SPACE);
        };
        let cert = intertwiner::certify(&d, Some(c.result.spec), c.space_dimension, c.translation_invariant.len())?;
        if cert.valid {
            cache::store(&dir, &stem, &d, &cert)?;
        }
        (d, cert)
    };
    emit(out.as_deref(), &cache::to_json(&op))?;
    match &out {
        Some(p) => cache::write_json(&cache::certificate_path(p), &cert)?,
        None => eprintln!("{}", serde_json::to_string(&cert).expect("certificate serializes")),
    }
    Ok(if cert.valid { OK } else { FAILURE })
}

fn verify(a: VerifyArgs) -> Result<i32, CliError> {
    let cfg = FileConfig::load(
        a.common.config.as_deref(),
        &keys(&["n", "allow_large", "fd_points", "use_cached", "cache_dir"]),
    )?;
    let n = require(cfg.pick(a.n, "n")?, "n")?;
    let max = if cfg.flag(a.allow_large, "allow_large")? { 4 } else { 3 };
    if n == 0 || n > max {
        return Err(CliError::usage(format!("verify supports n in 1..={max}, got {n}")));
    }
    let mut opts = SuiteOptions { seed: cfg.pick(a.common.seed, "seed")?.unwrap_or(0), ..SuiteOptions::default() };
    opts.fd_points = cfg.pick(a.fd_points, "fd_points")?.unwrap_or(opts.fd_points);
    if n >= 2 && cfg.flag(a.cache.use_cached, "use_cached")? {
        use_cached(n, &cache_dir(&cfg, &a.cache)?)?;
    }
    let report = run_suite(n, &opts)?;
    emit(cfg.pick(a.common.out.clone(), "out")?.as_deref(), &cache::to_json(&report))?;
    Ok(if report.pass { OK } else { FAILURE })
}

#[derive(Serialize)]
struct SimulationSummary {
    n: usize,
    seed: u64,
    initial: ParticleState,
    t_end: f64,
    controls: Controls,
    steps: usize,
    rejected: usize,
    stopped: Option<String>,
    drift: dynamics::DriftSummary,
}

fn simulate(a: SimulateArgs) -> Result<i32, CliError> {
    let cfg = FileConfig::load(
        a.common.config.as_deref(),
        &keys(&["n", "preset", "init", "t", "dt_tol", "sample_dt", "collision_threshold"]),
    )?;
    let n = require(cfg.pick(a.n, "n")?, "n")?;
    if n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let preset = cfg.pick(a.preset.clone(), "preset")?;
    let init: Option<PathBuf> = cfg.pick(a.init.clone(), "init")?;
    let s0 = match (preset, init) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --preset or --init")),
        (Some(p), None) => dynamics::preset(n, &p)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let s: ParticleState = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("{} is not a particle state: {e}", path.display())))?;
            if s.x.len() != n || s.y.len() != n {
                return Err(CliError::usage(format!("{} has {} positions and {} momenta, n = {n}", path.display(), s.x.len(), s.y.len())));
            }
            s
        }
        (None, None) => match dynamics::preset_names(n).first() {
            Some(p) => dynamics::preset(n, p)?,
            None => return Err(CliError::usage(format!("no preset for n = {n}; give --init"))),
        },
    };
    let t_end = cfg.pick(a.t, "t")?.unwrap_or(5.0);
    if !(t_end >= s0.t && t_end.is_finite()) {
        return Err(CliError::usage(format!("end time {t_end} before start {}", s0.t)));
    }
    let mut controls = Controls::default();
    if let Some(tol) = cfg.pick(a.dt_tol, "dt_tol")? {
        controls.rtol = positive("dt-tol", tol)?;
        controls.atol = tol;
    }
    if let Some(dt) = cfg.pick(a.sample_dt, "sample_dt")? {
        controls.sample_dt = positive("sample-dt", dt)?;
    }
    if let Some(c) = cfg.pick(a.collision_threshold, "collision_threshold")? {
        controls.collision_threshold = positive("collision-threshold", c)?;
    }
    let seed = cfg.pick(a.common.seed, "seed")?.unwrap_or(0);
    let out = cfg.pick(a.common.out.clone(), "out")?;

    let traj = dynamics::integrate(&s0, t_end, &controls);
    let csv = dynamics::trajectory_csv(n, &traj);
    emit(out.as_deref(), &csv)?;
    let summary = SimulationSummary {
        n,
        seed,
        initial: s0,
        t_end,
        controls,
        steps: traj.steps,
        rejected: traj.rejected,
        stopped: traj.stop.as_ref().map(|e| e.to_string()),
        drift: dynamics::summarize(&traj),
    };
    let text = cache::to_json(&summary);
    if out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    match traj.stop {
        None => Ok(OK),
        Some(e) => {
            eprintln!("simulation stopped: {e}");
            Ok(if matches!(e, selfdual::Error::Collision { .. } | selfdual::Error::StepUnderflow { .. }) {
                DYNAMICS_ABORT
            } else {
                FAILURE
            })
        }
    }
}

fn parse_vec(name: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| CliError::usage(format!("--{name}: {p:?}: {e}"))))
        .collect()
}

fn eval(a: EvalArgs) -> Result<i32, CliError> {
    let cfg = FileConfig::load(a.common.config.as_deref(), &keys(&["fn", "n", "x", "z", "use_cached", "cache_dir"]))?;
    let func = NumFn::parse(&require(cfg.pick(a.func.clone(), "fn")?, "fn")?)?;
    let x = parse_vec("x", &require(cfg.pick(a.x.clone(), "x")?, "x")?)?;
    let z = parse_vec("z", &require(cfg.pick(a.z.clone(), "z")?, "z")?)?;
    let n = cfg.pick(a.n, "n")?.unwrap_or(x.len());
    if x.len() != n || z.len() != n {
        return Err(CliError::usage(format!("--x has {} and --z has {} entries, n = {n}", x.len(), z.len())));
    }
    if func.is_tilde() && n >= 3 && cfg.flag(a.cache.use_cached, "use_cached")? {
        use_cached(n, &cache_dir(&cfg, &a.cache)?)?;
    }
    let value = eval_function(func, n, &x, &z)?;
    let seed = cfg.pick(a.common.seed, "seed")?.unwrap_or(0);
    let report = json!({ "fn": func.id(), "n": n, "x": x, "z": z, "value": value, "seed": seed });
    emit(cfg.pick(a.common.out.clone(), "out")?.as_deref(), &cache::to_json(&report))?;
    Ok(OK)
}

fn airy(a: AiryArgs) -> Result<i32, CliError> {
    let cfg = FileConfig::load(a.common.config.as_deref(), &keys(&["t"]))?;
    let t = require(cfg.pick(a.t, "t")?, "t")?;
    let v = airy_ai(t).map_err(|e| CliError::usage(e.to_string()))?;
    let seed = cfg.pick(a.common.seed, "seed")?.unwrap_or(0);
    let report = json!({ "t": v.t, "ai": v.ai, "ai_prime": v.ai_prime, "method": v.method, "seed": seed });
    emit(cfg.pick(a.common.out.clone(), "out")?.as_deref(), &cache::to_json(&report))?;
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Simulate(a) => simulate(a),
        Command::Eval(a) => eval(a),
        Command::Airy(a) => airy(a),
    };
    let code = result.unwrap_or_else(|e| {
        eprintln!("error: {}", e.message);
        e.code
    });
    ExitCode::from(code as u8)
}
