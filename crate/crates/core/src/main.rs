use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use symbreak::automorphism::set_search_cap;
use symbreak::coloring::{
    density_profile, dsc_coloring, dsc_coloring_relaxed, monte_carlo_distinguishing, motion_growth_coloring_with,
    random_coloring, verify_distinguishing_with, Coloring, Strategy, VerifyOptions,
};
use symbreak::config::RunConfig;
use symbreak::dsc::{check_dsc, growth_profile};
use symbreak::export::{
    ball_to_dot, ball_to_json, density_csv, growth_csv, montecarlo_density_csv, montecarlo_trials_csv, write_atomic,
};
use symbreak::graph::set_vertex_budget;
use symbreak::{ball, Error, Result};

const EXIT_USAGE: u8 = 1;
const EXIT_DSC_FAIL: u8 = 2;
const EXIT_VERIFY_FAIL: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "symbreak", version, about = "Construct and verify sparse 2-distinguishing colorings on ball truncations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Write B_root(R) as DOT and JSON, plus its growth CSV.
    Generate,
    /// Check the distinct-spheres condition for pairs within r_pairs.
    CheckDsc,
    /// Build a coloring with the chosen strategy.
    Color,
    /// Verify a coloring file on B_root(r_outer).
    Verify,
    /// Estimate how often random colorings verify.
    Montecarlo,
}

#[derive(Args)]
struct Flags {
    /// Flat key=value config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    family: Option<String>,
    /// Family parameter, e.g. --param d=3.
    #[arg(long = "param", global = true, value_name = "K=V")]
    params: Vec<String>,
    #[arg(long, global = true)]
    root: Option<String>,
    /// Construction radius R.
    #[arg(long, global = true)]
    radius: Option<String>,
    #[arg(long, global = true)]
    r_pairs: Option<String>,
    #[arg(long, global = true)]
    r_inner: Option<String>,
    #[arg(long, global = true)]
    r_outer: Option<String>,
    /// dsc, dsc-relaxed, random or motion-growth.
    #[arg(long, global = true)]
    strategy: Option<String>,
    #[arg(long, global = true)]
    epsilon: Option<String>,
    /// zero, harmonic[:a] or power:alpha.
    #[arg(long, global = true)]
    schedule: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    trials: Option<String>,
    /// Witness depth gap for dsc-relaxed.
    #[arg(long, global = true)]
    gap: Option<String>,
    #[arg(long, global = true)]
    margin: Option<String>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<String>,
    /// Vertex budget for a single ball.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Cap on automorphism group sizes.
    #[arg(long, global = true)]
    cap: Option<String>,
    /// Coloring JSON for verify, or to color the generate output.
    #[arg(long, global = true)]
    coloring: Option<PathBuf>,
}

impl Flags {
    fn into_config(self) -> Result<(RunConfig, Option<PathBuf>)> {
        let mut c = RunConfig::default();
        if let Ok(b) = std::env::var("SYMBREAK_BUDGET") {
            c.set("budget", &b).map_err(|e| Error::Config(format!("SYMBREAK_BUDGET: {e}")))?;
        }
        if let Some(path) = &self.config {
            c.merge_file(path)?;
        }
        let pairs = [
            ("family", self.family),
            ("root", self.root),
            ("radius", self.radius),
            ("r_pairs", self.r_pairs),
            ("r_inner", self.r_inner),
            ("r_outer", self.r_outer),
            ("strategy", self.strategy),
            ("epsilon", self.epsilon),
            ("schedule", self.schedule),
            ("seed", self.seed),
            ("trials", self.trials),
            ("gap", self.gap),
            ("margin", self.margin),
            ("out", self.out),
            ("budget", self.budget),
            ("cap", self.cap),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                c.set(k, &v)?;
            }
        }
        for p in &self.params {
            let (k, v) = p.split_once('=').ok_or_else(|| Error::Config(format!("--param expects k=v, got {p:?}")))?;
            c.set(&format!("param.{k}"), v)?;
        }
        c.validate()?;
        Ok((c, self.coloring))
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    DscFail,
    VerifyFail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = SystemTime::now();
    let clock = Instant::now();
    let name = command_name(&cli.command);
    let (config, coloring) = match cli.flags.into_config() {
        Ok(x) => x,
        Err(e) => {
            eprintln!("symbreak: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(b) = config.budget {
        set_vertex_budget(b);
    }
    set_search_cap(config.cap);
    if !matches!(cli.command, Command::Montecarlo) {
        // one thread keeps every other command sequential
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
    let result = match cli.command {
        Command::Generate => generate(&config, coloring.as_deref()),
        Command::CheckDsc => check(&config),
        Command::Color => color(&config),
        Command::Verify => verify(&config, coloring.as_deref()),
        Command::Montecarlo => montecarlo(&config),
    };
    let code = match &result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::DscFail) => EXIT_DSC_FAIL,
        Ok(Outcome::VerifyFail) => EXIT_VERIFY_FAIL,
        Err(e) => {
            eprintln!("symbreak: {e}");
            exit_code(e)
        }
    };
    if result.is_ok() {
        if let Err(e) = write_meta(&config, name, started, clock.elapsed().as_millis(), code) {
            eprintln!("symbreak: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Generate => "generate",
        Command::CheckDsc => "check-dsc",
        Command::Color => "color",
        Command::Verify => "verify",
        Command::Montecarlo => "montecarlo",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => EXIT_BUDGET,
        Error::WitnessExhausted { .. } | Error::AnchorNotFound { .. } | Error::Precondition(_) | Error::Structure(_) => {
            EXIT_DSC_FAIL
        }
        _ => EXIT_USAGE,
    }
}

fn unix_secs(t: SystemTime) -> u64 {
    t.duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Timestamps live here so the main outputs stay byte-identical across runs.
fn write_meta(c: &RunConfig, command: &str, started: SystemTime, elapsed_ms: u128, code: u8) -> Result<()> {
    let meta = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "started_unix": unix_secs(started),
        "finished_unix": unix_secs(SystemTime::now()),
        "elapsed_ms": elapsed_ms,
        "exit_code": code,
        "config": c,
    });
    write_out(c, "meta.json", serde_json::to_string_pretty(&meta)?)
}

fn write_out(c: &RunConfig, name: &str, mut contents: String) -> Result<()> {
    if !contents.ends_with('\n') {
        contents.push('\n');
    }
    write_atomic(c.out.join(name), contents.as_bytes())
}

fn load_coloring(path: &Path) -> Result<Coloring> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), source: e })?;
    Coloring::from_json(&text)
}

fn generate(c: &RunConfig, coloring: Option<&Path>) -> Result<Outcome> {
    let coloring = coloring.map(load_coloring).transpose()?;
    let g = match (&coloring, &c.family) {
        (Some(col), None) => col.graph().clone(),
        _ => c.build_graph()?,
    };
    let v = match (&coloring, &c.root) {
        (Some(col), None) => col.root.clone(),
        _ => c.root_in(&g)?,
    };
    let b = ball(&*g, &v, c.radius)?;
    write_out(c, "ball.dot", ball_to_dot(&b, coloring.as_ref()))?;
    write_out(c, "ball.json", ball_to_json(&b, coloring.as_ref())?)?;
    write_out(c, "growth.csv", growth_csv(&growth_profile(&*g, &v, c.radius)?)?)?;
    println!("{}: B_{v}({}) has {} vertices and {} edges", g.family(), c.radius, b.len(), b.edge_count());
    Ok(Outcome::Ok)
}

fn check(c: &RunConfig) -> Result<Outcome> {
    let g = c.build_graph()?;
    let v = c.root_in(&g)?;
    let report = check_dsc(&*g, &v, c.r_pairs, c.radius)?;
    write_out(c, "dsc.json", serde_json::to_string_pretty(&report)?)?;
    let failed: Vec<_> = report.failures().collect();
    println!(
        "{}: {} equidistant pairs within r_pairs={} of {v}, {} without a witness up to depth {}",
        g.family(),
        report.pairs.len(),
        c.r_pairs,
        failed.len(),
        c.radius
    );
    for p in failed.iter().take(10) {
        let why = if p.proven_failure { " (twins: fails at every radius)" } else { "" };
        println!("  FAIL {{{}, {}}} at depth {}{why}", p.u, p.w, p.depth);
    }
    Ok(if failed.is_empty() { Outcome::Ok } else { Outcome::DscFail })
}

fn color(c: &RunConfig) -> Result<Outcome> {
    let g = c.build_graph()?;
    let v = c.root_in(&g)?;
    let col = match c.strategy {
        Strategy::Dsc => dsc_coloring(&g, &v, c.r_pairs, c.radius)?,
        Strategy::DscRelaxed => dsc_coloring_relaxed(&g, &v, c.r_pairs, c.radius, c.gap)?,
        Strategy::Random => random_coloring(&g, &v, c.radius, &c.random_schedule()?)?,
        Strategy::MotionGrowth => motion_growth_coloring_with(&g, &v, c.epsilon, c.radius, c.margin)?,
        Strategy::Explicit => return Err(Error::Config("explicit colorings are read from files, not built".into())),
    };
    write_out(c, "coloring.json", col.to_json()?)?;
    let curve = density_profile(&col, &v, c.radius)?;
    write_out(c, "density.csv", density_csv(&curve)?)?;
    let last = curve.points.last().expect("density curve has n = 0");
    println!(
        "{}: {} coloring of B_{v}({}) with {} blue of {} ({:.3e})",
        g.family(),
        col.strategy,
        c.radius,
        last.blue_count,
        last.ball_count,
        last.ratio
    );
    Ok(Outcome::Ok)
}

fn verify(c: &RunConfig, coloring: Option<&Path>) -> Result<Outcome> {
    let path = coloring.ok_or_else(|| Error::Config("verify needs --coloring FILE".into()))?;
    let col = load_coloring(path)?;
    if let Some(f) = &c.family {
        let spec = c.family_spec()?;
        if spec.to_string() != col.family() {
            return Err(Error::Config(format!("family {f} does not match the coloring's {}", col.family())));
        }
    }
    let r_outer = c.r_outer.unwrap_or(col.radius);
    let opts = VerifyOptions { margin: c.margin, ..VerifyOptions::default() };
    let report = verify_distinguishing_with(&col, r_outer, c.r_inner, &opts)?;
    write_out(c, "verify.json", serde_json::to_string_pretty(&report)?)?;
    println!(
        "{}: {} at r_outer={} r_inner={} ({} route, {} vertices, {} blue, {} inner vertices moved)",
        col.family(),
        if report.pass { "PASS" } else { "FAIL" },
        r_outer,
        c.r_inner,
        report.route,
        report.ball_size,
        report.blue_in_ball,
        report.moved_inner.len()
    );
    Ok(if report.pass { Outcome::Ok } else { Outcome::VerifyFail })
}

fn montecarlo(c: &RunConfig) -> Result<Outcome> {
    let g = c.build_graph()?;
    let v = c.root_in(&g)?;
    let s = c.random_schedule()?;
    let report = monte_carlo_distinguishing(&g, &v, c.r_outer(), c.r_inner, &s, c.trials)?;
    write_out(c, "montecarlo.json", serde_json::to_string_pretty(&report)?)?;
    write_out(c, "montecarlo.csv", montecarlo_density_csv(&report)?)?;
    write_out(c, "trials.csv", montecarlo_trials_csv(&report)?)?;
    println!(
        "{}: {}/{} random colorings verified at r_outer={} r_inner={} (estimate {:.3})",
        g.family(),
        report.passes,
        report.trials,
        report.r_outer,
        report.r_inner,
        report.estimate
    );
    Ok(Outcome::Ok)
}
