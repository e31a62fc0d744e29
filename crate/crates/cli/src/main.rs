mod methods;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use multiflower::cuts::separate_extended_flower;
use multiflower::lp::{brute_force_optimum, relaxation_bound, CutMode, RelaxOptions};
use multiflower::rmc::{build_rmc, rmc_projection_system};
use multiflower::{generate_random, FractionalPoint, LinearInequality, PolynomialInstance, Strategy};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::methods::{parse_method, read_partition_map, relax_method};
use crate::report::{CompareReport, MethodRow};

#[derive(Parser)]
#[command(name = "multiflower", version, about = "LP relaxations of binary polynomial optimization problems")]
struct Cli {
    /// Log to stderr; repeat for more detail.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CutModeArg {
    Auto,
    Enumerate,
    Separate,
}

impl From<CutModeArg> for CutMode {
    fn from(m: CutModeArg) -> Self {
        match m {
            CutModeArg::Auto => CutMode::Auto,
            CutModeArg::Enumerate => CutMode::Enumerate,
            CutModeArg::Separate => CutMode::Separate,
        }
    }
}

#[derive(clap::Args)]
struct LoopArgs {
    /// Minimum violation for a cut to count as violated.
    #[arg(long, env = "MULTIFLOWER_TOL", default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_rounds: usize,
    /// How flower-type cuts enter the LP.
    #[arg(long, value_enum, default_value = "auto")]
    cut_mode: CutModeArg,
}

impl LoopArgs {
    fn options(&self) -> anyhow::Result<RelaxOptions> {
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            bail!("tolerance must be a non-negative number, got {}", self.tol);
        }
        Ok(RelaxOptions { tol: self.tol, max_rounds: self.max_rounds, cut_mode: self.cut_mode.into(), ..Default::default() })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bound one relaxation.
    Relax {
        instance: PathBuf,
        /// std, flower, eflower or rmc.
        #[arg(long)]
        method: String,
        /// leftmost, balanced or minsize (with --method rmc).
        #[arg(long)]
        rmc_strategy: Option<String>,
        /// Explicit partition map (with --method rmc).
        #[arg(long)]
        rmc_file: Option<PathBuf>,
        #[command(flatten)]
        cuts: LoopArgs,
        /// Write a JSON report with model statistics.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Bound several relaxations side by side.
    Compare {
        instance: PathBuf,
        /// Comma-separated: std, flower, eflower, rmc:leftmost, rmc:balanced, rmc:minsize, rmc:file=<path>.
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<String>,
        /// Also compute the exact optimum by enumeration.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        cuts: LoopArgs,
    },
    /// Print the extended flower inequalities a point violates, one JSON object per line.
    Separate {
        instance: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long, env = "MULTIFLOWER_TOL", default_value_t = 1e-6)]
        tol: f64,
    },
    /// Print the projection of an RMC onto the original variables.
    Project {
        instance: PathBuf,
        #[arg(long)]
        rmc_file: Option<PathBuf>,
        #[arg(long, conflicts_with = "rmc_file")]
        rmc_strategy: Option<String>,
    },
}

/// A failure of the numerical engine rather than of the input.
#[derive(Debug)]
struct SolverFailure(String);

impl std::fmt::Display for SolverFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SolverFailure {}

fn exit_code(e: &anyhow::Error) -> u8 {
    let numerical = e.chain().any(|c| {
        c.downcast_ref::<SolverFailure>().is_some()
            || c.downcast_ref::<multiflower::Error>().is_some_and(|e| e.is_numerical())
    });
    if numerical {
        2
    } else {
        1
    }
}

fn read_instance(path: &Path) -> anyhow::Result<PolynomialInstance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PolynomialInstance::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn instance_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn inequality_json(i: &LinearInequality) -> Value {
    let coefficients: Vec<Value> =
        i.coeffs().iter().map(|(v, c)| json!({"var": v.vertices().as_slice(), "coef": c})).collect();
    json!({"text": i.to_string(), "coefficients": coefficients, "rhs": i.rhs()})
}

fn cmd_relax(
    instance: &Path,
    method: &str,
    strategy: Option<&str>,
    file: Option<&Path>,
    cuts: &LoopArgs,
    report: Option<&Path>,
) -> anyhow::Result<()> {
    let inst = read_instance(instance)?;
    let spec = relax_method(method, strategy, file)?;
    let opts = cuts.options()?;
    let r = relaxation_bound(&inst, &spec.method, &opts)?;
    if !r.converged {
        log::warn!("round limit reached; the bound is valid but may not be final");
    }
    println!("bound={:.6}", r.bound);
    if let Some(path) = report {
        let doc = json!({
            "instance": instance_id(instance),
            "method": spec.label,
            "bound": r.bound,
            "n_vars": r.n_vars,
            "n_ineqs": r.n_ineqs,
            "rounds": r.rounds,
            "cuts_added": r.cuts_added,
            "converged": r.converged,
        });
        write_out(Some(path), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    }
    Ok(())
}

fn cmd_compare(
    instance: &Path,
    methods: &[String],
    exact: bool,
    json_path: Option<&Path>,
    csv_path: Option<&Path>,
    cuts: &LoopArgs,
) -> anyhow::Result<()> {
    let inst = read_instance(instance)?;
    let opts = cuts.options()?;
    let specs = methods.iter().map(|m| parse_method(m)).collect::<anyhow::Result<Vec<_>>>()?;
    let mut labels: Vec<&str> = specs.iter().map(|s| s.label.as_str()).collect();
    labels.sort();
    if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
        bail!("method {} given twice", w[0]);
    }
    let rows = specs
        .par_iter()
        .map(|s| {
            let start = Instant::now();
            let r = relaxation_bound(&inst, &s.method, &opts).with_context(|| format!("method {}", s.label))?;
            Ok(MethodRow {
                method: s.label.clone(),
                bound: r.bound,
                n_vars: r.n_vars,
                n_ineqs: r.n_ineqs,
                rounds: r.rounds,
                ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let exact = if exact { Some(brute_force_optimum(&inst)?.value) } else { None };
    let report = CompareReport::new(instance_id(instance), rows, exact, opts.tol.max(1e-6))
        .map_err(|e| SolverFailure(e.to_string()))?;
    print!("{}", report.table());
    if let Some(p) = json_path {
        write_out(Some(p), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    if let Some(p) = csv_path {
        write_out(Some(p), &report.csv())?;
    }
    Ok(())
}

fn cmd_separate(instance: &Path, point: &Path, tol: f64) -> anyhow::Result<()> {
    let h = read_instance(instance)?.to_hypergraph().hypergraph;
    let text = std::fs::read_to_string(point).with_context(|| format!("reading {}", point.display()))?;
    let p = FractionalPoint::parse(&text).with_context(|| format!("parsing {}", point.display()))?;
    p.require_complete(&h)?;
    let mut out = String::new();
    for c in separate_extended_flower(&h, &p, tol)? {
        let mut v = inequality_json(&c.inequality);
        v["tag"] = json!(c.inequality.tag);
        if let Some(multiflower::cuts::Meta::Flower { center, neighbors }) = &c.inequality.meta {
            v["center"] = json!(center);
            v["neighbors"] = json!(neighbors);
        }
        v["violation"] = json!(c.violation);
        out.push_str(&serde_json::to_string(&v)?);
        out.push('\n');
    }
    write_out(None, &out)
}

fn cmd_project(instance: &Path, file: Option<&Path>, strategy: Option<&str>) -> anyhow::Result<()> {
    let h = read_instance(instance)?.to_hypergraph().hypergraph;
    let strategy = match (file, strategy) {
        (Some(f), _) => Strategy::Explicit(read_partition_map(f)?),
        (None, None | Some("leftmost")) => Strategy::Leftmost,
        (None, Some("balanced")) => Strategy::Balanced,
        (None, Some(s)) => bail!("unknown RMC strategy {s:?} (expected leftmost or balanced)"),
    };
    let r = build_rmc(&h, &strategy)?;
    let rows: Vec<Value> = rmc_projection_system(&r)?
        .iter()
        .map(|i| {
            let mut v = inequality_json(i);
            v["provenance"] = json!(i.meta);
            v
        })
        .collect();
    let artificial: Vec<_> = r.artificial().iter().collect();
    let doc = json!({"instance": instance_id(instance), "artificial": artificial, "inequalities": rows});
    write_out(None, &(serde_json::to_string_pretty(&doc)? + "\n"))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen { n, edges, rank, seed, output } => {
            let inst = generate_random(n, edges, rank, seed)?;
            write_out(output.as_deref(), &inst.render())
        }
        Command::Relax { instance, method, rmc_strategy, rmc_file, cuts, report } => {
            cmd_relax(&instance, &method, rmc_strategy.as_deref(), rmc_file.as_deref(), &cuts, report.as_deref())
        }
        Command::Compare { instance, methods, exact, json, csv, cuts } => {
            cmd_compare(&instance, &methods, exact, json.as_deref(), csv.as_deref(), &cuts)
        }
        Command::Separate { instance, point, tol } => cmd_separate(&instance, &point, tol),
        Command::Project { instance, rmc_file, rmc_strategy } => {
            cmd_project(&instance, rmc_file.as_deref(), rmc_strategy.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
