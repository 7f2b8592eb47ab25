use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sl2_reflect::cli::{self, Config, Samples, Suite, TableKind, TransformKind};
use sl2_reflect::{Error, Result};

/// Reflection operator, eigenfunctions and half-plane diagrams.
#[derive(Parser)]
#[command(name = "reflect", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

/// Settings shared by every subcommand; flags override the config file.
#[derive(Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Spin, above 1/2.
    #[arg(long, global = true)]
    s: Option<f64>,
    /// Boundary parameter g = 1/2 + alpha/beta.
    #[arg(long, global = true)]
    g: Option<f64>,
    /// Length scale.
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Comma-separated lambda grid.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    lambda_grid: Option<Vec<f64>>,
    /// Seed for sampled test points.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    angular_nodes: Option<usize>,
    #[arg(long, global = true)]
    radial_panels: Option<usize>,
    #[arg(long, global = true)]
    tol_2d: Option<f64>,
    #[arg(long, global = true)]
    tol_4d: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: specfun, algebra, reflection, spectral, diagrams or all.
    Verify {
        suite: String,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate an eigenfunction on points read from a JSON list of [re, im].
    Eigenfn {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long)]
        zgrid: PathBuf,
    },
    /// Apply T, J, U or Udag to sampled input.
    Transform {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated evaluation points; complex for Udag.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Write a CSV table: mu, psi, completeness or orthogonality.
    Table {
        #[arg(long)]
        what: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite or evaluate a diagram.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
}

#[derive(Subcommand)]
enum DiagramOp {
    /// Apply the chain rule or the Euler transformation at one vertex.
    Rewrite {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        vertex: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric value, e.g. `--assign s=1,g=1,x=0.3 --points z1=2i`.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "")]
        assign: String,
        #[arg(long, default_value = "")]
        points: String,
    },
}

fn config(c: &Common) -> Result<Config> {
    let mut cfg = match &c.config {
        Some(p) => Config::read(p)?,
        None => Config::default(),
    };
    if let Some(v) = c.s {
        cfg.params.s = v;
    }
    if let Some(v) = c.g {
        cfg.params.g = v;
    }
    if let Some(v) = c.beta {
        cfg.params.beta = v;
    }
    if let Some(v) = &c.lambda_grid {
        cfg.lambda_grid = v.clone();
    }
    if let Some(v) = c.seed {
        cfg.seed = v;
    }
    if let Some(v) = c.angular_nodes {
        cfg.grids.angular_nodes = v;
    }
    if let Some(v) = c.radial_panels {
        cfg.grids.radial_panels = v;
    }
    if let Some(v) = c.tol_2d {
        cfg.tolerances.tol_2d = v;
    }
    if let Some(v) = c.tol_4d {
        cfg.tolerances.tol_4d = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = config(&cli.common)?;
    match cli.cmd {
        Command::Verify { suite, json, out } => {
            let report = cli::run_verify(suite.parse::<Suite>()?, &cfg)?;
            if let Some(p) = out {
                std::fs::write(p, report.to_json())?;
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            return Ok(if report.passed() { cli::EXIT_PASS } else { cli::EXIT_FAIL });
        }
        Command::Eigenfn { lambda, zgrid } => {
            cli::eigenfn(&cfg.spin_params()?, lambda, &cli::read_points(&zgrid)?, std::io::stdout().lock())?;
        }
        Command::Transform { kind, input, at } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Error::Config(format!("{}: {e}", input.display())))?;
            let at = at.iter().map(|t| cli::parse_complex(t)).collect::<Result<Vec<_>>>()?;
            let kind = kind.parse::<TransformKind>()?;
            cli::run_transform(kind, &Samples::from_json(&text)?, &at, &cfg, std::io::stdout().lock())?;
        }
        Command::Table { what, out } => {
            cli::emit_table(what.parse::<TableKind>()?, &cfg, output(&out)?)?;
        }
        Command::Diagram { op } => match op {
            DiagramOp::Rewrite { rule, vertex, input, out } => {
                let (d, step) = cli::diagram_rewrite(&cli::read_diagram(&input)?, &rule, &vertex)?;
                let mut w = output(&out)?;
                writeln!(w, "{}", d.to_json()?)?;
                eprintln!("{:?} at '{}': coefficient {}", step.rule, step.vertex, step.coefficient_delta);
            }
            DiagramOp::Eval { input, assign, points } => {
                let v = cli::diagram_eval(&cli::read_diagram(&input)?, &assign, &points, &cfg)?;
                println!("{}", serde_json::json!({"re": v.re, "im": v.im}));
            }
        },
    }
    Ok(cli::EXIT_PASS)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("REFLECT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // the pool can only be configured once; a second attempt is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e))
        }
    }
}
