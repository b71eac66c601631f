//! `ngonal` — braid monodromy and Alexander polynomials of completely
//! reducible n-gonal curves from the command line.

use clap::{Parser, Subcommand};
use ngonal_cli::{alexander_json, fibers_json, monodromy_json, random_trigonal_curve, to_json_string};
use ngonal_core::curve::CurveError;
use ngonal_core::numpoly::{RootError, DEFAULT_ROOT_TOL};
use ngonal_core::rbd::{Diagram, DEFAULT_DEDUP_TOL};
use ngonal_core::tracker::{global_monodromy, TrackError};
use ngonal_core::{factored_display, AlexanderError, Curve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "ngonal",
    about = "Braid monodromy and Alexander polynomials of completely reducible n-gonal curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate the singular fibers of a curve
    Fibers {
        /// Curve, e.g. "(y-x^2)(y-x-1)(y+1)" or "y1=x^2; y2=x+1; y3=-1"
        curve: String,
        /// Root-finding tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Compute the braid monodromy around every singular fiber and infinity
    Monodromy {
        curve: String,
        /// Initial step size (default: shortest loop edge / 16)
        #[arg(long)]
        eps0: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
        /// Also write the diagram and loops as SVG to this path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compute the Alexander polynomial of the curve complement
    Alexander {
        curve: String,
        #[arg(long)]
        eps0: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Render the rectangular braid diagram (grid, fibers, loops)
    Diagram {
        curve: String,
        #[arg(long)]
        tol: Option<f64>,
        /// Write SVG here; without this flag the SVG goes to stdout
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Emit the diagram as JSON instead of SVG
        #[arg(long)]
        json: bool,
    },
    /// Time the monodromy pipeline on random trigonal curves
    Bench {
        /// Total degree of each random curve (one degree d-2 component, two lines)
        #[arg(long)]
        degree: usize,
        /// Number of curves
        #[arg(long)]
        count: usize,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Parse(String),
    Numerical(String),
    NotDivisible(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Numerical(_) => 2,
            Failure::NotDivisible(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Numerical(_) => "numerical",
            Failure::NotDivisible(_) => "not-divisible",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Numerical(m) | Failure::NotDivisible(m) => m,
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Failure {
        match e {
            CurveError::Roots(RootError::NoConvergence { .. }) => Failure::Numerical(e.to_string()),
            CurveError::Roots(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<TrackError> for Failure {
    fn from(e: TrackError) -> Failure {
        match e {
            TrackError::Curve(inner) => inner.into(),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

impl From<AlexanderError> for Failure {
    fn from(e: AlexanderError) -> Failure {
        match e {
            AlexanderError::NotDivisible => Failure::NotDivisible(e.to_string()),
            AlexanderError::Track(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Parse(format!("io: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!(
                "{}",
                to_json_string(&serde_json::json!({
                    "error": f.kind(),
                    "message": f.message(),
                }))
            );
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Fibers { curve, tol, json } => {
            let curve = Curve::parse(&curve)?;
            let fibers = curve.singular_fibers(tol.unwrap_or(DEFAULT_ROOT_TOL))?;
            if json {
                println!("{}", to_json_string(&fibers_json(&curve, &fibers)));
            } else {
                for f in &fibers {
                    let pairs: Vec<String> = f
                        .pairs
                        .iter()
                        .map(|&(i, j, m)| format!("(y{},y{})x{m}", i + 1, j + 1))
                        .collect();
                    println!("x = {}  {}", f.x, pairs.join(" "));
                }
            }
            Ok(())
        }
        Command::Monodromy { curve, eps0, tol, json, svg } => {
            let curve = Curve::parse(&curve)?;
            let tol = tol.unwrap_or(DEFAULT_ROOT_TOL);
            let fibers = curve.singular_fibers(tol)?;
            let results = global_monodromy(&curve, eps0, tol)?;
            if let Some(path) = svg {
                let locations: Vec<_> = fibers.iter().map(|f| f.x).collect();
                let diagram = Diagram::build(&locations, DEFAULT_DEDUP_TOL)
                    .map_err(TrackError::from)?;
                std::fs::write(path, diagram.to_svg())?;
            }
            if json {
                println!("{}", to_json_string(&monodromy_json(&curve, &fibers, &results)));
            } else {
                for r in &results {
                    match r.fiber {
                        Some(x) => println!("fiber {x}: {}", r.word),
                        None => println!("infinity: {}", r.word),
                    }
                }
            }
            Ok(())
        }
        Command::Alexander { curve, eps0, tol, json } => {
            let curve = Curve::parse(&curve)?;
            let tol = tol.unwrap_or(DEFAULT_ROOT_TOL);
            let fibers = curve.singular_fibers(tol)?;
            let results = global_monodromy(&curve, eps0, tol)?;
            let words: Vec<_> = results.iter().map(|r| r.word.clone()).collect();
            let delta = ngonal_core::alexander::alexander_from_words(&words)?;
            if json {
                println!(
                    "{}",
                    to_json_string(&alexander_json(&curve, &fibers, &results, &delta))
                );
            } else {
                println!("{}", factored_display(&delta));
                println!("= {delta}");
            }
            Ok(())
        }
        Command::Diagram { curve, tol, svg, json } => {
            let curve = Curve::parse(&curve)?;
            let fibers = curve.singular_fibers(tol.unwrap_or(DEFAULT_ROOT_TOL))?;
            let locations: Vec<_> = fibers.iter().map(|f| f.x).collect();
            let diagram =
                Diagram::build(&locations, DEFAULT_DEDUP_TOL).map_err(TrackError::from)?;
            if json {
                println!("{}", to_json_string(&diagram.to_json()));
            } else {
                let rendered = diagram.to_svg();
                match svg {
                    Some(path) => std::fs::write(path, rendered)?,
                    None => println!("{rendered}"),
                }
            }
            Ok(())
        }
        Command::Bench { degree, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut times_ms = Vec::with_capacity(count);
            for _ in 0..count {
                let curve = random_trigonal_curve(&mut rng, degree);
                let start = Instant::now();
                ngonal_core::tracker::global_monodromy_default(&curve)?;
                times_ms.push(start.elapsed().as_secs_f64() * 1e3);
            }
            let mean = times_ms.iter().sum::<f64>() / times_ms.len().max(1) as f64;
            let max = times_ms.iter().cloned().fold(0.0f64, f64::max);
            println!("degree,mean_ms,max_ms");
            println!("{degree},{mean:.3},{max:.3}");
            Ok(())
        }
    }
}
