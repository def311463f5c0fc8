use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use diagram_periods::cli::{run_text, Options, COMMANDS, EXIT_FAULT};

/// Exact checks on diagram representations, period spaces, torsors and simplicial complexes.
///
/// Reads one JSON document (from FILE, or standard input when FILE is `-`) and
/// prints a JSON report. Exit status: 0 success, 1 false verdict, 2 input fault.
/// Set DIAGRAM_PERIODS_THREADS to bound the worker threads.
#[derive(Parser, Debug)]
#[command(name = "diagram-periods", version)]
struct Args {
    /// One of: validate, endo, coalgebra, bialgebra, localize, hom, periods, psi-check,
    /// torsor-check, matrix-torsor, rigidity, monoid-group, cohomology, cech, filtration, fixture.
    command: String,
    file: PathBuf,
    /// Vertices of the finite subdiagram (default: all).
    #[arg(long, value_delimiter = ',')]
    vertices: Option<Vec<String>>,
    /// Smaller vertex set for `bialgebra` and `localize`.
    #[arg(long, value_delimiter = ',')]
    small: Option<Vec<String>>,
    /// Larger vertex set, containing all products of the smaller one.
    #[arg(long, value_delimiter = ',')]
    large: Option<Vec<String>>,
    /// Vertex set containing triple products, for coassociativity.
    #[arg(long, value_delimiter = ',')]
    chain: Option<Vec<String>>,
    /// Vertex to localize at.
    #[arg(long)]
    f0: Option<String>,
    /// Truncation bound N for `localize`.
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Degree for the good-pair test of `cohomology`.
    #[arg(long)]
    degree: Option<usize>,
    /// Largest monoid `monoid-group` will enumerate.
    #[arg(long)]
    cap: Option<usize>,
    /// Use the sign (-1)^{|f||γ|} in the right-factor axiom.
    #[arg(long)]
    proof_sign_rule: bool,
    /// Pretty-print the report.
    #[arg(long)]
    pretty: bool,
}

fn threads() -> Result<(), String> {
    let Ok(v) = std::env::var("DIAGRAM_PERIODS_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("DIAGRAM_PERIODS_THREADS={v:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = threads() {
        eprintln!("{e}");
        return ExitCode::from(EXIT_FAULT as u8);
    }
    if !COMMANDS.contains(&args.command.as_str()) {
        eprintln!("unknown command {:?}; expected one of {}", args.command, COMMANDS.join(", "));
        return ExitCode::from(EXIT_FAULT as u8);
    }
    let text = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", args.file.display());
            return ExitCode::from(EXIT_FAULT as u8);
        }
    };
    let opts = Options {
        vertices: args.vertices,
        small: args.small,
        large: args.large,
        chain: args.chain,
        f0: args.f0,
        bound: args.bound,
        samples: args.samples,
        seed: args.seed,
        degree: args.degree,
        cap: args.cap,
        proof_sign_rule: args.proof_sign_rule,
    };
    let (code, report) = run_text(&args.command, &text, &opts);
    let out = if args.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
    let out = out.expect("reports serialize");
    if code == EXIT_FAULT {
        eprintln!("{out}");
    } else {
        println!("{out}");
    }
    ExitCode::from(code as u8)
}
