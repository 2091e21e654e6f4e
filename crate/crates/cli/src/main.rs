use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torusbt::catalog;
use torusbt::manifest::{Command, Manifest};
use torusbt::runner::{run_manifest, write_report};

/// Birch-Tate predictions for algebraic tori over Q.
#[derive(Parser)]
#[command(name = "torusbt", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Predicted order of K^T(O_Q) from L(X, -1) and W^T(Q)
    Predict(Common),
    /// Artin L-value at -1, or the symbolic Ono identity
    Lvalue(Common),
    /// Order of W^T(Q) and of the global coinvariants
    Wgroup(Common),
    /// Flasque resolution of the lattice
    Resolve(Common),
    /// Motivic interpretation verdict
    Motivic(Common),
    /// Decomposition at the real place
    RealDecompose(Common),
    /// Point counts over finite fields
    LocalTable(Common),
    /// Compare predictions for `lattice` and `lattice2`
    CheckIsogeny(Common),
    /// Compare Z[G/H] predictions with the fixed-field G_m values
    CheckShapiro(Common),
    /// Run the commands listed in the manifest
    Run(Common),
    /// List the built-in fixtures
    Fixtures,
}

#[derive(Args)]
struct Common {
    /// Manifest file or built-in fixture name
    manifest: String,
    /// Write the JSON report here instead of stdout
    #[arg(long = "json", value_name = "FILE")]
    json: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<String>,
    #[arg(long, value_name = "N")]
    prime_cap: Option<u64>,
    #[arg(long, value_name = "K")]
    stab_cap: Option<u32>,
    #[arg(long)]
    debug_oracles: bool,
}

fn load(spec: &str) -> Result<String, String> {
    let path = Path::new(spec);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"));
    }
    if catalog::fixture_source(spec).is_some() {
        return Ok(format!("fixture = {spec:?}\n"));
    }
    Err(format!("{spec}: no such file or fixture"))
}

fn run(command: Option<Command>, args: Common) -> ExitCode {
    let text = match load(&args.manifest) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut m = match Manifest::parse(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{}: {e}", args.manifest);
            return ExitCode::from(2);
        }
    };
    if let Some(c) = command {
        m.commands = vec![c.name().to_string()];
    }
    if args.cache_dir.is_some() {
        m.options.cache_dir = args.cache_dir;
    }
    if args.prime_cap.is_some() {
        m.options.prime_cap = args.prime_cap;
    }
    if args.stab_cap.is_some() {
        m.options.stab_cap = args.stab_cap;
    }
    if args.debug_oracles {
        m.options.debug_oracles = Some(true);
    }
    let (report, _) = run_manifest(&m);
    match &args.json {
        Some(path) => {
            if let Err(e) = write_report(&report, path) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
            let mut out = String::new();
            for r in &report.results {
                match &r.error {
                    None => out += &format!("{}: ok\n", r.command),
                    Some(e) => out += &format!("{}: {} ({})\n", r.command, e.kind, e.message),
                }
            }
            emit(&out);
        }
        None => emit(&(report.to_json_pretty() + "\n")),
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// A closed pipe (`torusbt ... | head`) is not an error worth a panic.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Predict(a) => (Some(Command::Predict), a),
        Cmd::Lvalue(a) => (Some(Command::LValue), a),
        Cmd::Wgroup(a) => (Some(Command::WGroup), a),
        Cmd::Resolve(a) => (Some(Command::Resolve), a),
        Cmd::Motivic(a) => (Some(Command::Motivic), a),
        Cmd::RealDecompose(a) => (Some(Command::RealDecompose), a),
        Cmd::LocalTable(a) => (Some(Command::LocalTable), a),
        Cmd::CheckIsogeny(a) => (Some(Command::CheckIsogeny), a),
        Cmd::CheckShapiro(a) => (Some(Command::CheckShapiro), a),
        Cmd::Run(a) => (None, a),
        Cmd::Fixtures => {
            emit(&catalog::fixture_names().map(|n| format!("{n}\n")).collect::<String>());
            return ExitCode::SUCCESS;
        }
    };
    run(command, args)
}
