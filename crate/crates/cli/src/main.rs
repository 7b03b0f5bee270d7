use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use pseries_cli::{builtin_scenario, parse_scenario, run, BUILTIN_SCENARIOS};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Build truncated filtered group algebras, check p-series laws and
/// classify the graded restricted Lie algebra, as described by a scenario.
///
/// Exits with 0 when every check passes, 1 when a build or check fails and
/// 2 on unusable input.
#[derive(Debug, Parser)]
#[command(name = "pseries", version)]
struct Args {
    /// Scenario file to run.
    #[arg(long, conflicts_with = "builtin", required_unless_present_any = ["builtin", "list"])]
    scenario: Option<PathBuf>,
    /// Run a bundled scenario by name.
    #[arg(long)]
    builtin: Option<String>,
    /// List the bundled scenarios and exit.
    #[arg(long)]
    list: bool,
    /// Override the scenario cutoff.
    #[arg(long)]
    cutoff: Option<u64>,
    /// Override the scenario prime.
    #[arg(long)]
    prime: Option<u32>,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for (name, _) in BUILTIN_SCENARIOS {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let (text, origin) = match (&args.scenario, &args.builtin) {
        (Some(path), _) => match fs::read_to_string(path) {
            Ok(t) => (t, path.display().to_string()),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        (None, Some(name)) => match builtin_scenario(name) {
            Some(t) => (t.to_string(), format!("builtin {name}")),
            None => {
                eprintln!("error: no bundled scenario named `{name}` (try --list)");
                return ExitCode::from(2);
            }
        },
        (None, None) => unreachable!("clap requires one of the sources"),
    };
    let mut scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {origin}: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(d) = args.cutoff {
        scenario.cutoff = d;
    }
    if let Some(p) = args.prime {
        scenario.prime = p;
    }
    if let Some(s) = args.seed {
        scenario.seed = s;
    }
    let report = match run(&scenario) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {origin}: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match args.format {
        Format::Text => report.to_string(),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
