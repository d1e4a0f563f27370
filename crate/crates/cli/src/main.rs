use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use displace_cli::runner::{run_scenario, Settings, DEFAULT_BUDGET};
use displace_cli::scenario::ScenarioSpec;
use displace_cli::suites;

#[derive(Parser)]
#[command(name = "displace", version, about = "Verify displacement-property witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named suite or a scenario file.
    Run(RunArgs),
    /// List the built-in suites.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    /// Built-in suite name (see `displace list`).
    #[arg(long, conflicts_with = "scenario", required_unless_present = "scenario")]
    suite: Option<String>,
    /// Scenario file in the JSON format of schema/scenario.schema.json.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Seed for sampled checks; overrides the scenario's own seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Replaces every p_max in the scenario.
    #[arg(long)]
    p_max: Option<u64>,
    /// Largest enumeration a check may perform.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    match cli.command {
        Command::List => {
            print!("{}", suites::listing());
            ExitCode::SUCCESS
        }
        Command::Run(args) => run(args),
    }
}

fn run(args: RunArgs) -> ExitCode {
    let fail = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(USAGE_ERROR)
    };
    let spec = match (&args.suite, &args.scenario) {
        (Some(name), _) => match suites::load(name) {
            Some(Ok(spec)) => spec,
            Some(Err(e)) => return fail(format!("suite {name}: {e}")),
            None => {
                return fail(format!(
                    "unknown suite {name:?}; available: {}",
                    suites::names().join(", ")
                ))
            }
        },
        (None, Some(path)) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            match ScenarioSpec::parse(&text) {
                Ok(spec) => spec,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            }
        }
        (None, None) => return fail("one of --suite or --scenario is required".into()),
    };
    if args.jobs == 0 {
        return fail("--jobs must be at least 1".into());
    }
    let settings = Settings {
        seed: args.seed.unwrap_or(spec.seed),
        p_max: args.p_max,
        budget: args.budget,
        jobs: args.jobs,
    };
    let started = std::time::Instant::now();
    let report = match run_scenario(&spec, &settings) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    eprintln!(
        "{}: {}/{} expectations met in {:.2?}",
        report.suite,
        report.totals.met,
        report.totals.checks,
        started.elapsed()
    );
    let body = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return fail(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
