use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use magbill_cli::report::write_atomic;
use magbill_cli::{run, CliError, ExperimentConfig, ExperimentKind};

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "MAGBILL_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    Geodesic,
    Reflect,
    Billiard,
    String,
    Ellipse,
    VerifyAll,
    Density,
}

impl From<Experiment> for ExperimentKind {
    fn from(e: Experiment) -> Self {
        match e {
            Experiment::Geodesic => Self::Geodesic,
            Experiment::Reflect => Self::Reflect,
            Experiment::Billiard => Self::Billiard,
            Experiment::String => Self::String,
            Experiment::Ellipse => Self::Ellipse,
            Experiment::VerifyAll => Self::VerifyAll,
            Experiment::Density => Self::Density,
        }
    }
}

/// Run a magbill verification experiment and write its report and data.
#[derive(Debug, Parser)]
#[command(name = "magbill", version)]
struct Args {
    experiment: Experiment,
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the configuration and MAGBILL_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random probes; overrides the configuration.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    verbose: bool,
}

fn execute(args: &Args) -> Result<bool, CliError> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    let wanted = ExperimentKind::from(args.experiment);
    if cfg.experiment.kind() != wanted {
        return Err(CliError::Usage(format!(
            "command is `{}` but the configuration describes `{}`",
            wanted.name(),
            cfg.experiment.kind().name()
        )));
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let out_dir = args
        .out
        .clone()
        .or_else(|| cfg.output.dir.clone())
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("magbill-out"));

    let started = Instant::now();
    let artifacts = run(&cfg)?;
    std::fs::create_dir_all(&out_dir)?;
    for (name, bytes) in &artifacts.files {
        write_atomic(&out_dir.join(name), bytes)?;
    }
    let report_path = out_dir.join("report.json");
    write_atomic(&report_path, &artifacts.report.to_json())?;

    let checks = &artifacts.report.checks;
    if args.verbose {
        for c in checks {
            let residual = c.residual.map_or("n/a".to_string(), |r| format!("{r:.3e}"));
            eprintln!(
                "{:>4}  {}  residual {residual}  tolerance {:.1e}{}",
                if c.passed() { "pass" } else { "FAIL" },
                c.check,
                c.tolerance,
                c.note.as_ref().map_or(String::new(), |n| format!("  ({n})"))
            );
        }
        eprintln!("finished in {:.2} s", started.elapsed().as_secs_f64());
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!(
        "{}: {passed}/{} checks passed; report written to {}",
        wanted.name(),
        checks.len(),
        report_path.display()
    );
    Ok(artifacts.report.passed)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("magbill: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("magbill: {e}");
            ExitCode::from(1)
        }
    }
}
