use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heckelab::gram::{gram_csv, GramVariant};
use heckelab::runner::{run_suite, RunConfig, Suite, SuiteReport};
use heckelab::scalar::Mode;
use heckelab::seminormal::{GammaSeed, SystemKind};
use heckelab::Error;

/// Exact verification of seminormal forms, deformed KLR presentations,
/// Gram determinants and graded bases of cyclotomic Hecke algebras.
#[derive(Parser, Debug)]
#[command(name = "heckelab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check one family of relations.
    Verify {
        #[arg(value_enum)]
        what: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Gram determinants of every cell module.
    Gram {
        #[arg(long, value_enum, default_value = "murphy-generic")]
        variant: VariantArg,
        /// Also write a CSV table here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// The psi-basis with its graded checks.
    PsiBasis {
        #[command(flatten)]
        common: Common,
    },
    /// The distinguished B-basis and its homogeneous leading parts.
    BBasis {
        #[command(flatten)]
        common: Common,
    },
    /// Several suites in one run (all that fit the mode by default).
    Suite {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Hecke,
    Deformation,
    Klr,
    Nilpotency,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    MurphyGeneric,
    DegenerateT1,
    PsiGraded,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Quantum characteristic; the prime in degenerate-p mode.
    #[arg(long)]
    e: Option<u32>,
    /// Charge, e.g. `5,0`; defaults to zeros.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    charge: Option<Vec<i64>>,
    #[arg(long, default_value = "cyclo")]
    mode: String,
    /// murphy | rational | diamond | linear-quiver
    #[arg(long)]
    system: Option<String>,
    /// murphy | klr
    #[arg(long)]
    gamma: Option<String>,
    /// Comma-separated suites for `suite`.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "HECKELAB_JOBS")]
    jobs: Option<usize>,
}

impl Common {
    fn config(&self, suites: Vec<Suite>) -> Result<RunConfig, Error> {
        let mode: Mode = self.mode.parse()?;
        let system = self.system.as_deref().map(str::parse::<SystemKind>).transpose()?;
        let gamma = self.gamma.as_deref().map(str::parse::<GammaSeed>).transpose()?;
        let mut cfg = RunConfig::resolve(self.n, self.level, self.e, self.charge.clone(), mode, system, gamma, suites)?;
        if self.jobs == Some(0) {
            return Err(Error::Config("--jobs must be positive".into()));
        }
        cfg.jobs = self.jobs;
        Ok(cfg)
    }
}

fn emit(report: &SuiteReport, out: &Option<PathBuf>) -> Result<(), String> {
    let json = report.to_json();
    match out {
        Some(p) => {
            std::fs::write(p, json + "\n").map_err(|e| format!("{}: {e}", p.display()))?;
            let text: String = report.summary().into_iter().map(|l| l + "\n").collect();
            print_stdout(&text)
        }
        None => print_stdout(&(json + "\n")),
    }
}

/// A closed pipe downstream is not an error.
fn print_stdout(text: &str) -> Result<(), String> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<bool, (u8, String)> {
    let config_err = |e: Error| (2u8, e.to_string());
    let (cfg, common, csv) = match &cli.cmd {
        Cmd::Verify { what, common } => {
            let s = match what {
                Target::Hecke => Suite::Hecke,
                Target::Deformation => Suite::Deformation,
                Target::Klr => Suite::Klr,
                Target::Nilpotency => Suite::Nilpotency,
            };
            (common.config(vec![s]).map_err(config_err)?, common, None)
        }
        Cmd::Gram { variant, csv, common } => {
            let mut cfg = common.config(vec![Suite::Gram]).map_err(config_err)?;
            cfg.variant = match variant {
                VariantArg::MurphyGeneric => GramVariant::MurphyGeneric,
                VariantArg::DegenerateT1 => GramVariant::DegenerateT1,
                VariantArg::PsiGraded => GramVariant::PsiGraded,
            };
            (cfg, common, csv.clone())
        }
        Cmd::PsiBasis { common } => {
            let mut cfg = common.config(vec![Suite::Psi]).map_err(config_err)?;
            cfg.dump_elements = true;
            (cfg, common, None)
        }
        Cmd::BBasis { common } => {
            let mut cfg = common.config(vec![Suite::BBasis]).map_err(config_err)?;
            cfg.dump_elements = true;
            (cfg, common, None)
        }
        Cmd::Suite { common } => {
            let suites = common.suite.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>, _>>().map_err(config_err)?;
            (common.config(suites).map_err(config_err)?, common, None)
        }
    };
    let report = run_suite(&cfg).map_err(config_err)?;
    if let Some(path) = csv {
        let rows: Vec<_> = report.suites.iter().flat_map(|s| s.gram.iter().cloned()).collect();
        std::fs::write(&path, gram_csv(&rows)).map_err(|e| (2, format!("{}: {e}", path.display())))?;
    }
    emit(&report, &common.out).map_err(|e| (2, e))?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err((code, msg)) => {
            eprintln!("heckelab: {msg}");
            ExitCode::from(code)
        }
    }
}
