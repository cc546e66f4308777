use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use robust_bai::complexity::ComplexityReport;
use robust_bai::environments::{preset, PresetOptions, SetupCGaps, SetupEMode, SetupId};
use robust_bai::harness::{
    emit_csv, load_config, monte_carlo, run_adversary, table1, write_csv, AdversaryKind, AdversarySpec,
    Table1Options, WORKERS_ENV,
};
use robust_bai::learners::LearnerKind;
use robust_bai::{BaiError, GapProfile, Result};

#[derive(Parser)]
#[command(name = "robust-bai", version, about = "Fixed-budget best-arm identification experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complexities of the eight presets next to the published values.
    Table1 {
        /// Round setup C's gaps to three decimals.
        #[arg(long)]
        rounded_gaps: bool,
    },
    /// All complexity measures of one instance.
    Complexity {
        #[arg(long, conflicts_with = "means", required_unless_present = "means")]
        setup: Option<SetupId>,
        /// Comma-separated arm means.
        #[arg(long)]
        means: Option<String>,
        /// Use setup E's printed means.
        #[arg(long)]
        printed_e: bool,
        #[arg(long)]
        rounded_gaps: bool,
    },
    /// Monte Carlo error rates from a config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Error rates on an adversarial construction built from a preset.
    Adversary {
        #[arg(long)]
        kind: AdversaryKind,
        #[arg(long)]
        setup: SetupId,
        /// Estimated from the learner's pull counts when omitted.
        #[arg(long)]
        bar_k: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        /// Deception blackout length (default n/2).
        #[arg(long)]
        blackout: Option<usize>,
        #[arg(long)]
        learner: LearnerKind,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'R')]
        repetitions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn workers(flag: Option<usize>) -> Result<usize> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        return v
            .trim()
            .parse()
            .map_err(|_| BaiError::Config(format!("{WORKERS_ENV} must be a positive integer, got `{v}`")));
    }
    Ok(flag.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Table1 { rounded_gaps } => {
            let opts = if rounded_gaps {
                Table1Options::rounded_gaps()
            } else {
                Table1Options::default()
            };
            writeln!(out, "setup,h_sr,h_bob,h_unif,published_h_sr,published_h_bob,published_h_unif,match")?;
            for row in table1(opts) {
                let [a, b, c] = row.computed;
                let [pa, pb, pc] = row.published;
                writeln!(out, "{},{a},{b},{c},{pa},{pb},{pc},{}", row.setup, row.all_match())?;
            }
        }
        Command::Complexity {
            setup,
            means,
            printed_e,
            rounded_gaps,
        } => {
            let opts = PresetOptions {
                setup_e: if printed_e { SetupEMode::Printed } else { SetupEMode::TableConsistent },
                setup_c: if rounded_gaps { SetupCGaps::Rounded3 } else { SetupCGaps::Exact },
            };
            let means = match (setup, means) {
                (Some(id), _) => preset(id, opts),
                (None, Some(text)) => text
                    .split(',')
                    .map(|m| {
                        m.trim()
                            .parse::<f64>()
                            .map_err(|e| BaiError::Config(format!("bad mean `{}`: {e}", m.trim())))
                    })
                    .collect::<Result<Vec<_>>>()?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let profile = GapProfile::from_means(&means)?;
            let r = ComplexityReport::of(&profile);
            writeln!(out, "K = {}", profile.num_arms())?;
            writeln!(out, "H1 = {:.4}", profile.h1())?;
            writeln!(out, "H_SR = {:.4}", r.h_sr)?;
            writeln!(out, "H_BOB = {:.4}", r.h_bob)?;
            writeln!(out, "H_UNIF = {:.4}", r.h_unif)?;
            writeln!(out, "H_P1 = {:.4}", r.h_p1)?;
            let alloc: Vec<String> = r.argmin_allocation.as_slice().iter().map(|a| format!("{a:.4}")).collect();
            writeln!(out, "allocation = {}", alloc.join(","))?;
        }
        Command::Simulate { config } => {
            let cfg = load_config(&config)?;
            let report = monte_carlo(&cfg)?;
            match &cfg.out {
                Some(path) => emit_csv(&report, path)?,
                None => write_csv(&report, &mut out)?,
            }
        }
        Command::Adversary {
            kind,
            setup,
            bar_k,
            i,
            blackout,
            learner,
            n,
            repetitions,
            seed,
            workers: w,
        } => {
            let spec = AdversarySpec {
                kind,
                setup: setup.to_string(),
                means: preset(setup, PresetOptions::default()),
                bar_k,
                i,
                blackout,
                learner,
                n,
                repetitions,
                master_seed: seed,
                workers: workers(w)?,
            };
            write_csv(&run_adversary(&spec)?, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
