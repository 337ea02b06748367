use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sbatch_core::io::bench::{bench_csv, run_bench, scaling_summary, Algorithm, BenchConfig};
use sbatch_core::io::generate::{gen_random_with, Profile};
use sbatch_core::io::verify::{run_verify, Variant, VerifyConfig};
use sbatch_core::io::{emit_instance, parse_instance};
use sbatch_core::oracle::{oracle_pareto, EnumerationLimits};
use sbatch_core::pareto::CSV_HEADER;
use sbatch_core::trace::{NoTrace, TraceWriter};
use sbatch_core::{solve, Instance};

/// Pareto frontier of makespan and maximum cost for serial-batch scheduling.
#[derive(Parser)]
#[command(name = "sbatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance file.
    Gen {
        /// Number of jobs.
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// paper, small, prec or paper-prec.
        #[arg(long, default_value = "paper")]
        profile: Profile,
        /// Batch capacity for bounded profiles.
        #[arg(long)]
        capacity: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the frontier of an instance file as CSV.
    Pareto {
        /// Instance file, or - for standard input.
        file: PathBuf,
        /// Print solver events to standard error.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Print the frontier found by exhaustive enumeration (small instances).
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the solvers with the oracle on generated instances.
    Verify {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// bounded or prec.
        #[arg(long, default_value = "bounded")]
        variant: Variant,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Time the solvers on generated instances.
    Bench {
        /// Comma-separated job counts.
        #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50,60,70,80,90,100")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated: main1, main1_naive, main2.
        #[arg(long, value_delimiter = ',', default_value = "main1")]
        algorithms: Vec<Algorithm>,
        /// Batch capacity instead of max(2, n / 5).
        #[arg(long)]
        capacity: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
            None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
        }
    }
}

enum Failure {
    /// Unreadable or invalid input; exit code 2.
    Input(String),
    Io(String),
    /// Checks ran and found problems; exit code 1.
    Mismatch,
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    parse_instance(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { n, seed, profile, capacity, out } => {
            if n == 0 {
                return Err(Failure::Input("--n must be at least 1".into()));
            }
            if capacity == Some(0) {
                return Err(Failure::Input("--capacity must be at least 1".into()));
            }
            out.write(&emit_instance(&gen_random_with(n, seed, profile, capacity)))
        }
        Command::Pareto { file, trace, out } => {
            let instance = load(&file)?;
            let front = if trace {
                let stderr = io::stderr();
                let mut writer = TraceWriter::new(stderr.lock());
                solve(&instance, &mut writer)
            } else {
                solve(&instance, &mut NoTrace)
            };
            out.write(&front.to_csv())
        }
        Command::Oracle { file, out } => {
            let instance = load(&file)?;
            let front = oracle_pareto(&instance, &EnumerationLimits::default())
                .map_err(|e| Failure::Input(e.to_string()))?;
            let mut csv = String::from(CSV_HEADER);
            csv.push('\n');
            for (c, f, s) in &front.points {
                csv.push_str(&format!("{c},{f},{}\n", s.encode_batches()));
            }
            eprintln!("{} feasible schedules, minimum maximum cost {}", front.schedules, front.min_f_max);
            out.write(&csv)
        }
        Command::Verify { count, min_n, max_n, seed, variant, threads } => {
            let limits = EnumerationLimits::default();
            let cap = match variant {
                Variant::Bounded => limits.max_n_bounded,
                Variant::Precedence => limits.max_n_precedence,
            };
            if min_n == 0 || min_n > max_n || max_n > cap {
                return Err(Failure::Input(format!("size range must satisfy 1 <= min-n <= max-n <= {cap}")));
            }
            let mut config = VerifyConfig::new(variant, count, min_n, max_n, seed);
            config.threads = threads;
            let report = run_verify(&config);
            print!("{report}");
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Bench { sizes, reps, seed, algorithms, capacity, out } => {
            if reps == 0 || sizes.contains(&0) || capacity == Some(0) {
                return Err(Failure::Input("--reps, --sizes and --capacity must be positive".into()));
            }
            let records = run_bench(&BenchConfig { sizes, repetitions: reps, seed, algorithms, capacity });
            out.write(&bench_csv(&records))?;
            eprint!("{}", scaling_summary(&records));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        Err(Failure::Mismatch) => ExitCode::FAILURE,
    }
}
