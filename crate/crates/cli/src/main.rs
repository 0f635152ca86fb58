//! `latstat`: order statistics on finite lattices and the inequalities they satisfy.
//!
//! Exit codes: 0 holds, 1 violated, 2 input error or failed hypothesis, 3 budget exceeded.

mod commands;
mod envelope;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use latstat_core::report::DEFAULT_BUDGET;
use latstat_core::reproduce::DEFAULT_SEED;
use latstat_core::semimod::Windows;

use commands::{CheckArgs, Outcome, Verdict};
use envelope::Envelope;
use input::{CliError, CliResult, EXIT_BUDGET, EXIT_HOLDS, EXIT_INPUT, EXIT_VIOLATED};

#[derive(Parser, Debug)]
#[command(
    name = "latstat",
    version,
    about = "Order statistics on finite lattices, generalized semimodularity and the resulting inequalities",
    after_help = "Exit codes: 0 holds, 1 violated, 2 input error or failed hypothesis, 3 budget exceeded.\n\
                  Reports are JSON on stdout unless --out is given."
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Maximum number of enumerated instances.
    #[arg(long, global = true, env = "LATSTAT_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// [plumbing] Lattice inspection.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Order statistics of a tuple by both defining formulas (meet of joins, join of meets).
    Ordstats {
        #[arg(long)]
        lattice: PathBuf,
        /// JSON array of element literals.
        #[arg(long)]
        tuple: String,
    },
    /// Generalized n- or (n:k)-semimodularity of a functional; with --k 2 the
    /// pairwise hypothesis of the main theorem.
    Check {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        functional: PathBuf,
        /// ge, le, eq
        #[arg(long, default_value = "ge")]
        relation: String,
        /// `n`, `relaxed`, or an integer k.
        #[arg(long, default_value = "n")]
        k: String,
        #[arg(long, value_enum, default_value_t = WindowsArg::Contiguous)]
        windows: WindowsArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Worked examples: the diamond counterexample and non-reversibility.
    #[command(subcommand)]
    Demo(DemoCmd),
    /// Product inequalities for integrals of order statistics.
    Corollary {
        #[arg(value_enum)]
        which: CorollaryArg,
        #[arg(long)]
        config: PathBuf,
    },
    /// Build a functional from a construction and emit its descriptor for `check`.
    Construct {
        #[arg(value_enum)]
        which: ConstructArg,
        #[arg(long)]
        params: PathBuf,
        /// Write the functional descriptor here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The FKG inequality, after checking its hypotheses.
    Fkg {
        #[arg(long)]
        config: PathBuf,
    },
    /// The n-function inequality for families, after checking its hypotheses.
    Ahke {
        #[arg(long)]
        config: PathBuf,
    },
    /// Randomized regression of the main theorem on generated functionals.
    Regression {
        /// Generator spec JSON.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// [plumbing] Run the acceptance criteria, one line each on stderr.
    Reproduce {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// [plumbing] Check that meet/join tables define a lattice.
    Validate {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// [plumbing] Check the distributive law.
    Distributive {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Embed a finite distributive lattice into a function lattice (Birkhoff).
    Birkhoff {
        #[arg(long)]
        lattice: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCmd {
    /// The diamond counterexample: (3:2)-submodular yet not 3-submodular.
    M3,
    /// The order-statistic family sums exceed the original by about N².
    Nonrev {
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "1/1000")]
        delta: String,
        #[arg(long, default_value = "1/10000")]
        eps: String,
        #[arg(long, default_value = "1")]
        r: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WindowsArg {
    Contiguous,
    AnySubset,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Exhaustive => "exhaustive",
            ModeArg::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CorollaryArg {
    /// Permanents of row- or column-sorted matrices.
    Perm,
    /// Elementary symmetric functions of integrals.
    Esym,
    /// Monotone transforms of the functions.
    Psi,
    /// Powers p and exponents r.
    Power,
    /// Suprema and infima.
    Supinf,
    /// Product measures of subset order statistics.
    Sets,
    /// Independent random variables.
    Indep,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructArg {
    Schur,
    Potential,
    Multiadd,
}

fn arg_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("named").get_name().to_string()
}

fn dispatch(cli: &Cli, budget: u64, lines: &mut Vec<String>) -> (String, CliResult<Outcome>) {
    match &cli.command {
        Command::Lattice(op) => match op {
            LatticeCmd::Validate { lattice } => ("lattice validate".into(), commands::lattice_validate(lattice)),
            LatticeCmd::Distributive { lattice } => {
                ("lattice distributive".into(), commands::lattice_distributive(lattice))
            }
            LatticeCmd::Birkhoff { lattice } => ("lattice birkhoff".into(), commands::lattice_birkhoff(lattice)),
        },
        Command::Ordstats { lattice, tuple } => ("ordstats".into(), commands::ordstats(lattice, tuple)),
        Command::Check {
            lattice,
            functional,
            relation,
            k,
            windows,
            mode,
            seed,
            samples,
        } => {
            let args = CheckArgs {
                lattice,
                functional,
                relation,
                k,
                windows: match windows {
                    WindowsArg::Contiguous => Windows::Contiguous,
                    WindowsArg::AnySubset => Windows::AnySubset,
                },
                mode: mode.name(),
                seed: *seed,
                samples: *samples,
                budget,
            };
            ("check".into(), commands::check(&args))
        }
        Command::Demo(DemoCmd::M3) => ("demo m3".into(), commands::demo_m3()),
        Command::Demo(DemoCmd::Nonrev { n, delta, eps, r }) => {
            ("demo nonrev".into(), commands::demo_nonrev(*n, delta, eps, r))
        }
        Command::Corollary { which, config } => {
            let name = arg_name(*which);
            (format!("corollary {name}"), commands::corollary(&name, config))
        }
        Command::Construct { which, params, emit } => {
            let name = arg_name(*which);
            let out = commands::construct(&name, params).and_then(|(o, d)| {
                if let Some(p) = emit {
                    write_text(p, &format!("{}\n", serde_json::to_string_pretty(&d).expect("descriptor serializes")))?;
                }
                Ok(o)
            });
            (format!("construct {name}"), out)
        }
        Command::Fkg { config } => ("fkg".into(), commands::fkg(config)),
        Command::Ahke { config } => ("ahke".into(), commands::ahke(config, budget)),
        Command::Regression {
            config,
            trials,
            seed,
            mode,
            samples,
        } => (
            "regression".into(),
            commands::regression(config, *trials, *seed, mode.name(), *samples, budget),
        ),
        Command::Reproduce { seed, only } => (
            "reproduce".into(),
            commands::reproduce_cmd(*seed, budget, only, cli.timing, lines),
        ),
    }
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("latstat: cannot start {jobs} workers: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let start = Instant::now();
    let mut lines = Vec::new();
    let (command, outcome) = dispatch(&cli, budget, &mut lines);
    for l in &lines {
        eprintln!("{l}");
    }

    let (envelope, code) = match outcome {
        Ok(o) => {
            let mut e = Envelope::new(&command, o.config);
            e.result = Some(o.result);
            let code = match o.verdict {
                Verdict::Holds => EXIT_HOLDS,
                Verdict::Violated => EXIT_VIOLATED,
                Verdict::Precondition => EXIT_INPUT,
                Verdict::BudgetExceeded => EXIT_BUDGET,
            };
            (e, code)
        }
        Err(err) => {
            eprintln!("latstat: {err}");
            let mut e = Envelope::new(&command, serde_json::json!({ "budget": budget }));
            e.error = Some(err.to_json());
            (e, err.exit_code())
        }
    };
    let mut envelope = envelope;
    if cli.timing {
        envelope.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = envelope.render();
    match &cli.out {
        Some(p) => {
            if let Err(e) = write_text(p, &text) {
                eprintln!("latstat: {e}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
