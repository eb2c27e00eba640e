use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwa_cli::output::{self, Format};
use gwa_cli::{parse_sweep, report_status, run, run_sweep, CliError, CommandKind, JobConfig, JobOutcome, SourceChoice};
use gwa_core::complex::Variant;

/// Hochschild (co)homology of generalized Weyl algebras A(k[h], a, sigma),
/// sigma(h) = h - h0.
#[derive(Parser, Debug)]
#[command(name = "gwa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV rows.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hochschild homology HH_*(A).
    Hh {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = SourceArg::Formula)]
        source: SourceArg,
    },
    /// Hochschild cohomology HH^*(A).
    Coh {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = SourceArg::Formula)]
        source: SourceArg,
    },
    /// (Co)homology with coefficients in Ag for g: x -> w x, w = zeta_m^k.
    Twisted {
        #[command(flatten)]
        job: JobArgs,
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Homology)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = SourceArg::Formula)]
        source: SourceArg,
    },
    /// Invariant subalgebra under the cyclic group of order r in the torus.
    Invariants {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = SourceArg::Formula)]
        source: SourceArg,
    },
    /// HH^*(A^G) from conjugacy class data.
    Group {
        #[command(flatten)]
        job: JobArgs,
        /// One class, e.g. "order=2 omega=no"; repeat for each class.
        #[arg(long = "class")]
        class: Vec<String>,
        /// File with one class per line.
        #[arg(long, conflicts_with = "class")]
        classes_file: Option<PathBuf>,
    },
    /// Run formula and oracle and compare them.
    Verify {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Homology)]
        kind: KindArg,
        /// Twist order m; omit for untwisted coefficients.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, default_value_t = 1)]
        power: i64,
    },
    /// Run the seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random algebras in addition to the fixed ones.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Args, Debug)]
struct JobArgs {
    /// Defining polynomial in h, e.g. "h^2 - 1" or "[-1, 0, 1]".
    #[arg(long, required_unless_present = "sweep")]
    a: Option<String>,
    /// Shift of sigma(h) = h - h0.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    h0: String,
    /// Highest degree reported.
    #[arg(long, default_value_t = 4)]
    p_max: usize,
    /// First truncation bound D (default max(4n, 12)).
    #[arg(long)]
    d_start: Option<usize>,
    #[arg(long)]
    d_step: Option<usize>,
    /// Truncation cap (default 240).
    #[arg(long, env = "GWA_DMAX")]
    d_max: Option<usize>,
    /// Consecutive equal observations required.
    #[arg(long)]
    window: Option<usize>,
    /// File of jobs, one "<a> ; <h0>" per line, run concurrently.
    #[arg(long)]
    sweep: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TwistArgs {
    /// Order m of the root of unity.
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Power k in w = zeta_m^k.
    #[arg(long, default_value_t = 1)]
    power: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Homology,
    Cohomology,
}

impl From<SourceArg> for SourceChoice {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Formula => SourceChoice::Formula,
            SourceArg::Oracle => SourceChoice::Oracle,
            SourceArg::Both => SourceChoice::Both,
        }
    }
}

impl From<KindArg> for Variant {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Homology => Variant::Homology,
            KindArg::Cohomology => Variant::Cohomology,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn apply_job(cfg: &mut JobConfig, job: &JobArgs) {
    cfg.a = job.a.clone();
    cfg.h0 = job.h0.clone();
    cfg.p_max = job.p_max;
    cfg.d_start = job.d_start;
    cfg.d_step = job.d_step;
    cfg.d_max = job.d_max;
    cfg.window = job.window;
}

/// Translates arguments into a base config and an optional sweep file.
fn config(cli: &Cli) -> Result<(JobConfig, Option<PathBuf>), CliError> {
    let (cfg, job) = match &cli.command {
        Command::Hh { job, source } => {
            let mut cfg = JobConfig::new(CommandKind::Hh);
            cfg.source = (*source).into();
            (cfg, Some(job))
        }
        Command::Coh { job, source } => {
            let mut cfg = JobConfig::new(CommandKind::Coh);
            cfg.source = (*source).into();
            (cfg, Some(job))
        }
        Command::Twisted { job, twist, kind, source } => {
            let mut cfg = JobConfig::new(CommandKind::Twisted);
            cfg.source = (*source).into();
            cfg.variant = (*kind).into();
            cfg.twist = Some((twist.order, twist.power));
            (cfg, Some(job))
        }
        Command::Invariants { job, r, source } => {
            let mut cfg = JobConfig::new(CommandKind::Invariants);
            cfg.r = Some(*r);
            cfg.source = (*source).into();
            (cfg, Some(job))
        }
        Command::Group { job, class, classes_file } => {
            let mut cfg = JobConfig::new(CommandKind::Group);
            cfg.classes = match classes_file {
                Some(path) => Some(read(path)?),
                None if !class.is_empty() => Some(class.join("\n")),
                None => None,
            };
            (cfg, Some(job))
        }
        Command::Verify { job, kind, order, power } => {
            let mut cfg = JobConfig::new(CommandKind::Verify);
            cfg.source = SourceChoice::Both;
            cfg.variant = (*kind).into();
            cfg.twist = order.map(|m| (m, *power));
            (cfg, Some(job))
        }
        Command::Selftest { seed, count } => {
            let mut cfg = JobConfig::new(CommandKind::Selftest);
            cfg.seed = *seed;
            cfg.count = *count;
            (cfg, None)
        }
    };
    let mut cfg = cfg;
    let sweep = job.and_then(|j| {
        apply_job(&mut cfg, j);
        j.sweep.clone()
    });
    Ok((cfg, sweep))
}

fn emit(format: Format, outcomes: &[JobOutcome], single: bool) -> Result<(), CliError> {
    match format {
        Format::Json if single => match &outcomes[0].report {
            Some(r) => println!("{}", output::json(r)?),
            None => println!("{}", output::json(&outcomes[0])?),
        },
        Format::Json => println!("{}", output::json(&outcomes)?),
        Format::Csv => print!("{}", output::csv(outcomes)?),
        Format::Table => {
            for o in outcomes {
                match (&o.report, &o.error) {
                    (Some(r), _) => println!("{}", output::table(r)),
                    (None, Some(e)) => {
                        let a = o.a.as_deref().unwrap_or("?");
                        println!("a = {a}: error: {e}\n");
                    }
                    (None, None) => {}
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let result = config(&cli).and_then(|(cfg, sweep)| match sweep {
        Some(path) => {
            let jobs = parse_sweep(&read(&path)?, &cfg)?;
            let outcomes = run_sweep(&jobs);
            emit(format, &outcomes, false)?;
            Ok(outcomes.iter().map(|o| o.exit_code).max().unwrap_or(0))
        }
        None => {
            let result = run(&cfg);
            if format == Format::Table {
                if let Err(e) = &result {
                    eprintln!("error: {e}");
                    return Ok(e.exit_code());
                }
            }
            let outcome = JobOutcome::from_result(&cfg, result);
            if outcome.report.is_none() && format != Format::Table {
                eprintln!("error: {}", outcome.error.as_deref().unwrap_or("unknown"));
            }
            emit(format, std::slice::from_ref(&outcome), true)?;
            Ok(outcome.report.as_ref().map_or(outcome.exit_code, report_status))
        }
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
