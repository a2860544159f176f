//! `ssle`: run experiments and inspect snapshots.
//!
//! Exit status is 0 when every trial converged and no invariant was violated,
//! 1 when a suite failed or a required predicate is false, 2 on bad input.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ssle_core::analysis::{
    construct_s_pl, in_c_dl, in_c_pb, in_s_pl, is_perfect, leader_count, segments,
    unique_leader,
};
use ssle_core::experiment::{
    cutoff, export_csv, run_closure_suite, run_convergence_sweep, run_elimination_suite,
    run_orientation_suite, scaling_ratios, ExperimentSpec, Invariant, Protocol,
};
use ssle_core::lottery::{analytic_bound, bound_setup, estimate_bound, Bound};
use ssle_core::snapshot::{dump_config, load_config, to_json};
use ssle_core::{make_params, random_configuration, run, Configuration, SchedulerStream};

#[derive(Parser)]
#[command(name = "ssle", version, about = "Leader election and orientation on rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProtocolArg {
    Ppl,
    Por,
    Lottery,
}

impl From<ProtocolArg> for Protocol {
    fn from(p: ProtocolArg) -> Self {
        match p {
            ProtocolArg::Ppl => Protocol::Ppl,
            ProtocolArg::Por => Protocol::Por,
            ProtocolArg::Lottery => Protocol::Lottery,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Upper,
    Lower,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Predicate {
    Perfect,
    CPb,
    CDl,
    SPl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Start {
    Random,
    Safe,
    Uniform,
}

#[derive(Subcommand)]
enum Command {
    /// Convergence sweep from random configurations; writes one CSV row per trial.
    Sweep {
        #[arg(long, value_enum, default_value = "ppl")]
        protocol: ProtocolArg,
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32, 64])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cutoff is multiplier * n^2 * log2 n steps.
        #[arg(long, default_value_t = 1e4)]
        multiplier: f64,
        #[arg(long)]
        kappa_max: Option<u32>,
        /// Worker threads (0: all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Monitor token trajectories, peaceful bullets and the leader floor.
        #[arg(long)]
        instrument: bool,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closure check from constructed safe configurations.
    Closure {
        #[arg(long, value_enum, default_value = "ppl")]
        protocol: ProtocolArg,
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
    },
    /// Leader elimination from evenly spaced leaders.
    Eliminate {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 8])]
        leaders: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Ring orientation runs; CSV of seed, steps_to_oriented, max_segment_count_violation.
    Orient {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32, 64])]
        n: Vec<usize>,
        /// Trials per ring size.
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to 10^4 n^2 log2 n.
        #[arg(long)]
        max_steps: Option<u64>,
        /// Steps after orientation during which no dir may change.
        #[arg(long, default_value_t = 100_000)]
        settle: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical failure rate of the lottery bounds.
    Lottery {
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        c: u32,
        #[arg(long, value_enum, default_value = "both")]
        bound: BoundArg,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate predicates on a snapshot.
    Check {
        file: PathBuf,
        /// Exit 1 unless these predicates hold.
        #[arg(long, value_enum, value_delimiter = ',')]
        require: Vec<Predicate>,
    },
    /// Write a snapshot, optionally after running some steps.
    Dump {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "random")]
        start: Start,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        steps: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a snapshot, optionally run it forward, and print or rewrite it.
    Load {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Outcome = Result<bool, String>;

fn csv_out(
    out: &Option<PathBuf>,
    write: impl FnOnce(Box<dyn Write>) -> ssle_core::Result<()>,
) -> Result<(), String> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).map_err(|e| format!("{}: {e}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    write(sink).map_err(|e| e.to_string())
}

fn sweep(spec: ExperimentSpec, out: &Option<PathBuf>) -> Outcome {
    let recs = run_convergence_sweep(&spec).map_err(|e| e.to_string())?;
    csv_out(out, |w| export_csv(&recs, w))?;
    let converged = recs.iter().filter(|r| r.converged).count();
    let violations: u64 = recs.iter().map(|r| r.violations).sum();
    eprintln!("{converged}/{} converged, {violations} violations", recs.len());
    for (n, ratio) in scaling_ratios(&recs) {
        eprintln!("n={n}: median steps / (n^2 log2 n) = {ratio:.3}");
    }
    Ok(converged == recs.len() && violations == 0)
}

fn closure(p: Protocol, ns: &[usize], trials: u64, seed: u64, steps: u64) -> Outcome {
    let mut ok = true;
    for &n in ns {
        let r = run_closure_suite(p, n, trials, seed, steps).map_err(|e| e.to_string())?;
        println!(
            "n={n}: {trials} trials x {steps} steps, {} violations, {} rejected",
            r.violations.len(),
            r.rejected.len()
        );
        for v in &r.violations {
            println!(
                "  trial {} seed {} step {}: {} failed",
                v.trial, v.seed, v.step, v.predicate
            );
        }
        for (t, msg) in &r.rejected {
            println!("  trial {t} rejected: {msg}");
        }
        ok &= r.passed();
    }
    Ok(ok)
}

fn eliminate(n: usize, leaders: &[usize], trials: u64, seed: u64, max: Option<u64>) -> Outcome {
    let mut ok = true;
    println!("n,initial_leaders,trials,reached_one,saw_zero,median_steps");
    for &l in leaders {
        let r = run_elimination_suite(n, l, trials, seed, max).map_err(|e| e.to_string())?;
        let reached = r.records.iter().filter(|x| x.reached_one).count();
        println!(
            "{n},{l},{trials},{reached},{},{}",
            r.zero_observed(),
            r.median_steps().unwrap_or(0)
        );
        ok &= r.passed();
    }
    Ok(ok)
}

fn orient(
    ns: &[usize],
    seeds: u64,
    seed: u64,
    max: Option<u64>,
    settle: u64,
    out: &Option<PathBuf>,
) -> Outcome {
    let mut all = Vec::new();
    let mut ok = true;
    for &n in ns {
        let max = max.unwrap_or_else(|| cutoff(n, 1e4));
        let recs = run_orientation_suite(n, seeds, seed, max, settle).map_err(|e| e.to_string())?;
        let oriented = recs.iter().filter(|r| r.steps_to_oriented.is_some()).count();
        let grew = recs.iter().filter(|r| r.max_segment_count_violation > 0).count();
        let moved = recs.iter().filter(|r| r.dir_changes_after > 0).count();
        eprintln!("n={n}: {oriented}/{seeds} oriented, {grew} segment increases, {moved} moved after");
        ok &= oriented as u64 == seeds && grew == 0 && moved == 0;
        all.extend(recs);
    }
    csv_out(out, |w| export_csv(&all, w))?;
    Ok(ok)
}

fn lottery(k: u32, c: u32, which: BoundArg, trials: u64, seed: u64) -> Outcome {
    let bounds: &[Bound] = match which {
        BoundArg::Upper => &[Bound::Upper],
        BoundArg::Lower => &[Bound::Lower],
        BoundArg::Both => &[Bound::Upper, Bound::Lower],
    };
    let analytic = analytic_bound(k, c);
    for &b in bounds {
        let rate = estimate_bound(k, c, b, trials, seed).map_err(|e| e.to_string())?;
        let (flips, threshold) = bound_setup(k, c, b);
        println!(
            "{b:?}: {flips} flips, threshold {threshold}, empirical failure rate {rate:.5}, bound {analytic:.5}"
        );
    }
    Ok(true)
}

fn describe(c: &Configuration) -> Vec<(Predicate, &'static str, bool)> {
    vec![
        (Predicate::Perfect, "perfect", is_perfect(c)),
        (Predicate::CPb, "in_C_PB", in_c_pb(c)),
        (Predicate::CDl, "in_C_DL", in_c_dl(c)),
        (Predicate::SPl, "in_S_PL", in_s_pl(c)),
    ]
}

fn print_summary(c: &Configuration) {
    let p = c.params();
    println!("n={} psi={} kappa_max={}", p.n(), p.psi(), p.kappa_max());
    println!("leaders={}", leader_count(c));
    match unique_leader(c) {
        Some(i) => println!("unique_leader={i}"),
        None => println!("unique_leader=none"),
    }
    match segments(c) {
        Ok(s) => println!("segments={}", s.len()),
        Err(e) => println!("segments=none ({e})"),
    }
    for (_, name, v) in describe(c) {
        println!("{name}={v}");
    }
}

fn check(file: &PathBuf, require: &[Predicate]) -> Outcome {
    let c = load_config(file).map_err(|e| format!("{}: {e}", file.display()))?;
    print_summary(&c);
    Ok(describe(&c)
        .iter()
        .all(|(p, _, v)| *v || !require.contains(p)))
}

fn advance(c: Configuration, steps: u64, seed: u64) -> Configuration {
    if steps == 0 {
        return c;
    }
    let mut s = SchedulerStream::new(c.n(), seed);
    run(c, &mut s, steps, |_| false).config
}

fn emit(c: &Configuration, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => dump_config(c, path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{}", to_json(c)).map_err(|e| e.to_string())
        }
    }
}

fn dump(n: usize, start: Start, seed: u64, steps: u64, out: &Option<PathBuf>) -> Outcome {
    let p = make_params(n).map_err(|e| e.to_string())?;
    let c = match start {
        Start::Random => random_configuration(p, seed),
        Start::Safe => construct_s_pl(p, seed),
        Start::Uniform => Configuration::uniform(p),
    };
    emit(&advance(c, steps, seed), out)?;
    Ok(true)
}

fn load(file: &PathBuf, steps: u64, seed: u64, out: &Option<PathBuf>) -> Outcome {
    let c = load_config(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let c = advance(c, steps, seed);
    match out {
        Some(_) => emit(&c, out)?,
        None => print_summary(&c),
    }
    Ok(true)
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Sweep {
            protocol,
            n,
            trials,
            seed,
            multiplier,
            kappa_max,
            workers,
            instrument,
            out,
        } => {
            let mut spec = ExperimentSpec::new(protocol.into(), n);
            spec.trials_per_n = trials;
            spec.base_seed = seed;
            spec.max_steps_multiplier = multiplier;
            spec.kappa_max_override = kappa_max;
            spec.workers = workers;
            if instrument {
                spec.instrument = vec![
                    Invariant::TokenTrajectory,
                    Invariant::PeacefulBullets,
                    Invariant::LeaderFloor,
                ];
            }
            sweep(spec, &out)
        }
        Command::Closure {
            protocol,
            n,
            trials,
            seed,
            steps,
        } => closure(protocol.into(), &n, trials, seed, steps),
        Command::Eliminate {
            n,
            leaders,
            trials,
            seed,
            max_steps,
        } => eliminate(n, &leaders, trials, seed, max_steps),
        Command::Orient {
            n,
            seeds,
            seed,
            max_steps,
            settle,
            out,
        } => orient(&n, seeds, seed, max_steps, settle, &out),
        Command::Lottery {
            k,
            c,
            bound,
            trials,
            seed,
        } => lottery(k, c, bound, trials, seed),
        Command::Check { file, require } => check(&file, &require),
        Command::Dump {
            n,
            start,
            seed,
            steps,
            out,
        } => dump(n, start, seed, steps, &out),
        Command::Load {
            file,
            steps,
            seed,
            out,
        } => load(&file, steps, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
