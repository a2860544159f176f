//! Experiment orchestration: convergence sweeps, closure and elimination
//! suites, orientation runs, and CSV output.
//!
//! Every trial draws its seed from `(base_seed, n, trial)`, so each record can
//! be re-run on its own and the output does not depend on the worker count.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{construct_s_pl, in_c_pb, in_s_pl, leader_count, unique_leader};
use crate::config::{random_configuration, Configuration};
use crate::error::{Error, Result};
use crate::instrument::{LeaderFloor, PeacefulTracker, TokenTracker};
use crate::orientation::{generate_two_hop_coloring, run_orientation, segment_count};
use crate::params::{make_params, ProtocolParams};
use crate::run::{run, run_traced};
use crate::scheduler::{derive_seed, SchedulerStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Protocol {
    #[serde(rename = "PPL")]
    Ppl,
    #[serde(rename = "POR")]
    Por,
    #[serde(rename = "Lottery")]
    Lottery,
}

/// Per-step monitors available to instrumented leader election runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    /// Tokens born in consistent regions make at most `2psi^2 - 2psi + 1` moves.
    TokenTrajectory,
    /// Peaceful live bullets stay peaceful until they disappear.
    PeacefulBullets,
    /// No step leaves zero leaders once the ring has been in C_PB.
    LeaderFloor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub protocol: Protocol,
    pub n_values: Vec<usize>,
    pub trials_per_n: u64,
    pub base_seed: u64,
    /// Cutoff is `multiplier * n^2 * log2 n` steps.
    pub max_steps_multiplier: f64,
    pub kappa_max_override: Option<u32>,
    pub instrument: Vec<Invariant>,
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
}

impl ExperimentSpec {
    pub fn new(protocol: Protocol, n_values: Vec<usize>) -> Self {
        Self {
            protocol,
            n_values,
            trials_per_n: 100,
            base_seed: 0,
            max_steps_multiplier: 1e4,
            kappa_max_override: None,
            instrument: Vec::new(),
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials_per_n < 1 {
            return Err(Error::InvalidParams("trials_per_n must be at least 1".into()));
        }
        if !(self.max_steps_multiplier > 0.0 && self.max_steps_multiplier.is_finite()) {
            return Err(Error::InvalidParams("multiplier must be positive".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidParams("no ring sizes given".into()));
        }
        let min_n = if self.protocol == Protocol::Por { 3 } else { 2 };
        if let Some(&n) = self.n_values.iter().find(|&&n| n < min_n) {
            return Err(Error::InvalidSize(n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub protocol: Protocol,
    pub n: usize,
    /// 0 for orientation runs.
    pub psi: u32,
    /// 0 for orientation runs.
    pub kappa_max: u32,
    pub seed: u64,
    /// Steps to the stop predicate, or the cutoff when not converged.
    pub steps: u64,
    pub converged: bool,
    /// Leaders for leader election; segment count for orientation.
    pub final_leader_count: usize,
    pub violations: u64,
}

/// `ceil(multiplier * n^2 * log2 n)`.
pub fn cutoff(n: usize, multiplier: f64) -> u64 {
    let n = n as f64;
    (multiplier * n * n * n.log2()).ceil() as u64
}

pub fn trial_seed(base: u64, n: usize, trial: u64) -> u64 {
    derive_seed(base, &[n as u64, trial])
}

fn scheduler_seed(seed: u64) -> u64 {
    derive_seed(seed, &[1])
}

fn params_for(n: usize, kappa_override: Option<u32>) -> Result<ProtocolParams> {
    let p = make_params(n)?;
    match kappa_override {
        Some(k) => p.with_kappa_max(k),
        None => Ok(p),
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn ppl_trial(spec: &ExperimentSpec, n: usize, trial: u64) -> Result<TrialRecord> {
    let params = params_for(n, spec.kappa_max_override)?;
    let seed = trial_seed(spec.base_seed, n, trial);
    let config = random_configuration(params, seed);
    let mut sched = SchedulerStream::new(n, scheduler_seed(seed));
    let max = cutoff(n, spec.max_steps_multiplier);
    let (out, violations) = if spec.instrument.is_empty() {
        (run(config, &mut sched, max, in_s_pl), 0)
    } else {
        let want = |i: Invariant| spec.instrument.contains(&i);
        let mut tokens = want(Invariant::TokenTrajectory).then(|| TokenTracker::new(&config));
        let mut bullets = want(Invariant::PeacefulBullets).then(|| PeacefulTracker::new(&config));
        let mut floor = want(Invariant::LeaderFloor).then(|| LeaderFloor::new(&config));
        let out = run_traced(config, &mut sched, max, n as u64, in_s_pl, |c, i, t| {
            if let Some(m) = tokens.as_mut() {
                m.observe(c, i, t);
            }
            if let Some(m) = bullets.as_mut() {
                m.observe(c, i, t);
            }
            if let Some(m) = floor.as_mut() {
                m.observe(c, i, t);
            }
        });
        let v = tokens.map_or(0, |m| m.violations)
            + bullets.map_or(0, |m| m.violations)
            + floor.map_or(0, |m| m.violations);
        (out, v)
    };
    Ok(TrialRecord {
        protocol: Protocol::Ppl,
        n,
        psi: params.psi(),
        kappa_max: params.kappa_max(),
        seed,
        steps: out.steps,
        converged: out.stopped,
        final_leader_count: leader_count(&out.config),
        violations,
    })
}

fn por_trial(spec: &ExperimentSpec, n: usize, trial: u64) -> Result<TrialRecord> {
    let seed = trial_seed(spec.base_seed, n, trial);
    let config = generate_two_hop_coloring(n, seed)?;
    let max = cutoff(n, spec.max_steps_multiplier);
    let out = run_orientation(config, scheduler_seed(seed), max, 0);
    Ok(TrialRecord {
        protocol: Protocol::Por,
        n,
        psi: 0,
        kappa_max: 0,
        seed,
        steps: out.steps_to_oriented.unwrap_or(max),
        converged: out.steps_to_oriented.is_some(),
        final_leader_count: segment_count(&out.config),
        violations: out.monotonicity_violations,
    })
}

/// Runs every `(n, trial)` pair from a random start until the safe-set
/// predicate holds or the cutoff is reached. Records come back ordered by
/// `(n, trial)`.
pub fn run_convergence_sweep(spec: &ExperimentSpec) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    if spec.protocol == Protocol::Lottery {
        return Err(Error::Unsupported(
            "the lottery has no convergence sweep; use estimate_bound".into(),
        ));
    }
    let jobs: Vec<(usize, u64)> = spec
        .n_values
        .iter()
        .flat_map(|&n| (0..spec.trials_per_n).map(move |t| (n, t)))
        .collect();
    with_pool(spec.workers, || {
        jobs.par_iter()
            .map(|&(n, t)| match spec.protocol {
                Protocol::Ppl => ppl_trial(spec, n, t),
                _ => por_trial(spec, n, t),
            })
            .collect()
    })?
}

/// Median of `steps / (n^2 log2 n)` per ring size, over converged trials.
pub fn scaling_ratios(records: &[TrialRecord]) -> Vec<(usize, f64)> {
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .filter_map(|n| {
            let nf = n as f64;
            let mut v: Vec<f64> = records
                .iter()
                .filter(|r| r.n == n && r.converged)
                .map(|r| r.steps as f64 / (nf * nf * nf.log2()))
                .collect();
            if v.is_empty() {
                return None;
            }
            v.sort_by(|a, b| a.total_cmp(b));
            let m = v.len();
            let med = if m % 2 == 1 {
                v[m / 2]
            } else {
                (v[m / 2 - 1] + v[m / 2]) / 2.0
            };
            Some((n, med))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub trial: u64,
    pub seed: u64,
    pub step: u64,
    pub predicate: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub protocol: Protocol,
    pub n: usize,
    pub trials: u64,
    pub steps_per_trial: u64,
    pub violations: Vec<ClosureViolation>,
    /// Trials whose start failed the safe-set precheck.
    pub rejected: Vec<(u64, String)>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.rejected.is_empty()
    }
}

/// Runs `steps` steps from a configuration that must already be in S_PL,
/// checking S_PL membership and the leader's index every `n` steps.
/// Returns the first failing step and predicate, if any.
pub fn ppl_closure_trial(
    mut config: Configuration,
    sched_seed: u64,
    steps: u64,
) -> Result<Option<(u64, &'static str)>> {
    if !in_s_pl(&config) {
        return Err(Error::Precondition(
            "initial configuration is not in S_PL".into(),
        ));
    }
    let leader = unique_leader(&config);
    let n = config.n() as u64;
    let mut sched = SchedulerStream::new(config.n(), sched_seed);
    let mut done = 0;
    while done < steps {
        let chunk = n.min(steps - done);
        for _ in 0..chunk {
            config.step_mut(sched.next_index());
        }
        done += chunk;
        if !in_s_pl(&config) {
            return Ok(Some((done, "in_S_PL")));
        }
        if unique_leader(&config) != leader {
            return Ok(Some((done, "leader_identity")));
        }
    }
    Ok(None)
}

fn por_closure_trial(n: usize, seed: u64, steps: u64) -> Result<Option<(u64, &'static str)>> {
    let mut config = generate_two_hop_coloring(n, seed)?;
    let colors: Vec<u8> = config.agents().iter().map(|a| a.color).collect();
    let clockwise = seed & 1 == 0;
    for (i, a) in config.agents_mut().iter_mut().enumerate() {
        a.dir = if clockwise {
            colors[(i + 1) % n]
        } else {
            colors[(i + n - 1) % n]
        };
    }
    let dirs = config.dirs();
    let mut sched = SchedulerStream::new(2 * n, scheduler_seed(seed));
    for step in 1..=steps {
        config.step_arc(sched.next_index());
        if config.dirs() != dirs {
            return Ok(Some((step, "dir_constant")));
        }
    }
    Ok(None)
}

/// Starts each trial from a constructed safe configuration and runs `steps`
/// steps checking that it stays safe.
pub fn run_closure_suite(
    protocol: Protocol,
    n: usize,
    trials: u64,
    seed: u64,
    steps: u64,
) -> Result<ClosureReport> {
    let params = match protocol {
        Protocol::Ppl => Some(make_params(n)?),
        Protocol::Por if n >= 3 => None,
        Protocol::Por => return Err(Error::InvalidSize(n)),
        Protocol::Lottery => {
            return Err(Error::Unsupported("the lottery has no closure suite".into()))
        }
    };
    let results: Vec<(u64, u64, Result<Option<(u64, &'static str)>>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_seed(seed, n, t);
            let r = match params {
                Some(p) => ppl_closure_trial(construct_s_pl(p, s), scheduler_seed(s), steps),
                None => por_closure_trial(n, s, steps),
            };
            (t, s, r)
        })
        .collect();
    let mut report = ClosureReport {
        protocol,
        n,
        trials,
        steps_per_trial: steps,
        violations: Vec::new(),
        rejected: Vec::new(),
    };
    for (trial, seed, r) in results {
        match r {
            Ok(None) => {}
            Ok(Some((step, predicate))) => report.violations.push(ClosureViolation {
                trial,
                seed,
                step,
                predicate,
            }),
            Err(Error::Precondition(msg)) => report.rejected.push((trial, msg)),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// A C_PB configuration with `leaders` evenly spaced shielded leaders, `dist`
/// counted up from each leader, random `b` bits, and nothing in flight.
pub fn elimination_config(params: ProtocolParams, leaders: usize, seed: u64) -> Result<Configuration> {
    let n = params.n();
    if leaders < 1 || leaders > n {
        return Err(Error::InvalidParams(format!(
            "{leaders} leaders on a ring of {n}"
        )));
    }
    let mut c = random_configuration(params, seed);
    let bits: Vec<bool> = c.agents().iter().map(|a| a.b).collect();
    let mut c2 = Configuration::uniform(params);
    for (a, b) in c2.agents_mut().iter_mut().zip(bits) {
        a.b = b;
    }
    c = c2;
    let m = params.dist_modulus() as usize;
    let agents = c.agents_mut();
    for j in 0..leaders {
        let at = j * n / leaders;
        agents[at].leader = true;
        agents[at].shield = true;
    }
    let first = 0;
    let mut d = 0;
    for k in 0..n {
        let a = &mut agents[(first + k) % n];
        if a.leader {
            d = 0;
        }
        a.dist = (d % m) as u8;
        d += 1;
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationRecord {
    pub trial: u64,
    pub seed: u64,
    pub steps: u64,
    pub reached_one: bool,
    pub final_leaders: usize,
    pub saw_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationReport {
    pub n: usize,
    pub initial_leaders: usize,
    pub records: Vec<EliminationRecord>,
}

impl EliminationReport {
    pub fn zero_observed(&self) -> usize {
        self.records.iter().filter(|r| r.saw_zero).count()
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.reached_one && !r.saw_zero)
    }

    pub fn median_steps(&self) -> Option<u64> {
        let mut s: Vec<u64> = self.records.iter().map(|r| r.steps).collect();
        s.sort_unstable();
        s.get(s.len().checked_sub(1)? / 2).copied()
    }
}

/// From evenly spaced leaders, runs each trial until one leader remains,
/// watching the leader count after every step.
pub fn run_elimination_suite(
    n: usize,
    initial_leaders: usize,
    trials: u64,
    seed: u64,
    max_steps: Option<u64>,
) -> Result<EliminationReport> {
    let params = make_params(n)?;
    let max = max_steps.unwrap_or_else(|| cutoff(n, 1e4));
    let records = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_seed(seed, n, t);
            let mut c = elimination_config(params, initial_leaders, s)?;
            debug_assert!(in_c_pb(&c));
            let mut sched = SchedulerStream::new(n, scheduler_seed(s));
            let mut leaders = initial_leaders;
            let mut steps = 0;
            let mut saw_zero = false;
            while leaders > 1 && steps < max {
                let trace = c.step_traced(sched.next_index());
                steps += 1;
                leaders += trace.created_leader() as usize;
                leaders -= trace.bullets.killed as usize;
                if leaders == 0 {
                    saw_zero = true;
                    break;
                }
            }
            Ok(EliminationRecord {
                trial: t,
                seed: s,
                steps,
                reached_one: leaders == 1,
                final_leaders: leader_count(&c),
                saw_zero,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EliminationReport {
        n,
        initial_leaders,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientRecord {
    pub seed: u64,
    /// Empty in CSV when the cutoff was reached first.
    pub steps_to_oriented: Option<u64>,
    pub max_segment_count_violation: u64,
    #[serde(skip)]
    pub dir_changes_after: u64,
    #[serde(skip)]
    pub n: usize,
}

/// Orientation runs from random directions over fresh colorings, followed by
/// `settle_steps` steps in which no `dir` may change.
pub fn run_orientation_suite(
    n: usize,
    seeds: u64,
    base_seed: u64,
    max_steps: u64,
    settle_steps: u64,
) -> Result<Vec<OrientRecord>> {
    if n < 3 {
        return Err(Error::InvalidSize(n));
    }
    (0..seeds)
        .into_par_iter()
        .map(|t| {
            let s = trial_seed(base_seed, n, t);
            let config = generate_two_hop_coloring(n, s)?;
            let out = run_orientation(config, scheduler_seed(s), max_steps, settle_steps);
            Ok(OrientRecord {
                seed: s,
                steps_to_oriented: out.steps_to_oriented,
                max_segment_count_violation: out.max_segment_increase,
                dir_changes_after: out.dir_changes_after,
                n,
            })
        })
        .collect()
}

/// Writes records as CSV with a header row.
pub fn export_csv<T: Serialize, W: Write>(records: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_csv_file<T: Serialize>(records: &[T], path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    export_csv(records, file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoffs() {
        assert_eq!(cutoff(8, 1e4), 1_920_000);
        assert_eq!(cutoff(16, 1.0), 1024);
    }

    #[test]
    fn spec_validation() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![8]);
        assert!(s.validate().is_ok());
        s.trials_per_n = 0;
        assert!(s.validate().is_err());
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![8]);
        s.max_steps_multiplier = 0.0;
        assert!(s.validate().is_err());
        let s = ExperimentSpec::new(Protocol::Por, vec![2]);
        assert!(s.validate().is_err());
        let s = ExperimentSpec::new(Protocol::Lottery, vec![8]);
        assert!(matches!(run_convergence_sweep(&s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ppl_sweep_converges_and_repeats() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![8]);
        s.trials_per_n = 50;
        let a = run_convergence_sweep(&s).unwrap();
        assert_eq!(a.len(), 50);
        for r in &a {
            assert!(r.converged);
            assert_eq!(r.final_leader_count, 1);
            assert_eq!((r.psi, r.kappa_max), (3, 96));
        }
        s.workers = 1;
        assert_eq!(run_convergence_sweep(&s).unwrap(), a);
    }

    #[test]
    fn single_trial_is_deterministic() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![16]);
        s.trials_per_n = 1;
        s.base_seed = 7;
        assert_eq!(
            run_convergence_sweep(&s).unwrap(),
            run_convergence_sweep(&s).unwrap()
        );
    }

    #[test]
    fn instrumented_sweep() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![8, 16]);
        s.trials_per_n = 5;
        s.instrument = vec![
            Invariant::TokenTrajectory,
            Invariant::PeacefulBullets,
            Invariant::LeaderFloor,
        ];
        let plain = {
            let mut p = s.clone();
            p.instrument.clear();
            run_convergence_sweep(&p).unwrap()
        };
        let inst = run_convergence_sweep(&s).unwrap();
        assert_eq!(plain, inst);
        assert!(inst.iter().all(|r| r.violations == 0));
    }

    #[test]
    fn kappa_override_applies() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![8]);
        s.trials_per_n = 2;
        s.kappa_max_override = Some(200);
        let r = run_convergence_sweep(&s).unwrap();
        assert!(r.iter().all(|r| r.kappa_max == 200));
        s.kappa_max_override = Some(10);
        assert!(run_convergence_sweep(&s).is_err());
    }

    #[test]
    fn por_sweep_converges() {
        let mut s = ExperimentSpec::new(Protocol::Por, vec![16]);
        s.trials_per_n = 50;
        let r = run_convergence_sweep(&s).unwrap();
        assert!(r
            .iter()
            .all(|r| r.converged && r.violations == 0 && r.final_leader_count == 1));
    }

    #[test]
    fn cutoff_is_honest() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![32]);
        s.trials_per_n = 3;
        s.max_steps_multiplier = 1e-3;
        let max = cutoff(32, 1e-3);
        for r in run_convergence_sweep(&s).unwrap() {
            assert!(!r.converged);
            assert_eq!(r.steps, max);
        }
    }

    #[test]
    fn closure_suites() {
        let r = run_closure_suite(Protocol::Ppl, 16, 10, 1, 20_000).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = run_closure_suite(Protocol::Por, 16, 10, 1, 20_000).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn corrupted_start_is_rejected_not_violated() {
        let p = make_params(16).unwrap();
        let mut c = construct_s_pl(p, 4);
        c.agents_mut()[5].dist = 0;
        assert!(matches!(
            ppl_closure_trial(c, 1, 1000),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn elimination_configs_are_in_c_pb() {
        let p = make_params(32).unwrap();
        for k in [1, 2, 4, 8, 32] {
            let c = elimination_config(p, k, 3).unwrap();
            assert!(in_c_pb(&c));
            assert_eq!(leader_count(&c), k);
        }
        assert!(elimination_config(p, 0, 3).is_err());
        assert!(elimination_config(p, 33, 3).is_err());
    }

    #[test]
    fn elimination_reaches_one() {
        let r = run_elimination_suite(32, 4, 10, 2, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.zero_observed(), 0);
        let one = run_elimination_suite(32, 1, 3, 2, None).unwrap();
        assert!(one.records.iter().all(|r| r.steps == 0 && r.reached_one));
    }

    #[test]
    fn csv_shape() {
        let mut s = ExperimentSpec::new(Protocol::Ppl, vec![8]);
        s.trials_per_n = 3;
        let recs = run_convergence_sweep(&s).unwrap();
        let mut buf = Vec::new();
        export_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "protocol,n,psi,kappa_max,seed,steps,converged,final_leader_count,violations"
        );
        assert!(lines[1].starts_with("PPL,8,3,96,"));
    }

    #[test]
    fn orient_csv_shape() {
        let recs = run_orientation_suite(8, 3, 0, cutoff(8, 1e4), 100).unwrap();
        let mut buf = Vec::new();
        export_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "seed,steps_to_oriented,max_segment_count_violation"
        );
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn scaling_summary() {
        let recs = vec![
            TrialRecord {
                protocol: Protocol::Ppl,
                n: 8,
                psi: 3,
                kappa_max: 96,
                seed: 0,
                steps: 192,
                converged: true,
                final_leader_count: 1,
                violations: 0,
            },
            TrialRecord {
                protocol: Protocol::Ppl,
                n: 8,
                psi: 3,
                kappa_max: 96,
                seed: 1,
                steps: 576,
                converged: true,
                final_leader_count: 1,
                violations: 0,
            },
        ];
        assert_eq!(scaling_ratios(&recs), vec![(8, 2.0)]);
    }
}
