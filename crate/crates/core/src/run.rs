//! The step loop.

use crate::config::Configuration;
use crate::scheduler::SchedulerStream;
use crate::transition::InteractionTrace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub config: Configuration,
    pub steps: u64,
    pub stopped: bool,
}

/// Runs until `stop` holds or `max_steps` interactions have been applied.
///
/// `stop` is evaluated before the first step, after every `n` steps and
/// once more at `max_steps`, so `steps` is the first checked step count at
/// which it held.
pub fn run<F>(
    config: Configuration,
    scheduler: &mut SchedulerStream,
    max_steps: u64,
    stop: F,
) -> RunOutcome
where
    F: FnMut(&Configuration) -> bool,
{
    let interval = config.n() as u64;
    run_with_interval(config, scheduler, max_steps, interval, stop)
}

pub fn run_with_interval<F>(
    mut config: Configuration,
    scheduler: &mut SchedulerStream,
    max_steps: u64,
    check_interval: u64,
    mut stop: F,
) -> RunOutcome
where
    F: FnMut(&Configuration) -> bool,
{
    let interval = check_interval.max(1);
    let mut steps = 0u64;
    loop {
        if stop(&config) {
            return RunOutcome {
                config,
                steps,
                stopped: true,
            };
        }
        if steps >= max_steps {
            return RunOutcome {
                config,
                steps,
                stopped: false,
            };
        }
        let chunk = interval.min(max_steps - steps);
        for _ in 0..chunk {
            let i = scheduler.next_index();
            config.step_mut(i);
        }
        steps += chunk;
    }
}

/// Like [`run_with_interval`], but calls `observe` after every step with the
/// new configuration, the arc index and the interaction's events.
pub fn run_traced<F, O>(
    mut config: Configuration,
    scheduler: &mut SchedulerStream,
    max_steps: u64,
    check_interval: u64,
    mut stop: F,
    mut observe: O,
) -> RunOutcome
where
    F: FnMut(&Configuration) -> bool,
    O: FnMut(&Configuration, usize, &InteractionTrace),
{
    let interval = check_interval.max(1);
    let mut steps = 0u64;
    loop {
        if stop(&config) {
            return RunOutcome {
                config,
                steps,
                stopped: true,
            };
        }
        if steps >= max_steps {
            return RunOutcome {
                config,
                steps,
                stopped: false,
            };
        }
        let chunk = interval.min(max_steps - steps);
        for _ in 0..chunk {
            let i = scheduler.next_index();
            let trace = config.step_traced(i);
            observe(&config, i, &trace);
        }
        steps += chunk;
    }
}
