use proptest::prelude::*;

use ssle_core::analysis::{in_s_pl, leader_count, unique_leader};
use ssle_core::experiment::{run_convergence_sweep, trial_seed, ExperimentSpec, Protocol};
use ssle_core::orientation::{generate_two_hop_coloring, is_oriented, run_orientation};
use ssle_core::snapshot::{from_json, to_json};
use ssle_core::{make_params, random_configuration, run, SchedulerStream};

#[test]
fn converged_ring_survives_a_snapshot() {
    let p = make_params(12).unwrap();
    let c = random_configuration(p, 3);
    let mut s = SchedulerStream::new(12, 3);
    let out = run(c, &mut s, 10_000_000, in_s_pl);
    assert!(out.stopped);
    let back = from_json(&to_json(&out.config)).unwrap();
    assert!(in_s_pl(&back));
    assert_eq!(unique_leader(&back), unique_leader(&out.config));
}

#[test]
fn sweep_records_replay_individually() {
    let mut spec = ExperimentSpec::new(Protocol::Ppl, vec![10]);
    spec.trials_per_n = 4;
    spec.base_seed = 99;
    let recs = run_convergence_sweep(&spec).unwrap();
    for (t, r) in recs.iter().enumerate() {
        assert_eq!(r.seed, trial_seed(99, 10, t as u64));
        assert_eq!(r.final_leader_count, 1);
    }
    spec.workers = 3;
    assert_eq!(run_convergence_sweep(&spec).unwrap(), recs);
}

#[test]
fn orientation_from_public_api() {
    let c = generate_two_hop_coloring(20, 1).unwrap();
    let out = run_orientation(c, 1, 1_000_000, 1000);
    assert!(out.steps_to_oriented.is_some());
    assert!(is_oriented(&out.config));
    assert_eq!(out.dir_changes_after, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn any_start_converges_to_one_leader(n in 3usize..20, seed in any::<u64>()) {
        let c = random_configuration(make_params(n).unwrap(), seed);
        let mut s = SchedulerStream::new(n, seed);
        let out = run(c, &mut s, 50_000_000, in_s_pl);
        prop_assert!(out.stopped);
        prop_assert_eq!(leader_count(&out.config), 1);
    }
}
