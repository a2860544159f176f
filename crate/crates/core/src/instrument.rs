//! Per-step invariant monitors for instrumented runs.
//!
//! Each monitor is fed the configuration after every step together with the
//! arc index and the interaction's trace.

use crate::analysis::{in_c_pb, leader_count, peaceful_mask};
use crate::config::Configuration;
use crate::state::{Bullet, TokenColor};
use crate::transition::{InteractionTrace, TokenMotion};

#[derive(Debug, Clone, Copy)]
struct Tracked {
    moves: u64,
    start: usize,
    /// Born at a border of a dist-consistent region that has stayed consistent.
    watched: bool,
    flagged: bool,
}

/// Counts the moves of every token born during the run and flags any token
/// that exceeds `2psi^2 - 2psi + 1` moves while its region stays consistent.
#[derive(Debug, Clone)]
pub struct TokenTracker {
    slots: Vec<[Option<Tracked>; 2]>,
    dist: Vec<u8>,
    leader: Vec<bool>,
    psi: usize,
    bound: u64,
    pub violations: u64,
    /// Watched tokens that disappeared while still watched.
    pub completed: u64,
    /// Largest move count of a completed watched token.
    pub max_moves: u64,
}

fn slot(color: TokenColor) -> usize {
    match color {
        TokenColor::Black => 0,
        TokenColor::White => 1,
    }
}

impl TokenTracker {
    /// Tokens already present are never watched.
    pub fn new(config: &Configuration) -> Self {
        let slots = config
            .agents()
            .iter()
            .map(|a| {
                TokenColor::ALL.map(|c| {
                    a.token(c).map(|_| Tracked {
                        moves: 0,
                        start: 0,
                        watched: false,
                        flagged: false,
                    })
                })
            })
            .collect();
        Self {
            slots,
            dist: config.agents().iter().map(|a| a.dist).collect(),
            leader: config.agents().iter().map(|a| a.leader).collect(),
            psi: config.params().psi() as usize,
            bound: config.params().trajectory_length(),
            violations: 0,
            completed: 0,
            max_moves: 0,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// The `2psi` agents from `start` carry consecutive dist values.
    fn region_consistent(&self, start: usize) -> bool {
        let n = self.dist.len();
        let m = 2 * self.psi;
        if m > n {
            return false;
        }
        let d0 = self.dist[start] as usize;
        (1..m).all(|j| self.dist[(start + j) % n] as usize == (d0 + j) % m)
    }

    fn finish(&mut self, t: Option<Tracked>) {
        if let Some(t) = t {
            if t.watched {
                self.completed += 1;
                self.max_moves = self.max_moves.max(t.moves);
            }
        }
    }

    fn bump(&mut self, mut t: Tracked) -> Tracked {
        t.moves += 1;
        if t.watched && t.moves > self.bound && !t.flagged {
            t.flagged = true;
            self.violations += 1;
        }
        t
    }

    pub fn observe(&mut self, config: &Configuration, i: usize, trace: &InteractionTrace) {
        let n = config.n();
        let j = config.right(i);
        let region_changed = {
            let r = config.agent(j);
            let changed = r.dist != self.dist[j] || r.leader != self.leader[j];
            self.dist[j] = r.dist;
            self.leader[j] = r.leader;
            self.leader[i] = config.agent(i).leader;
            changed
        };
        for color in TokenColor::ALL {
            let c = slot(color);
            let tt = trace.token(color);
            if tt.generated {
                let watched = self.region_consistent(i);
                self.slots[i][c] = Some(Tracked {
                    moves: 0,
                    start: i,
                    watched,
                    flagged: false,
                });
            }
            if tt.collided {
                let t = self.slots[i][c].take();
                self.finish(t);
            }
            match tt.motion {
                TokenMotion::StepRight | TokenMotion::Arrived => {
                    if let Some(t) = self.slots[i][c].take() {
                        let t = self.bump(t);
                        self.slots[j][c] = Some(t);
                    }
                }
                TokenMotion::StepLeft | TokenMotion::Rearmed => {
                    if let Some(t) = self.slots[j][c].take() {
                        let t = self.bump(t);
                        self.slots[i][c] = Some(t);
                    }
                }
                TokenMotion::None => {}
            }
            if tt.swept_l {
                let t = self.slots[i][c].take();
                self.finish(t);
            }
            if tt.swept_r {
                let t = self.slots[j][c].take();
                self.finish(t);
            }
            // keep the shadow in step with the ring
            for k in [i, j] {
                match (config.agent(k).token(color), self.slots[k][c]) {
                    (Some(_), None) => {
                        self.slots[k][c] = Some(Tracked {
                            moves: 0,
                            start: k,
                            watched: false,
                            flagged: false,
                        })
                    }
                    (None, Some(_)) => self.slots[k][c] = None,
                    _ => {}
                }
            }
        }
        if region_changed {
            let m = 2 * self.psi;
            for k in 0..n {
                for c in 0..2 {
                    if let Some(t) = self.slots[k][c] {
                        if t.watched
                            && (j + n - t.start) % n < m
                            && !self.region_consistent(t.start)
                        {
                            self.slots[k][c] = Some(Tracked {
                                watched: false,
                                ..t
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Flags any live bullet that was peaceful at some point and later is not.
#[derive(Debug, Clone)]
pub struct PeacefulTracker {
    peaceful: Vec<bool>,
    pub violations: u64,
    /// Steps at which at least one peaceful bullet was being followed.
    pub watched_steps: u64,
}

impl PeacefulTracker {
    pub fn new(config: &Configuration) -> Self {
        let mask = peaceful_mask(config);
        let peaceful = config
            .agents()
            .iter()
            .zip(mask)
            .map(|(a, m)| a.bullet == Bullet::Live && m)
            .collect();
        Self {
            peaceful,
            violations: 0,
            watched_steps: 0,
        }
    }

    pub fn observe(&mut self, config: &Configuration, i: usize, trace: &InteractionTrace) {
        let j = config.right(i);
        let b = trace.bullets;
        let (mut fi, mut fj) = (self.peaceful[i], self.peaceful[j]);
        if trace.created_leader() || b.r_fired {
            // r's bullet was replaced
            fj = false;
        }
        if b.l_fired {
            fi = false;
        }
        if b.hit_leader || b.blocked {
            fi = false;
        }
        if b.advanced {
            fj = fi;
            fi = false;
        }
        self.peaceful[i] = fi;
        self.peaceful[j] = fj;

        let mask = peaceful_mask(config);
        let mut any = false;
        for (k, a) in config.agents().iter().enumerate() {
            let live = a.bullet == Bullet::Live;
            if self.peaceful[k] {
                any = true;
                if !(live && mask[k]) {
                    self.violations += 1;
                }
            }
            self.peaceful[k] = live && mask[k];
        }
        self.watched_steps += any as u64;
    }
}

/// Once the ring is in C_PB, the leader count must never drop to zero.
#[derive(Debug, Clone)]
pub struct LeaderFloor {
    leaders: usize,
    armed: bool,
    pub violations: u64,
}

impl LeaderFloor {
    pub fn new(config: &Configuration) -> Self {
        Self {
            leaders: leader_count(config),
            armed: in_c_pb(config),
            violations: 0,
        }
    }

    pub fn observe(&mut self, config: &Configuration, _i: usize, trace: &InteractionTrace) {
        self.leaders += trace.created_leader() as usize;
        self.leaders -= trace.bullets.killed as usize;
        if self.armed && self.leaders == 0 {
            self.violations += 1;
        }
        // re-arm lazily; the full predicate is O(n)
        if !self.armed && self.leaders > 0 && in_c_pb(config) {
            self.armed = true;
        }
    }

    pub fn leaders(&self) -> usize {
        self.leaders
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::construct_s_pl;
    use crate::config::random_configuration;
    use crate::params::make_params;
    use crate::scheduler::SchedulerStream;

    #[test]
    fn safe_ring_tokens_reach_the_exact_bound() {
        let p = make_params(16).unwrap();
        let mut c = construct_s_pl(p, 2);
        let mut t = TokenTracker::new(&c);
        let mut s = SchedulerStream::new(16, 2);
        for _ in 0..300_000 {
            let i = s.next_index();
            let tr = c.step_traced(i);
            t.observe(&c, i, &tr);
        }
        assert_eq!(t.violations, 0);
        assert!(t.completed > 0);
        assert_eq!(t.max_moves, t.bound());
    }

    #[test]
    fn random_starts_respect_the_bound() {
        let p = make_params(16).unwrap();
        for seed in 0..5 {
            let mut c = random_configuration(p, seed);
            let mut t = TokenTracker::new(&c);
            let mut s = SchedulerStream::new(16, seed);
            for _ in 0..100_000 {
                let i = s.next_index();
                let tr = c.step_traced(i);
                t.observe(&c, i, &tr);
            }
            assert_eq!(t.violations, 0, "seed {seed}");
        }
    }

    #[test]
    fn shadow_matches_ring() {
        let p = make_params(8).unwrap();
        let mut c = random_configuration(p, 9);
        let mut t = TokenTracker::new(&c);
        let mut s = SchedulerStream::new(8, 9);
        for _ in 0..20_000 {
            let i = s.next_index();
            let tr = c.step_traced(i);
            t.observe(&c, i, &tr);
            for k in 0..8 {
                for color in TokenColor::ALL {
                    assert_eq!(
                        c.agent(k).token(color).is_some(),
                        t.slots[k][slot(color)].is_some()
                    );
                }
            }
        }
    }

    #[test]
    fn peaceful_bullets_stay_peaceful() {
        for n in [8usize, 16] {
            let p = make_params(n).unwrap();
            for seed in 0..10 {
                let mut c = random_configuration(p, seed);
                let mut t = PeacefulTracker::new(&c);
                let mut f = LeaderFloor::new(&c);
                let mut s = SchedulerStream::new(n, seed);
                for _ in 0..50_000 {
                    let i = s.next_index();
                    let tr = c.step_traced(i);
                    t.observe(&c, i, &tr);
                    f.observe(&c, i, &tr);
                    assert_eq!(f.leaders(), leader_count(&c));
                }
                assert_eq!(t.violations, 0);
                assert_eq!(f.violations, 0);
                assert!(t.watched_steps > 0);
            }
        }
    }
}
