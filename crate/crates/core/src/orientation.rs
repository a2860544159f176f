//! Ring orientation on undirected rings.
//!
//! Agents carry a two-hop coloring and point at one neighbor by naming its
//! color. Adjacent agents pointing at each other are competing segment
//! heads; one of them turns around, extending the other's segment, until
//! every agent points the same way.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scheduler::SchedulerStream;

/// Number of colors used by the coloring generator.
pub const XI: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientAgentState {
    pub color: u8,
    pub c1: u8,
    pub c2: u8,
    pub dir: u8,
    pub strong: bool,
}

impl OrientAgentState {
    /// The remembered neighbor color other than `avoid`.
    fn other_neighbor(&self, avoid: u8) -> u8 {
        if self.c1 != avoid {
            self.c1
        } else {
            self.c2
        }
    }

    /// Remember `seen` as the most recent neighbor color.
    fn observe(&mut self, seen: u8) {
        if seen != self.c1 {
            self.c2 = self.c1;
            self.c1 = seen;
        }
    }
}

/// One interaction between initiator `u` and responder `v`.
pub fn interact_or(u: OrientAgentState, v: OrientAgentState) -> (OrientAgentState, OrientAgentState) {
    let (mut u, mut v) = (u, v);
    let u_at_v = u.dir == v.color;
    let v_at_u = v.dir == u.color;
    if u_at_v && v_at_u {
        if !u.strong && v.strong {
            u.dir = u.other_neighbor(v.color);
            u.strong = true;
            v.strong = false;
        } else {
            v.dir = v.other_neighbor(u.color);
            u.strong = false;
            v.strong = true;
        }
    } else if u_at_v {
        u.strong = false;
    } else if v_at_u {
        v.strong = false;
    }
    (u, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientConfiguration {
    agents: Vec<OrientAgentState>,
    xi: u8,
    amnesiac: bool,
}

impl OrientConfiguration {
    /// Checks the two-hop coloring and the neighbor color sets.
    pub fn new(agents: Vec<OrientAgentState>, xi: u8) -> Result<Self> {
        let n = agents.len();
        if n < 3 {
            return Err(Error::InvalidSize(n));
        }
        let c = Self {
            agents,
            xi,
            amnesiac: false,
        };
        for i in 0..n {
            let a = c.agents[i];
            if a.color >= xi || a.c1 >= xi || a.c2 >= xi || a.dir >= xi {
                return Err(Error::Precondition(format!("agent {i}: color out of range")));
            }
            if a.color == c.agents[(i + 2) % n].color {
                return Err(Error::Precondition(format!(
                    "agents {i} and {} share a color",
                    (i + 2) % n
                )));
            }
            let (l, r) = (c.agents[c.left(i)].color, c.agents[c.right(i)].color);
            if !((a.c1 == l && a.c2 == r) || (a.c1 == r && a.c2 == l)) {
                return Err(Error::Precondition(format!(
                    "agent {i}: remembered colors differ from its neighbors'"
                )));
            }
        }
        Ok(c)
    }

    pub fn agents(&self) -> &[OrientAgentState] {
        &self.agents
    }

    pub fn agents_mut(&mut self) -> &mut [OrientAgentState] {
        &mut self.agents
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn xi(&self) -> u8 {
        self.xi
    }

    pub fn amnesiac(&self) -> bool {
        self.amnesiac
    }

    fn left(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    fn right(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    /// Forget the remembered neighbor colors. Each interaction then first
    /// lets both agents record the color they observe.
    pub fn make_amnesiac(&mut self, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = self.xi;
        for a in &mut self.agents {
            a.c1 = rng.gen_range(0..xi);
            a.c2 = rng.gen_range(0..xi);
        }
        self.amnesiac = true;
    }

    /// True when agent `i` points at its right neighbor.
    pub fn points_right(&self, i: usize) -> bool {
        self.agents[i].dir == self.agents[self.right(i)].color
    }

    /// True when agent `i` points at its left neighbor.
    pub fn points_left(&self, i: usize) -> bool {
        self.agents[i].dir == self.agents[self.left(i)].color
    }

    fn heading(&self, i: usize) -> (bool, bool) {
        (self.points_right(i), self.points_left(i))
    }

    /// Applies one interaction on arc `arc` in `[0, 2n)`: arcs below `n` are
    /// `(i, i+1)`, the rest are `(i+1, i)` with `i = arc - n`.
    pub fn step_arc(&mut self, arc: usize) {
        let n = self.n();
        let (u, v) = if arc < n {
            (arc, self.right(arc))
        } else {
            let i = arc - n;
            (self.right(i), i)
        };
        let (mut a, mut b) = (self.agents[u], self.agents[v]);
        if self.amnesiac {
            a.observe(b.color);
            b.observe(a.color);
        }
        let (a, b) = interact_or(a, b);
        self.agents[u] = a;
        self.agents[v] = b;
    }

    /// Number of adjacent pairs whose pointing directions differ.
    pub fn boundary_count(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.heading(i) != self.heading(self.right(i)))
            .count()
    }

    pub fn dirs(&self) -> Vec<u8> {
        self.agents.iter().map(|a| a.dir).collect()
    }
}

/// A random greedy coloring with `XI` colors, distinct at distance one and
/// two, with each agent's neighbor colors filled in (in random order) and
/// random `dir` and `strong`.
pub fn generate_two_hop_coloring(n: usize, seed: u64) -> Result<OrientConfiguration> {
    if n < 3 {
        return Err(Error::InvalidSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors: Vec<u8> = Vec::with_capacity(n);
    for i in 0..n {
        let mut taken = Vec::with_capacity(4);
        for back in [1, 2] {
            if i >= back {
                taken.push(colors[i - back]);
            }
        }
        // the ring closes on agents 0 and 1
        for ahead in [1, 2] {
            let j = (i + ahead) % n;
            if j < i {
                taken.push(colors[j]);
            }
        }
        let free: Vec<u8> = (0..XI).filter(|c| !taken.contains(c)).collect();
        colors.push(*free.choose(&mut rng).expect("at most four colors are taken"));
    }
    let agents = (0..n)
        .map(|i| {
            let l = colors[(i + n - 1) % n];
            let r = colors[(i + 1) % n];
            let (c1, c2) = if rng.gen() { (l, r) } else { (r, l) };
            OrientAgentState {
                color: colors[i],
                c1,
                c2,
                dir: if rng.gen() { c1 } else { c2 },
                strong: rng.gen(),
            }
        })
        .collect();
    OrientConfiguration::new(agents, XI)
}

/// All agents point the same way around the ring.
pub fn is_oriented(config: &OrientConfiguration) -> bool {
    let n = config.n();
    (0..n).all(|i| config.points_right(i)) || (0..n).all(|i| config.points_left(i))
}

/// Number of maximal runs of agents pointing the same way; 1 when oriented.
pub fn segment_count(config: &OrientConfiguration) -> usize {
    config.boundary_count().max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientRun {
    pub config: OrientConfiguration,
    /// Steps until the ring was first oriented, if it was.
    pub steps_to_oriented: Option<u64>,
    /// Steps at which the segment count went up.
    pub monotonicity_violations: u64,
    /// Largest single-step increase of the segment count.
    pub max_segment_increase: u64,
    /// Steps after orientation at which some `dir` changed.
    pub dir_changes_after: u64,
}

/// Runs from `config` until oriented or `max_steps`, checking after every
/// step that the segment count never grows, then runs `settle_steps` more
/// steps checking that no `dir` changes.
pub fn run_orientation(
    mut config: OrientConfiguration,
    seed: u64,
    max_steps: u64,
    settle_steps: u64,
) -> OrientRun {
    let n = config.n();
    let mut sched = SchedulerStream::new(2 * n, seed);
    let mut boundaries = config.boundary_count();
    let mut steps = 0u64;
    let mut violations = 0u64;
    let mut max_increase = 0u64;
    while boundaries > 0 && steps < max_steps {
        let arc = sched.next_index();
        let i = if arc < n { arc } else { arc - n };
        let j = (i + 1) % n;
        // only agents i and j can change; recount the boundaries that touch them
        let local = |c: &OrientConfiguration| {
            let mut pairs = [c.left(i), i, j];
            pairs.sort_unstable();
            let mut count = 0;
            let mut last = usize::MAX;
            for k in pairs {
                if k != last && c.heading(k) != c.heading(c.right(k)) {
                    count += 1;
                }
                last = k;
            }
            count
        };
        let before = local(&config);
        config.step_arc(arc);
        let after = local(&config);
        let next = boundaries + after - before;
        let (was, now) = (segment_count_from(boundaries), segment_count_from(next));
        if now > was {
            violations += 1;
            max_increase = max_increase.max((now - was) as u64);
        }
        boundaries = next;
        steps += 1;
    }
    let oriented = boundaries == 0 && is_oriented(&config);
    let mut changes = 0;
    if oriented {
        for _ in 0..settle_steps {
            let arc = sched.next_index();
            let before = config.dirs();
            config.step_arc(arc);
            if config.dirs() != before {
                changes += 1;
            }
        }
    }
    OrientRun {
        config,
        steps_to_oriented: oriented.then_some(steps),
        monotonicity_violations: violations,
        max_segment_increase: max_increase,
        dir_changes_after: changes,
    }
}

fn segment_count_from(boundaries: usize) -> usize {
    boundaries.max(1)
}
