//! The ring of agents.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::ProtocolParams;
use crate::state::AgentState;
use crate::transition::{interact_in_place, interact_traced, InteractionTrace};

/// An ordered cyclic ring: agent `i` initiates on the arc to `i + 1 mod n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    params: ProtocolParams,
    agents: Vec<AgentState>,
}

impl Configuration {
    /// Checks the agent count and every field range.
    pub fn new(params: ProtocolParams, agents: Vec<AgentState>) -> Result<Self> {
        if agents.len() != params.n() {
            return Err(Error::Precondition(format!(
                "{} agents for n = {}",
                agents.len(),
                params.n()
            )));
        }
        for (agent, s) in agents.iter().enumerate() {
            if let Some(field) = s.out_of_range_field(&params) {
                return Err(Error::Field {
                    agent,
                    field,
                    message: "value outside the declared range".into(),
                });
            }
        }
        Ok(Self { params, agents })
    }

    /// All agents in the default follower state.
    pub fn uniform(params: ProtocolParams) -> Self {
        Self {
            params,
            agents: vec![AgentState::default(); params.n()],
        }
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    /// Mutable access for building test and experiment fixtures.
    /// Callers are responsible for keeping fields in range.
    pub fn agents_mut(&mut self) -> &mut [AgentState] {
        &mut self.agents
    }

    pub fn agent(&self, i: usize) -> &AgentState {
        &self.agents[i]
    }

    pub fn right(&self, i: usize) -> usize {
        if i + 1 == self.agents.len() {
            0
        } else {
            i + 1
        }
    }

    pub fn left(&self, i: usize) -> usize {
        if i == 0 {
            self.agents.len() - 1
        } else {
            i - 1
        }
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n() {
            Err(Error::IndexOutOfRange {
                index,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Applies one interaction on the arc `(index, index + 1)` in place.
    ///
    /// # Panics
    /// If `index >= n`.
    #[inline]
    pub fn step_mut(&mut self, index: usize) {
        let j = self.right(index);
        let (mut l, mut r) = (self.agents[index], self.agents[j]);
        interact_in_place(&mut l, &mut r, &self.params);
        self.agents[index] = l;
        self.agents[j] = r;
    }

    /// [`Self::step_mut`] that also reports the interaction's events.
    pub fn step_traced(&mut self, index: usize) -> InteractionTrace {
        let j = self.right(index);
        let (mut l, mut r) = (self.agents[index], self.agents[j]);
        let trace = interact_traced(&mut l, &mut r, &self.params);
        self.agents[index] = l;
        self.agents[j] = r;
        trace
    }

    /// Value form of [`Self::step_mut`].
    pub fn step(&self, index: usize) -> Result<Configuration> {
        self.check_index(index)?;
        let mut next = self.clone();
        next.step_mut(index);
        Ok(next)
    }

    /// The same ring re-indexed so that agent `start` sits at index 0.
    pub fn rotated(&self, start: usize) -> Configuration {
        let mut agents = self.agents.clone();
        agents.rotate_left(start % self.n());
        Configuration {
            params: self.params,
            agents,
        }
    }
}

/// Every field of every agent drawn independently and uniformly from its range.
pub fn random_configuration(params: ProtocolParams, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let agents = (0..params.n())
        .map(|_| AgentState::random(&params, &mut rng))
        .collect();
    Configuration { params, agents }
}
