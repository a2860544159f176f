//! Simulation engine for a self-stabilizing leader election population
//! protocol on directed rings, with its configuration predicates, the
//! lottery game behind its timers, and a ring orientation protocol for
//! undirected rings.

pub mod analysis;
pub mod config;
pub mod error;
pub mod experiment;
pub mod instrument;
pub mod lottery;
pub mod orientation;
pub mod params;
pub mod run;
pub mod scheduler;
pub mod snapshot;
pub mod state;
pub mod transition;

pub use config::{random_configuration, Configuration};
pub use error::{Error, Result};
pub use params::{make_params, ProtocolParams};
pub use run::{run, RunOutcome};
pub use scheduler::SchedulerStream;
pub use state::{AgentState, Bullet, Mode, Token, TokenColor};
pub use transition::interact_ppl;
