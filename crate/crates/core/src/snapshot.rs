//! JSON snapshots of a ring.
//!
//! ```json
//! {"n": 4, "psi": 2, "kappa_max": 64, "agents": [
//!   {"leader": 1, "b": 0, "dist": 0, "last": 0, "token_b": [2, 1, 0], "token_w": null,
//!    "mode": "Construct", "clock": 0, "hits": 0, "signal_r": 0, "bullet": 0,
//!    "shield": 1, "signal_b": 0}, ...]}
//! ```
//!
//! Bits are written as 0/1 and tokens as `[offset, value_bit, carry_bit]`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::params::ProtocolParams;
use crate::state::{AgentState, Bullet, Mode, Token};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Snapshot {
    n: usize,
    psi: u32,
    kappa_max: u32,
    agents: Vec<AgentRecord>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum ModeName {
    Detect,
    Construct,
}

// Integers are read wider than the state fields so that range problems are
// reported per field rather than as JSON type errors.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AgentRecord {
    leader: u64,
    b: u64,
    dist: u64,
    last: u64,
    token_b: Option<(i64, u64, u64)>,
    token_w: Option<(i64, u64, u64)>,
    mode: ModeName,
    clock: u64,
    hits: u64,
    signal_r: u64,
    bullet: u64,
    shield: u64,
    signal_b: u64,
}

impl From<&AgentState> for AgentRecord {
    fn from(a: &AgentState) -> Self {
        let token = |t: Option<Token>| t.map(|t| (t.offset as i64, t.value as u64, t.carry as u64));
        Self {
            leader: a.leader as u64,
            b: a.b as u64,
            dist: a.dist as u64,
            last: a.last as u64,
            token_b: token(a.token_b),
            token_w: token(a.token_w),
            mode: match a.mode {
                Mode::Detect => ModeName::Detect,
                Mode::Construct => ModeName::Construct,
            },
            clock: a.clock as u64,
            hits: a.hits as u64,
            signal_r: a.signal_r as u64,
            bullet: a.bullet.level() as u64,
            shield: a.shield as u64,
            signal_b: a.signal_b as u64,
        }
    }
}

impl AgentRecord {
    fn into_state(self, agent: usize, p: &ProtocolParams) -> Result<AgentState> {
        let field = |field: &'static str, message: String| Error::Field {
            agent,
            field,
            message,
        };
        let bit = |name: &'static str, v: u64| -> Result<bool> {
            match v {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(field(name, format!("{v} is not a bit"))),
            }
        };
        let upto = |name: &'static str, v: u64, max: u64| -> Result<u64> {
            if v > max {
                Err(field(name, format!("{v} exceeds {max}")))
            } else {
                Ok(v)
            }
        };
        let psi = p.psi();
        let token = |name: &'static str, t: Option<(i64, u64, u64)>| -> Result<Option<Token>> {
            let Some((offset, value, carry)) = t else {
                return Ok(None);
            };
            let psi = psi as i64;
            if offset == 0 || offset > psi || offset < 1 - psi {
                return Err(field(
                    name,
                    format!("offset {offset} outside [{}, -1] and [1, {psi}]", 1 - psi),
                ));
            }
            Ok(Some(Token::new(
                offset as i8,
                bit(name, value)?,
                bit(name, carry)?,
            )))
        };
        let kappa = p.kappa_max() as u64;
        Ok(AgentState {
            leader: bit("leader", self.leader)?,
            b: bit("b", self.b)?,
            dist: upto("dist", self.dist, p.dist_modulus() as u64 - 1)? as u8,
            last: bit("last", self.last)?,
            token_b: token("token_b", self.token_b)?,
            token_w: token("token_w", self.token_w)?,
            mode: match self.mode {
                ModeName::Detect => Mode::Detect,
                ModeName::Construct => Mode::Construct,
            },
            clock: upto("clock", self.clock, kappa)? as u32,
            hits: upto("hits", self.hits, psi as u64)? as u8,
            signal_r: upto("signal_r", self.signal_r, kappa)? as u32,
            bullet: Bullet::from_level(upto("bullet", self.bullet, 2)? as u8)
                .expect("level checked"),
            shield: bit("shield", self.shield)?,
            signal_b: bit("signal_b", self.signal_b)?,
        })
    }
}

pub fn to_json(config: &Configuration) -> String {
    let p = config.params();
    let snap = Snapshot {
        n: p.n(),
        psi: p.psi(),
        kappa_max: p.kappa_max(),
        agents: config.agents().iter().map(AgentRecord::from).collect(),
    };
    serde_json::to_string_pretty(&snap).expect("snapshot serializes")
}

pub fn from_json(text: &str) -> Result<Configuration> {
    let snap: Snapshot = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let params = ProtocolParams::new(snap.n, snap.psi, snap.kappa_max)?;
    if snap.agents.len() != snap.n {
        return Err(Error::Precondition(format!(
            "snapshot lists {} agents but n = {}",
            snap.agents.len(),
            snap.n
        )));
    }
    let agents = snap
        .agents
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.into_state(i, &params))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(params, agents)
}

pub fn dump_config(config: &Configuration, path: impl AsRef<Path>) -> Result<()> {
    let mut text = to_json(config);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Configuration> {
    from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::construct_s_pl;
    use crate::config::random_configuration;
    use crate::params::make_params;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip(n in 2usize..70, seed in any::<u64>()) {
            let c = random_configuration(make_params(n).unwrap(), seed);
            prop_assert_eq!(from_json(&to_json(&c)).unwrap(), c);
        }
    }

    #[test]
    fn field_layout() {
        let c = construct_s_pl(make_params(4).unwrap(), 0);
        let v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["psi"], 2);
        assert_eq!(v["kappa_max"], 64);
        assert_eq!(v["agents"][0]["leader"], 1);
        assert_eq!(v["agents"][0]["mode"], "Construct");
        assert!(v["agents"][0]["token_b"].is_null());
    }

    #[test]
    fn token_as_triple() {
        let mut c = construct_s_pl(make_params(4).unwrap(), 0);
        c.agents_mut()[0].token_b = Some(Token::new(-1, true, false));
        let v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        assert_eq!(v["agents"][0]["token_b"], serde_json::json!([-1, 1, 0]));
    }

    #[test]
    fn truncated_input() {
        let text = to_json(&random_configuration(make_params(8).unwrap(), 1));
        let cut = &text[..text.len() / 2];
        match from_json(cut) {
            Err(Error::Parse { line, .. }) => assert!(line > 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn out_of_range_fields() {
        let c = random_configuration(make_params(8).unwrap(), 1);
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        v["agents"][3]["dist"] = 6.into();
        match from_json(&v.to_string()) {
            Err(Error::Field { agent, field, .. }) => assert_eq!((agent, field), (3, "dist")),
            other => panic!("{other:?}"),
        }
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        v["agents"][5]["token_w"] = serde_json::json!([-3, 0, 1]);
        match from_json(&v.to_string()) {
            Err(Error::Field { agent, field, .. }) => assert_eq!((agent, field), (5, "token_w")),
            other => panic!("{other:?}"),
        }
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        v["agents"][0]["shield"] = 2.into();
        assert!(matches!(
            from_json(&v.to_string()),
            Err(Error::Field { field: "shield", .. })
        ));
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        v["psi"] = 2.into();
        assert!(matches!(from_json(&v.to_string()), Err(Error::InvalidParams(_))));
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&c)).unwrap();
        v["agents"].as_array_mut().unwrap().pop();
        assert!(matches!(from_json(&v.to_string()), Err(Error::Precondition(_))));
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("ssle-snap-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        let c = random_configuration(make_params(16).unwrap(), 5);
        dump_config(&c, &path).unwrap();
        assert_eq!(load_config(&path).unwrap(), c);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
