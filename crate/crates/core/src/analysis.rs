//! Configuration predicates: distances to leaders, segments and their IDs,
//! perfection, token validity and correctness, peaceful bullets, and
//! membership in the nested sets C_PB ⊇ C_DL ⊇ S_PL.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::params::ProtocolParams;
use crate::state::{AgentState, Bullet, TokenColor};
use crate::transition::token_is_invalid;

/// A maximal border-to-border run of agents `start..start+length` (mod n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub length: usize,
}

pub fn leader_count(config: &Configuration) -> usize {
    config.agents().iter().filter(|a| a.leader).count()
}

/// Index of the only leader, if there is exactly one.
pub fn unique_leader(config: &Configuration) -> Option<usize> {
    let mut found = None;
    for (i, a) in config.agents().iter().enumerate() {
        if a.leader {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        }
    }
    found
}

/// Distances from agent `i` to the nearest leader on its left and on its
/// right (counting `i` itself). `None` stands for infinity.
pub fn nearest_leader_distances(
    config: &Configuration,
    i: usize,
) -> Result<(Option<usize>, Option<usize>)> {
    let n = config.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let a = config.agents();
    let left = (0..n).find(|&j| a[(i + n - j) % n].leader);
    let right = (0..n).find(|&j| a[(i + j) % n].leader);
    Ok((left, right))
}

fn is_border(a: &AgentState, psi: u32) -> bool {
    a.dist == 0 || a.dist as u32 == psi
}

/// The cyclic partition of the ring into segments, ordered by start index.
pub fn segments(config: &Configuration) -> Result<Vec<Segment>> {
    let psi = config.params().psi();
    let n = config.n();
    let borders: Vec<usize> = (0..n)
        .filter(|&i| is_border(config.agent(i), psi))
        .collect();
    if borders.is_empty() {
        return Err(Error::NoBorder);
    }
    Ok(borders
        .iter()
        .enumerate()
        .map(|(k, &start)| {
            let next = borders[(k + 1) % borders.len()];
            let length = (next + n - start) % n;
            Segment {
                start,
                length: if length == 0 { n } else { length },
            }
        })
        .collect())
}

/// Base-2 value of the segment's `b` bits, least significant at the border.
/// `None` when the segment is longer than 128 agents.
pub fn segment_id(config: &Configuration, s: Segment) -> Option<u128> {
    if s.length > 128 {
        return None;
    }
    Some(bits_value(config, s.start, s.length, 128))
}

/// Value of `length` bits starting at `start`, keeping only the low `width` bits.
fn bits_value(config: &Configuration, start: usize, length: usize, width: usize) -> u128 {
    let n = config.n();
    let mut v = 0u128;
    for j in 0..length.min(width) {
        if config.agent((start + j) % n).b {
            v |= 1 << j;
        }
    }
    v
}

/// Every agent satisfies the dist recurrence and every segment continues the
/// ID chain of its predecessor (or touches a leader).
pub fn is_perfect(config: &Configuration) -> bool {
    let p = config.params();
    let psi = p.psi();
    let n = config.n();
    let a = config.agents();
    for i in 0..n {
        let expected = if a[i].leader {
            0
        } else {
            (a[config.left(i)].dist as u32 + 1) % p.dist_modulus()
        };
        if a[i].dist as u32 != expected {
            return false;
        }
    }
    let segs = match segments(config) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let modulus = 1u128 << psi;
    let width = psi as usize;
    for (k, s) in segs.iter().enumerate() {
        let prev = segs[(k + segs.len() - 1) % segs.len()];
        let next_border = (s.start + s.length) % n;
        if a[s.start].leader || a[next_border].leader {
            continue;
        }
        let id = bits_value(config, s.start, s.length, width);
        let prev_id = bits_value(config, prev.start, prev.length, width);
        if id != (prev_id + 1) % modulus {
            return false;
        }
    }
    true
}

fn token_at(config: &Configuration, i: usize, color: TokenColor) -> Result<crate::state::Token> {
    let n = config.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    config.agent(i).token(color).ok_or(Error::NoToken(i))
}

/// The token of the given color at agent `i` stays on its lane.
pub fn token_is_valid(config: &Configuration, i: usize, color: TokenColor) -> Result<bool> {
    let t = token_at(config, i, color)?;
    let psi = config.params().psi();
    Ok(!token_is_invalid(
        config.agent(i).dist,
        t,
        color.shift(psi),
        psi,
    ))
}

/// Segment pair and round of a valid token at leader-relative position `k`,
/// computed in the unwrapped frame where segment `S_i` covers
/// `[i*psi, (i+1)*psi)`.
fn working_round(params: &ProtocolParams, k: usize, offset: i8) -> Option<(usize, usize)> {
    let psi = params.psi() as i64;
    let t = k as i64 + offset as i64;
    let (i, x) = if offset > 0 {
        let i = t.div_euclid(psi) - 1;
        (i, t - (i + 1) * psi)
    } else {
        if t < 0 {
            return None;
        }
        let i = t.div_euclid(psi);
        (i, t - i * psi - 1)
    };
    let zeta = params.zeta() as i64;
    if i < 0 || i > zeta - 2 || x < 0 || x >= psi {
        return None;
    }
    let k = k as i64;
    if k < i * psi || k >= (i + 2) * psi {
        return None;
    }
    Some((i as usize, x as usize))
}

/// Correctness of the token at leader-relative position `k`, or `None` when it
/// is not working for any segment pair.
fn token_correct_rel(
    config: &Configuration,
    leader: usize,
    k: usize,
    color: TokenColor,
) -> Option<bool> {
    let p = config.params();
    let n = config.n();
    let psi = p.psi() as usize;
    let at = |rel: usize| config.agent((leader + rel) % n);
    let t = at(k).token(color)?;
    let (i, x) = working_round(p, k, t.offset)?;
    if (i % 2 == 0) != (color == TokenColor::Black) {
        return None;
    }
    let base = i * psi;
    let j = (0..psi).find(|&j| !at(base + j).b).unwrap_or(psi);
    let carry = x < j;
    let value = at(base + x).b ^ (x <= j);
    Some(t.carry == carry && t.value == value)
}

/// Correctness of a working token in a configuration of C_DL.
///
/// The token in round `x` of pair `(S_i, S_{i+1})` must carry
/// `carry = [x < j]` and `value = b_x xor [x <= j]`, where `j` is the first
/// zero bit of `S_i`.
pub fn token_is_correct(config: &Configuration, i: usize, color: TokenColor) -> Result<bool> {
    token_at(config, i, color)?;
    if !in_c_dl(config) {
        return Err(Error::Precondition("configuration is not in C_DL".into()));
    }
    if !token_is_valid(config, i, color)? {
        return Err(Error::Precondition(format!("token at agent {i} is invalid")));
    }
    let leader = unique_leader(config).expect("C_DL has one leader");
    let n = config.n();
    let k = (i + n - leader) % n;
    token_correct_rel(config, leader, k, color).ok_or_else(|| {
        Error::Precondition(format!(
            "token at agent {i} is not working for any segment pair"
        ))
    })
}

/// A live bullet at `i` whose nearest left leader is shielded, with no
/// bullet-absence signal on the agents from that leader to `i`.
pub fn is_peaceful(config: &Configuration, i: usize) -> Result<bool> {
    let n = config.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if config.agent(i).bullet != Bullet::Live {
        return Err(Error::NoLiveBullet(i));
    }
    let (d_ll, _) = nearest_leader_distances(config, i)?;
    let Some(d) = d_ll else {
        return Ok(false);
    };
    let leader = config.agent((i + n - d) % n);
    Ok(leader.shield && (0..=d).all(|j| !config.agent((i + n - j) % n).signal_b))
}

/// For every agent, whether a live bullet sitting there would be peaceful.
/// All false when there is no leader.
pub fn peaceful_mask(config: &Configuration) -> Vec<bool> {
    let a = config.agents();
    let n = a.len();
    let mut mask = vec![false; n];
    let Some(first) = a.iter().position(|s| s.leader) else {
        return mask;
    };
    let mut calm = false;
    for k in 0..n {
        let i = (first + k) % n;
        let s = &a[i];
        calm = if s.leader {
            s.shield && !s.signal_b
        } else {
            calm && !s.signal_b
        };
        mask[i] = calm;
    }
    mask
}

/// At least one leader and every live bullet peaceful.
pub fn in_c_pb(config: &Configuration) -> bool {
    let a = config.agents();
    let n = a.len();
    let Some(first) = a.iter().position(|s| s.leader) else {
        return false;
    };
    // walk right from a leader, tracking whether a live bullet here would be peaceful
    let mut calm = false;
    for k in 0..n {
        let s = &a[(first + k) % n];
        calm = if s.leader {
            s.shield && !s.signal_b
        } else {
            calm && !s.signal_b
        };
        if s.bullet == Bullet::Live && !calm {
            return false;
        }
    }
    true
}

/// In C_PB with one leader, and with `dist` and `last` laid out from it.
pub fn in_c_dl(config: &Configuration) -> bool {
    let Some(leader) = unique_leader(config) else {
        return false;
    };
    in_c_pb(config) && dist_layout_ok(config, leader)
}

fn dist_layout_ok(config: &Configuration, leader: usize) -> bool {
    let p = config.params();
    let n = config.n();
    let m = p.dist_modulus() as usize;
    let last_from = p.psi() as usize * (p.zeta() - 1);
    (0..n).all(|k| {
        let s = config.agent((leader + k) % n);
        s.dist as usize == k % m && s.last == (k >= last_from)
    })
}

/// The safe set: in C_DL, every token valid and correct, and the segment IDs
/// `S_0, ..., S_{zeta-2}` increase by one.
pub fn in_s_pl(config: &Configuration) -> bool {
    if !in_c_dl(config) {
        return false;
    }
    let leader = unique_leader(config).expect("C_DL has one leader");
    let p = config.params();
    let n = config.n();
    let psi = p.psi();
    for k in 0..n {
        let i = (leader + k) % n;
        let s = config.agent(i);
        for color in TokenColor::ALL {
            if let Some(t) = s.token(color) {
                if token_is_invalid(s.dist, t, color.shift(psi), psi) {
                    return false;
                }
                if token_correct_rel(config, leader, k, color) != Some(true) {
                    return false;
                }
            }
        }
    }
    let width = psi as usize;
    let modulus = 1u128 << psi;
    let zeta = p.zeta();
    for i in 0..zeta.saturating_sub(2) {
        let a = bits_value(config, leader + i * width, width, width);
        let b = bits_value(config, leader + (i + 1) * width, width, width);
        if b != (a + 1) % modulus {
            return false;
        }
    }
    true
}

/// A configuration in S_PL: leader at index 0, the canonical `dist`/`last`
/// layout, segment IDs counting up from a seed-chosen start, and nothing in
/// flight.
pub fn construct_s_pl(params: ProtocolParams, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = params.psi() as usize;
    let zeta = params.zeta();
    let m = params.dist_modulus() as usize;
    let modulus = 1u128 << psi;
    let start: u128 = rng.gen_range(0..modulus);
    let mut c = Configuration::uniform(params);
    let agents = c.agents_mut();
    for (k, a) in agents.iter_mut().enumerate() {
        a.dist = (k % m) as u8;
        a.last = k >= psi * (zeta - 1);
        let seg = k / psi;
        a.b = if seg + 1 < zeta {
            let id = (start + seg as u128) % modulus;
            (id >> (k % psi)) & 1 == 1
        } else {
            rng.gen()
        };
    }
    agents[0].leader = true;
    agents[0].shield = true;
    c
}

/// `e_i, e_{i+1}, ..., e_{i+j-1}` as arc indices on a ring of `n` agents.
pub fn seq_r(i: usize, j: usize, n: usize) -> Vec<usize> {
    (0..j).map(|t| (i + t) % n).collect()
}

/// `e_{i-1}, e_{i-2}, ..., e_{i-j}` as arc indices on a ring of `n` agents.
pub fn seq_l(i: usize, j: usize, n: usize) -> Vec<usize> {
    (1..=j).map(|t| (i + n * (t / n + 1) - t) % n).collect()
}

/// `pattern` occurs in `trace` in order, not necessarily contiguously.
pub fn sequence_occurs(trace: &[usize], pattern: &[usize]) -> bool {
    let mut it = trace.iter();
    pattern.iter().all(|p| it.any(|t| t == p))
}
