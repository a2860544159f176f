//! Per-agent state of the leader election protocol.

use rand::Rng;

use crate::params::ProtocolParams;

/// A black or white token: the signed offset to its target agent plus the
/// value bit it will write (or check) and the carry flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    pub offset: i8,
    pub value: bool,
    pub carry: bool,
}

impl Token {
    pub fn new(offset: i8, value: bool, carry: bool) -> Self {
        Self {
            offset,
            value,
            carry,
        }
    }

    /// Offset range is `[-psi+1, -1] ∪ [1, psi]`.
    pub fn in_range(&self, psi: u32) -> bool {
        let o = self.offset as i32;
        let psi = psi as i32;
        (1..=psi).contains(&o) || (-psi + 1..=-1).contains(&o)
    }
}

/// Which of the two token lanes an operation addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenColor {
    Black,
    White,
}

impl TokenColor {
    pub const ALL: [TokenColor; 2] = [TokenColor::Black, TokenColor::White];

    /// Dist shift of the lane: 0 for black, `psi` for white.
    pub fn shift(self, psi: u32) -> u32 {
        match self {
            TokenColor::Black => 0,
            TokenColor::White => psi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Detect,
    Construct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Bullet {
    None = 0,
    Dummy = 1,
    Live = 2,
}

impl Bullet {
    pub fn from_level(level: u8) -> Option<Self> {
        match level {
            0 => Some(Bullet::None),
            1 => Some(Bullet::Dummy),
            2 => Some(Bullet::Live),
            _ => None,
        }
    }

    pub fn level(self) -> u8 {
        self as u8
    }

    pub fn is_some(self) -> bool {
        self != Bullet::None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentState {
    pub leader: bool,
    pub b: bool,
    pub dist: u8,
    pub last: bool,
    pub token_b: Option<Token>,
    pub token_w: Option<Token>,
    pub mode: Mode,
    pub clock: u32,
    pub hits: u8,
    pub signal_r: u32,
    pub bullet: Bullet,
    pub shield: bool,
    pub signal_b: bool,
}

impl Default for AgentState {
    fn default() -> Self {
        Self {
            leader: false,
            b: false,
            dist: 0,
            last: false,
            token_b: None,
            token_w: None,
            mode: Mode::Construct,
            clock: 0,
            hits: 0,
            signal_r: 0,
            bullet: Bullet::None,
            shield: false,
            signal_b: false,
        }
    }
}

impl AgentState {
    pub fn token(&self, color: TokenColor) -> Option<Token> {
        match color {
            TokenColor::Black => self.token_b,
            TokenColor::White => self.token_w,
        }
    }

    pub fn token_mut(&mut self, color: TokenColor) -> &mut Option<Token> {
        match color {
            TokenColor::Black => &mut self.token_b,
            TokenColor::White => &mut self.token_w,
        }
    }

    /// Turns the agent into a shielded leader carrying a live bullet.
    pub(crate) fn become_leader(&mut self) {
        self.leader = true;
        self.bullet = Bullet::Live;
        self.shield = true;
        self.signal_b = false;
    }

    /// Draws every field independently and uniformly from its declared range.
    /// The result may be internally inconsistent, as arbitrary initial states are.
    pub fn random<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Self {
        let psi = params.psi();
        let kappa = params.kappa_max();
        let token = |rng: &mut R| -> Option<Token> {
            // psi + (psi - 1) offsets, plus "no token".
            let slots = 2 * psi;
            let k = rng.gen_range(0..slots);
            if k == 0 {
                None
            } else {
                let offset = if k <= psi {
                    k as i32
                } else {
                    -((k - psi) as i32)
                };
                Some(Token::new(offset as i8, rng.gen(), rng.gen()))
            }
        };
        let token_b = token(rng);
        let token_w = token(rng);
        Self {
            leader: rng.gen(),
            b: rng.gen(),
            dist: rng.gen_range(0..2 * psi) as u8,
            last: rng.gen(),
            token_b,
            token_w,
            mode: if rng.gen() {
                Mode::Detect
            } else {
                Mode::Construct
            },
            clock: rng.gen_range(0..=kappa),
            hits: rng.gen_range(0..=psi) as u8,
            signal_r: rng.gen_range(0..=kappa),
            bullet: Bullet::from_level(rng.gen_range(0..3)).unwrap(),
            shield: rng.gen(),
            signal_b: rng.gen(),
        }
    }

    /// Name of the first field outside its declared range, if any.
    pub fn out_of_range_field(&self, params: &ProtocolParams) -> Option<&'static str> {
        let psi = params.psi();
        if self.dist as u32 >= 2 * psi {
            return Some("dist");
        }
        if self.token_b.is_some_and(|t| !t.in_range(psi)) {
            return Some("token_b");
        }
        if self.token_w.is_some_and(|t| !t.in_range(psi)) {
            return Some("token_w");
        }
        if self.clock > params.kappa_max() {
            return Some("clock");
        }
        if self.hits as u32 > psi {
            return Some("hits");
        }
        if self.signal_r > params.kappa_max() {
            return Some("signal_r");
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn random_states_stay_in_range_and_cover_offsets() {
        let p = make_params(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut offsets = HashSet::new();
        let mut none = 0;
        for _ in 0..20_000 {
            let s = AgentState::random(&p, &mut rng);
            assert_eq!(s.out_of_range_field(&p), None);
            match s.token_b {
                Some(t) => {
                    offsets.insert(t.offset);
                }
                None => none += 1,
            }
        }
        // [-3, -1] ∪ [1, 4] at psi = 4
        let expected: HashSet<i8> = [-3, -2, -1, 1, 2, 3, 4].into_iter().collect();
        assert_eq!(offsets, expected);
        assert!(none > 0);
    }

    #[test]
    fn token_range() {
        assert!(Token::new(4, false, false).in_range(4));
        assert!(Token::new(-3, false, false).in_range(4));
        assert!(!Token::new(-4, false, false).in_range(4));
        assert!(!Token::new(0, false, false).in_range(4));
        assert!(!Token::new(5, false, false).in_range(4));
    }

    #[test]
    fn new_leader_is_shielded_and_armed() {
        let mut s = AgentState {
            signal_b: true,
            ..AgentState::default()
        };
        s.become_leader();
        assert!(s.leader && s.shield && !s.signal_b);
        assert_eq!(s.bullet, Bullet::Live);
    }
}
