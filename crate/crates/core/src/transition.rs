//! The leader election transition function.
//!
//! One interaction updates the initiator `l` (left agent) and the responder
//! `r` (its right neighbor) by running, in order:
//!
//! 1. mode determination (resetting signals, `hits` lottery, clocks),
//! 2. the `dist`/`last` update with leader creation on a dist mismatch,
//! 3. black token movement (lane shift 0),
//! 4. white token movement (lane shift `psi`),
//! 5. leader elimination (bullets, shields, bullet-absence signals).
//!
//! Each block observes the writes of the blocks before it. The public
//! by-value functions mirror the blocks one to one; [`interact_ppl`] is their
//! composition.

use crate::params::ProtocolParams;
use crate::state::{AgentState, Bullet, Mode, Token, TokenColor};

/// How a token changed hands during one [`move_token`] call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TokenMotion {
    #[default]
    None,
    /// `l`'s rightward token arrived at its target `r` and turned around.
    Arrived,
    /// `l`'s rightward token stepped onto `r`.
    StepRight,
    /// `r`'s leftward token arrived at its target `l` and was re-armed.
    Rearmed,
    /// `r`'s leftward token stepped onto `l`.
    StepLeft,
}

impl TokenMotion {
    /// True when the token moved from `l` to `r`.
    pub fn rightward(self) -> bool {
        matches!(self, TokenMotion::Arrived | TokenMotion::StepRight)
    }

    /// True when the token moved from `r` to `l`.
    pub fn leftward(self) -> bool {
        matches!(self, TokenMotion::Rearmed | TokenMotion::StepLeft)
    }
}

/// What happened to one token lane during an interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TokenTrace {
    /// `l` generated a fresh token at its border.
    pub generated: bool,
    /// `l`'s token was destroyed because `r` holds a token or is in the last segment.
    pub collided: bool,
    pub motion: TokenMotion,
    /// A leader was created at `r` by a value mismatch on arrival.
    pub created_leader: bool,
    /// Final sweep: token at `l` deleted (last segment or invalid).
    pub swept_l: bool,
    /// Final sweep: token at `r` deleted (last segment or invalid).
    pub swept_r: bool,
    /// Of the sweeps, the ones caused by invalidity rather than `last`.
    pub swept_invalid_l: bool,
    pub swept_invalid_r: bool,
}

/// Bullet events of the elimination block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BulletTrace {
    /// `l` (a leader) fired a live bullet.
    pub l_fired: bool,
    /// `r` (a leader) fired a dummy bullet.
    pub r_fired: bool,
    /// `l`'s bullet hit the leader `r` and disappeared.
    pub hit_leader: bool,
    /// `l`'s bullet killed `r`.
    pub killed: bool,
    /// `l`'s bullet moved onto `r`.
    pub advanced: bool,
    /// `l`'s bullet vanished because `r` already carried one.
    pub blocked: bool,
}

/// Everything observable about one interaction besides the new states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InteractionTrace {
    /// `r` became a leader in the dist block.
    pub dist_created_leader: bool,
    pub black: TokenTrace,
    pub white: TokenTrace,
    pub bullets: BulletTrace,
}

impl InteractionTrace {
    pub fn token(&self, color: TokenColor) -> &TokenTrace {
        match color {
            TokenColor::Black => &self.black,
            TokenColor::White => &self.white,
        }
    }

    pub fn created_leader(&self) -> bool {
        self.dist_created_leader || self.black.created_leader || self.white.created_leader
    }
}

/// Full transition for the pair `(l, r)`.
pub fn interact_ppl(
    l: AgentState,
    r: AgentState,
    params: &ProtocolParams,
) -> (AgentState, AgentState) {
    let (mut l, mut r) = (l, r);
    interact_in_place(&mut l, &mut r, params);
    (l, r)
}

/// In-place form of [`interact_ppl`], used by the simulator's step loop.
#[inline]
pub fn interact_in_place(l: &mut AgentState, r: &mut AgentState, params: &ProtocolParams) {
    determine_mode_in_place(l, r, params);
    dist_step_in_place(l, r, params);
    move_token_in_place(l, r, TokenColor::Black, params);
    move_token_in_place(l, r, TokenColor::White, params);
    eliminate_in_place(l, r);
}

/// Like [`interact_in_place`] but also reports what happened.
pub fn interact_traced(
    l: &mut AgentState,
    r: &mut AgentState,
    params: &ProtocolParams,
) -> InteractionTrace {
    determine_mode_in_place(l, r, params);
    let dist_created_leader = dist_step_in_place(l, r, params);
    let black = move_token_in_place(l, r, TokenColor::Black, params);
    let white = move_token_in_place(l, r, TokenColor::White, params);
    let bullets = eliminate_in_place(l, r);
    InteractionTrace {
        dist_created_leader,
        black,
        white,
        bullets,
    }
}

pub fn determine_mode(
    l: AgentState,
    r: AgentState,
    params: &ProtocolParams,
) -> (AgentState, AgentState) {
    let (mut l, mut r) = (l, r);
    determine_mode_in_place(&mut l, &mut r, params);
    (l, r)
}

pub fn create_leader_diststep(
    l: AgentState,
    r: AgentState,
    params: &ProtocolParams,
) -> (AgentState, AgentState) {
    let (mut l, mut r) = (l, r);
    dist_step_in_place(&mut l, &mut r, params);
    (l, r)
}

pub fn move_token(
    l: AgentState,
    r: AgentState,
    color: TokenColor,
    params: &ProtocolParams,
) -> (AgentState, AgentState) {
    let (mut l, mut r) = (l, r);
    move_token_in_place(&mut l, &mut r, color, params);
    (l, r)
}

pub fn eliminate_leaders(l: AgentState, r: AgentState) -> (AgentState, AgentState) {
    let (mut l, mut r) = (l, r);
    eliminate_in_place(&mut l, &mut r);
    (l, r)
}

#[inline]
fn determine_mode_in_place(l: &mut AgentState, r: &mut AgentState, params: &ProtocolParams) {
    let psi = params.psi() as u8;
    let kappa = params.kappa_max();

    if l.leader {
        l.signal_r = kappa;
    }
    l.hits = 0;
    r.hits = (r.hits + 1).min(psi);
    if l.signal_r > 0 || r.signal_r > 0 {
        l.clock = 0;
        r.clock = 0;
        // the left signal absorbs the right one
        if l.signal_r >= r.signal_r && r.signal_r > 0 {
            r.hits = 0;
        }
        r.signal_r = l.signal_r.max(r.signal_r);
        l.signal_r = 0;
        if r.hits == psi {
            r.signal_r -= 1;
            r.hits = 0;
        }
    } else if r.hits == psi {
        r.clock = (r.clock + 1).min(kappa);
        r.hits = 0;
    }
    for v in [l, r] {
        v.mode = if v.clock == kappa {
            Mode::Detect
        } else {
            Mode::Construct
        };
    }
}

/// Returns true when `r` was turned into a leader.
#[inline]
fn dist_step_in_place(l: &mut AgentState, r: &mut AgentState, params: &ProtocolParams) -> bool {
    let psi = params.psi() as u8;
    let expected = if r.leader {
        0
    } else {
        (l.dist + 1) % (2 * psi)
    };
    let mut created = false;
    if r.mode == Mode::Detect && expected != r.dist {
        r.become_leader();
        created = true;
    }
    if r.mode == Mode::Construct {
        r.dist = expected;
    }
    l.last = if r.leader {
        true
    } else if r.dist == 0 || r.dist == psi {
        false
    } else {
        r.last
    };
    created
}

/// True when the token at an agent with the given `dist` points outside its lane.
///
/// A rightward token's target must sit in the second half of the lane
/// (`[psi, 2psi-1]` after the shift), a leftward token's target strictly
/// inside the first half (`[1, psi-1]`).
#[inline]
pub fn token_is_invalid(dist: u8, token: Token, shift: u32, psi: u32) -> bool {
    let m = 2 * psi as i32;
    let target = (dist as i32 + token.offset as i32 + shift as i32).rem_euclid(m);
    let psi = psi as i32;
    if token.offset > 0 {
        !(psi..m).contains(&target)
    } else {
        !(1..psi).contains(&target)
    }
}

#[inline]
fn move_token_in_place(
    l: &mut AgentState,
    r: &mut AgentState,
    color: TokenColor,
    params: &ProtocolParams,
) -> TokenTrace {
    let psi = params.psi();
    let shift = color.shift(psi);
    let mut trace = TokenTrace::default();
    let mut lt = l.token(color);
    let mut rt = r.token(color);

    if l.dist as u32 == shift && !l.last && lt.is_none() {
        lt = Some(Token::new(psi as i8, !l.b, l.b));
        trace.generated = true;
    }
    if lt.is_some() && (rt.is_some() || r.last) {
        lt = None;
        trace.collided = true;
    }

    match (lt, rt) {
        (Some(t), _) if t.offset == 1 => {
            // the token reaches its target
            if r.mode == Mode::Detect && t.value != r.b {
                r.become_leader();
                trace.created_leader = true;
            } else if r.mode == Mode::Construct {
                r.b = t.value;
            }
            rt = Some(Token::new(1 - psi as i8, t.value, t.carry));
            lt = None;
            trace.motion = TokenMotion::Arrived;
        }
        (Some(t), _) if t.offset >= 2 => {
            rt = Some(Token::new(t.offset - 1, t.value, t.carry));
            lt = None;
            trace.motion = TokenMotion::StepRight;
        }
        (_, Some(t)) if t.offset == -1 => {
            // the token reaches its target
            lt = Some(if t.carry {
                Token::new(psi as i8, !l.b, l.b)
            } else {
                Token::new(psi as i8, l.b, false)
            });
            rt = None;
            trace.motion = TokenMotion::Rearmed;
        }
        (_, Some(t)) if t.offset <= -2 => {
            // payload travels with the token
            lt = Some(Token::new(t.offset + 1, t.value, t.carry));
            rt = None;
            trace.motion = TokenMotion::StepLeft;
        }
        _ => {}
    }

    if let Some(t) = lt {
        let invalid = token_is_invalid(l.dist, t, shift, psi);
        if l.last || invalid {
            lt = None;
            trace.swept_l = true;
            trace.swept_invalid_l = invalid;
        }
    }
    if let Some(t) = rt {
        let invalid = token_is_invalid(r.dist, t, shift, psi);
        if r.last || invalid {
            rt = None;
            trace.swept_r = true;
            trace.swept_invalid_r = invalid;
        }
    }

    *l.token_mut(color) = lt;
    *r.token_mut(color) = rt;
    trace
}

#[inline]
fn eliminate_in_place(l: &mut AgentState, r: &mut AgentState) -> BulletTrace {
    let mut trace = BulletTrace::default();
    if l.leader && l.signal_b {
        l.bullet = Bullet::Live;
        l.shield = true;
        l.signal_b = false;
        trace.l_fired = true;
    }
    if r.leader && r.signal_b {
        r.bullet = Bullet::Dummy;
        r.shield = false;
        r.signal_b = false;
        trace.r_fired = true;
    }
    if l.bullet.is_some() && r.leader {
        if l.bullet == Bullet::Live && !r.shield {
            r.leader = false;
            trace.killed = true;
        }
        l.bullet = Bullet::None;
        trace.hit_leader = true;
    } else if l.bullet.is_some() {
        if r.bullet == Bullet::None {
            r.bullet = l.bullet;
            trace.advanced = true;
        } else {
            trace.blocked = true;
        }
        l.bullet = Bullet::None;
        r.signal_b = false;
    }
    l.signal_b = l.signal_b || r.signal_b || r.leader;
    trace
}
