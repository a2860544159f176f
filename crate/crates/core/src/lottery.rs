//! The lottery game: fair coin flips grouped into rounds, where a round ends
//! with a loss at the first tail or a win at the `k`-th consecutive head.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scheduler::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LotteryOutcome {
    pub flips: u64,
    pub rounds_played: u64,
    pub rounds_won: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// More than `8ck` wins within `4ck * 2^k` flips.
    Upper,
    /// Fewer than `16ck` wins within `64ck * 2^k` flips.
    Lower,
}

/// Fair coin drawing 64 flips per generator call.
struct Coin {
    rng: ChaCha8Rng,
    buf: u64,
    left: u32,
}

impl Coin {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            buf: 0,
            left: 0,
        }
    }

    #[inline]
    fn heads(&mut self) -> bool {
        if self.left == 0 {
            self.buf = self.rng.next_u64();
            self.left = 64;
        }
        let h = self.buf & 1 == 1;
        self.buf >>= 1;
        self.left -= 1;
        h
    }
}

/// Plays `flips` coin flips. A round still open when the budget runs out is
/// not counted.
pub fn play_lottery(k: u32, flips: u64, seed: u64) -> Result<LotteryOutcome> {
    if k == 0 {
        return Err(Error::InvalidParams("lottery needs k >= 1".into()));
    }
    let mut coin = Coin::new(seed);
    let mut out = LotteryOutcome {
        flips,
        rounds_played: 0,
        rounds_won: 0,
    };
    let mut run = 0;
    for _ in 0..flips {
        if coin.heads() {
            run += 1;
            if run == k {
                out.rounds_played += 1;
                out.rounds_won += 1;
                run = 0;
            }
        } else {
            out.rounds_played += 1;
            run = 0;
        }
    }
    Ok(out)
}

/// Plays exactly `rounds` rounds and returns how many were won.
pub fn play_rounds(k: u32, rounds: u64, seed: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParams("lottery needs k >= 1".into()));
    }
    let mut coin = Coin::new(seed);
    let mut won = 0;
    for _ in 0..rounds {
        let mut run = 0;
        while coin.heads() {
            run += 1;
            if run == k {
                won += 1;
                break;
            }
        }
    }
    Ok(won)
}

/// Flip budget and win threshold of a bound.
pub fn bound_setup(k: u32, c: u32, which: Bound) -> (u64, u64) {
    let ck = c as u64 * k as u64;
    let pow = 1u64 << k;
    match which {
        Bound::Upper => (4 * ck * pow, 8 * ck),
        Bound::Lower => (64 * ck * pow, 16 * ck),
    }
}

/// The analytical failure bound, `2^(-ck)`.
pub fn analytic_bound(k: u32, c: u32) -> f64 {
    2f64.powi(-((c * k) as i32))
}

/// Fraction of `trials` independent games in which the bound's event fails.
pub fn estimate_bound(k: u32, c: u32, which: Bound, trials: u64, seed: u64) -> Result<f64> {
    if k < 1 || (which == Bound::Lower && k < 2) {
        return Err(Error::InvalidParams(format!("k = {k} too small for {which:?}")));
    }
    if c < 1 {
        return Err(Error::InvalidParams("c must be at least 1".into()));
    }
    if trials < 1 {
        return Err(Error::InvalidParams("at least one trial is required".into()));
    }
    if k >= 40 {
        return Err(Error::InvalidParams(format!("k = {k} is too large")));
    }
    let (flips, threshold) = bound_setup(k, c, which);
    let failures: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let won = play_lottery(k, flips, derive_seed(seed, &[t]))
                .expect("k checked above")
                .rounds_won;
            let failed = match which {
                Bound::Upper => won > threshold,
                Bound::Lower => won < threshold,
            };
            failed as u64
        })
        .sum();
    Ok(failures as f64 / trials as f64)
}
