//! Protocol sizing: the ring size `n`, the knowledge value `psi`, and the
//! clock ceiling `kappa_max`. Every other size in the crate is derived here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum multiplier between `kappa_max` and `psi`.
pub const KAPPA_FACTOR: u32 = 32;

/// Largest supported `psi`. Keeps `dist` in a `u8` and token offsets in an `i8`.
pub const MAX_PSI: u32 = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProtocolParams {
    n: usize,
    psi: u32,
    kappa_max: u32,
    zeta: usize,
}

/// Smallest `psi` with `psi >= 2` and `2^psi >= n`.
pub fn default_psi(n: usize) -> u32 {
    let mut psi = 0u32;
    while psi < 64 && (1u128 << psi) < n as u128 {
        psi += 1;
    }
    psi.max(2)
}

/// Parameters for a ring of `n` agents with `psi = max(2, ceil(log2 n))` and
/// `kappa_max = 32 * psi`.
pub fn make_params(n: usize) -> Result<ProtocolParams> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let psi = default_psi(n);
    ProtocolParams::new(n, psi, KAPPA_FACTOR * psi)
}

impl ProtocolParams {
    /// Validating constructor for explicit `(n, psi, kappa_max)` triples.
    pub fn new(n: usize, psi: u32, kappa_max: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        if psi < 2 {
            return Err(Error::InvalidParams(format!("psi = {psi} < 2")));
        }
        if psi > MAX_PSI {
            return Err(Error::InvalidParams(format!("psi = {psi} > {MAX_PSI}")));
        }
        if (1u128 << psi) < n as u128 {
            return Err(Error::InvalidParams(format!(
                "2^psi = {} < n = {n}",
                1u128 << psi
            )));
        }
        let min_kappa = KAPPA_FACTOR * psi;
        if kappa_max < min_kappa {
            return Err(Error::InvalidParams(format!(
                "kappa_max = {kappa_max} < 32 * psi = {min_kappa}"
            )));
        }
        Ok(Self {
            n,
            psi,
            kappa_max,
            zeta: n.div_ceil(psi as usize),
        })
    }

    /// Same parameters with a larger clock ceiling. Lowering below `32 * psi`
    /// is rejected.
    pub fn with_kappa_max(self, kappa_max: u32) -> Result<Self> {
        Self::new(self.n, self.psi, kappa_max)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn psi(&self) -> u32 {
        self.psi
    }

    pub fn kappa_max(&self) -> u32 {
        self.kappa_max
    }

    /// Number of segments, `ceil(n / psi)`.
    pub fn zeta(&self) -> usize {
        self.zeta
    }

    /// Modulus of the `dist` field, `2 * psi`.
    pub fn dist_modulus(&self) -> u32 {
        2 * self.psi
    }

    /// Number of moves a token makes from birth to its final destination.
    pub fn trajectory_length(&self) -> u64 {
        let psi = self.psi as u64;
        2 * psi * psi - 2 * psi + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimum_ring() {
        let p = make_params(2).unwrap();
        assert_eq!((p.psi(), p.kappa_max(), p.zeta()), (2, 64, 1));
    }

    #[test]
    fn power_of_two() {
        let p = make_params(16).unwrap();
        assert_eq!((p.psi(), p.kappa_max(), p.zeta()), (4, 128, 4));
    }

    #[test]
    fn hundred_agents() {
        let p = make_params(100).unwrap();
        assert_eq!((p.psi(), p.kappa_max(), p.zeta()), (7, 224, 15));
    }

    #[test]
    fn rejects_tiny_rings() {
        assert!(matches!(make_params(0), Err(Error::InvalidSize(0))));
        assert!(matches!(make_params(1), Err(Error::InvalidSize(1))));
    }

    #[test]
    fn rejects_small_knowledge() {
        assert!(ProtocolParams::new(17, 4, 128).is_err());
        assert!(ProtocolParams::new(16, 4, 128).is_ok());
        assert!(ProtocolParams::new(4, 1, 64).is_err());
    }

    #[test]
    fn kappa_override_only_upward() {
        let p = make_params(16).unwrap();
        assert_eq!(p.with_kappa_max(500).unwrap().kappa_max(), 500);
        assert!(p.with_kappa_max(127).is_err());
    }

    #[test]
    fn invariants_hold_over_a_range() {
        for n in 2..2000 {
            let p = make_params(n).unwrap();
            assert!(p.psi() >= 2);
            assert!((1u64 << p.psi()) >= n as u64);
            assert!(p.psi() == 2 || (1u64 << (p.psi() - 1)) < n as u64);
            assert_eq!(p.zeta(), n.div_ceil(p.psi() as usize));
            assert!(p.kappa_max() >= 32 * p.psi());
        }
    }

    #[test]
    fn trajectory_length_formula() {
        let p = make_params(16).unwrap();
        assert_eq!(p.trajectory_length(), 25);
    }
}
