//! Lattice configuration and basis labels for `N` walkers on a ring of `d`
//! sites, each carrying a two-level coin.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{arg_err, Result};
use crate::linalg::Mat2;
use crate::scalar::Real;

/// Direction tag of a single coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coin {
    Right,
    Left,
}

impl Coin {
    /// Index in the `(right, left)` coin basis.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Coin::Right => 0,
            Coin::Left => 1,
        }
    }

    #[inline]
    pub fn from_index(i: usize) -> Coin {
        if i & 1 == 0 {
            Coin::Right
        } else {
            Coin::Left
        }
    }

    /// Lattice displacement produced by the conditional shift.
    #[inline]
    pub fn displacement(self) -> isize {
        match self {
            Coin::Right => 1,
            Coin::Left => -1,
        }
    }
}

/// Packs coins into an integer, first particle in the most significant bit
/// (`right = 0`, `left = 1`). For two coins the order is `→→, →←, ←→, ←←`.
pub fn coin_index(coins: &[Coin]) -> usize {
    coins.iter().fold(0, |acc, c| (acc << 1) | c.index())
}

/// Inverse of [`coin_index`].
pub fn coins_from_index(index: usize, n: usize) -> Vec<Coin> {
    (0..n).map(|i| Coin::from_index(index >> (n - 1 - i))).collect()
}

/// Single-particle coin applied to walkers that are alone at their site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FreeCoin<T> {
    Identity,
    Hadamard,
    /// `[[e^{iξ}cosθ, e^{iζ}sinθ], [−e^{−iζ}sinθ, e^{−iξ}cosθ]]` in the
    /// `(right, left)` basis.
    Parametrized {
        theta: T,
        xi: T,
        zeta: T,
    },
}

impl<T: Real> FreeCoin<T> {
    pub fn matrix(&self) -> Mat2<T> {
        match *self {
            FreeCoin::Identity => Mat2::identity(),
            FreeCoin::Hadamard => {
                let s = T::FRAC_1_SQRT_2();
                let p = Complex::new(s, T::zero());
                Mat2::new(p, p, p, -p)
            }
            FreeCoin::Parametrized { theta, xi, zeta } => {
                let (sin, cos) = theta.sin_cos();
                Mat2::new(
                    Complex::from_polar(cos, xi),
                    Complex::from_polar(sin, zeta),
                    -Complex::from_polar(sin, -zeta),
                    Complex::from_polar(cos, -xi),
                )
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, FreeCoin::Identity)
    }
}

/// Particle count, ring size, interaction phase and free coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig<T> {
    particle_count: usize,
    site_count: usize,
    phase: T,
    free_coin: FreeCoin<T>,
}

impl<T: Real> LatticeConfig<T> {
    /// `phase` must lie strictly inside `(0, 2π)`: a zero phase makes the
    /// interaction trivial.
    pub fn new(particle_count: usize, site_count: usize, phase: T) -> Result<Self> {
        if particle_count == 0 {
            return arg_err("particle count must be at least 1");
        }
        if site_count < 2 {
            return arg_err(format!("site count must be at least 2, got {site_count}"));
        }
        check_phase(phase)?;
        Ok(LatticeConfig {
            particle_count,
            site_count,
            phase,
            free_coin: FreeCoin::Identity,
        })
    }

    pub fn with_free_coin(mut self, free_coin: FreeCoin<T>) -> Self {
        self.free_coin = free_coin;
        self
    }

    /// Same lattice and interaction with a different number of walkers.
    pub fn with_particle_count(self, particle_count: usize) -> Result<Self> {
        LatticeConfig::new(particle_count, self.site_count, self.phase)
            .map(|c| c.with_free_coin(self.free_coin))
    }

    #[inline]
    pub fn particle_count(&self) -> usize {
        self.particle_count
    }

    #[inline]
    pub fn site_count(&self) -> usize {
        self.site_count
    }

    #[inline]
    pub fn phase(&self) -> T {
        self.phase
    }

    #[inline]
    pub fn free_coin(&self) -> FreeCoin<T> {
        self.free_coin
    }
}

pub(crate) fn check_phase<T: Real>(phase: T) -> Result<()> {
    if !phase.is_finite() || phase <= T::zero() || phase >= T::TAU() {
        return arg_err(format!("interaction phase must lie in (0, 2π), got {phase}"));
    }
    Ok(())
}

/// Positions (reduced modulo `d`) and coins of every particle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    positions: Vec<usize>,
    coins: Vec<Coin>,
}

impl BasisLabel {
    pub fn new<T: Real>(config: &LatticeConfig<T>, positions: &[i64], coins: &[Coin]) -> Result<Self> {
        let n = config.particle_count();
        if positions.len() != n || coins.len() != n {
            return arg_err(format!(
                "expected {n} positions and coins, got {} and {}",
                positions.len(),
                coins.len()
            ));
        }
        let d = config.site_count() as i64;
        Ok(BasisLabel {
            positions: positions.iter().map(|&x| x.rem_euclid(d) as usize).collect(),
            coins: coins.to_vec(),
        })
    }

    /// Caller guarantees positions are already reduced.
    pub(crate) fn from_parts(positions: Vec<usize>, coins: Vec<Coin>) -> Self {
        debug_assert_eq!(positions.len(), coins.len());
        BasisLabel { positions, coins }
    }

    /// All particles on `x` with the same coin `c`.
    pub(crate) fn collective(n: usize, x: usize, c: Coin) -> Self {
        BasisLabel {
            positions: vec![x; n],
            coins: vec![c; n],
        }
    }

    #[inline]
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    #[inline]
    pub fn coins(&self) -> &[Coin] {
        &self.coins
    }

    pub fn particle_count(&self) -> usize {
        self.positions.len()
    }

    /// True when every particle shares one site and one coin direction.
    pub fn is_collective(&self) -> bool {
        let same_pos = self.positions.windows(2).all(|w| w[0] == w[1]);
        let same_coin = self.coins.windows(2).all(|w| w[0] == w[1]);
        same_pos && same_coin
    }

    pub(crate) fn translated(&self, shift: isize, d: usize) -> Self {
        let d = d as isize;
        BasisLabel {
            positions: self
                .positions
                .iter()
                .map(|&x| (x as isize + shift).rem_euclid(d) as usize)
                .collect(),
            coins: self.coins.clone(),
        }
    }

    pub(crate) fn into_parts(self) -> (Vec<usize>, Vec<Coin>) {
        (self.positions, self.coins)
    }
}
