//! Conditional shift, Grover-type contact interaction and the (projected)
//! walk step.
//!
//! Particles sharing a site interact through the product of pair operators
//! `G(φ) = I + (e^{iφ} − 1)|+⟩⟨+|⊗|+⟩⟨+|` over every pair in the group. The
//! pair operators are diagonal in the `|±⟩` product basis, so a group of `m`
//! walkers with `p` factors equal to `|+⟩` just picks up `e^{iφ·p(p−1)/2}`.
//! The dense group matrix in the `(→, ←)` basis is assembled once per group
//! size from that phase law.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::lattice::{coin_index, BasisLabel, Coin, LatticeConfig};
use crate::linalg::Mat2;
use crate::scalar::Real;
use crate::state::PureState;

/// One walk step `S^{⊗N} C(x)`, optionally followed by the projector onto
/// collective labels (all walkers on one site with one coin direction).
#[derive(Debug, Clone)]
pub struct StepOperator<T: Real> {
    config: LatticeConfig<T>,
    projected: bool,
    // group_ops[m] is the 2^m x 2^m interaction for a co-located group of m
    // walkers, row-major, coins packed by `coin_index`.
    group_ops: Vec<Vec<Complex<T>>>,
    free: Mat2<T>,
}

impl<T: Real> StepOperator<T> {
    pub fn new(config: &LatticeConfig<T>, projected: bool) -> Self {
        let n = config.particle_count();
        let group_ops = (0..=n)
            .map(|m| {
                if m < 2 {
                    Vec::new()
                } else {
                    group_interaction(m, config.phase())
                }
            })
            .collect();
        StepOperator {
            config: *config,
            projected,
            group_ops,
            free: config.free_coin().matrix(),
        }
    }

    /// `U_N`.
    pub fn unitary(config: &LatticeConfig<T>) -> Self {
        Self::new(config, false)
    }

    /// `V_N = Π_N U_N`.
    pub fn projected(config: &LatticeConfig<T>) -> Self {
        Self::new(config, true)
    }

    pub fn config(&self) -> &LatticeConfig<T> {
        &self.config
    }

    pub fn is_projected(&self) -> bool {
        self.projected
    }

    /// Dense interaction for `m` co-located walkers (`2 ≤ m ≤ N`).
    pub fn group_operator(&self, m: usize) -> &[Complex<T>] {
        &self.group_ops[m]
    }

    pub fn apply(&self, s: &PureState<T>) -> PureState<T> {
        let out = apply_shift(&self.interact(s));
        if self.projected {
            project_bound(&out)
        } else {
            out
        }
    }

    /// `C(x)`: Grover product inside each co-located group, free coin on
    /// walkers that are alone.
    pub fn interact(&self, s: &PureState<T>) -> PureState<T> {
        debug_assert_eq!(s.config().particle_count(), self.config.particle_count());
        let n = self.config.particle_count();
        let free_identity = self.config.free_coin().is_identity();
        let mut out: BTreeMap<BasisLabel, Complex<T>> = BTreeMap::new();
        let mut order: Vec<usize> = (0..n).collect();
        let mut branches: Vec<(Vec<Coin>, Complex<T>)> = Vec::new();
        let mut next: Vec<(Vec<Coin>, Complex<T>)> = Vec::new();

        for (label, &amp) in s.iter() {
            let pos = label.positions();
            order.sort_by_key(|&i| (pos[i], i));
            branches.clear();
            branches.push((label.coins().to_vec(), amp));

            let mut start = 0;
            while start < n {
                let mut end = start + 1;
                while end < n && pos[order[end]] == pos[order[start]] {
                    end += 1;
                }
                let group = &order[start..end];
                start = end;
                let m = group.len();
                if m == 1 && free_identity {
                    continue;
                }
                next.clear();
                for (coins, a) in branches.drain(..) {
                    if m == 1 {
                        let i = group[0];
                        let col = coins[i].index();
                        for row in 0..2 {
                            let z = self.free.0[row][col];
                            if z != Complex::default() {
                                let mut c = coins.clone();
                                c[i] = Coin::from_index(row);
                                next.push((c, a * z));
                            }
                        }
                    } else {
                        let local: Vec<Coin> = group.iter().map(|&i| coins[i]).collect();
                        let col = coin_index(&local);
                        let dim = 1usize << m;
                        let op = &self.group_ops[m];
                        for row in 0..dim {
                            let z = op[row * dim + col];
                            if z.norm_sqr() == T::zero() {
                                continue;
                            }
                            let mut c = coins.clone();
                            for (k, &i) in group.iter().enumerate() {
                                c[i] = Coin::from_index(row >> (m - 1 - k));
                            }
                            next.push((c, a * z));
                        }
                    }
                }
                std::mem::swap(&mut branches, &mut next);
            }

            for (coins, a) in branches.drain(..) {
                let l = BasisLabel::from_parts(pos.to_vec(), coins);
                *out.entry(l).or_default() += a;
            }
        }
        PureState::from_map_unchecked(*s.config(), out, s.prune_epsilon())
    }
}

/// Dense `Π_{j<l} G_jl(φ)` on `m` coins, built from the `|±⟩` phase law.
fn group_interaction<T: Real>(m: usize, phase: T) -> Vec<Complex<T>> {
    let dim = 1usize << m;
    // α bit set = |−⟩ factor; ⟨c|α⟩ = 2^{-m/2}(−1)^{popcount(c & α)}.
    let phases: Vec<Complex<T>> = (0..dim)
        .map(|alpha| {
            let plus = m - (alpha as u32).count_ones() as usize;
            let pairs = plus * plus.saturating_sub(1) / 2;
            Complex::from_polar(T::one(), phase * T::count(pairs))
        })
        .collect();
    let scale = T::one() / T::count(dim);
    let mut op = vec![Complex::default(); dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            let mut acc = Complex::default();
            for (alpha, p) in phases.iter().enumerate() {
                let parity = ((row & alpha).count_ones() + (col & alpha).count_ones()) & 1;
                if parity == 0 {
                    acc += p;
                } else {
                    acc -= p;
                }
            }
            op[row * dim + col] = acc * scale;
        }
    }
    op
}

/// Moves each walker one site along its coin direction.
pub fn apply_shift<T: Real>(s: &PureState<T>) -> PureState<T> {
    let d = s.config().site_count() as isize;
    let map = s
        .clone()
        .into_map()
        .into_iter()
        .map(|(label, a)| {
            let (mut positions, coins) = label.into_parts();
            for (x, c) in positions.iter_mut().zip(&coins) {
                *x = (*x as isize + c.displacement()).rem_euclid(d) as usize;
            }
            (BasisLabel::from_parts(positions, coins), a)
        })
        .collect();
    PureState::from_map_unchecked(*s.config(), map, s.prune_epsilon())
}

pub fn apply_interaction<T: Real>(s: &PureState<T>) -> PureState<T> {
    StepOperator::unitary(s.config()).interact(s)
}

/// `U_N|ψ⟩`.
pub fn step<T: Real>(s: &PureState<T>) -> PureState<T> {
    StepOperator::unitary(s.config()).apply(s)
}

/// Keeps only labels where all walkers share a site and a coin.
pub fn project_bound<T: Real>(s: &PureState<T>) -> PureState<T> {
    let map = s
        .iter()
        .filter(|(l, _)| l.is_collective())
        .map(|(l, a)| (l.clone(), *a))
        .collect();
    PureState::from_map_unchecked(*s.config(), map, s.prune_epsilon())
}

/// `V_N|ψ⟩ = Π_N U_N|ψ⟩`.
pub fn projected_step<T: Real>(s: &PureState<T>) -> PureState<T> {
    StepOperator::projected(s.config()).apply(s)
}
