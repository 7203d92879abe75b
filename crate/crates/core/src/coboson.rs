//! Exact Fock-space norms for composite bosons built from collective
//! clusters.
//!
//! With `M = 2d` single-boson modes (one per site and coin) the composite
//! creation operator places a cluster of `m` bosons in one mode:
//! `b† = (m!·M)^{-1/2} Σ_i (a_i†)^m`. Expanding `(b†)^N|0⟩`, every
//! occupation pattern `(n_1, …, n_M)` with `Σ n_i = N` is reached by
//! `N!/Π n_i!` ordered choices and has norm² `Π (m·n_i)!`. Patterns that
//! differ by a permutation of modes contribute equally, so the sum runs over
//! integer partitions of `N` with the number of mode assignments per
//! partition.
//!
//! All arithmetic is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Bosons per composite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cluster {
    Triple,
    Quadruple,
}

impl Cluster {
    pub fn size(self) -> usize {
        match self {
            Cluster::Triple => 3,
            Cluster::Quadruple => 4,
        }
    }
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Occupation numbers over modes `0 … 2d−1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FockState {
    occupations: BTreeMap<usize, usize>,
}

impl FockState {
    pub fn vacuum() -> Self {
        FockState::default()
    }

    /// Applies `(a_mode†)^count`, ignoring the numeric prefactor.
    pub fn create(mut self, mode: usize, count: usize) -> Self {
        if count > 0 {
            *self.occupations.entry(mode).or_insert(0) += count;
        }
        self
    }

    pub fn occupation(&self, mode: usize) -> usize {
        self.occupations.get(&mode).copied().unwrap_or(0)
    }

    pub fn particle_count(&self) -> usize {
        self.occupations.values().sum()
    }

    /// `‖Π_i (a_i†)^{n_i}|0⟩‖² = Π_i n_i!`.
    pub fn monomial_norm_sqr(&self) -> BigInt {
        self.occupations
            .values()
            .fold(BigInt::one(), |acc, &n| acc * factorial(n))
    }
}

/// Partitions of `n` into at most `max_parts` parts, each in non-increasing
/// order.
fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Ways to place the parts of `partition` on distinct modes out of `modes`.
fn mode_assignments(partition: &[usize], modes: usize) -> BigInt {
    let len = partition.len();
    let falling = (0..len).fold(BigInt::one(), |acc, i| acc * BigInt::from(modes - i));
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in partition {
        *mult.entry(p).or_insert(0) += 1;
    }
    let sym = mult.values().fold(BigInt::one(), |acc, &c| acc * factorial(c));
    falling / sym
}

/// `‖(Σ_i (a_i†)^m)^N |0⟩‖²` over `modes` modes, without prefactors.
pub fn raw_power_norm_sqr(n: usize, modes: usize, cluster: Cluster) -> BigInt {
    let m = cluster.size();
    let n_fact = factorial(n);
    partitions(n, modes)
        .iter()
        .map(|part| {
            let orderings = part.iter().fold(n_fact.clone(), |acc, &p| acc / factorial(p));
            let fock = part.iter().fold(BigInt::one(), |acc, &p| acc * factorial(m * p));
            mode_assignments(part, modes) * &orderings * &orderings * fock
        })
        .sum()
}

/// `B_N = ‖(b†)^N|0⟩‖² / N!` on `2d` modes.
pub fn coboson_norm(n: usize, d: usize, cluster: Cluster) -> BigRational {
    assert!(n >= 1 && d >= 1, "need N ≥ 1 and d ≥ 1");
    let modes = 2 * d;
    let scale = (factorial(cluster.size()) * BigInt::from(modes)).pow(n as u32);
    ratio(raw_power_norm_sqr(n, modes, cluster), scale * factorial(n))
}

/// `1 + 9/(2d)`.
pub fn b2_closed(d: usize) -> BigRational {
    BigRational::one() + ratio(9, 2 * d)
}

/// `(2d − N + 1)/(2d)`, the distinct-modes estimate of `B_N / B_{N−1}`.
pub fn ratio_approx(n: usize, d: usize) -> BigRational {
    ratio(2 * d as i64 - n as i64 + 1, 2 * d as i64)
}

/// Normalization of the two-composite mixture after one boson is removed
/// from each composite:
/// `2B̃₂ = (4d)^{-2} Σ_{i,j} ‖(a_i†)²(a_j†)²|0⟩‖²`, summed by explicit
/// enumeration of all mode pairs.
pub fn depleted_norm(d: usize) -> BigRational {
    assert!(d >= 1, "need d ≥ 1");
    let modes = 2 * d;
    let mut total = BigInt::zero();
    for i in 0..modes {
        for j in 0..modes {
            let state = FockState::vacuum().create(i, 2).create(j, 2);
            total += state.monomial_norm_sqr();
        }
    }
    ratio(total, 2 * (4 * d) * (4 * d))
}

/// `1/2 + 1/(2d)`, the published closed form for the depleted constant.
pub fn depleted_norm_reference(d: usize) -> BigRational {
    ratio(1, 2) + ratio(1, 2 * d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CobosonReport {
    pub composite_count: usize,
    pub d: usize,
    pub mode_count: usize,
    pub b_n: BigRational,
    /// `B_N / B_{N−1}`; equals `B_1 = 1` for `N = 1`.
    pub ratio_to_previous: BigRational,
    pub approx_ratio: BigRational,
}

impl CobosonReport {
    /// `|B_N/B_{N−1} − (2d−N+1)/(2d)|`.
    pub fn approximation_error(&self) -> BigRational {
        (&self.ratio_to_previous - &self.approx_ratio).abs()
    }
}

pub fn coboson_report(n: usize, d: usize, cluster: Cluster) -> CobosonReport {
    let b_n = coboson_norm(n, d, cluster);
    let prev = if n > 1 {
        coboson_norm(n - 1, d, cluster)
    } else {
        BigRational::one()
    };
    CobosonReport {
        composite_count: n,
        d,
        mode_count: 2 * d,
        ratio_to_previous: &b_n / prev,
        b_n,
        approx_ratio: ratio_approx(n, d),
    }
}

/// `numerator/denominator` in lowest terms (`5/2`, `1`).
pub fn format_rational(r: &BigRational) -> String {
    let g = r.numer().gcd(r.denom());
    let (n, d) = (r.numer() / &g, r.denom() / &g);
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}
