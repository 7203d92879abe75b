//! Persistence of the trimer under the projected step when the interaction
//! phase is detuned from `2π/3`.
//!
//! Only the `(→→→, ←←←)` coin pair survives the projector, and on it the
//! co-located triple acts as `[[h, g], [g, h]]` with the coefficients below.
//! The GHZ⁺ coin is its eigenvector with eigenvalue `h + g = (e^{3iφ}+3)/4`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::bound::bound_state;
use crate::error::Result;
use crate::lattice::LatticeConfig;
use crate::linalg::Mat2;
use crate::scalar::Real;
use crate::walk::StepOperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityCoefficients<T> {
    /// `⟨←←←|C|→→→⟩ = (−1+e^{iφ})²(2+e^{iφ})/8`
    pub g3: Complex<T>,
    /// `⟨→→→|C|→→→⟩ = (4+3e^{iφ}+e^{3iφ})/8`
    pub h3: Complex<T>,
}

impl<T: Real> FidelityCoefficients<T> {
    pub fn new(phase: T) -> Self {
        let e = Complex::from_polar(T::one(), phase);
        let eighth = T::lit(0.125);
        let one = Complex::new(T::one(), T::zero());
        let g3 = (e - one) * (e - one) * (e + T::lit(2.0)) * eighth;
        let h3 = (e * T::lit(3.0) + e * e * e + T::lit(4.0)) * eighth;
        FidelityCoefficients { g3, h3 }
    }

    pub fn block(&self) -> Mat2<T> {
        Mat2::new(self.h3, self.g3, self.g3, self.h3)
    }

    /// `|⟨GHZ₃⁺| block^t |GHZ₃⁺⟩|²` evaluated as a matrix power.
    pub fn persistence_by_block(&self, t: u64) -> T {
        let p = self.block().powu(t);
        let s = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let v = p.apply([s, s]);
        (s * v[0] + s * v[1]).norm_sqr()
    }
}

/// `|(e^{3iφ} + 3)/4|^{2t}`.
pub fn persistence_closed<T: Real>(phase: T, t: u64) -> T {
    let base = (Complex::from_polar(T::one(), phase * T::lit(3.0)) + T::lit(3.0)) * T::lit(0.25);
    powu_real(base.norm_sqr(), t)
}

fn powu_real<T: Real>(x: T, mut t: u64) -> T {
    let (mut acc, mut base) = (T::one(), x);
    while t > 0 {
        if t & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        t >>= 1;
    }
    acc
}

/// `|⟨tri_0|V_3^t|tri_0⟩|²` on a ring of `d` sites.
pub fn persistence_numeric<T: Real>(phase: T, t: usize, d: usize) -> Result<T> {
    Ok(persistence_numeric_series(phase, t, d)?[t])
}

/// Values for every step `0..=t_max` from one trajectory.
pub fn persistence_numeric_series<T: Real>(phase: T, t_max: usize, d: usize) -> Result<Vec<T>> {
    let config = LatticeConfig::new(3, d, phase)?;
    let tri = bound_state(&config, 0)?;
    let op = StepOperator::projected(&config);
    let mut out = Vec::with_capacity(t_max + 1);
    let mut cur = tri.clone();
    for t in 0..=t_max {
        out.push(tri.inner_product(&cur)?.norm_sqr());
        if t < t_max {
            cur = op.apply(&cur);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRow<T> {
    pub phase: T,
    pub t: u64,
    pub p: T,
}

/// Closed-form persistence on a phase grid, grouped by `t` in input order.
pub fn fidelity_sweep<T: Real>(phase_grid: &[T], t_list: &[u64]) -> Result<Vec<FidelityRow<T>>> {
    for &phi in phase_grid {
        crate::lattice::check_phase(phi)?;
    }
    Ok(t_list
        .par_iter()
        .flat_map_iter(|&t| {
            phase_grid.iter().map(move |&phase| FidelityRow {
                phase,
                t,
                p: persistence_closed(phase, t),
            })
        })
        .collect())
}
