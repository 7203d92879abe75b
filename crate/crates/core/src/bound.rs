//! GHZ-coin bound states of the interacting walk and the eigenstate
//! condition that selects them.
//!
//! A candidate bound state is a plane wave of collective positions times an
//! `N`-partite GHZ coin, `|χ_k⟩ = d^{-1/2} Σ_x e^{2πikx/d} |x,…,x⟩ ⊗ (β|→…→⟩ + γ|←…←⟩)`.
//! It is an eigenstate of the step exactly when
//! `|⟨GHZ| P_k Π_{j<l} G_jl(φ) |GHZ⟩| = 1`, which only happens for
//! `N ∈ {2,3,4}` at `k ∈ {0, d/2}`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{arg_err, Result, WalkError};
use crate::lattice::{BasisLabel, Coin, LatticeConfig};
use crate::scalar::Real;
use crate::state::{Ensemble, PureState};
use crate::walk::StepOperator;

/// Condition values at or above `1 − HIT_TOLERANCE` count as solutions.
pub const HIT_TOLERANCE: f64 = 1e-9;

/// `β|→…→⟩ + γ|←…←⟩` on `arity` coins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzSpec<T> {
    arity: usize,
    beta: Complex<T>,
    gamma: Complex<T>,
}

/// Relative sign of the two GHZ branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GhzSign {
    /// `β = γ`
    Plus,
    /// `β = −γ`
    Minus,
}

impl GhzSign {
    pub fn as_str(self) -> &'static str {
        match self {
            GhzSign::Plus => "beta=gamma",
            GhzSign::Minus => "beta=-gamma",
        }
    }
}

impl<T: Real> GhzSpec<T> {
    pub fn new(arity: usize, beta: Complex<T>, gamma: Complex<T>) -> Result<Self> {
        if arity < 2 {
            return arg_err(format!("GHZ arity must be at least 2, got {arity}"));
        }
        if arity > 24 {
            return arg_err("GHZ arity too large for dense coin evaluation");
        }
        let norm = beta.norm_sqr() + gamma.norm_sqr();
        if (norm - T::one()).abs() > T::tol(1e-12) {
            return arg_err(format!("|β|² + |γ|² must be 1, got {norm}"));
        }
        Ok(GhzSpec { arity, beta, gamma })
    }

    /// `(|→…→⟩ ± |←…←⟩)/√2`.
    pub fn signed(arity: usize, sign: GhzSign) -> Result<Self> {
        let s = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        match sign {
            GhzSign::Plus => GhzSpec::new(arity, s, s),
            GhzSign::Minus => GhzSpec::new(arity, s, -s),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    pub fn gamma(&self) -> Complex<T> {
        self.gamma
    }
}

/// Dense coin vector of length `2^N`, ordered by [`crate::lattice::coin_index`].
pub fn ghz_coin<T: Real>(spec: &GhzSpec<T>) -> Vec<Complex<T>> {
    let dim = 1usize << spec.arity;
    let mut v = vec![Complex::default(); dim];
    v[0] = spec.beta;
    v[dim - 1] = spec.gamma;
    v
}

/// Plane-wave collective state with momentum index `k` and GHZ coin.
pub fn chi_state<T: Real>(config: &LatticeConfig<T>, k: usize, ghz: &GhzSpec<T>) -> Result<PureState<T>> {
    let n = config.particle_count();
    let d = config.site_count();
    if ghz.arity != n {
        return arg_err(format!("GHZ arity {} does not match {n} particles", ghz.arity));
    }
    if k >= d {
        return arg_err(format!("momentum index {k} outside [0, {d})"));
    }
    let norm = T::count(d).sqrt().recip();
    let entries = (0..d).flat_map(|x| {
        let angle = T::TAU() * T::count((k * x) % d) / T::count(d);
        let wave = Complex::from_polar(norm, angle);
        [
            (BasisLabel::collective(n, x, Coin::Right), wave * ghz.beta),
            (BasisLabel::collective(n, x, Coin::Left), wave * ghz.gamma),
        ]
    });
    PureState::from_amplitudes(*config, entries)
}

/// Dimer (`N=2`, GHZ⁻), trimer (`N=3`, GHZ⁺) or quadrimer (`N=4`, GHZ⁻)
/// with position factor `(−1)^{rx}`; `r = 1` needs an even ring.
pub fn bound_state<T: Real>(config: &LatticeConfig<T>, r: usize) -> Result<PureState<T>> {
    let n = config.particle_count();
    let d = config.site_count();
    let sign = match n {
        2 | 4 => GhzSign::Minus,
        3 => GhzSign::Plus,
        _ => {
            return arg_err(format!(
                "bound states exist only for 2, 3 or 4 particles, got {n}"
            ))
        }
    };
    let k = match r {
        0 => 0,
        1 if d.is_multiple_of(2) => d / 2,
        1 => return arg_err(format!("r = 1 needs an even number of sites, got {d}")),
        _ => return arg_err(format!("r must be 0 or 1, got {r}")),
    };
    chi_state(config, k, &GhzSpec::signed(n, sign)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenReport<T> {
    pub is_eigenvector: bool,
    pub eigenvalue: Complex<T>,
    /// `‖A|ψ⟩ − λ|ψ⟩‖`
    pub residual: T,
}

/// Rayleigh quotient `λ = ⟨ψ|A|ψ⟩` and residual for the step (`projected =
/// false`) or the projected step. `s` should be normalized.
pub fn verify_eigenstate<T: Real>(s: &PureState<T>, projected: bool, tol: T) -> EigenReport<T> {
    let op = StepOperator::new(s.config(), projected);
    eigen_report(&op, s, tol)
}

pub fn eigen_report<T: Real>(op: &StepOperator<T>, s: &PureState<T>, tol: T) -> EigenReport<T> {
    let image = op.apply(s);
    let eigenvalue = s.inner_product(&image).expect("operator preserves config");
    let residual = image
        .add_scaled(-eigenvalue, s)
        .expect("operator preserves config")
        .norm();
    EigenReport {
        is_eigenvector: residual <= tol,
        eigenvalue,
        residual,
    }
}

fn momentum_phase<T: Real>(k: usize, d: usize) -> Complex<T> {
    // e^{-2πik/d}
    Complex::from_polar(T::one(), -T::TAU() * T::count(k % d) / T::count(d))
}

/// `|⟨GHZ| P_k Π_{j<l} G_jl(φ) |GHZ⟩|` by applying every pair operator to the
/// dense `2^N` coin vector.
pub fn ghz_condition<T: Real>(n: usize, phase: T, ghz: &GhzSpec<T>, k: usize, d: usize) -> T {
    ghz_overlap_dense(n, phase, ghz, k, d).norm()
}

/// Complex overlap behind [`ghz_condition`].
pub fn ghz_overlap_dense<T: Real>(n: usize, phase: T, ghz: &GhzSpec<T>, k: usize, d: usize) -> Complex<T> {
    assert_eq!(ghz.arity, n, "GHZ arity must equal particle count");
    let mut v = ghz_coin(ghz);
    let half = T::lit(0.5);
    let kick = Complex::from_polar(T::one(), phase) - T::one();
    for j in 0..n {
        for l in j + 1..n {
            let (bj, bl) = (1usize << (n - 1 - j), 1usize << (n - 1 - l));
            for base in 0..v.len() {
                if base & (bj | bl) != 0 {
                    continue;
                }
                let idx = [base, base | bl, base | bj, base | bj | bl];
                // ⟨++| on the pair, then (e^{iφ}−1)|++⟩
                let proj = idx.iter().fold(Complex::default(), |acc, &i| acc + v[i]) * half;
                let add = kick * proj * half;
                for i in idx {
                    v[i] += add;
                }
            }
        }
    }
    let p = momentum_phase::<T>(k, d);
    ghz.beta.conj() * p * v[0] + ghz.gamma.conj() * p.conj() * v[v.len() - 1]
}

/// Number of interacting pairs among the `|+⟩` factors of a `±` product
/// string with `zeros` factors equal to `|−⟩`: `(N−l)(N−l−1)/2`.
pub fn pair_count(n: usize, zeros: usize) -> usize {
    let plus = n - zeros;
    plus * plus.saturating_sub(1) / 2
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Amplitude of the GHZ coin on the normalized even superposition of `±`
/// strings with `zeros` minus factors: `√C(N,l)·(β + (−1)^l γ)/2^{N/2}`.
pub fn sector_amplitude<T: Real>(ghz: &GhzSpec<T>, zeros: usize) -> Complex<T> {
    let n = ghz.arity;
    let weight = T::lit(binomial_f64(n, zeros).sqrt() * 0.5f64.powf(n as f64 / 2.0));
    let parity = if zeros.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    (ghz.beta + ghz.gamma * parity) * weight
}

/// Closed-form sector sum `Σ_l η*_{l,k} η_l e^{i n_l φ}` for the condition.
pub fn ghz_overlap_closed<T: Real>(n: usize, phase: T, ghz: &GhzSpec<T>, k: usize, d: usize) -> Complex<T> {
    assert_eq!(ghz.arity, n, "GHZ arity must equal particle count");
    let p = momentum_phase::<T>(k, d);
    let shifted = GhzSpec {
        arity: n,
        beta: ghz.beta * p.conj(),
        gamma: ghz.gamma * p,
    };
    (0..=n).fold(Complex::default(), |acc, l| {
        let bra = sector_amplitude(&shifted, l).conj();
        let ket = sector_amplitude(ghz, l);
        let rot = Complex::from_polar(T::one(), phase * T::count(pair_count(n, l)));
        acc + bra * ket * rot
    })
}

pub fn ghz_condition_closed<T: Real>(n: usize, phase: T, ghz: &GhzSpec<T>, k: usize, d: usize) -> T {
    ghz_overlap_closed(n, phase, ghz, k, d).norm()
}

/// One grid point where the eigenstate condition holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionPoint<T> {
    pub arity: usize,
    pub phase: T,
    pub momentum_index: usize,
    pub sign: GhzSign,
    pub ghz: GhzSpec<T>,
    pub value: T,
    pub closed_form_value: T,
    /// Local maximiser near an isolated hit; equals `phase` for hits inside
    /// a continuous family.
    pub refined_phase: T,
}

/// `2πj/points` for `j = 1 … points−1`; the `φ = 0 ≡ 2π` point is left out.
pub fn phase_grid<T: Real>(points: usize) -> Vec<T> {
    (1..points)
        .map(|j| T::TAU() * T::count(j) / T::count(points))
        .collect()
}

/// Every `(N, φ, k, sign)` with condition value `≥ 1 − HIT_TOLERANCE`, in
/// input order.
pub fn scan_conditions<T: Real>(
    arities: &[usize],
    phase_grid: &[T],
    momenta: &[usize],
    d: usize,
    signs: &[GhzSign],
) -> Result<Vec<ConditionPoint<T>>> {
    if let Some(&n) = arities.iter().find(|&&n| !(2..=24).contains(&n)) {
        return arg_err(format!("scan arity {n} outside 2..=24"));
    }
    if let Some(&k) = momenta.iter().find(|&&k| k >= d) {
        return arg_err(format!("momentum index {k} outside [0, {d})"));
    }
    for &phi in phase_grid {
        crate::lattice::check_phase(phi)?;
    }
    let threshold = T::one() - T::lit(HIT_TOLERANCE);

    let series: Vec<(usize, usize, GhzSign)> = arities
        .iter()
        .flat_map(|&n| {
            momenta
                .iter()
                .flat_map(move |&k| signs.iter().map(move |&s| (n, k, s)))
        })
        .collect();

    let per_series: Vec<Vec<ConditionPoint<T>>> = series
        .par_iter()
        .map(|&(n, k, sign)| {
            let ghz = GhzSpec::signed(n, sign).expect("valid arity");
            let values: Vec<T> = phase_grid
                .iter()
                .map(|&phi| ghz_condition(n, phi, &ghz, k, d))
                .collect();
            let hit = |i: usize| values[i] >= threshold;
            (0..values.len())
                .filter(|&i| hit(i))
                .map(|i| {
                    let phi = phase_grid[i];
                    let isolated = (i == 0 || !hit(i - 1)) && (i + 1 == values.len() || !hit(i + 1));
                    let refined_phase = if isolated {
                        let lo = if i == 0 {
                            phi * T::lit(0.5)
                        } else {
                            phase_grid[i - 1]
                        };
                        let hi = if i + 1 == values.len() {
                            (phi + T::TAU()) * T::lit(0.5)
                        } else {
                            phase_grid[i + 1]
                        };
                        refine_maximum(|p| ghz_condition(n, p, &ghz, k, d), phi, lo, hi)
                    } else {
                        phi
                    };
                    ConditionPoint {
                        arity: n,
                        phase: phi,
                        momentum_index: k,
                        sign,
                        ghz,
                        value: values[i],
                        closed_form_value: ghz_condition_closed(n, phi, &ghz, k, d),
                        refined_phase,
                    }
                })
                .collect()
        })
        .collect();

    let mut hits: Vec<ConditionPoint<T>> = per_series.into_iter().flatten().collect();
    hits.sort_by(|a, b| {
        (a.arity, a.momentum_index, a.sign)
            .cmp(&(b.arity, b.momentum_index, b.sign))
            .then(a.phase.partial_cmp(&b.phase).expect("finite phases"))
    });
    Ok(hits)
}

/// Newton iteration on the finite-difference derivative, kept inside
/// `[lo, hi]`.
fn refine_maximum<T: Real, F: Fn(T) -> T>(f: F, start: T, lo: T, hi: T) -> T {
    let h = T::lit(1e-4);
    let mut x = start;
    for _ in 0..30 {
        let (fm, f0, fp) = (f(x - h), f(x), f(x + h));
        let d1 = (fp - fm) / (h + h);
        let d2 = (fp - f0 - f0 + fm) / (h * h);
        if d2 >= T::zero() || d1.abs() < T::lit(1e-13) {
            break;
        }
        let next = (x - d1 / d2).max(lo).min(hi);
        if (next - x).abs() < T::lit(1e-14) {
            x = next;
            break;
        }
        x = next;
    }
    if f(x) >= f(start) {
        x
    } else {
        start
    }
}

/// Traces out the last walker of a state supported on collective labels.
///
/// For such states the reduced operator is diagonal: each collective label
/// `|x,…,x,c,…,c⟩` with weight `|α|²` leaves `|x,…,x,c,…,c⟩` on `N−1`
/// walkers. The GHZ bound states give the uniform `2d`-member mixtures.
pub fn remove_particle<T: Real>(s: &PureState<T>) -> Result<Ensemble<T>> {
    let n = s.config().particle_count();
    if n < 2 {
        return Err(WalkError::UnsupportedInput("need at least two walkers".into()));
    }
    if s.is_empty() {
        return Err(WalkError::UnsupportedInput("zero state".into()));
    }
    if let Some((l, _)) = s.iter().find(|(l, _)| !l.is_collective()) {
        return Err(WalkError::UnsupportedInput(format!(
            "label {:?}/{:?} is not collective; only collective-support states are reduced",
            l.positions(),
            l.coins()
        )));
    }
    let reduced = s.config().with_particle_count(n - 1)?;
    let members = s
        .iter()
        .map(|(l, a)| {
            let x = l.positions()[0];
            let c = l.coins()[0];
            let label = BasisLabel::collective(n - 1, x, c);
            let member = PureState::from_amplitudes(reduced, [(label, Complex::new(T::one(), T::zero()))])?;
            Ok((a.norm_sqr(), member))
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}

/// `ρ = (1/2d) Σ_{x,c} |x,…,x,c,…,c⟩⟨…|` on `config.particle_count()` walkers.
pub fn collective_mixture<T: Real>(config: &LatticeConfig<T>) -> Result<Ensemble<T>> {
    let n = config.particle_count();
    let d = config.site_count();
    let w = T::count(2 * d).recip();
    let members = (0..d)
        .flat_map(|x| [Coin::Right, Coin::Left].map(|c| (x, c)))
        .map(|(x, c)| {
            let label = BasisLabel::collective(n, x, c);
            Ok((
                w,
                PureState::from_amplitudes(*config, [(label, Complex::new(T::one(), T::zero()))])?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}
