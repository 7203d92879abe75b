//! Momentum-space reduction of the projected two-walker step.
//!
//! On collective two-walker labels `|x,x,c,c⟩` the projected step commutes
//! with translations, so each momentum sector `k` carries a 2x2 block
//! acting on the `(→→, ←←)` amplitudes:
//!
//! ```text
//! M_k = [[h·e^{-iκ}, g·e^{-iκ}], [g·e^{iκ}, h·e^{iκ}]],   κ = 2πk/d,
//! g = (e^{iφ} − 1)/4,  h = 1 + g.
//! ```

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{arg_err, Result, WalkError};
use crate::lattice::{check_phase, BasisLabel, Coin, LatticeConfig};
use crate::linalg::Mat2;
use crate::scalar::Real;
use crate::state::{Ensemble, PureState};
use crate::walk::StepOperator;

/// Eigenvalue pairs closer than this are treated as a defective block.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// `(g, h)` for a co-located pair: `g = ⟨←←|G(φ)|→→⟩ = (e^{iφ}−1)/4`,
/// `h = ⟨→→|G(φ)|→→⟩ = 1 + g`.
pub fn pair_couplings<T: Real>(phase: T) -> (Complex<T>, Complex<T>) {
    let g = (Complex::from_polar(T::one(), phase) - T::one()) * T::lit(0.25);
    (g, g + T::one())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumBlock<T> {
    pub k: usize,
    pub d: usize,
    pub phase: T,
    pub matrix: Mat2<T>,
}

fn kappa<T: Real>(k: usize, d: usize) -> T {
    T::TAU() * T::count(k) / T::count(d)
}

/// Eigenvalues, right eigenvectors, dual basis.
type Eigenbasis<T> = ([Complex<T>; 2], [[Complex<T>; 2]; 2], [[Complex<T>; 2]; 2]);

pub fn momentum_block<T: Real>(k: usize, d: usize, phase: T) -> Result<MomentumBlock<T>> {
    if d < 2 {
        return arg_err(format!("need at least 2 sites, got {d}"));
    }
    if k >= d {
        return arg_err(format!("momentum index {k} outside [0, {d})"));
    }
    check_phase(phase)?;
    let (g, h) = pair_couplings(phase);
    let down = Complex::from_polar(T::one(), -kappa::<T>(k, d));
    let up = down.conj();
    Ok(MomentumBlock {
        k,
        d,
        phase,
        matrix: Mat2::new(h * down, g * down, g * up, h * up),
    })
}

/// Square root on the branch with non-negative imaginary part (non-negative
/// real part on the real axis). This labels the roots so that
/// `λ_{0,−} = 1` and `λ_{d/2,+} = −1` at `φ = 2π/3`.
fn upper_sqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let s = z.sqrt();
    if s.im < T::zero() || (s.im == T::zero() && s.re < T::zero()) {
        -s
    } else {
        s
    }
}

/// `λ_{k,±} = h cos κ ± √(g² − h² sin² κ)`.
pub fn block_eigenvalues<T: Real>(k: usize, d: usize, phase: T) -> Result<(Complex<T>, Complex<T>)> {
    momentum_block(k, d, phase)?;
    let (g, h) = pair_couplings(phase);
    let (sin, cos) = kappa::<T>(k, d).sin_cos();
    let root = upper_sqrt(g * g - h * h * (sin * sin));
    Ok((h * cos + root, h * cos - root))
}

impl<T: Real> MomentumBlock<T> {
    pub fn eigenvalues(&self) -> (Complex<T>, Complex<T>) {
        block_eigenvalues(self.k, self.d, self.phase).expect("block was validated")
    }

    pub fn spectral_radius(&self) -> T {
        let (a, b) = self.eigenvalues();
        a.norm().max(b.norm())
    }

    /// Eigen-decomposition `(λ, [v₊, v₋], [w₊, w₋])` with `w` the dual basis,
    /// or `None` when the block is (numerically) defective.
    fn diagonalize(&self) -> Option<Eigenbasis<T>> {
        let (lp, lm) = self.eigenvalues();
        if (lp - lm).norm() <= T::lit(DEGENERACY_TOLERANCE) {
            return None;
        }
        let m = &self.matrix.0;
        let vec_for = |l: Complex<T>| {
            // (M − λ)v = 0; take the better-conditioned row.
            let r0 = [m[0][0] - l, m[0][1]];
            let r1 = [m[1][0], m[1][1] - l];
            let row = if r0[0].norm() + r0[1].norm() >= r1[0].norm() + r1[1].norm() {
                r0
            } else {
                r1
            };
            let n = (row[0].norm_sqr() + row[1].norm_sqr()).sqrt();
            [row[1] / n, -row[0] / n]
        };
        let v = [vec_for(lp), vec_for(lm)];
        let det = v[0][0] * v[1][1] - v[1][0] * v[0][1];
        if det.norm() <= T::lit(DEGENERACY_TOLERANCE) {
            return None;
        }
        // rows of the inverse of the column matrix [v₊ v₋]
        let w = [[v[1][1] / det, -v[1][0] / det], [-v[0][1] / det, v[0][0] / det]];
        Some(([lp, lm], v, w))
    }

    /// `M_k^t`, through the eigen-decomposition when the block is
    /// diagonalizable and by repeated squaring otherwise.
    pub fn power(&self, t: u64) -> Mat2<T> {
        match self.diagonalize() {
            Some((l, v, w)) => {
                let lt = [pow_complex(l[0], t), pow_complex(l[1], t)];
                let e = |i: usize, j: usize| v[0][i] * lt[0] * w[0][j] + v[1][i] * lt[1] * w[1][j];
                Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
            }
            None => self.matrix.powu(t),
        }
    }

    /// `‖M_k^t e_c‖²` summed over both basis vectors, for `t = 0..=t_max`.
    fn retained_series(&self, t_max: usize) -> Vec<T> {
        let basis = [
            [Complex::new(T::one(), T::zero()), Complex::default()],
            [Complex::default(), Complex::new(T::one(), T::zero())],
        ];
        let mut out = vec![T::zero(); t_max + 1];
        match self.diagonalize() {
            Some((l, v, w)) => {
                for e in basis {
                    let coef = [w[0][0] * e[0] + w[0][1] * e[1], w[1][0] * e[0] + w[1][1] * e[1]];
                    let mut lt = [Complex::new(T::one(), T::zero()); 2];
                    for slot in out.iter_mut() {
                        let a = coef[0] * lt[0];
                        let b = coef[1] * lt[1];
                        let x0 = v[0][0] * a + v[1][0] * b;
                        let x1 = v[0][1] * a + v[1][1] * b;
                        *slot = *slot + x0.norm_sqr() + x1.norm_sqr();
                        lt[0] *= l[0];
                        lt[1] *= l[1];
                    }
                }
            }
            None => {
                for e in basis {
                    let mut x = e;
                    for slot in out.iter_mut() {
                        *slot = *slot + x[0].norm_sqr() + x[1].norm_sqr();
                        x = self.matrix.apply(x);
                    }
                }
            }
        }
        out
    }
}

fn pow_complex<T: Real>(z: Complex<T>, t: u64) -> Complex<T> {
    let (mut acc, mut base, mut t) = (Complex::new(T::one(), T::zero()), z, t);
    while t > 0 {
        if t & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        t >>= 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow<T> {
    pub k: usize,
    pub k_over_d: T,
    pub abs_lambda_plus: T,
    pub abs_lambda_minus: T,
}

/// `|λ_{k,±}|` for every `k = 0..d`.
pub fn spectrum_norms<T: Real>(d: usize, phase: T) -> Result<Vec<SpectrumRow<T>>> {
    momentum_block(0, d, phase)?;
    Ok((0..d)
        .map(|k| {
            let (p, m) = block_eigenvalues(k, d, phase).expect("validated");
            SpectrumRow {
                k,
                k_over_d: T::count(k) / T::count(d),
                abs_lambda_plus: p.norm(),
                abs_lambda_minus: m.norm(),
            }
        })
        .collect())
}

/// Number of table entries with `||λ| − 1| ≤ tol`.
pub fn unit_modulus_count<T: Real>(rows: &[SpectrumRow<T>], tol: T) -> usize {
    rows.iter()
        .map(|r| {
            [r.abs_lambda_plus, r.abs_lambda_minus]
                .iter()
                .filter(|a| (**a - T::one()).abs() <= tol)
                .count()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurvivalMethod {
    /// Repeated projected steps on the ensemble members.
    Direct,
    /// Momentum blocks; only for the two-walker collective mixture.
    Momentum,
}

/// Retained weight `p_B(t) = Σ_i w_i ‖V^t ψ_i‖²`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalSeries<T> {
    pub d: usize,
    pub arity: usize,
    pub phase: T,
    pub values: Vec<(usize, T)>,
}

pub fn survival_probability<T: Real>(
    e: &Ensemble<T>,
    t_max: usize,
    method: SurvivalMethod,
) -> Result<SurvivalSeries<T>> {
    let config = *e.config();
    let values = match method {
        SurvivalMethod::Direct => survival_direct(e, t_max),
        SurvivalMethod::Momentum => {
            check_momentum_input(e)?;
            survival_momentum(config.site_count(), config.phase(), t_max)?
        }
    };
    Ok(SurvivalSeries {
        d: config.site_count(),
        arity: config.particle_count(),
        phase: config.phase(),
        values: values.into_iter().enumerate().collect(),
    })
}

fn check_momentum_input<T: Real>(e: &Ensemble<T>) -> Result<()> {
    let config = e.config();
    if config.particle_count() != 2 {
        return unsupported("momentum method needs two walkers");
    }
    if !config.free_coin().is_identity() {
        return unsupported("momentum method needs the identity free coin");
    }
    let d = config.site_count();
    let w = T::count(2 * d).recip();
    let mut seen = vec![false; 2 * d];
    for (weight, s) in e.members() {
        let single = if s.len() == 1 { s.iter().next() } else { None };
        let Some((label, amp)) = single else {
            return unsupported("momentum method needs single-label members");
        };
        if !label.is_collective() || (amp.norm() - T::one()).abs() > T::tol(1e-12) {
            return unsupported("momentum method needs collective unit members");
        }
        if (*weight - w).abs() > T::tol(1e-12) {
            return unsupported("momentum method needs uniform weights 1/(2d)");
        }
        let slot = 2 * label.positions()[0] + label.coins()[0].index();
        if std::mem::replace(&mut seen[slot], true) {
            return unsupported("repeated ensemble member");
        }
    }
    if seen.iter().any(|s| !s) {
        return unsupported("momentum method needs all 2d collective labels");
    }
    Ok(())
}

fn unsupported<T>(msg: &str) -> Result<T> {
    Err(WalkError::UnsupportedInput(msg.to_string()))
}

/// `p_B(t) = (1/2d) Σ_k Σ_c ‖M_k^t e_c‖²`.
pub fn survival_momentum<T: Real>(d: usize, phase: T, t_max: usize) -> Result<Vec<T>> {
    let blocks = (0..d)
        .map(|k| momentum_block(k, d, phase))
        .collect::<Result<Vec<_>>>()?;
    let per_k: Vec<Vec<T>> = blocks.par_iter().map(|b| b.retained_series(t_max)).collect();
    let norm = T::count(2 * d).recip();
    Ok((0..=t_max)
        .map(|t| per_k.iter().fold(T::zero(), |acc, s| acc + s[t]) * norm)
        .collect())
}

/// Members that are single-label states are collapsed onto a translation
/// representative; the step commutes with translations so their norms agree.
fn survival_direct<T: Real>(e: &Ensemble<T>, t_max: usize) -> Vec<T> {
    let config = *e.config();
    let mut reps: Vec<(T, PureState<T>)> = Vec::new();
    for (w, s) in e.members() {
        let canonical = if s.len() == 1 {
            let (l, _) = s.iter().next().expect("one label");
            s.translated(-(l.positions()[0] as isize))
        } else {
            s.clone()
        };
        match reps.iter_mut().find(|(_, r)| *r == canonical) {
            Some((acc, _)) => *acc += *w,
            None => reps.push((*w, canonical)),
        }
    }
    let op = StepOperator::projected(&config);
    let per_rep: Vec<Vec<T>> = reps
        .par_iter()
        .map(|(w, s)| {
            let mut out = Vec::with_capacity(t_max + 1);
            let mut cur = s.clone();
            for t in 0..=t_max {
                out.push(*w * cur.norm_sqr());
                if t < t_max {
                    cur = op.apply(&cur);
                }
            }
            out
        })
        .collect();
    (0..=t_max)
        .map(|t| per_rep.iter().fold(T::zero(), |acc, s| acc + s[t]))
        .collect()
}

/// Collective two-walker basis `|x,x,c,c⟩` in the order `(x, c)`; the
/// dense projected step on this `2d`-dimensional subspace, column `j` being
/// the image of basis vector `j`.
pub fn collective_step_matrix<T: Real>(config: &LatticeConfig<T>) -> Vec<Vec<Complex<T>>> {
    let d = config.site_count();
    let n = config.particle_count();
    let op = StepOperator::projected(config);
    let labels: Vec<BasisLabel> = (0..d)
        .flat_map(|x| [Coin::Right, Coin::Left].map(|c| BasisLabel::collective(n, x, c)))
        .collect();
    let mut m = vec![vec![Complex::default(); 2 * d]; 2 * d];
    for (j, l) in labels.iter().enumerate() {
        let s = PureState::from_amplitudes(*config, [(l.clone(), Complex::new(T::one(), T::zero()))])
            .expect("valid label");
        let out = op.apply(&s);
        for (i, li) in labels.iter().enumerate() {
            m[i][j] = out.amplitude(li);
        }
    }
    m
}
