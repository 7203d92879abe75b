//! Sparse wavefunctions and diagonal mixtures over [`BasisLabel`]s.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{arg_err, Result, WalkError};
use crate::lattice::{BasisLabel, Coin, LatticeConfig};
use crate::scalar::Real;

/// Amplitudes with modulus below this are dropped unless configured otherwise.
pub const DEFAULT_PRUNE_EPSILON: f64 = 1e-14;

/// Sparse amplitude map. Iteration order is the label order, so every
/// reduction over a state is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    config: LatticeConfig<T>,
    amplitudes: BTreeMap<BasisLabel, Complex<T>>,
    prune_epsilon: T,
}

/// One stored amplitude in serialized form. Field order is part of the
/// output format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeRecord {
    pub positions: Vec<usize>,
    pub coins: Vec<Coin>,
    pub re: f64,
    pub im: f64,
}

impl<T: Real> PureState<T> {
    pub fn zero(config: LatticeConfig<T>) -> Self {
        PureState {
            config,
            amplitudes: BTreeMap::new(),
            prune_epsilon: T::lit(DEFAULT_PRUNE_EPSILON),
        }
    }

    /// Unit amplitude on a single label. Positions are reduced modulo `d`.
    pub fn basis(config: LatticeConfig<T>, positions: &[i64], coins: &[Coin]) -> Result<Self> {
        let label = BasisLabel::new(&config, positions, coins)?;
        let mut s = PureState::zero(config);
        s.amplitudes.insert(label, Complex::new(T::one(), T::zero()));
        Ok(s)
    }

    /// Sums repeated labels and prunes. Labels must have the configured
    /// particle count and reduced positions.
    pub fn from_amplitudes<I>(config: LatticeConfig<T>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisLabel, Complex<T>)>,
    {
        let mut s = PureState::zero(config);
        for (label, amp) in entries {
            s.check_label(&label)?;
            *s.amplitudes.entry(label).or_default() += amp;
        }
        s.prune();
        Ok(s)
    }

    pub(crate) fn from_map_unchecked(
        config: LatticeConfig<T>,
        amplitudes: BTreeMap<BasisLabel, Complex<T>>,
        prune_epsilon: T,
    ) -> Self {
        let mut s = PureState {
            config,
            amplitudes,
            prune_epsilon,
        };
        s.prune();
        s
    }

    fn check_label(&self, label: &BasisLabel) -> Result<()> {
        let n = self.config.particle_count();
        let d = self.config.site_count();
        if label.particle_count() != n {
            return arg_err(format!(
                "label has {} particles, expected {n}",
                label.particle_count()
            ));
        }
        if label.positions().iter().any(|&x| x >= d) {
            return arg_err("label position outside the lattice");
        }
        Ok(())
    }

    pub fn with_prune_epsilon(mut self, eps: T) -> Self {
        self.prune_epsilon = eps.max(T::zero());
        self.prune();
        self
    }

    fn prune(&mut self) {
        let eps = self.prune_epsilon;
        self.amplitudes.retain(|_, a| {
            let m = a.norm();
            m > T::zero() && m >= eps
        });
    }

    pub fn config(&self) -> &LatticeConfig<T> {
        &self.config
    }

    pub fn prune_epsilon(&self) -> T {
        self.prune_epsilon
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Complex<T> {
        self.amplitudes.get(label).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &Complex<T>)> {
        self.amplitudes.iter()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner_product(&self, other: &PureState<T>) -> Result<Complex<T>> {
        inner_product(self, other)
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(l, a)| (l.clone(), *a * factor))
            .collect();
        PureState::from_map_unchecked(self.config, amplitudes, self.prune_epsilon)
    }

    /// `self + factor·other`.
    pub fn add_scaled(&self, factor: Complex<T>, other: &PureState<T>) -> Result<Self> {
        if self.config != other.config {
            return Err(WalkError::ConfigMismatch);
        }
        let mut amplitudes = self.amplitudes.clone();
        for (l, a) in &other.amplitudes {
            *amplitudes.entry(l.clone()).or_default() += *a * factor;
        }
        Ok(PureState::from_map_unchecked(
            self.config,
            amplitudes,
            self.prune_epsilon,
        ))
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == T::zero() {
            return self.clone();
        }
        self.scaled(Complex::new(n.recip(), T::zero()))
    }

    /// Cyclic translation of every position by `shift` sites.
    pub fn translated(&self, shift: isize) -> Self {
        let d = self.config.site_count();
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(l, a)| (l.translated(shift, d), *a))
            .collect();
        PureState {
            config: self.config,
            amplitudes,
            prune_epsilon: self.prune_epsilon,
        }
    }

    /// Same amplitudes under a different configuration. Only the phase and
    /// free coin may differ.
    pub fn with_config(&self, config: LatticeConfig<T>) -> Result<Self> {
        if config.particle_count() != self.config.particle_count()
            || config.site_count() != self.config.site_count()
        {
            return Err(WalkError::ConfigMismatch);
        }
        Ok(PureState {
            config,
            amplitudes: self.amplitudes.clone(),
            prune_epsilon: self.prune_epsilon,
        })
    }

    pub fn to_records(&self) -> Vec<AmplitudeRecord> {
        self.amplitudes
            .iter()
            .map(|(l, a)| AmplitudeRecord {
                positions: l.positions().to_vec(),
                coins: l.coins().to_vec(),
                re: a.re.as_f64(),
                im: a.im.as_f64(),
            })
            .collect()
    }

    pub fn from_records(config: LatticeConfig<T>, records: &[AmplitudeRecord]) -> Result<Self> {
        let entries = records
            .iter()
            .map(|r| {
                let positions: Vec<i64> = r.positions.iter().map(|&x| x as i64).collect();
                let label = BasisLabel::new(&config, &positions, &r.coins)?;
                Ok((label, Complex::new(T::lit(r.re), T::lit(r.im))))
            })
            .collect::<Result<Vec<_>>>()?;
        PureState::from_amplitudes(config, entries)
    }

    pub(crate) fn into_map(self) -> BTreeMap<BasisLabel, Complex<T>> {
        self.amplitudes
    }
}

/// `⟨a|b⟩ = Σ conj(a_l)·b_l`.
pub fn inner_product<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<Complex<T>> {
    if a.config != b.config {
        return Err(WalkError::ConfigMismatch);
    }
    let (small, large, conj_small) = if a.len() <= b.len() {
        (a, b, true)
    } else {
        (b, a, false)
    };
    let mut acc = Complex::default();
    for (l, x) in &small.amplitudes {
        if let Some(y) = large.amplitudes.get(l) {
            acc += if conj_small { x.conj() * y } else { y.conj() * x };
        }
    }
    Ok(acc)
}

/// Weighted list of pure states standing for `Σ w_i |ψ_i⟩⟨ψ_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble<T: Real> {
    members: Vec<(T, PureState<T>)>,
}

impl<T: Real> Ensemble<T> {
    pub fn new(members: Vec<(T, PureState<T>)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return arg_err("ensemble needs at least one member");
        };
        let config = *first.config();
        for (w, s) in &members {
            if *w <= T::zero() || !w.is_finite() {
                return arg_err(format!("ensemble weight must be positive, got {w}"));
            }
            if *s.config() != config {
                return Err(WalkError::ConfigMismatch);
            }
        }
        Ok(Ensemble { members })
    }

    pub fn config(&self) -> &LatticeConfig<T> {
        self.members[0].1.config()
    }

    pub fn members(&self) -> &[(T, PureState<T>)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn total_weight(&self) -> T {
        self.members.iter().fold(T::zero(), |acc, (w, _)| acc + *w)
    }

    /// `Tr ρ = Σ w_i ‖ψ_i‖²`; drops below one once members leak norm.
    pub fn retained_norm(&self) -> T {
        self.members
            .iter()
            .fold(T::zero(), |acc, (w, s)| acc + *w * s.norm_sqr())
    }

    /// Applies `f` to every member, keeping weights.
    pub fn map_states<F>(&self, f: F) -> Self
    where
        F: Fn(&PureState<T>) -> PureState<T>,
    {
        Ensemble {
            members: self.members.iter().map(|(w, s)| (*w, f(s))).collect(),
        }
    }

    /// `⟨s|ρ|s⟩`.
    pub fn overlap(&self, s: &PureState<T>) -> Result<T> {
        ensemble_overlap(self, s)
    }
}

/// `⟨s|ρ|s⟩ = Σ w_i |⟨s|ψ_i⟩|²`.
pub fn ensemble_overlap<T: Real>(e: &Ensemble<T>, s: &PureState<T>) -> Result<T> {
    e.members.iter().try_fold(T::zero(), |acc, (w, psi)| {
        Ok(acc + *w * inner_product(s, psi)?.norm_sqr())
    })
}
