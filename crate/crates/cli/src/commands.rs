use std::fs;
use std::io::Write;
use std::path::PathBuf;

use borromean::bound::eigen_report;
use borromean::coboson::{depleted_norm, depleted_norm_reference, format_rational};
use borromean::state::AmplitudeRecord;
use borromean::{
    bound_state, coboson_report, fidelity_sweep, phase_grid, remove_particle, scan_conditions,
    spectrum_norms, survival_probability, Cluster, Coin, FreeCoin, GhzSign, LatticeConfig, LatticeConfig64,
    PureState, StepOperator, SurvivalMethod,
};
use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::{write_csv, write_json, Format, Sig12};
use crate::phase::Phase;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the amplitudes of a state along its trajectory.
    Evolve(EvolveArgs),
    /// Eigenvalue and residual of the bound states under the step operator.
    CheckEigen(CheckEigenArgs),
    /// Grid points where a GHZ coin state satisfies the eigenstate condition.
    GhzScan(GhzScanArgs),
    /// |λ_{k,±}| of the two-walker momentum blocks.
    Spectrum(SpectrumArgs),
    /// Survival probability of a removal ensemble under the projected step.
    Survival(SurvivalArgs),
    /// Persistence of the trimer GHZ coin over a phase grid.
    Fidelity(FidelityArgs),
    /// Exact composite-boson normalizations.
    Coboson(CobosonArgs),
}

#[derive(Debug, Clone, Copy)]
pub struct FreeCoinArg(FreeCoin<f64>);

impl std::str::FromStr for FreeCoinArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let coin = match s.trim().to_ascii_lowercase().as_str() {
            "identity" | "id" => FreeCoin::Identity,
            "hadamard" | "h" => FreeCoin::Hadamard,
            other => {
                let angles = other.strip_prefix("param:").ok_or_else(|| {
                    format!("unknown free coin `{s}`; use identity, hadamard or param:θ,ξ,ζ")
                })?;
                let v = angles
                    .split(',')
                    .map(|a| a.parse::<Phase>().map(Phase::radians))
                    .collect::<Result<Vec<_>, _>>()?;
                let [theta, xi, zeta] = v[..] else {
                    return Err(format!("param coin needs three angles, got {}", v.len()));
                };
                FreeCoin::Parametrized { theta, xi, zeta }
            }
        };
        Ok(FreeCoinArg(coin))
    }
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    /// Number of walkers.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Number of lattice sites.
    #[arg(long, default_value_t = 8)]
    d: usize,
    /// Interaction phase, e.g. `2pi/3`, `pi/5` or radians.
    #[arg(long, default_value = "2pi/3")]
    phi: Phase,
    /// Coin for walkers alone on a site: identity, hadamard, param:θ,ξ,ζ.
    #[arg(long, default_value = "identity")]
    free_coin: FreeCoinArg,
}

impl WalkArgs {
    fn config(&self) -> Result<LatticeConfig64, CliError> {
        Ok(LatticeConfig::new(self.n, self.d, self.phi.radians())?.with_free_coin(self.free_coin.0))
    }
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    walk: WalkArgs,
    /// Bound state used as the initial state (0 or 1).
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// JSON list of {positions, coins, re, im}; replaces --r.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of steps.
    #[arg(long, default_value_t = 10)]
    t: usize,
    /// Use the projected step Π·U.
    #[arg(long)]
    projected: bool,
}

#[derive(Debug, Args)]
pub struct CheckEigenArgs {
    #[command(flatten)]
    walk: WalkArgs,
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Check all six states (N = 2, 3, 4 and r = 0, 1); ignores --n and --r.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    projected: bool,
    /// Residual below which a state counts as an eigenvector.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Args)]
pub struct GhzScanArgs {
    /// Walker counts to scan.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    n: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    d: usize,
    /// Number of grid intervals on [0, 2π); φ = 0 is skipped.
    #[arg(long, default_value_t = 720)]
    phi_grid: usize,
    /// Momentum indices; defaults to 0 and d/2.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, value_enum, default_value_t = SignArg::Both)]
    sign: SignArg,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 100)]
    d: usize,
    #[arg(long, default_value = "2pi/3")]
    phi: Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Momentum,
}

#[derive(Debug, Args)]
pub struct SurvivalArgs {
    /// Walkers left after removal (2 or 3).
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    d: usize,
    #[arg(long, default_value = "2pi/3")]
    phi: Phase,
    #[arg(long, default_value = "identity")]
    free_coin: FreeCoinArg,
    /// Parent bound state (0 or 1).
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 200)]
    t_max: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    t: Vec<u64>,
    #[arg(long, default_value_t = 720)]
    phi_grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClusterArg {
    Triple,
    Quadruple,
}

#[derive(Debug, Args)]
pub struct CobosonArgs {
    /// Number of composites.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, value_enum, default_value_t = ClusterArg::Triple)]
    cluster: ClusterArg,
}

impl Command {
    fn default_format(&self) -> Format {
        match self {
            Command::CheckEigen(_) | Command::Coboson(_) => Format::Json,
            _ => Format::Csv,
        }
    }

    pub fn run(&self, format: Option<Format>, out: &mut dyn Write) -> Result<(), CliError> {
        let format = format.unwrap_or_else(|| self.default_format());
        match self {
            Command::Evolve(a) => evolve(a, format, out),
            Command::CheckEigen(a) => check_eigen(a, format, out),
            Command::GhzScan(a) => ghz_scan(a, format, out),
            Command::Spectrum(a) => spectrum(a, format, out),
            Command::Survival(a) => survival(a, format, out),
            Command::Fidelity(a) => fidelity(a, format, out),
            Command::Coboson(a) => coboson(a, format, out),
        }
    }
}

fn emit<R: Serialize>(format: Format, out: &mut dyn Write, rows: &[R]) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(out, rows)?,
        Format::Json => write_json(out, rows)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct AmplitudeRow {
    t: usize,
    positions: String,
    coins: String,
    re: Sig12,
    im: Sig12,
}

#[derive(Serialize)]
struct Snapshot {
    t: usize,
    norm: Sig12,
    amplitudes: Vec<AmplitudeRecord>,
}

fn evolve(a: &EvolveArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let config = a.walk.config()?;
    let mut state = match &a.input {
        Some(path) => {
            let records: Vec<AmplitudeRecord> = serde_json::from_str(&fs::read_to_string(path)?)?;
            PureState::from_records(config, &records)?
        }
        None => bound_state(&config, a.r)?,
    };
    let op = StepOperator::new(&config, a.projected);
    let mut rows = Vec::new();
    let mut snapshots = Vec::new();
    for t in 0..=a.t {
        if t > 0 {
            state = op.apply(&state);
        }
        match format {
            Format::Csv => rows.extend(state.to_records().into_iter().map(|r| {
                AmplitudeRow {
                    t,
                    positions: join(r.positions.iter()),
                    coins: r
                        .coins
                        .iter()
                        .map(|c| if *c == Coin::Right { 'R' } else { 'L' })
                        .collect(),
                    re: Sig12(r.re),
                    im: Sig12(r.im),
                }
            })),
            Format::Json => snapshots.push(Snapshot {
                t,
                norm: Sig12(state.norm()),
                amplitudes: state.to_records(),
            }),
        }
    }
    match format {
        Format::Csv => emit(format, out, &rows),
        Format::Json => emit(format, out, &snapshots),
    }
}

fn join<I: Iterator<Item = D>, D: ToString>(it: I) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct EigenRow {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    phi: String,
    r: usize,
    projected: bool,
    is_eigenvector: bool,
    eigenvalue_re: Sig12,
    eigenvalue_im: Sig12,
    eigenvalue_abs: Sig12,
    residual: f64,
}

fn check_eigen(a: &CheckEigenArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let base = a.walk.config()?;
    let cases: Vec<(usize, usize)> = if a.all {
        (2..=4).flat_map(|n| [(n, 0), (n, 1)]).collect()
    } else {
        vec![(base.particle_count(), a.r)]
    };
    let mut rows = Vec::new();
    for (n, r) in cases {
        let config = base.with_particle_count(n)?;
        let s = bound_state(&config, r)?;
        let rep = eigen_report(&StepOperator::new(&config, a.projected), &s, a.tol);
        rows.push(EigenRow {
            n,
            d: config.site_count(),
            phi: a.walk.phi.to_string(),
            r,
            projected: a.projected,
            is_eigenvector: rep.is_eigenvector,
            eigenvalue_re: Sig12(rep.eigenvalue.re),
            eigenvalue_im: Sig12(rep.eigenvalue.im),
            eigenvalue_abs: Sig12(rep.eigenvalue.norm()),
            // kept at full precision: the residual is the quantity under test
            residual: rep.residual,
        });
    }
    match (format, a.all) {
        (Format::Json, false) => write_json(out, &rows[0])?,
        _ => emit(format, out, &rows)?,
    }
    let failed = rows.iter().filter(|r| !r.is_eigenvector).count();
    if failed > 0 {
        return Err(CliError::Check(format!(
            "{failed} state(s) are not eigenvectors within {:e}",
            a.tol
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanRow {
    #[serde(rename = "N")]
    n: usize,
    phi: Sig12,
    k: usize,
    sign: &'static str,
    value: Sig12,
    closed_form: Sig12,
    refined_phi: Sig12,
}

fn ghz_scan(a: &GhzScanArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if a.phi_grid < 2 {
        return Err(CliError::Usage("--phi-grid needs at least 2 points".into()));
    }
    let momenta = if a.k.is_empty() {
        let mut k = vec![0];
        if a.d.is_multiple_of(2) {
            k.push(a.d / 2);
        }
        k
    } else {
        a.k.clone()
    };
    let signs: &[GhzSign] = match a.sign {
        SignArg::Plus => &[GhzSign::Plus],
        SignArg::Minus => &[GhzSign::Minus],
        SignArg::Both => &[GhzSign::Plus, GhzSign::Minus],
    };
    let grid = phase_grid::<f64>(a.phi_grid);
    let hits = scan_conditions(&a.n, &grid, &momenta, a.d, signs)?;
    let rows: Vec<ScanRow> = hits
        .iter()
        .map(|h| ScanRow {
            n: h.arity,
            phi: Sig12(h.phase),
            k: h.momentum_index,
            sign: h.sign.as_str(),
            value: Sig12(h.value),
            closed_form: Sig12(h.closed_form_value),
            refined_phi: Sig12(h.refined_phase),
        })
        .collect();
    emit(format, out, &rows)
}

#[derive(Serialize)]
struct SpectrumOut {
    k_over_d: Sig12,
    abs_lambda_plus: Sig12,
    abs_lambda_minus: Sig12,
}

fn spectrum(a: &SpectrumArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let rows: Vec<SpectrumOut> = spectrum_norms(a.d, a.phi.radians())?
        .iter()
        .map(|r| SpectrumOut {
            k_over_d: Sig12(r.k_over_d),
            abs_lambda_plus: Sig12(r.abs_lambda_plus),
            abs_lambda_minus: Sig12(r.abs_lambda_minus),
        })
        .collect();
    emit(format, out, &rows)
}

#[derive(Serialize)]
struct SurvivalOut {
    t: usize,
    #[serde(rename = "p_B")]
    p_b: Sig12,
}

fn survival(a: &SurvivalArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if !(2..=3).contains(&a.n) {
        return Err(CliError::Usage(format!("--n must be 2 or 3, got {}", a.n)));
    }
    let parent = LatticeConfig::new(a.n + 1, a.d, a.phi.radians())?.with_free_coin(a.free_coin.0);
    let rho = remove_particle(&bound_state(&parent, a.r)?)?;
    let method = match a.method {
        MethodArg::Direct => SurvivalMethod::Direct,
        MethodArg::Momentum => SurvivalMethod::Momentum,
    };
    let series = survival_probability(&rho, a.t_max, method)?;
    let rows: Vec<SurvivalOut> = series
        .values
        .iter()
        .map(|&(t, p)| SurvivalOut { t, p_b: Sig12(p) })
        .collect();
    emit(format, out, &rows)
}

#[derive(Serialize)]
struct FidelityOut {
    phi: Sig12,
    t: u64,
    p: Sig12,
}

fn fidelity(a: &FidelityArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if a.phi_grid < 2 {
        return Err(CliError::Usage("--phi-grid needs at least 2 points".into()));
    }
    let rows: Vec<FidelityOut> = fidelity_sweep(&phase_grid::<f64>(a.phi_grid), &a.t)?
        .iter()
        .map(|r| FidelityOut {
            phi: Sig12(r.phase),
            t: r.t,
            p: Sig12(r.p),
        })
        .collect();
    emit(format, out, &rows)
}

#[derive(Serialize)]
struct CobosonOut {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    cluster: &'static str,
    modes: usize,
    #[serde(rename = "B_N")]
    b_n: String,
    ratio: String,
    approx_ratio: String,
    approximation_error: String,
    #[serde(rename = "B_N_float")]
    b_n_float: Sig12,
    #[serde(rename = "B_tilde_2", skip_serializing_if = "Option::is_none")]
    depleted: Option<String>,
    #[serde(rename = "B_tilde_2_reference", skip_serializing_if = "Option::is_none")]
    depleted_reference: Option<String>,
}

fn coboson(a: &CobosonArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if a.n == 0 || a.d == 0 {
        return Err(CliError::Usage("--n and --d must be at least 1".into()));
    }
    let cluster = match a.cluster {
        ClusterArg::Triple => Cluster::Triple,
        ClusterArg::Quadruple => Cluster::Quadruple,
    };
    let rep = coboson_report(a.n, a.d, cluster);
    let triple = cluster == Cluster::Triple;
    let row = CobosonOut {
        n: a.n,
        d: a.d,
        cluster: if triple { "triple" } else { "quadruple" },
        modes: rep.mode_count,
        b_n: format_rational(&rep.b_n),
        ratio: format_rational(&rep.ratio_to_previous),
        approx_ratio: format_rational(&rep.approx_ratio),
        approximation_error: format_rational(&rep.approximation_error()),
        b_n_float: Sig12(to_f64(&rep.b_n)),
        depleted: triple.then(|| format_rational(&depleted_norm(a.d))),
        depleted_reference: triple.then(|| format_rational(&depleted_norm_reference(a.d))),
    };
    match format {
        Format::Json => write_json(out, &row)?,
        Format::Csv => emit(format, out, &[row])?,
    }
    Ok(())
}

fn to_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
