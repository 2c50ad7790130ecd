//! End-to-end cluster-state generation and its fidelity budget.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::propagate::propagate;
use super::state::{
    fidelity, ideal_cluster_state, plus_state, stabilizer_expectations, tilt, TiltDirection,
};
use crate::bias::{bias_assignment, compensate_tunneling, verify_scheme, BiasScheme};
use crate::coulomb::{CoulombCoefficients, MaterialParams, HBAR_UEV_S};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_ising, build_lattice_hamiltonian, conjugate_by_local_y_rotations, frame_residual,
    ising_offsets, AngleConvention, DecompositionMode, HamiltonianForm, IsingOffsets,
    RotationAngles, UndesiredSigns,
};
use crate::lattice::{Boundary, Lattice, LatticeSpec};

/// Frame in which the initial state is `|+>^{⊗n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialFrame {
    /// Lab-frame start `U† |+>^{⊗n}`, so the tilted frame starts in `|+>^{⊗n}`.
    #[default]
    Tilted,
    /// Plain `|+>^{⊗n}` in the lab frame.
    Lab,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub lattice: LatticeSpec,
    pub material: MaterialParams,
    /// Tunneling `T` [μeV].
    pub tunneling_uev: f64,
    pub mode: DecompositionMode,
    pub k: i64,
    pub k_prime: i64,
    pub initial_frame: InitialFrame,
    /// Re-solve the bias so that `V' + T²/V'` hits the target exactly.
    pub compensate_tunneling: bool,
}

impl ProtocolConfig {
    pub fn gaas(rows: usize, cols: usize, boundary: Boundary, tunneling_uev: f64) -> Self {
        ProtocolConfig {
            lattice: LatticeSpec::gaas(rows, cols, boundary),
            material: MaterialParams::gaas(),
            tunneling_uev,
            mode: DecompositionMode::Paper,
            k: 0,
            k_prime: 0,
            initial_frame: InitialFrame::Tilted,
            compensate_tunneling: false,
        }
    }
}

/// Evolution time `(π/4 + 2kπ)/ς` in ħ/μeV.
pub fn generation_time(sigma: f64, k: i64) -> Result<f64> {
    if sigma == 0.0 {
        return Err(Error::Domain("coupling ς must be non-zero".into()));
    }
    Ok((PI / 4.0 + 2.0 * PI * k as f64) / sigma)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterEcho {
    pub rows: usize,
    pub cols: usize,
    pub boundary: Boundary,
    pub tunneling_uev: f64,
    pub sigma_uev: f64,
    pub delta_sigma_uev: f64,
    pub mode: DecompositionMode,
    pub k: i64,
    pub k_prime: i64,
    pub initial_frame: InitialFrame,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionReport {
    pub t_hbar_per_uev: f64,
    pub t_seconds: f64,
    /// Fidelity of the lab-frame evolution under the full Hamiltonian.
    pub f_exact: f64,
    /// Fidelity of the tilted-frame Ising evolution alone.
    pub f_ising: f64,
    /// `1 − (4 N ς t T / V̄)²` with `N = sqrt(rows·cols)`.
    pub f_formula: f64,
    pub one_minus_f_exact: f64,
    pub one_minus_f_ising: f64,
    pub one_minus_f_formula: f64,
    /// Normalized Frobenius norm of `U H' U† − H_Is − H_und`.
    pub residual_norm_uev: f64,
    /// Mean `|V'|`.
    pub vbar_uev: f64,
    /// Smallest `<K_a>` of the final state, in the tilted frame.
    pub min_stabilizer: f64,
    pub warnings: Vec<String>,
    pub parameters: ParameterEcho,
}

/// `1 − (4 N ς t T / V̄)²`.
pub fn fidelity_formula(linear_size: f64, sigma: f64, t: f64, tunneling: f64, vbar: f64) -> f64 {
    1.0 - (4.0 * linear_size * sigma * t * tunneling / vbar).powi(2)
}

struct Prepared {
    lattice: Lattice,
    coeffs: CoulombCoefficients,
    scheme: BiasScheme,
    angles: RotationAngles,
    t: f64,
}

fn prepare(config: &ProtocolConfig) -> Result<Prepared> {
    if !(config.tunneling_uev.is_finite() && config.tunneling_uev >= 0.0) {
        return Err(Error::Domain(format!(
            "tunneling must be non-negative, got {}",
            config.tunneling_uev
        )));
    }
    let lattice = Lattice::build(config.lattice)?;
    let coeffs = CoulombCoefficients::compute(&config.lattice, &config.material)?;
    let mut scheme = bias_assignment(&lattice, &coeffs, config.k, config.k_prime)?;
    if config.compensate_tunneling {
        scheme = compensate_tunneling(&lattice, &coeffs, &scheme, config.tunneling_uev)?;
    }
    let angles = RotationAngles::new(
        config.tunneling_uev,
        &scheme.vprime,
        AngleConvention::HalfRatio,
    )?;
    let t = generation_time(coeffs.sigma, config.k)?;
    Ok(Prepared {
        lattice,
        coeffs,
        scheme,
        angles,
        t,
    })
}

pub fn run_protocol(config: &ProtocolConfig) -> Result<EvolutionReport> {
    let p = prepare(config)?;
    let tunneling = config.tunneling_uev;
    let n = p.lattice.n_qubits();
    let h = build_lattice_hamiltonian(
        &p.lattice,
        &p.coeffs,
        &p.scheme,
        tunneling,
        config.mode,
        HamiltonianForm::Reduced,
    )?;

    let plus = plus_state(n)?;
    let initial = match config.initial_frame {
        InitialFrame::Tilted => tilt(&plus, &p.angles, TiltDirection::ToLab)?,
        InitialFrame::Lab => plus.clone(),
    };
    let evolved = propagate(&h, p.t, &initial)?;
    let cluster = ideal_cluster_state(&p.lattice)?;
    let target = tilt(&cluster, &p.angles, TiltDirection::ToLab)?;
    let f_exact = fidelity(&evolved, &target)?;

    let ising = build_ising(
        &p.lattice,
        p.coeffs.sigma,
        &ising_offsets(&p.scheme.vprime, tunneling, IsingOffsets::BiasOnly),
    )?;
    let f_ising = fidelity(&propagate(&ising, p.t, &plus)?, &cluster)?;

    let vbar = p.scheme.mean_abs_vprime();
    let f_formula = fidelity_formula(p.lattice.linear_size(), p.coeffs.sigma, p.t, tunneling, vbar);
    let residual = frame_residual(
        &p.lattice,
        &p.coeffs,
        &p.scheme,
        tunneling,
        IsingOffsets::TunnelingShifted,
        UndesiredSigns::Derived,
    )?;

    let tilted_final = tilt(&evolved, &p.angles, TiltDirection::ToTilted)?;
    let min_stabilizer = stabilizer_expectations(&p.lattice, &tilted_final)?
        .into_iter()
        .fold(f64::INFINITY, f64::min);

    let mut warnings = verify_scheme(&p.scheme, p.coeffs.sigma, tunneling)
        .admissibility
        .warnings();
    if p.coeffs.minus_mismatch_rel > crate::coulomb::DEFAULT_MINUS_TOLERANCE {
        warnings.push(format!(
            "symmetric and asymmetric ZZ strengths differ by {:.2}%",
            100.0 * p.coeffs.minus_mismatch_rel
        ));
    }

    Ok(EvolutionReport {
        t_hbar_per_uev: p.t,
        t_seconds: p.t * HBAR_UEV_S,
        f_exact,
        f_ising,
        f_formula,
        one_minus_f_exact: 1.0 - f_exact,
        one_minus_f_ising: 1.0 - f_ising,
        one_minus_f_formula: 1.0 - f_formula,
        residual_norm_uev: residual.norm(),
        vbar_uev: vbar,
        min_stabilizer,
        warnings,
        parameters: ParameterEcho {
            rows: config.lattice.rows,
            cols: config.lattice.cols,
            boundary: config.lattice.boundary,
            tunneling_uev: tunneling,
            sigma_uev: p.coeffs.sigma,
            delta_sigma_uev: p.coeffs.delta_sigma,
            mode: config.mode,
            k: config.k,
            k_prime: config.k_prime,
            initial_frame: config.initial_frame,
        },
    })
}

/// Same fidelity as [`run_protocol`], computed entirely in the tilted frame:
/// evolve under `U H' U†` and compare with the untilted cluster state.
pub fn tilted_frame_fidelity(config: &ProtocolConfig) -> Result<f64> {
    let p = prepare(config)?;
    let h = build_lattice_hamiltonian(
        &p.lattice,
        &p.coeffs,
        &p.scheme,
        config.tunneling_uev,
        config.mode,
        HamiltonianForm::Reduced,
    )?;
    let h_eff = conjugate_by_local_y_rotations(&h, &p.angles)?;
    let plus = plus_state(p.lattice.n_qubits())?;
    let initial = match config.initial_frame {
        InitialFrame::Tilted => plus,
        InitialFrame::Lab => tilt(&plus, &p.angles, TiltDirection::ToTilted)?,
    };
    let evolved = propagate(&h_eff, p.t, &initial)?;
    fidelity(&evolved, &ideal_cluster_state(&p.lattice)?)
}

/// `(1 − F) (V̄ / (4 ς t T))²`: qubit count reachable at fidelity `F`.
pub fn nmax_bound(f: f64, vbar: f64, sigma: f64, t: f64, tunneling: f64) -> Result<f64> {
    if !(f > 0.0 && f < 1.0) {
        return Err(Error::Domain(format!("fidelity must lie in (0, 1), got {f}")));
    }
    if !(tunneling > 0.0) {
        return Err(Error::Domain(format!("tunneling must be positive, got {tunneling}")));
    }
    if sigma * t == 0.0 {
        return Err(Error::Domain("ς t must be non-zero".into()));
    }
    Ok((1.0 - f) * (vbar / (4.0 * sigma * t * tunneling)).powi(2))
}

/// [`nmax_bound`] at `t = π/(4ς)`: `(1 − F)(V̄ / (πT))²`.
pub fn nmax_quarter_period(f: f64, vbar: f64, tunneling: f64) -> Result<f64> {
    nmax_bound(f, vbar, 1.0, PI / 4.0, tunneling)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Tunneling `T` [μeV].
    Tunneling,
    /// Square `N × N` lattice.
    LinearSize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub one_minus_f_exact: f64,
    pub one_minus_f_formula: f64,
    pub residual_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub parameter: SweepParameter,
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `ln(1 − F_exact)` against `ln(param)`.
    pub slope: f64,
}

pub fn sweep_scaling(
    base: &ProtocolConfig,
    parameter: SweepParameter,
    values: &[f64],
) -> Result<SweepTable> {
    if values.len() < 3 {
        return Err(Error::Config(format!(
            "a sweep needs at least 3 points, got {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::Config(format!("sweep values must be positive, got {v}")));
    }
    let rows = values
        .iter()
        .map(|&value| {
            let mut cfg = base.clone();
            match parameter {
                SweepParameter::Tunneling => cfg.tunneling_uev = value,
                SweepParameter::LinearSize => {
                    if value.fract() != 0.0 {
                        return Err(Error::Config(format!("lattice size must be an integer, got {value}")));
                    }
                    cfg.lattice.rows = value as usize;
                    cfg.lattice.cols = value as usize;
                }
            }
            let r = run_protocol(&cfg)?;
            Ok(SweepRow {
                param: value,
                one_minus_f_exact: r.one_minus_f_exact,
                one_minus_f_formula: r.one_minus_f_formula,
                residual_norm: r.residual_norm_uev,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.param.ln(), r.one_minus_f_exact.max(f64::MIN_POSITIVE).ln()))
        .collect();
    Ok(SweepTable {
        parameter,
        slope: fit_slope(&points),
        rows,
    })
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}
