//! JSON run configuration (schema `v1`).
//!
//! Every key is optional and defaults to the GaAs array. Physical quantities
//! carry their unit in the key name.
//!
//! ```json
//! {
//!   "schema": "v1",
//!   "rows": 2, "cols": 3,
//!   "a_nm": 400, "d_sym_um": 5.5, "d_asym_um": 5.85,
//!   "boundary": "open",
//!   "vq_n_m2": 1.75e-29,
//!   "T_ueV": 0.1,
//!   "mode": "paper",
//!   "k": 0, "k_prime": 0,
//!   "initial_frame": "tilted",
//!   "compensate_tunneling": false,
//!   "output": "report.json",
//!   "tolerances": { "minus_rel": 0.01 }
//! }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::coulomb::{MaterialParams, DEFAULT_MINUS_TOLERANCE};
use crate::error::{Error, Result};
use crate::evolve::{InitialFrame, ProtocolConfig};
use crate::hamiltonian::DecompositionMode;
use crate::lattice::{Boundary, Lattice, LatticeSpec};

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Allowed relative mismatch between the symmetric and asymmetric ZZ strengths.
    pub minus_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            minus_rel: DEFAULT_MINUS_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub schema: String,
    pub rows: usize,
    pub cols: usize,
    pub a_nm: f64,
    pub d_sym_um: f64,
    pub d_asym_um: f64,
    pub boundary: Boundary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vq_n_m2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_r: Option<f64>,
    #[serde(rename = "T_ueV")]
    pub t_uev: f64,
    pub mode: DecompositionMode,
    pub k: i64,
    pub k_prime: i64,
    pub initial_frame: InitialFrame,
    pub compensate_tunneling: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema: SCHEMA_VERSION.into(),
            rows: 2,
            cols: 2,
            a_nm: 400.0,
            d_sym_um: 5.5,
            d_asym_um: 5.85,
            boundary: Boundary::Open,
            vq_n_m2: None,
            eps_r: None,
            t_uev: 0.1,
            mode: DecompositionMode::Paper,
            k: 0,
            k_prime: 0,
            initial_frame: InitialFrame::Tilted,
            compensate_tunneling: false,
            output: None,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn lattice_spec(&self) -> LatticeSpec {
        LatticeSpec {
            rows: self.rows,
            cols: self.cols,
            intra_ddot_um: self.a_nm * 1e-3,
            sym_spacing_um: self.d_sym_um,
            asym_spacing_um: self.d_asym_um,
            boundary: self.boundary,
        }
    }

    pub fn material(&self) -> Result<MaterialParams> {
        match (self.vq_n_m2, self.eps_r) {
            (Some(_), Some(_)) => Err(Error::Config(
                "give either vq_n_m2 or eps_r, not both".into(),
            )),
            (Some(vq), None) => MaterialParams::from_n_m2(vq),
            (None, Some(eps)) => MaterialParams::from_permittivity(eps),
            (None, None) => Ok(MaterialParams::gaas()),
        }
    }

    pub fn protocol(&self) -> Result<ProtocolConfig> {
        Ok(ProtocolConfig {
            lattice: self.lattice_spec(),
            material: self.material()?,
            tunneling_uev: self.t_uev,
            mode: self.mode,
            k: self.k,
            k_prime: self.k_prime,
            initial_frame: self.initial_frame,
            compensate_tunneling: self.compensate_tunneling,
        })
    }

    /// Re-runs every module-level check.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema {:?}, expected {SCHEMA_VERSION:?}",
                self.schema
            )));
        }
        Lattice::build(self.lattice_spec())?;
        self.material()?;
        if !(self.t_uev.is_finite() && self.t_uev >= 0.0) {
            return Err(Error::Config(format!(
                "T_ueV must be non-negative, got {}",
                self.t_uev
            )));
        }
        if !(self.tolerances.minus_rel.is_finite() && self.tolerances.minus_rel > 0.0) {
            return Err(Error::Config("tolerances.minus_rel must be positive".into()));
        }
        Ok(())
    }

    /// Schema of the accepted keys, printed on usage errors.
    pub fn schema_text() -> String {
        let mut s = serde_json::to_string_pretty(&RunConfig::default()).expect("serializable");
        s.push_str("\n(vq_n_m2 or eps_r may be given instead of the GaAs default; output is an optional path)\n");
        s
    }
}
