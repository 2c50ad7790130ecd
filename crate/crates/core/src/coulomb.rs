//! Inter-qubit Coulomb coefficients.
//!
//! Energies are in μeV and lengths in μm throughout. All coefficients are
//! written "left first": in `ς_lk` the index `l` is the state of the ddot on
//! the L side of the pair (see [`crate::lattice::Edge::left`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{EdgeClass, LatticeSpec};

/// Elementary charge [C].
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Vacuum permittivity [F/m].
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Reduced Planck constant [μeV·s].
pub const HBAR_UEV_S: f64 = 6.582_119_569e-10;
/// One μeV·μm expressed in N·m².
pub const UEV_UM_IN_N_M2: f64 = 1.602_176_634e-25 * 1e-6;

/// Coulomb scale `V_Q = e²/(4πε)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    pub vq_uev_um: f64,
}

impl MaterialParams {
    /// V_Q used for the GaAs double-dot array: 1.75e-29 N·m².
    pub fn gaas() -> Self {
        MaterialParams::from_n_m2(1.75e-29).expect("positive constant")
    }

    pub fn from_n_m2(vq: f64) -> Result<Self> {
        if !(vq.is_finite() && vq > 0.0) {
            return Err(Error::Domain(format!("V_Q must be positive, got {vq}")));
        }
        Ok(MaterialParams {
            vq_uev_um: vq / UEV_UM_IN_N_M2,
        })
    }

    pub fn from_permittivity(eps_r: f64) -> Result<Self> {
        vq_from_material(eps_r)
    }

    pub fn vq_n_m2(&self) -> f64 {
        self.vq_uev_um * UEV_UM_IN_N_M2
    }
}

/// `V_Q = e²/(4π ε₀ ε_r)` for a dielectric with relative permittivity `eps_r > 1`.
pub fn vq_from_material(eps_r: f64) -> Result<MaterialParams> {
    if !(eps_r.is_finite() && eps_r > 1.0) {
        return Err(Error::Domain(format!(
            "relative permittivity must exceed 1, got {eps_r}"
        )));
    }
    let vq = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE
        / (4.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY * eps_r);
    MaterialParams::from_n_m2(vq)
}

/// Diagonal Coulomb energies of a neighbouring pair in the two-qubit basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeCoefficients {
    pub class: EdgeClass,
    pub s00: f64,
    pub s01: f64,
    pub s10: f64,
    pub s11: f64,
}

impl EdgeCoefficients {
    /// Swap the roles of the two qubits (`ς_01 <-> ς_10`).
    pub fn swapped(&self) -> Self {
        EdgeCoefficients {
            s01: self.s10,
            s10: self.s01,
            ..*self
        }
    }

    /// Diagonal entries in the order |00>, |01>, |10>, |11>.
    pub fn diagonal(&self) -> [f64; 4] {
        [self.s00, self.s01, self.s10, self.s11]
    }
}

pub fn edge_coefficients(
    geom: &LatticeSpec,
    mat: &MaterialParams,
    class: EdgeClass,
) -> Result<EdgeCoefficients> {
    geom.validate()?;
    let vq = mat.vq_uev_um;
    let a = geom.intra_ddot_um;
    Ok(match class {
        EdgeClass::Symmetric => {
            let d = geom.sym_spacing_um;
            let same = vq / d;
            let cross = vq / d.hypot(a);
            EdgeCoefficients {
                class,
                s00: same,
                s01: cross,
                s10: cross,
                s11: same,
            }
        }
        EdgeClass::Asymmetric => {
            let d = geom.asym_spacing_um;
            EdgeCoefficients {
                class,
                s00: vq / d,
                s01: vq / (d + a),
                s10: vq / (d - a),
                s11: vq / d,
            }
        }
    })
}

/// Combinations entering the lattice Hamiltonian for one edge class.
///
/// `2ς± = ς00 + ς11 ± ς01 + ς10` (the sign acts on `ς01` alone),
/// `Δς+ = ς00 − ς11`, `Δς− = ς01 − ς10`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassCombinations {
    pub plus: f64,
    pub minus: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
}

impl ClassCombinations {
    pub fn of(e: &EdgeCoefficients) -> Self {
        ClassCombinations {
            plus: 0.5 * (e.s00 + e.s11 + e.s01 + e.s10),
            minus: 0.5 * (e.s00 + e.s11 - e.s01 + e.s10),
            delta_plus: e.s00 - e.s11,
            delta_minus: e.s01 - e.s10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoulombCoefficients {
    pub sym: EdgeCoefficients,
    pub asym: EdgeCoefficients,
    pub sym_comb: ClassCombinations,
    pub asym_comb: ClassCombinations,
    /// Common ZZ strength `ς`, taken from the asymmetric class (`ς−^asym / 2`).
    pub sigma: f64,
    /// `Δς = Δς−^asym`.
    pub delta_sigma: f64,
    /// `|ς−^sym − ς−^asym| / ς−^asym`.
    pub minus_mismatch_rel: f64,
}

impl CoulombCoefficients {
    pub fn for_class(&self, class: EdgeClass) -> (&EdgeCoefficients, &ClassCombinations) {
        match class {
            EdgeClass::Symmetric => (&self.sym, &self.sym_comb),
            EdgeClass::Asymmetric => (&self.asym, &self.asym_comb),
        }
    }

    /// ZZ strength each class would give on its own, `ς−/2`.
    pub fn half_minus(&self, class: EdgeClass) -> f64 {
        0.5 * self.for_class(class).1.minus
    }

    pub fn compute(geom: &LatticeSpec, mat: &MaterialParams) -> Result<Self> {
        let sym = edge_coefficients(geom, mat, EdgeClass::Symmetric)?;
        let asym = edge_coefficients(geom, mat, EdgeClass::Asymmetric)?;
        derived_coefficients(&sym, &asym, None)
    }
}

/// Default relative bound on `|ς−^sym − ς−^asym|` in strict mode.
pub const DEFAULT_MINUS_TOLERANCE: f64 = 0.01;

/// Combine both classes. With `strict = Some(tol)` a relative mismatch of the
/// two `ς−` values above `tol` is an error.
pub fn derived_coefficients(
    sym: &EdgeCoefficients,
    asym: &EdgeCoefficients,
    strict: Option<f64>,
) -> Result<CoulombCoefficients> {
    let sym_comb = ClassCombinations::of(sym);
    let asym_comb = ClassCombinations::of(asym);
    let mismatch = (sym_comb.minus - asym_comb.minus).abs() / asym_comb.minus.abs();
    if let Some(tol) = strict {
        if mismatch > tol {
            return Err(Error::Tolerance(format!(
                "symmetric and asymmetric ZZ strengths differ by {:.3}% (bound {:.3}%)",
                100.0 * mismatch,
                100.0 * tol
            )));
        }
    }
    Ok(CoulombCoefficients {
        sym: *sym,
        asym: *asym,
        sym_comb,
        asym_comb,
        sigma: 0.5 * asym_comb.minus,
        delta_sigma: asym_comb.delta_minus,
        minus_mismatch_rel: mismatch,
    })
}

/// Pauli-Z decomposition of `Σ ς_lk |lk><lk|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZDecomposition {
    pub c_ii: f64,
    /// Z on the first (left) qubit.
    pub c_zi: f64,
    /// Z on the second (right) qubit.
    pub c_iz: f64,
    pub c_zz: f64,
}

impl ZDecomposition {
    /// Diagonal entries `(00, 01, 10, 11)` of `Σ c_P P`.
    pub fn reconstruct(&self) -> [f64; 4] {
        let z = [1.0, -1.0];
        let mut out = [0.0; 4];
        for (l, zl) in z.iter().enumerate() {
            for (k, zk) in z.iter().enumerate() {
                out[2 * l + k] = self.c_ii + self.c_zi * zl + self.c_iz * zk + self.c_zz * zl * zk;
            }
        }
        out
    }
}

pub fn exact_pauli_decomposition(e: &EdgeCoefficients) -> ZDecomposition {
    ZDecomposition {
        c_ii: (e.s00 + e.s11 + e.s01 + e.s10) / 4.0,
        c_zi: (e.s00 + e.s01 - e.s11 - e.s10) / 4.0,
        c_iz: (e.s00 + e.s10 - e.s11 - e.s01) / 4.0,
        c_zz: (e.s00 + e.s11 - e.s01 - e.s10) / 4.0,
    }
}
