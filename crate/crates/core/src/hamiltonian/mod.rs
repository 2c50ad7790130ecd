//! Hamiltonians of the double-dot array as Pauli sums, and the local Y
//! rotation that takes the lattice Hamiltonian to its tilted frame.

pub mod pauli;

use serde::{Deserialize, Serialize};

pub use pauli::{JsonTerm, NormKind, Pauli, PauliString, PauliSum};

use crate::bias::BiasScheme;
use crate::coulomb::{exact_pauli_decomposition, CoulombCoefficients, EdgeCoefficients};
use crate::error::{Error, Result};
use crate::lattice::{EdgeClass, Lattice};

/// Which coupling coefficients a lattice Hamiltonian uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMode {
    /// `ς` and `Δς` combinations, with `ς Z⊗Z` on every edge.
    #[default]
    Paper,
    /// Per-edge projector decomposition of `Σ ς_lk |lk><lk|`.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianForm {
    /// Applied biases plus every coupling term, identity shifts included.
    Full,
    /// Modified offsets `V'`, common `ς`, constants dropped.
    #[default]
    Reduced,
}

pub fn build_single_qubit(e: f64, v: f64, t: f64) -> PauliSum {
    PauliSum::new(1)
        .with_term(PauliString::identity(), e)
        .with_term(PauliString::single(0, Pauli::X), t)
        .with_term(PauliString::single(0, Pauli::Z), v)
}

/// Two neighbouring ddots, qubit 0 being the left one of `coeffs`.
pub fn build_two_qubit(e: f64, t: f64, v1: f64, v2: f64, coeffs: &EdgeCoefficients) -> PauliSum {
    let d = exact_pauli_decomposition(coeffs);
    PauliSum::new(2)
        .with_term(PauliString::identity(), 2.0 * e + d.c_ii)
        .with_term(PauliString::single(0, Pauli::X), t)
        .with_term(PauliString::single(1, Pauli::X), t)
        .with_term(PauliString::single(0, Pauli::Z), v1 + d.c_zi)
        .with_term(PauliString::single(1, Pauli::Z), v2 + d.c_iz)
        .with_term(PauliString::pair(0, Pauli::Z, 1, Pauli::Z), d.c_zz)
}

fn check_len(lattice: &Lattice, got: usize) -> Result<()> {
    if got != lattice.n_qubits() {
        return Err(Error::Dimension {
            expected: lattice.n_qubits(),
            got,
        });
    }
    Ok(())
}

fn zz(a: usize, b: usize) -> PauliString {
    PauliString::pair(a, Pauli::Z, b, Pauli::Z)
}

/// Lattice Hamiltonian with tunneling `t` and the bias in `bias`.
pub fn build_lattice_hamiltonian(
    lattice: &Lattice,
    coeffs: &CoulombCoefficients,
    bias: &BiasScheme,
    t: f64,
    mode: DecompositionMode,
    form: HamiltonianForm,
) -> Result<PauliSum> {
    let n = lattice.n_qubits();
    check_len(lattice, bias.v.len())?;
    check_len(lattice, bias.vprime.len())?;
    let mut h = PauliSum::new(n);
    for q in 0..n {
        h.add_term(PauliString::single(q, Pauli::X), t);
    }
    match (mode, form) {
        (DecompositionMode::Paper, HamiltonianForm::Reduced) => {
            for q in 0..n {
                h.add_term(PauliString::single(q, Pauli::Z), bias.vprime[q]);
            }
            for e in lattice.edges() {
                h.add_term(zz(e.a, e.b), coeffs.sigma);
            }
        }
        (DecompositionMode::Paper, HamiltonianForm::Full) => {
            for q in 0..n {
                h.add_term(PauliString::single(q, Pauli::Z), bias.v[q]);
            }
            for e in lattice.edges() {
                let (_, comb) = coeffs.for_class(e.class);
                h.add_term(PauliString::identity(), 0.5 * comb.plus);
                h.add_term(zz(e.a, e.b), 0.5 * comb.minus);
                h.add_term(
                    PauliString::single(e.left, Pauli::Z),
                    0.5 * (comb.delta_plus + comb.delta_minus),
                );
                h.add_term(
                    PauliString::single(e.right(), Pauli::Z),
                    0.5 * (comb.delta_plus - comb.delta_minus),
                );
            }
        }
        (DecompositionMode::Exact, _) => {
            for q in 0..n {
                h.add_term(PauliString::single(q, Pauli::Z), bias.v[q]);
            }
            for e in lattice.edges() {
                let (ec, _) = coeffs.for_class(e.class);
                let d = exact_pauli_decomposition(ec);
                if form == HamiltonianForm::Full {
                    h.add_term(PauliString::identity(), d.c_ii);
                }
                h.add_term(PauliString::single(e.left, Pauli::Z), d.c_zi);
                h.add_term(PauliString::single(e.right(), Pauli::Z), d.c_iz);
                h.add_term(zz(e.a, e.b), d.c_zz);
            }
        }
    }
    Ok(h)
}

/// `Σ E_q Z_q + ς Σ_edges Z⊗Z`.
pub fn build_ising(lattice: &Lattice, sigma: f64, e_field: &[f64]) -> Result<PauliSum> {
    check_len(lattice, e_field.len())?;
    let mut h = PauliSum::new(lattice.n_qubits());
    for (q, e) in e_field.iter().enumerate() {
        h.add_term(PauliString::single(q, Pauli::Z), *e);
    }
    for e in lattice.edges() {
        h.add_term(zz(e.a, e.b), sigma);
    }
    Ok(h)
}

/// Single-qubit Z coefficients of the tilted-frame Ising Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsingOffsets {
    /// `E = V' + T²/V'`.
    #[default]
    TunnelingShifted,
    /// `E = sign(V') sqrt(V'² + T²)`, the exact two-level splitting.
    TwoLevel,
    /// `E = V'`, the `T -> 0` limit.
    BiasOnly,
}

pub fn ising_offsets(vprime: &[f64], t: f64, kind: IsingOffsets) -> Vec<f64> {
    vprime
        .iter()
        .map(|&v| match kind {
            IsingOffsets::TunnelingShifted => v + t * t / v,
            IsingOffsets::TwoLevel => v.signum() * v.hypot(t),
            IsingOffsets::BiasOnly => v,
        })
        .collect()
}

/// Sign pattern of the residual cross terms on `(m, n+1)` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UndesiredSigns {
    /// Both edge classes carry the pattern produced by the Y rotation:
    /// `-ςT/V' (Z⊗X)` and `+ςT²/(V'V') X⊗X`.
    #[default]
    Derived,
    /// Asymmetric edges take the opposite signs.
    Printed,
}

/// Cross terms left over by the tilted-frame transformation.
pub fn build_undesired(
    lattice: &Lattice,
    sigma: f64,
    t: f64,
    vprime: &[f64],
    signs: UndesiredSigns,
) -> Result<PauliSum> {
    check_len(lattice, vprime.len())?;
    if let Some(q) = vprime.iter().position(|v| *v == 0.0) {
        return Err(Error::SingularBias(q));
    }
    let mut h = PauliSum::new(lattice.n_qubits());
    for e in lattice.edges() {
        let flip = match (signs, e.class) {
            (UndesiredSigns::Printed, EdgeClass::Asymmetric) => -1.0,
            _ => 1.0,
        };
        let (a, b) = (e.a, e.b);
        let (va, vb) = (vprime[a], vprime[b]);
        h.add_term(PauliString::pair(b, Pauli::Z, a, Pauli::X), -flip * sigma * t / va);
        h.add_term(PauliString::pair(a, Pauli::Z, b, Pauli::X), -flip * sigma * t / vb);
        h.add_term(PauliString::pair(a, Pauli::X, b, Pauli::X), flip * sigma * t * t / (va * vb));
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleConvention {
    /// `θ = T / (2V')`, the leading-order angle.
    #[default]
    HalfRatio,
    /// `θ = ½ arctan(T / V')`, which removes the single-qubit X term exactly.
    ExactDiagonalizing,
}

/// Per-qubit angles of `U = Π exp(iθ_q Y_q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationAngles {
    pub theta: Vec<f64>,
    pub convention: AngleConvention,
}

impl RotationAngles {
    pub fn new(t: f64, vprime: &[f64], convention: AngleConvention) -> Result<Self> {
        let theta = vprime
            .iter()
            .enumerate()
            .map(|(q, &v)| {
                if v == 0.0 || !v.is_finite() {
                    return Err(Error::SingularBias(q));
                }
                Ok(match convention {
                    AngleConvention::HalfRatio => t / (2.0 * v),
                    AngleConvention::ExactDiagonalizing => 0.5 * (t / v).atan(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RotationAngles { theta, convention })
    }

    pub fn zero(n: usize) -> Self {
        RotationAngles {
            theta: vec![0.0; n],
            convention: AngleConvention::HalfRatio,
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }
}

/// `U H U†` with `U = Π exp(iθ_q Y_q)`, term by term:
/// `Z -> cos2θ Z − sin2θ X`, `X -> cos2θ X + sin2θ Z`.
pub fn conjugate_by_local_y_rotations(h: &PauliSum, angles: &RotationAngles) -> Result<PauliSum> {
    if angles.len() != h.n_qubits() {
        return Err(Error::Dimension {
            expected: h.n_qubits(),
            got: angles.len(),
        });
    }
    let mut out = PauliSum::new(h.n_qubits());
    for (s, c) in h.terms() {
        let mut parts = vec![(*s, c)];
        for (q, p) in s.factors() {
            let th = angles.theta[q];
            if th == 0.0 || !matches!(p, Pauli::X | Pauli::Z) {
                continue;
            }
            let (sin, cos) = (2.0 * th).sin_cos();
            parts = parts
                .into_iter()
                .flat_map(|(str_, w)| match p {
                    Pauli::Z => [
                        (str_, w * cos),
                        (str_.with(q, Pauli::X), -w * sin),
                    ],
                    _ => [
                        (str_, w * cos),
                        (str_.with(q, Pauli::Z), w * sin),
                    ],
                })
                .collect();
        }
        for (str_, w) in parts {
            out.add_term(str_, w);
        }
    }
    Ok(out)
}

/// Pieces of the tilted-frame decomposition `U H' U† = H_Is + H_und + R`.
#[derive(Debug, Clone)]
pub struct FrameResidual {
    pub transformed: PauliSum,
    pub ising: PauliSum,
    pub undesired: PauliSum,
    pub residual: PauliSum,
}

impl FrameResidual {
    pub fn norm(&self) -> f64 {
        self.residual.frobenius_normalized()
    }
}

/// Residual of the Ising approximation for the paper-mode reduced Hamiltonian.
pub fn frame_residual(
    lattice: &Lattice,
    coeffs: &CoulombCoefficients,
    bias: &BiasScheme,
    t: f64,
    offsets: IsingOffsets,
    signs: UndesiredSigns,
) -> Result<FrameResidual> {
    let h = build_lattice_hamiltonian(
        lattice,
        coeffs,
        bias,
        t,
        DecompositionMode::Paper,
        HamiltonianForm::Reduced,
    )?;
    let angles = RotationAngles::new(t, &bias.vprime, AngleConvention::HalfRatio)?;
    let transformed = conjugate_by_local_y_rotations(&h, &angles)?;
    let ising = build_ising(lattice, coeffs.sigma, &ising_offsets(&bias.vprime, t, offsets))?;
    let undesired = build_undesired(lattice, coeffs.sigma, t, &bias.vprime, signs)?;
    let residual = transformed.sub(&ising).sub(&undesired);
    Ok(FrameResidual {
        transformed,
        ising,
        undesired,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::bias_assignment;
    use crate::coulomb::{edge_coefficients, MaterialParams};
    use crate::lattice::{Boundary, LatticeSpec};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn setup(rows: usize, cols: usize) -> (Lattice, CoulombCoefficients, BiasScheme) {
        let spec = LatticeSpec::gaas(rows, cols, Boundary::Open);
        let lattice = Lattice::build(spec).unwrap();
        let coeffs = CoulombCoefficients::compute(&spec, &MaterialParams::gaas()).unwrap();
        let bias = bias_assignment(&lattice, &coeffs, 0, 0).unwrap();
        (lattice, coeffs, bias)
    }

    fn x(q: usize) -> PauliString {
        PauliString::single(q, Pauli::X)
    }

    fn z(q: usize) -> PauliString {
        PauliString::single(q, Pauli::Z)
    }

    #[test]
    fn single_qubit() {
        let h = build_single_qubit(0.0, 0.0, 0.1);
        assert_eq!(h.len(), 1);
        assert_eq!(h.coeff(&x(0)), 0.1);
        // V = 10 dominates: eigen-splitting ~ 2V, i.e. phase flips 100x faster than bit flips
        let h = build_single_qubit(0.0, 10.0, 0.1);
        assert!(h.coeff(&z(0)) / h.coeff(&x(0)) == 100.0);
        assert!(build_single_qubit(0.0, 0.0, 0.0).is_empty());
    }

    #[test]
    fn two_qubit() {
        let w = 7.0;
        let flat = EdgeCoefficients {
            class: EdgeClass::Symmetric,
            s00: w,
            s01: w,
            s10: w,
            s11: w,
        };
        let h = build_two_qubit(0.0, 0.0, 0.0, 0.0, &flat);
        assert_eq!(h.len(), 1);
        assert_eq!(h.identity_coeff(), w);

        let spec = LatticeSpec::gaas(1, 2, Boundary::Open);
        let e = edge_coefficients(&spec, &MaterialParams::gaas(), EdgeClass::Asymmetric).unwrap();
        let h = build_two_qubit(0.0, 0.0, 0.0, 0.0, &e);
        assert!((h.coeff(&z(0)) + 0.641_329_372_788_629_1).abs() < 1e-12);
        assert!((h.coeff(&z(1)) - 0.641_329_372_788_629_1).abs() < 1e-12);
        assert!((h.coeff(&PauliString::pair(0, Pauli::Z, 1, Pauli::Z)) + 0.043_851_581_045_377_23).abs() < 1e-12);

        // diagonal of the dense matrix is ς_lk plus single-qubit biases
        let (v1, v2) = (1.5, -0.25);
        let h = build_two_qubit(0.0, 0.3, v1, v2, &e);
        let m = h.to_dense().unwrap();
        let zsign = [1.0, -1.0];
        for (i, s) in e.diagonal().iter().enumerate() {
            let expect = s + v1 * zsign[i >> 1] + v2 * zsign[i & 1];
            assert!((m[(i, i)].re - expect).abs() < 1e-12);
        }
        assert!((m[(0, 2)].re - 0.3).abs() < 1e-15);
    }

    #[test]
    fn full_minus_reduced_is_constant_on_pair() {
        let (lattice, coeffs, bias) = setup(1, 2);
        let t = 0.1;
        let full = build_lattice_hamiltonian(&lattice, &coeffs, &bias, t, DecompositionMode::Paper, HamiltonianForm::Full).unwrap();
        let red = build_lattice_hamiltonian(&lattice, &coeffs, &bias, t, DecompositionMode::Paper, HamiltonianForm::Reduced).unwrap();
        let diff = full.sub(&red).to_dense().unwrap();
        let c = diff[(0, 0)];
        let id = nalgebra::DMatrix::<num_complex::Complex64>::identity(4, 4) * c;
        assert!((diff - id).norm() < 1e-12);
        assert!((c.re - 0.5 * coeffs.asym_comb.plus).abs() < 1e-12);
    }

    #[test]
    fn reduced_term_counts() {
        let (lattice, coeffs, bias) = setup(2, 2);
        let h = build_lattice_hamiltonian(&lattice, &coeffs, &bias, 0.1, DecompositionMode::Paper, HamiltonianForm::Reduced).unwrap();
        let count = |f: &dyn Fn(&PauliString) -> bool| h.terms().filter(|(s, _)| f(s)).count();
        assert_eq!(count(&|s| s.weight() == 1 && s.factors().all(|(_, p)| p == Pauli::X)), 4);
        assert_eq!(count(&|s| s.weight() == 1 && s.factors().all(|(_, p)| p == Pauli::Z)), 4);
        assert_eq!(count(&|s| s.weight() == 2), 4);
        assert_eq!(h.len(), 12);
    }

    #[test]
    fn zero_coupling_is_sum_of_single_qubits() {
        let (lattice, mut coeffs, bias) = setup(2, 2);
        coeffs.sigma = 0.0;
        let t = 0.2;
        let h = build_lattice_hamiltonian(&lattice, &coeffs, &bias, t, DecompositionMode::Paper, HamiltonianForm::Reduced).unwrap();
        let mut expect = PauliSum::new(4);
        for q in 0..4 {
            expect.add_sum(&build_single_qubit(0.0, bias.vprime[q], t).embed(4, &[q]));
        }
        assert_eq!(h, expect);
    }

    #[test]
    fn exact_mode_is_sum_of_pair_hamiltonians() {
        let (lattice, coeffs, bias) = setup(2, 3);
        let t = 0.1;
        let h = build_lattice_hamiltonian(&lattice, &coeffs, &bias, t, DecompositionMode::Exact, HamiltonianForm::Full).unwrap();
        let n = lattice.n_qubits();
        let mut expect = PauliSum::new(n);
        for q in 0..n {
            expect.add_sum(&build_single_qubit(0.0, bias.v[q], t).embed(n, &[q]));
        }
        for e in lattice.edges() {
            let (ec, _) = coeffs.for_class(e.class);
            expect.add_sum(&build_two_qubit(0.0, 0.0, 0.0, 0.0, ec).embed(n, &[e.left, e.right()]));
        }
        let diff = h.sub(&expect).without_identity();
        assert!(diff.to_dense().unwrap().norm() < 1e-12);
    }

    #[test]
    fn dimension_errors() {
        let (lattice, coeffs, mut bias) = setup(2, 2);
        bias.v.pop();
        assert!(matches!(
            build_lattice_hamiltonian(&lattice, &coeffs, &bias, 0.1, DecompositionMode::Paper, HamiltonianForm::Full),
            Err(Error::Dimension { .. })
        ));
        assert!(build_ising(&lattice, 1.0, &[1.0]).is_err());
    }

    #[test]
    fn ising_builder() {
        let l = Lattice::build(LatticeSpec::gaas(1, 1, Boundary::Open)).unwrap();
        let h = build_ising(&l, 10.0, &[5.0]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coeff(&z(0)), 5.0);

        let (lattice, coeffs, bias) = setup(2, 2);
        let h = build_ising(&lattice, coeffs.sigma, &bias.e_target).unwrap();
        for q in 0..4 {
            assert!((h.coeff(&z(q)) + 2.0 * coeffs.sigma).abs() < 1e-12);
        }
        assert_eq!(h.terms().filter(|(s, _)| s.weight() == 2).count(), 4);

        let cyl = Lattice::build(LatticeSpec::gaas(3, 3, Boundary::CylindricalInColumns)).unwrap();
        let h = build_ising(&cyl, 1.0, &[0.0; 9]).unwrap();
        assert_eq!(h.len(), 15);
    }

    #[test]
    fn undesired_terms() {
        let l = Lattice::build(LatticeSpec::gaas(1, 2, Boundary::Open)).unwrap();
        assert!(build_undesired(&l, 10.0, 0.0, &[-40.0, -40.0], UndesiredSigns::Derived).unwrap().is_empty());
        let h = build_undesired(&l, 10.0, 0.1, &[-40.0, -40.0], UndesiredSigns::Printed).unwrap();
        let mut mags: Vec<f64> = h.terms().map(|(_, c)| c.abs()).collect();
        mags.sort_by(f64::total_cmp);
        assert!((mags[0] - 6.25e-5).abs() < 1e-15);
        assert!((mags[1] - 0.025).abs() < 1e-15 && (mags[2] - 0.025).abs() < 1e-15);
        let h2 = build_undesired(&l, 20.0, 0.1, &[-40.0, -40.0], UndesiredSigns::Printed).unwrap();
        assert_eq!(h2, h.scaled(2.0));
        assert!(matches!(
            build_undesired(&l, 10.0, 0.1, &[0.0, 1.0], UndesiredSigns::Derived),
            Err(Error::SingularBias(0))
        ));
        // the printed and derived patterns differ only on asymmetric edges
        let d = build_undesired(&l, 10.0, 0.1, &[-40.0, -40.0], UndesiredSigns::Derived).unwrap();
        assert_eq!(d, h.scaled(-1.0));
        let col = Lattice::build(LatticeSpec::gaas(2, 1, Boundary::Open)).unwrap();
        assert_eq!(
            build_undesired(&col, 10.0, 0.1, &[-40.0, -30.0], UndesiredSigns::Derived).unwrap(),
            build_undesired(&col, 10.0, 0.1, &[-40.0, -30.0], UndesiredSigns::Printed).unwrap()
        );
    }

    #[test]
    fn rotation_identities() {
        let h = build_single_qubit(0.0, 40.0, 0.1);
        let same = conjugate_by_local_y_rotations(&h, &RotationAngles::zero(1)).unwrap();
        assert_eq!(same, h);

        let (t, v) = (0.1, 40.0);
        let h = build_single_qubit(0.0, v, t);
        let exact = RotationAngles::new(t, &[v], AngleConvention::ExactDiagonalizing).unwrap();
        let d = conjugate_by_local_y_rotations(&h, &exact).unwrap();
        assert!(d.coeff(&x(0)).abs() < 1e-15);
        assert!((d.coeff(&z(0)) - v.hypot(t)).abs() < 1e-12);
        // negative bias keeps its sign
        let h = build_single_qubit(0.0, -v, t);
        let exact = RotationAngles::new(t, &[-v], AngleConvention::ExactDiagonalizing).unwrap();
        let d = conjugate_by_local_y_rotations(&h, &exact).unwrap();
        assert!(d.coeff(&x(0)).abs() < 1e-15);
        assert!((d.coeff(&z(0)) + v.hypot(t)).abs() < 1e-12);

        let h = build_single_qubit(0.0, v, t);
        let half = RotationAngles::new(t, &[v], AngleConvention::HalfRatio).unwrap();
        let d = conjugate_by_local_y_rotations(&h, &half).unwrap();
        // series: Z -> V + T²/2V, X residual O(T³/V²)
        assert!((d.coeff(&z(0)) - (v + t * t / (2.0 * v))).abs() < 1e-9);
        assert!(d.coeff(&x(0)).abs() < 2.0 * t.powi(3) / (v * v));
        // cross-check against the dense eigenvalues
        let eig = d.eigenvalues().unwrap();
        assert!((eig[1] - v.hypot(t)).abs() < 1e-12);

        assert!(matches!(
            RotationAngles::new(t, &[1.0, 0.0], AngleConvention::HalfRatio),
            Err(Error::SingularBias(1))
        ));
        assert!(conjugate_by_local_y_rotations(&h, &RotationAngles::zero(2)).is_err());
    }

    #[test]
    fn conjugation_matches_dense_unitary() {
        let mut rng = StdRng::seed_from_u64(17);
        let n = 3;
        let mut h = PauliSum::new(n);
        for _ in 0..12 {
            let s = PauliString::from_factors((0..n).map(|q| (q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)])));
            h.add_term(s, rng.gen_range(-1.0..1.0));
        }
        let angles = RotationAngles {
            theta: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            convention: AngleConvention::HalfRatio,
        };
        let conj = conjugate_by_local_y_rotations(&h, &angles).unwrap().to_dense().unwrap();
        // U = ⊗ exp(iθY) = ⊗ [[cos, sin], [-sin, cos]]
        let mut u = nalgebra::DMatrix::from_element(1, 1, num_complex::Complex64::new(1.0, 0.0));
        for th in &angles.theta {
            let (s, c) = th.sin_cos();
            let r = nalgebra::DMatrix::from_row_slice(2, 2, &[c, s, -s, c]).map(|v| num_complex::Complex64::new(v, 0.0));
            u = u.kronecker(&r);
        }
        let direct = &u * h.to_dense().unwrap() * u.adjoint();
        assert!((conj - direct).norm() < 1e-12);
    }

    #[test]
    fn spectrum_preserved() {
        let mut rng = StdRng::seed_from_u64(23);
        for n in [2usize, 4, 6] {
            let mut h = PauliSum::new(n);
            for _ in 0..3 * n {
                let s = PauliString::from_factors((0..n).map(|q| (q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)])));
                h.add_term(s, rng.gen_range(-1.0..1.0));
            }
            let angles = RotationAngles {
                theta: (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect(),
                convention: AngleConvention::ExactDiagonalizing,
            };
            let a = h.eigenvalues().unwrap();
            let b = conjugate_by_local_y_rotations(&h, &angles).unwrap().eigenvalues().unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn residual_shrinks_quadratically() {
        let (lattice, coeffs, bias) = setup(2, 2);
        let r = |t: f64, signs| {
            frame_residual(&lattice, &coeffs, &bias, t, IsingOffsets::TunnelingShifted, signs)
                .unwrap()
                .norm()
        };
        let ratio = r(0.2, UndesiredSigns::Derived) / r(0.1, UndesiredSigns::Derived);
        assert!(ratio >= 3.5, "ratio {ratio}");
        // printed signs leave a first-order term on the asymmetric edges
        let printed = r(0.2, UndesiredSigns::Printed) / r(0.1, UndesiredSigns::Printed);
        assert!((1.8..2.2).contains(&printed), "printed ratio {printed}");
    }
}
