//! Bias fields that turn the anisotropic lattice into a cluster-state
//! generator.
//!
//! A site with `ν` neighbours needs the effective offset
//! `E = ς (8k' − ν) / (8k + 1)`. On an open lattice the asymmetric coupling
//! adds `∓Δς/2` to the first and last column, which the applied potential
//! `V` compensates; on a column-periodic lattice the contributions cancel and
//! two global values suffice.

use serde::{Deserialize, Serialize};

use crate::coulomb::CoulombCoefficients;
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Lattice};

/// Per-qubit bias, indexed like the lattice qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasScheme {
    /// Applied potential.
    pub v: Vec<f64>,
    /// Modified offsets after the asymmetric-coupling shift.
    pub vprime: Vec<f64>,
    /// Effective offsets the Ising evolution needs.
    pub e_target: Vec<f64>,
    pub k: i64,
    pub k_prime: i64,
    pub boundary: Boundary,
}

impl BiasScheme {
    /// Mean of `|V'|` over all sites.
    pub fn mean_abs_vprime(&self) -> f64 {
        self.vprime.iter().map(|v| v.abs()).sum::<f64>() / self.vprime.len() as f64
    }

    pub fn distinct_v(&self, tol: f64) -> Vec<f64> {
        let mut vals = self.v.clone();
        vals.sort_by(f64::total_cmp);
        vals.dedup_by(|a, b| (*a - *b).abs() <= tol);
        vals
    }
}

fn denominator(k: i64) -> f64 {
    (8 * k + 1) as f64
}

/// `E_q = ς (8k' − ν_q) / (8k + 1)` with `ν_q` the neighbour count.
pub fn target_effective_offsets(lattice: &Lattice, sigma: f64, k: i64, k_prime: i64) -> Vec<f64> {
    (0..lattice.n_qubits())
        .map(|q| {
            let nu = lattice.degree(q) as f64;
            sigma * (8.0 * k_prime as f64 - nu) / denominator(k)
        })
        .collect()
}

/// Shift `V − V'` on qubit `q`: `+Δς/2` in column 1, `−Δς/2` in column N.
fn column_shift(lattice: &Lattice, q: usize, delta_sigma: f64) -> f64 {
    if lattice.spec().boundary == Boundary::CylindricalInColumns {
        return 0.0;
    }
    let col = lattice.site(q).col;
    let mut shift = 0.0;
    if col == 1 {
        shift += 0.5 * delta_sigma;
    }
    if col == lattice.cols() {
        shift -= 0.5 * delta_sigma;
    }
    shift
}

/// `V' = V − Δς/2` on column 1, `V + Δς/2` on column N, `V` elsewhere.
pub fn modified_offsets(lattice: &Lattice, v: &[f64], delta_sigma: f64) -> Result<Vec<f64>> {
    if v.len() != lattice.n_qubits() {
        return Err(Error::Dimension {
            expected: lattice.n_qubits(),
            got: v.len(),
        });
    }
    Ok(v.iter()
        .enumerate()
        .map(|(q, x)| x - column_shift(lattice, q, delta_sigma))
        .collect())
}

fn check_nonsingular(vprime: &[f64]) -> Result<()> {
    match vprime.iter().position(|v| v.abs() < 1e-12) {
        Some(q) => Err(Error::SingularBias(q)),
        None => Ok(()),
    }
}

pub fn bias_assignment(
    lattice: &Lattice,
    coeffs: &CoulombCoefficients,
    k: i64,
    k_prime: i64,
) -> Result<BiasScheme> {
    let e_target = target_effective_offsets(lattice, coeffs.sigma, k, k_prime);
    let v: Vec<f64> = e_target
        .iter()
        .enumerate()
        .map(|(q, e)| e + column_shift(lattice, q, coeffs.delta_sigma))
        .collect();
    let vprime = modified_offsets(lattice, &v, coeffs.delta_sigma)?;
    check_nonsingular(&vprime)?;
    Ok(BiasScheme {
        v,
        vprime,
        e_target,
        k,
        k_prime,
        boundary: lattice.spec().boundary,
    })
}

/// Re-solve `V' + T²/V' = E_target` for `V'` (root continuous with `T -> 0`)
/// and shift `V` accordingly.
pub fn compensate_tunneling(
    lattice: &Lattice,
    coeffs: &CoulombCoefficients,
    scheme: &BiasScheme,
    t: f64,
) -> Result<BiasScheme> {
    let vprime = scheme
        .e_target
        .iter()
        .enumerate()
        .map(|(q, &e)| {
            let disc = e * e - 4.0 * t * t;
            if disc < 0.0 {
                return Err(Error::Domain(format!(
                    "no real compensated offset at qubit {q}: |E| = {} < 2T = {}",
                    e.abs(),
                    2.0 * t
                )));
            }
            Ok(0.5 * (e + e.signum() * disc.sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;
    check_nonsingular(&vprime)?;
    let v = vprime
        .iter()
        .enumerate()
        .map(|(q, vp)| vp + column_shift(lattice, q, coeffs.delta_sigma))
        .collect();
    Ok(BiasScheme {
        v,
        vprime,
        ..scheme.clone()
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    /// `T <= |ς| / 10`.
    pub slow_tunneling: bool,
    /// `|ς| < min |V|`.
    pub bias_dominates: bool,
}

impl Admissibility {
    pub fn ok(&self) -> bool {
        self.slow_tunneling && self.bias_dominates
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.slow_tunneling {
            w.push("tunneling is not small against the coupling (T > |ς|/10)".to_string());
        }
        if !self.bias_dominates {
            w.push("coupling exceeds the smallest applied bias (|ς| >= min|V|)".to_string());
        }
        w
    }
}

pub fn admissibility(scheme: &BiasScheme, sigma: f64, t: f64) -> Admissibility {
    let min_v = scheme.v.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    Admissibility {
        slow_tunneling: t.abs() <= sigma.abs() / 10.0,
        bias_dominates: sigma.abs() < min_v,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeReport {
    /// `|V' + T²/V' − E_target|` per qubit.
    pub deviation: Vec<f64>,
    pub max_deviation: f64,
    /// `T²/min|V'| + 1e-12`.
    pub bound: f64,
    pub within_bound: bool,
    pub admissibility: Admissibility,
}

pub fn verify_scheme(scheme: &BiasScheme, sigma: f64, t: f64) -> SchemeReport {
    let deviation: Vec<f64> = scheme
        .vprime
        .iter()
        .zip(&scheme.e_target)
        .map(|(vp, e)| (vp + t * t / vp - e).abs())
        .collect();
    let max_deviation = deviation.iter().fold(0.0f64, |m, d| m.max(*d));
    let min_vp = scheme.vprime.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let bound = t * t / min_vp + 1e-12;
    SchemeReport {
        within_bound: max_deviation <= bound,
        deviation,
        max_deviation,
        bound,
        admissibility: admissibility(scheme, sigma, t),
    }
}

/// One line of the bias table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasTableRow {
    pub m_class: String,
    pub n_class: String,
    pub formula: String,
    #[serde(rename = "value_μeV")]
    pub value_uev: f64,
}

fn coefficient_label(num: i64, den: i64) -> String {
    match (num, den) {
        (0, _) => "0".to_string(),
        (n, 1) => format!("{n}ς"),
        (n, d) => format!("({n}/{d})ς"),
    }
}

fn formula(nu: i64, shift: i8, k: i64, k_prime: i64) -> String {
    let base = coefficient_label(8 * k_prime - nu, 8 * k + 1);
    match shift {
        1 => format!("Δς/2{}{}", if base.starts_with('-') { "" } else { "+" }, base),
        -1 => format!("-Δς/2{}{}", if base.starts_with('-') { "" } else { "+" }, base),
        _ => base,
    }
}

/// Distinct bias values grouped by row and column class.
///
/// Open lattices give up to six rows (corners in column 1 and N, boundary
/// rows, column 1, column N, interior); column-periodic lattices give the
/// boundary-row and interior-row values.
pub fn bias_table(lattice: &Lattice, scheme: &BiasScheme) -> Vec<BiasTableRow> {
    let (rows, cols) = (lattice.rows(), lattice.cols());
    let (k, kp) = (scheme.k, scheme.k_prime);
    let mut out = Vec::new();
    let mut push = |m_class: &str, n_class: &str, row: usize, col: usize, shift: i8| {
        let q = (row - 1) * cols + (col - 1);
        out.push(BiasTableRow {
            m_class: m_class.to_string(),
            n_class: n_class.to_string(),
            formula: formula(lattice.degree(q) as i64, shift, k, kp),
            value_uev: scheme.v[q],
        });
    };
    match lattice.spec().boundary {
        Boundary::Open => {
            let edge_rows = if rows > 1 { "1,N" } else { "1" };
            if cols >= 2 {
                push(edge_rows, "1", 1, 1, 1);
                push(edge_rows, "N", 1, cols, -1);
            }
            if cols >= 3 {
                push(edge_rows, "2,...,N-1", 1, 2, 0);
            }
            if rows >= 3 && cols >= 2 {
                push("2,...,N-1", "1", 2, 1, 1);
                push("2,...,N-1", "N", 2, cols, -1);
            }
            if rows >= 3 && cols >= 3 {
                push("2,...,N-1", "2,...,N-1", 2, 2, 0);
            }
            if cols == 1 {
                push(edge_rows, "1", 1, 1, 0);
                if rows >= 3 {
                    push("2,...,N-1", "1", 2, 1, 0);
                }
            }
        }
        Boundary::CylindricalInColumns => {
            push(if rows > 1 { "1,N" } else { "1" }, "all", 1, 1, 0);
            if rows >= 3 {
                push("2,...,N-1", "all", 2, 1, 0);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coulomb::MaterialParams;
    use crate::lattice::{LatticeSpec, Site};

    fn setup(rows: usize, cols: usize, boundary: Boundary) -> (Lattice, CoulombCoefficients) {
        let spec = LatticeSpec::gaas(rows, cols, boundary);
        let lattice = Lattice::build(spec).unwrap();
        let coeffs = CoulombCoefficients::compute(&spec, &MaterialParams::gaas()).unwrap();
        (lattice, coeffs)
    }

    fn at(l: &Lattice, v: &[f64], row: usize, col: usize) -> f64 {
        v[l.qubit(Site::new(row, col)).unwrap()]
    }

    #[test]
    fn targets_by_neighbor_count() {
        let (l, _) = setup(3, 3, Boundary::Open);
        let e = target_effective_offsets(&l, 10.0, 0, 0);
        assert_eq!(at(&l, &e, 1, 1), -20.0);
        assert_eq!(at(&l, &e, 2, 2), -40.0);
        assert_eq!(at(&l, &e, 1, 2), -30.0);
        assert_eq!(at(&l, &e, 2, 3), -30.0);
        let e = target_effective_offsets(&l, 10.0, 1, 1);
        assert!((at(&l, &e, 1, 1) - 10.0 * 6.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn open_assignment_matches_table() {
        let (l, c) = setup(4, 4, Boundary::Open);
        let s = bias_assignment(&l, &c, 0, 0).unwrap();
        let (sg, ds) = (c.sigma, c.delta_sigma);
        let expect = [
            ((1, 1), ds / 2.0 - 2.0 * sg),
            ((4, 1), ds / 2.0 - 2.0 * sg),
            ((1, 4), -ds / 2.0 - 2.0 * sg),
            ((1, 2), -3.0 * sg),
            ((2, 1), ds / 2.0 - 3.0 * sg),
            ((3, 4), -ds / 2.0 - 3.0 * sg),
            ((2, 3), -4.0 * sg),
        ];
        for ((r, col), v) in expect {
            assert!((at(&l, &s.v, r, col) - v).abs() < 1e-12, "({r},{col})");
        }
        // bias table values, frozen from the coefficient oracle
        assert!((at(&l, &s.v, 1, 1) + 21.236_498_483_131_157).abs() < 1e-9);
        assert!((at(&l, &s.v, 1, 4) + 18.671_180_991_976_64).abs() < 1e-9);
        assert_eq!(s.distinct_v(1e-9).len(), 6);
        for (vp, e) in s.vprime.iter().zip(&s.e_target) {
            assert!((vp - e).abs() < 1e-12);
        }
        assert!(s.v.iter().all(|v| *v < 0.0));
    }

    #[test]
    fn cylinder_uses_two_values() {
        let (l, c) = setup(3, 4, Boundary::CylindricalInColumns);
        let s = bias_assignment(&l, &c, 0, 0).unwrap();
        assert_eq!(s.distinct_v(1e-9).len(), 2);
        assert!((at(&l, &s.v, 1, 3) + 3.0 * c.sigma).abs() < 1e-12);
        assert!((at(&l, &s.v, 2, 2) + 4.0 * c.sigma).abs() < 1e-12);
        assert_eq!(s.v, s.vprime);
        let table = bias_table(&l, &s);
        assert_eq!(table.len(), 2);
    }

    #[test]
    fn singular_bias_detected() {
        let (l, c) = setup(1, 1, Boundary::Open);
        assert!(matches!(bias_assignment(&l, &c, 0, 0), Err(Error::SingularBias(0))));
        assert!(bias_assignment(&l, &c, 0, 1).is_ok());
    }

    #[test]
    fn verification_bound() {
        let (l, c) = setup(3, 3, Boundary::Open);
        let s = bias_assignment(&l, &c, 0, 0).unwrap();
        let r = verify_scheme(&s, c.sigma, 0.0);
        assert_eq!(r.max_deviation, 0.0);
        let r = verify_scheme(&s, c.sigma, 0.1);
        assert!(r.within_bound);
        assert!(r.max_deviation <= 0.01 / 18.6 + 1e-12);
        assert!(r.admissibility.ok());
        let r = verify_scheme(&s, c.sigma, 1.0);
        assert!(!r.admissibility.slow_tunneling);
        assert_eq!(r.admissibility.warnings().len(), 1);

        let (l, c) = setup(3, 4, Boundary::CylindricalInColumns);
        let s = bias_assignment(&l, &c, 0, 0).unwrap();
        let r = verify_scheme(&s, c.sigma, 0.1);
        for row in 1..=3 {
            let devs: Vec<f64> = (1..=4).map(|col| at(&l, &r.deviation, row, col)).collect();
            assert!(devs.iter().all(|d| (d - devs[0]).abs() < 1e-15));
        }
    }

    #[test]
    fn compensation_closes_the_loop() {
        let (l, c) = setup(3, 3, Boundary::Open);
        let s = bias_assignment(&l, &c, 0, 0).unwrap();
        let comp = compensate_tunneling(&l, &c, &s, 0.1).unwrap();
        let r = verify_scheme(&comp, c.sigma, 0.1);
        assert!(r.max_deviation < 1e-12);
        assert_eq!(
            modified_offsets(&l, &comp.v, c.delta_sigma).unwrap(),
            comp.vprime
        );
        assert!(compensate_tunneling(&l, &c, &s, 100.0).is_err());
    }

    #[test]
    fn commensurate_with_denominator() {
        let (l, _) = setup(3, 4, Boundary::Open);
        for (k, kp) in [(0, 0), (1, 2), (2, -1), (-1, 3)] {
            let den = (8 * k + 1) as f64;
            for e in target_effective_offsets(&l, 1.0, k, kp) {
                let scaled = e * den;
                assert!((scaled - scaled.round()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn table_rows_and_formulas() {
        let (l, c) = setup(5, 5, Boundary::Open);
        let s = bias_assignment(&l, &c, 0, 0).unwrap();
        let t = bias_table(&l, &s);
        let formulas: Vec<_> = t.iter().map(|r| r.formula.as_str()).collect();
        assert_eq!(
            formulas,
            ["Δς/2-2ς", "-Δς/2-2ς", "-3ς", "Δς/2-3ς", "-Δς/2-3ς", "-4ς"]
        );
        assert_eq!(t[4].n_class, "N");
        let s = bias_assignment(&l, &c, 1, 1).unwrap();
        assert_eq!(bias_table(&l, &s)[5].formula, "(4/9)ς");
    }
}
