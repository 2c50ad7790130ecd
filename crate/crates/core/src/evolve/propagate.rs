//! `exp(-iHt) psi` for Pauli-sum Hamiltonians.
//!
//! Diagonal Hamiltonians are applied as phases. Otherwise registers of up to
//! [`MAX_DENSE_PROPAGATION_QUBITS`] qubits go through a dense
//! eigendecomposition and larger ones through adaptive Lanczos steps.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use super::state::{inner, norm_sqr, StateVector};
use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;

pub const MAX_DENSE_PROPAGATION_QUBITS: usize = 10;
/// Target error of the Krylov path, in state norm.
pub const KRYLOV_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Diagonal,
    Dense,
    Krylov,
}

pub fn method_for(h: &PauliSum) -> Method {
    if h.is_diagonal() {
        Method::Diagonal
    } else if h.n_qubits() <= MAX_DENSE_PROPAGATION_QUBITS {
        Method::Dense
    } else {
        Method::Krylov
    }
}

/// `exp(-iHt) psi`, `t` in ħ/μeV.
pub fn propagate(h: &PauliSum, t: f64, psi: &StateVector) -> Result<StateVector> {
    if h.n_qubits() != psi.n_qubits() {
        return Err(Error::Dimension {
            expected: h.n_qubits(),
            got: psi.n_qubits(),
        });
    }
    match method_for(h) {
        Method::Diagonal => propagate_diagonal(h, t, psi),
        Method::Dense => propagate_dense(h, t, psi),
        Method::Krylov => propagate_krylov(h, t, psi, KRYLOV_TOLERANCE),
    }
}

fn propagate_diagonal(h: &PauliSum, t: f64, psi: &StateVector) -> Result<StateVector> {
    let energies = h.diagonal_energies()?;
    let amps = psi
        .amplitudes()
        .par_iter()
        .zip(energies.par_iter())
        .map(|(a, e)| a * Complex64::from_polar(1.0, -e * t))
        .collect();
    StateVector::from_amplitudes(psi.n_qubits(), amps)
}

/// Dense eigendecomposition path; exact to rounding.
pub fn propagate_dense(h: &PauliSum, t: f64, psi: &StateVector) -> Result<StateVector> {
    if h.n_qubits() > MAX_DENSE_PROPAGATION_QUBITS {
        return Err(Error::Size(format!(
            "dense propagation limited to {MAX_DENSE_PROPAGATION_QUBITS} qubits"
        )));
    }
    let v = DVector::from_column_slice(psi.amplitudes());
    let out = if h.has_y() {
        let eig = h.to_dense()?.symmetric_eigen();
        let mut c = eig.eigenvectors.adjoint() * v;
        for (ci, e) in c.iter_mut().zip(eig.eigenvalues.iter()) {
            *ci *= Complex64::from_polar(1.0, -e * t);
        }
        eig.eigenvectors * c
    } else {
        let eig = h.to_dense_real()?.symmetric_eigen();
        let q: DMatrix<Complex64> = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let mut c = q.transpose() * v;
        for (ci, e) in c.iter_mut().zip(eig.eigenvalues.iter()) {
            *ci *= Complex64::from_polar(1.0, -e * t);
        }
        q * c
    };
    StateVector::from_amplitudes(psi.n_qubits(), out.as_slice().to_vec())
}

fn krylov_dim(n_qubits: usize) -> usize {
    match n_qubits {
        0..=18 => 30,
        19..=21 => 20,
        _ => 12,
    }
}

fn axpy(y: &mut [Complex64], a: Complex64, x: &[Complex64]) {
    y.par_iter_mut().zip(x.par_iter()).for_each(|(yi, xi)| *yi += a * xi);
}

/// Adaptive Lanczos propagation with full reorthogonalization.
///
/// Each step of length `dt` is accepted when the a-posteriori estimate
/// `β₀ β_m |[exp(-i T_m dt) e₁]_m|` is below `tol · dt / t`.
pub fn propagate_krylov(h: &PauliSum, t: f64, psi: &StateVector, tol: f64) -> Result<StateVector> {
    let n = psi.n_qubits();
    if t == 0.0 {
        return Ok(psi.clone());
    }
    let total = t.abs();
    let sign = t.signum();
    let dim = psi.dim();
    let m_max = krylov_dim(n).min(dim);
    // Σ|c| bounds the spectral norm
    let h_bound: f64 = h.terms().map(|(_, c)| c.abs()).sum::<f64>().max(1e-300);
    let mut dt = (m_max as f64 / (2.0 * h_bound)).min(total);
    let min_dt = total * 1e-13;

    let mut current = psi.amplitudes().to_vec();
    let mut elapsed = 0.0;
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m_max + 1);
    while elapsed < total {
        dt = dt.min(total - elapsed);
        let beta0 = norm_sqr(&current).sqrt();
        if beta0 == 0.0 {
            break;
        }

        // Lanczos recursion
        basis.clear();
        basis.push(current.iter().map(|a| a / beta0).collect());
        let mut alpha = Vec::with_capacity(m_max);
        let mut beta: Vec<f64> = Vec::with_capacity(m_max);
        let mut breakdown = false;
        let mut w = vec![Complex64::new(0.0, 0.0); dim];
        for j in 0..m_max {
            h.apply_into(&basis[j], &mut w)?;
            let a = inner(&basis[j], &w).re;
            alpha.push(a);
            for v in basis.iter() {
                let proj = inner(v, &w);
                axpy(&mut w, -proj, v);
            }
            // second pass keeps the basis orthogonal to rounding
            for v in basis.iter() {
                let proj = inner(v, &w);
                axpy(&mut w, -proj, v);
            }
            let b = norm_sqr(&w).sqrt();
            beta.push(b);
            if b <= 1e-12 * h_bound {
                breakdown = true;
                break;
            }
            if j + 1 < m_max {
                basis.push(w.iter().map(|x| x / b).collect());
            }
        }
        let m = alpha.len();

        loop {
            let coeffs = tridiagonal_exp(&alpha, &beta[..m.saturating_sub(1)], sign * dt);
            let err = if breakdown {
                0.0
            } else {
                beta0 * beta[m - 1] * coeffs[m - 1].norm()
            };
            if err <= tol * dt / total {
                let mut next = vec![Complex64::new(0.0, 0.0); dim];
                for (c, v) in coeffs.iter().zip(basis.iter()) {
                    axpy(&mut next, c * beta0, v);
                }
                current = next;
                elapsed += dt;
                if err < 0.1 * tol * dt / total {
                    dt *= 1.5;
                }
                break;
            }
            dt *= 0.5;
            if dt < min_dt {
                return Err(Error::Convergence(format!(
                    "Krylov step fell below {min_dt:e} without meeting tolerance {tol:e}"
                )));
            }
        }
    }
    StateVector::from_amplitudes(n, current)
}

/// `exp(-i T dt) e₁` for the symmetric tridiagonal `T`.
fn tridiagonal_exp(alpha: &[f64], off: &[f64], dt: f64) -> Vec<Complex64> {
    let m = alpha.len();
    let mut tm = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        tm[(i, i)] = alpha[i];
        if i + 1 < m {
            tm[(i, i + 1)] = off[i];
            tm[(i + 1, i)] = off[i];
        }
    }
    let eig = tm.symmetric_eigen();
    let q = &eig.eigenvectors;
    (0..m)
        .map(|i| {
            (0..m).fold(Complex64::new(0.0, 0.0), |acc, k| {
                acc + Complex64::from_polar(q[(i, k)] * q[(0, k)], -eig.eigenvalues[k] * dt)
            })
        })
        .collect()
}
