use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{PauliString, PauliSum, RotationAngles};
use crate::lattice::Lattice;

pub const MAX_STATE_QUBITS: usize = 24;

// Fixed reduction block; partial sums are combined sequentially so results
// do not depend on the number of worker threads.
const REDUCE_CHUNK: usize = 1 << 12;

/// Amplitudes of an `n`-qubit register; qubit 0 is the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::Dimension {
                expected: 1 << n_qubits,
                got: amps.len(),
            });
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        if index >= amps.len() {
            return Err(Error::Dimension {
                expected: amps.len(),
                got: index,
            });
        }
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amps).sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            self.amps.par_iter_mut().for_each(|a| *a /= n);
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(inner(&self.amps, &other.amps))
    }

    /// Apply `CZ` between two qubits.
    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let n = self.n_qubits;
        let mask = (1usize << (n - 1 - a)) | (1usize << (n - 1 - b));
        self.amps
            .par_iter_mut()
            .enumerate()
            .filter(|(i, _)| i & mask == mask)
            .for_each(|(_, amp)| *amp = -*amp);
    }

    /// Apply the real 2x2 matrix `[[m00, m01], [m10, m11]]` to qubit `q`.
    pub fn apply_real_1q(&mut self, q: usize, m: [[f64; 2]; 2]) {
        let bit = 1usize << (self.n_qubits - 1 - q);
        let mix = |lo: &mut Complex64, hi: &mut Complex64| {
            let (x, y) = (*lo, *hi);
            *lo = x * m[0][0] + y * m[0][1];
            *hi = x * m[1][0] + y * m[1][1];
        };
        self.amps.par_chunks_mut(2 * bit).for_each(|block| {
            let (lo, hi) = block.split_at_mut(bit);
            lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| mix(a, b));
        });
    }

    /// `<P>` for a Pauli string.
    pub fn expectation(&self, s: &PauliString) -> Result<f64> {
        let op = PauliSum::new(self.n_qubits).with_term(*s, 1.0);
        let image = op.apply(&self.amps)?;
        Ok(inner(&self.amps, &image).re)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_STATE_QUBITS {
        return Err(Error::Size(format!(
            "state vectors need 1..={MAX_STATE_QUBITS} qubits, got {n}"
        )));
    }
    Ok(())
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let partial: Vec<Complex64> = a
        .par_chunks(REDUCE_CHUNK)
        .zip(b.par_chunks(REDUCE_CHUNK))
        .map(|(x, y)| {
            x.iter()
                .zip(y)
                .fold(Complex64::new(0.0, 0.0), |acc, (p, q)| acc + p.conj() * q)
        })
        .collect();
    partial.into_iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p)
}

pub(crate) fn norm_sqr(a: &[Complex64]) -> f64 {
    let partial: Vec<f64> = a
        .par_chunks(REDUCE_CHUNK)
        .map(|x| x.iter().map(|p| p.norm_sqr()).sum::<f64>())
        .collect();
    partial.into_iter().sum()
}

/// `|+>^{⊗n}`.
pub fn plus_state(n: usize) -> Result<StateVector> {
    check_size(n)?;
    let amp = Complex64::new((1u64 << n) as f64, 0.0).sqrt().inv();
    Ok(StateVector {
        n_qubits: n,
        amps: vec![amp; 1 << n],
    })
}

/// `Π_edges CZ |+>^{⊗n}` over the lattice graph.
pub fn ideal_cluster_state(lattice: &Lattice) -> Result<StateVector> {
    let mut psi = plus_state(lattice.n_qubits())?;
    for e in lattice.edges() {
        psi.apply_cz(e.a, e.b);
    }
    Ok(psi)
}

/// `K_a = X_a Π_{b~a} Z_b`.
pub fn stabilizer(lattice: &Lattice, a: usize) -> PauliString {
    use crate::hamiltonian::Pauli;
    lattice
        .neighbors(a)
        .fold(PauliString::single(a, Pauli::X), |s, b| s.with(b, Pauli::Z))
}

/// `<K_a>` for every site.
pub fn stabilizer_expectations(lattice: &Lattice, psi: &StateVector) -> Result<Vec<f64>> {
    (0..lattice.n_qubits())
        .map(|a| psi.expectation(&stabilizer(lattice, a)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiltDirection {
    /// Apply `U = Π exp(iθ Y)`.
    ToTilted,
    /// Apply `U†`.
    ToLab,
}

pub fn tilt(psi: &StateVector, angles: &RotationAngles, direction: TiltDirection) -> Result<StateVector> {
    if angles.len() != psi.n_qubits() {
        return Err(Error::Dimension {
            expected: psi.n_qubits(),
            got: angles.len(),
        });
    }
    let mut out = psi.clone();
    for (q, th) in angles.theta.iter().enumerate() {
        if *th == 0.0 {
            continue;
        }
        let (s, c) = th.sin_cos();
        // exp(iθY) = [[c, s], [-s, c]]
        let m = match direction {
            TiltDirection::ToTilted => [[c, s], [-s, c]],
            TiltDirection::ToLab => [[c, -s], [s, c]],
        };
        out.apply_real_1q(q, m);
    }
    Ok(out)
}

/// `|<psi|phi>|²`.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm_sqr().min(1.0))
}
