//! Real-coefficient sums of Pauli strings.
//!
//! Qubit `q` of an `n`-qubit operator is the `q`-th tensor factor, i.e. bit
//! `n - 1 - q` of a computational-basis index. `Y` is the Hermitian Pauli
//! matrix `[[0, -i], [i, 0]]`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients with magnitude below this (μeV) are dropped by `simplify`.
pub const SIMPLIFY_THRESHOLD: f64 = 1e-14;
/// Largest register `to_dense` will materialize.
pub const MAX_DENSE_QUBITS: usize = 14;
/// Largest register for the dense spectral norm.
pub const MAX_SPECTRAL_QUBITS: usize = 10;
pub const MAX_QUBITS: usize = 64;

// Output amplitudes per parallel work item in `apply`.
const APPLY_CHUNK: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, stored as X/Z bitmasks indexed by qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PauliString {
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity() -> Self {
        PauliString::default()
    }

    pub fn single(q: usize, p: Pauli) -> Self {
        PauliString::identity().with(q, p)
    }

    pub fn pair(q1: usize, p1: Pauli, q2: usize, p2: Pauli) -> Self {
        PauliString::single(q1, p1).with(q2, p2)
    }

    pub fn from_factors<I: IntoIterator<Item = (usize, Pauli)>>(factors: I) -> Self {
        factors
            .into_iter()
            .fold(PauliString::identity(), |s, (q, p)| s.with(q, p))
    }

    /// Parse a label such as `"IXZZ"`; character `k` acts on qubit `k`.
    pub fn parse(label: &str) -> Result<(Self, usize)> {
        let mut s = PauliString::identity();
        let mut n = 0;
        for (q, ch) in label.chars().enumerate() {
            let p = match ch {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::Config(format!(
                        "invalid Pauli character {other:?} in {label:?}"
                    )))
                }
            };
            if q >= MAX_QUBITS {
                return Err(Error::Size(format!("Pauli label longer than {MAX_QUBITS}")));
            }
            s = s.with(q, p);
            n = q + 1;
        }
        Ok((s, n))
    }

    /// Replace the factor on qubit `q`.
    pub fn with(mut self, q: usize, p: Pauli) -> Self {
        assert!(q < MAX_QUBITS, "qubit index {q} out of range");
        let bit = 1u64 << q;
        let (x, z) = p.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
        self
    }

    pub fn get(&self, q: usize) -> Pauli {
        if q >= MAX_QUBITS {
            return Pauli::I;
        }
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// Highest qubit index acted on non-trivially, plus one.
    pub fn support_len(&self) -> usize {
        64 - (self.x | self.z).leading_zeros() as usize
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        let support = self.x | self.z;
        (0..64usize)
            .filter(move |q| support >> q & 1 == 1)
            .map(move |q| (q, self.get(q)))
    }

    pub fn label(&self, n: usize) -> String {
        (0..n).map(|q| self.get(q).label()).collect()
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Masks and phase for the action on basis indices of an `n`-qubit register:
    /// `P|b> = phase * (-1)^{popcount(b & zmask)} |b ^ xmask>`.
    fn basis_action(&self, n: usize) -> (usize, usize, Complex64) {
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if self.x >> q & 1 == 1 {
                xm |= bit;
            }
            if self.z >> q & 1 == 1 {
                zm |= bit;
            }
        }
        // Y = i X Z
        let phase = match self.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        (xm, zm, phase)
    }

    /// Relabel qubits: factor on qubit `q` moves to `map[q]`.
    pub fn remap(&self, map: &[usize]) -> Self {
        PauliString::from_factors(self.factors().map(|(q, p)| (map[q], p)))
    }
}

/// Sum of Pauli strings with real coefficients (μeV).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    pub fn coeff(&self, s: &PauliString) -> f64 {
        self.terms.get(s).copied().unwrap_or(0.0)
    }

    /// Accumulate `coeff * s`; terms that fall below the threshold are removed.
    pub fn add_term(&mut self, s: PauliString, coeff: f64) {
        assert!(
            s.support_len() <= self.n_qubits,
            "Pauli string acts outside a {}-qubit register",
            self.n_qubits
        );
        let entry = self.terms.entry(s).or_insert(0.0);
        *entry += coeff;
        if entry.abs() < SIMPLIFY_THRESHOLD {
            self.terms.remove(&s);
        }
    }

    pub fn with_term(mut self, s: PauliString, coeff: f64) -> Self {
        self.add_term(s, coeff);
        self
    }

    pub fn add_sum(&mut self, other: &PauliSum) {
        assert_eq!(self.n_qubits, other.n_qubits, "register size mismatch");
        for (s, c) in other.terms() {
            self.add_term(*s, c);
        }
    }

    pub fn sub(&self, other: &PauliSum) -> PauliSum {
        let mut out = self.clone();
        out.add_sum(&other.scaled(-1.0));
        out
    }

    pub fn scaled(&self, k: f64) -> PauliSum {
        let mut out = PauliSum::new(self.n_qubits);
        for (s, c) in self.terms() {
            out.add_term(*s, k * c);
        }
        out
    }

    /// Drop every term below `threshold`.
    pub fn simplify(&mut self, threshold: f64) {
        self.terms.retain(|_, c| c.abs() >= threshold);
    }

    pub fn without_identity(&self) -> PauliSum {
        let mut out = self.clone();
        out.terms.remove(&PauliString::identity());
        out
    }

    pub fn identity_coeff(&self) -> f64 {
        self.coeff(&PauliString::identity())
    }

    /// Place this operator on qubits `map[0], map[1], ...` of a larger register.
    pub fn embed(&self, n_total: usize, map: &[usize]) -> PauliSum {
        assert_eq!(map.len(), self.n_qubits, "embedding map length");
        let mut out = PauliSum::new(n_total);
        for (s, c) in self.terms() {
            out.add_term(s.remap(map), c);
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(PauliString::is_diagonal)
    }

    pub fn has_y(&self) -> bool {
        self.terms.keys().any(|s| s.y_count() > 0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    /// Dense `2^n x 2^n` matrix.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::Size(format!(
                "dense materialization limited to {MAX_DENSE_QUBITS} qubits, got {}",
                self.n_qubits
            )));
        }
        let dim = self.dim();
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (s, c) in self.terms() {
            let (xm, zm, phase) = s.basis_action(self.n_qubits);
            for b in 0..dim {
                let sign = if (b & zm).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                m[(b ^ xm, b)] += phase * (c * sign);
            }
        }
        Ok(m)
    }

    /// Dense real matrix; only valid when no string carries `Y`.
    pub fn to_dense_real(&self) -> Result<DMatrix<f64>> {
        if self.has_y() {
            return Err(Error::Domain("operator with Y factors is not real".into()));
        }
        Ok(self.to_dense()?.map(|z| z.re))
    }

    /// Diagonal of a Z-only operator.
    pub fn diagonal_energies(&self) -> Result<Vec<f64>> {
        if !self.is_diagonal() {
            return Err(Error::Domain("operator is not diagonal".into()));
        }
        let n = self.n_qubits;
        let terms: Vec<_> = self
            .terms()
            .map(|(s, c)| (s.basis_action(n).1, c))
            .collect();
        Ok((0..self.dim())
            .into_par_iter()
            .map(|b| {
                terms.iter().fold(0.0, |acc, &(zm, c)| {
                    if (b & zm).count_ones() % 2 == 0 {
                        acc + c
                    } else {
                        acc - c
                    }
                })
            })
            .collect())
    }

    /// Matrix-free `H psi`.
    ///
    /// Every output amplitude sums the terms in a fixed order, so the result
    /// is bitwise identical for any thread count.
    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply_into(psi, &mut out)?;
        Ok(out)
    }

    pub fn apply_into(&self, psi: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let dim = self.dim();
        if psi.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: psi.len(),
            });
        }
        if out.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: out.len(),
            });
        }
        let n = self.n_qubits;
        let actions: Vec<_> = self
            .terms()
            .map(|(s, c)| {
                let (xm, zm, phase) = s.basis_action(n);
                (xm, zm, phase * c)
            })
            .collect();
        out.par_chunks_mut(APPLY_CHUNK)
            .enumerate()
            .for_each(|(chunk, block)| {
                let base = chunk * APPLY_CHUNK;
                for (i, slot) in block.iter_mut().enumerate() {
                    let b = base + i;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(xm, zm, w) in &actions {
                        let src = b ^ xm;
                        let amp = psi[src];
                        if (src & zm).count_ones() % 2 == 0 {
                            acc += w * amp;
                        } else {
                            acc -= w * amp;
                        }
                    }
                    *slot = acc;
                }
            });
        Ok(())
    }

    /// `sqrt(Σ c²)`: the Frobenius norm divided by `sqrt(2^n)`.
    pub fn frobenius_normalized(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest |eigenvalue| by dense diagonalization.
    pub fn spectral_norm(&self) -> Result<f64> {
        Ok(self
            .eigenvalues()?
            .iter()
            .fold(0.0f64, |m, e| m.max(e.abs())))
    }

    /// Sorted eigenvalues by dense diagonalization (at most 10 qubits).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if self.n_qubits > MAX_SPECTRAL_QUBITS {
            return Err(Error::Size(format!(
                "dense eigensolve limited to {MAX_SPECTRAL_QUBITS} qubits, got {}",
                self.n_qubits
            )));
        }
        let mut vals: Vec<f64> = if self.is_diagonal() {
            self.diagonal_energies()?
        } else if self.has_y() {
            self.to_dense()?.symmetric_eigenvalues().iter().copied().collect()
        } else {
            self.to_dense_real()?.symmetric_eigenvalues().iter().copied().collect()
        };
        vals.sort_by(|a, b| a.total_cmp(b));
        Ok(vals)
    }

    pub fn operator_norm(&self, kind: NormKind) -> Result<f64> {
        match kind {
            NormKind::Spectral => self.spectral_norm(),
            NormKind::FrobeniusNormalized => Ok(self.frobenius_normalized()),
        }
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(s, c)| JsonTerm {
                paulis: s.label(self.n_qubits),
                coeff: c,
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<PauliSum> {
        let n = terms.first().map(|t| t.paulis.len()).unwrap_or(0);
        let mut out = PauliSum::new(n);
        for t in terms {
            let (s, len) = PauliString::parse(&t.paulis)?;
            if len != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: len,
                });
            }
            out.add_term(s, t.coeff);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Spectral,
    FrobeniusNormalized,
}

/// One term of the JSON serialization: `{"paulis": "IXZZ", "coeff": 0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonTerm {
    pub paulis: String,
    pub coeff: f64,
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{}", s.label(self.n_qubits))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Independent oracle: explicit Kronecker products of 2x2 matrices.
    fn kron_dense(h: &PauliSum) -> DMatrix<Complex64> {
        let single = |p: Pauli| match p {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
        };
        let dim = h.dim();
        let mut total = DMatrix::<Complex64>::zeros(dim, dim);
        for (s, coeff) in h.terms() {
            let mut m = DMatrix::from_element(1, 1, c(1., 0.));
            for q in 0..h.n_qubits() {
                m = m.kronecker(&single(s.get(q)));
            }
            total += m * c(coeff, 0.0);
        }
        total
    }

    fn random_sum(rng: &mut StdRng, n: usize, terms: usize) -> PauliSum {
        let mut h = PauliSum::new(n);
        for _ in 0..terms {
            let s = PauliString::from_factors((0..n).map(|q| {
                let p = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)];
                (q, p)
            }));
            h.add_term(s, rng.gen_range(-2.0..2.0));
        }
        h
    }

    fn random_state(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
        (0..1 << n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn labels_round_trip() {
        let (s, n) = PauliString::parse("IXYZ").unwrap();
        assert_eq!(n, 4);
        assert_eq!(s.get(0), Pauli::I);
        assert_eq!(s.get(2), Pauli::Y);
        assert_eq!(s.label(4), "IXYZ");
        assert_eq!(s.weight(), 3);
        assert!(PauliString::parse("IQ").is_err());
    }

    #[test]
    fn z_and_cz_dense() {
        let z = PauliSum::new(1).with_term(PauliString::single(0, Pauli::Z), 1.0);
        let m = z.to_dense().unwrap();
        assert_eq!(m[(0, 0)], c(1., 0.));
        assert_eq!(m[(1, 1)], c(-1., 0.));
        assert_eq!(m[(0, 1)], c(0., 0.));

        // CZ = (II + ZI + IZ - ZZ) / 2
        let cz = PauliSum::new(2)
            .with_term(PauliString::identity(), 0.5)
            .with_term(PauliString::single(0, Pauli::Z), 0.5)
            .with_term(PauliString::single(1, Pauli::Z), 0.5)
            .with_term(PauliString::pair(0, Pauli::Z, 1, Pauli::Z), -0.5);
        let m = cz.to_dense().unwrap();
        for (i, d) in [1.0, 1.0, 1.0, -1.0].iter().enumerate() {
            assert!((m[(i, i)] - c(*d, 0.)).norm() < 1e-15);
        }
        assert!(cz.is_diagonal());
    }

    #[test]
    fn dense_matches_kronecker_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..5 {
            let h = random_sum(&mut rng, 3, 8);
            let diff = h.to_dense().unwrap() - kron_dense(&h);
            assert!(diff.norm() < 1e-13);
        }
    }

    #[test]
    fn dense_is_hermitian_with_expected_norm() {
        let mut rng = StdRng::seed_from_u64(11);
        let h = random_sum(&mut rng, 4, 12);
        let m = h.to_dense().unwrap();
        assert!((m.adjoint() - &m).norm() < 1e-13);
        let expect = ((h.dim() as f64) * h.terms().map(|(_, c)| c * c).sum::<f64>()).sqrt();
        assert!((m.norm() - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn dense_size_guard() {
        assert!(matches!(PauliSum::new(15).to_dense(), Err(Error::Size(_))));
        assert!(matches!(PauliSum::new(11).spectral_norm(), Err(Error::Size(_))));
    }

    #[test]
    fn apply_basic() {
        let x0 = PauliSum::new(3).with_term(PauliString::single(0, Pauli::X), 1.0);
        let mut psi = vec![c(0., 0.); 8];
        psi[0] = c(1., 0.);
        let out = x0.apply(&psi).unwrap();
        // qubit 0 is the most significant bit
        assert_eq!(out[4], c(1., 0.));
        let id = PauliSum::new(3).with_term(PauliString::identity(), 2.5);
        let mut rng = StdRng::seed_from_u64(3);
        let psi = random_state(&mut rng, 3);
        let out = id.apply(&psi).unwrap();
        for (a, b) in out.iter().zip(&psi) {
            assert!((a - b * 2.5).norm() < 1e-15);
        }
        assert!(matches!(id.apply(&psi[..4]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn apply_matches_dense() {
        let mut rng = StdRng::seed_from_u64(5);
        let h = random_sum(&mut rng, 6, 30);
        let psi = random_state(&mut rng, 6);
        let fast = h.apply(&psi).unwrap();
        let dense = h.to_dense().unwrap() * nalgebra::DVector::from_vec(psi.clone());
        let scale = dense.norm();
        for (a, b) in fast.iter().zip(dense.iter()) {
            assert!((a - b).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn norms() {
        let five_z = PauliSum::new(1).with_term(PauliString::single(0, Pauli::Z), 5.0);
        assert_eq!(five_z.frobenius_normalized(), 5.0);
        assert!((five_z.spectral_norm().unwrap() - 5.0).abs() < 1e-12);
        let s = 10.0;
        let h = PauliSum::new(4)
            .with_term(PauliString::pair(0, Pauli::Z, 1, Pauli::Z), s)
            .with_term(PauliString::pair(2, Pauli::Z, 3, Pauli::Z), s);
        assert!((h.frobenius_normalized() - s * 2f64.sqrt()).abs() < 1e-12);
        // spectral >= normalized Frobenius for any operator
        let mut rng = StdRng::seed_from_u64(9);
        let r = random_sum(&mut rng, 4, 10);
        assert!(r.spectral_norm().unwrap() + 1e-12 >= r.frobenius_normalized());
    }

    #[test]
    fn algebra_and_json() {
        let mut h = PauliSum::new(2);
        h.add_term(PauliString::single(0, Pauli::X), 1.0);
        h.add_term(PauliString::single(0, Pauli::X), -1.0);
        assert!(h.is_empty());
        h.add_term(PauliString::pair(0, Pauli::Z, 1, Pauli::X), 0.3);
        h.add_term(PauliString::identity(), 1e-16);
        assert_eq!(h.len(), 1);
        let back = PauliSum::from_json_terms(&h.to_json_terms()).unwrap();
        assert_eq!(back, h);
        let e = h.embed(4, &[3, 1]);
        assert_eq!(e.coeff(&PauliString::pair(3, Pauli::Z, 1, Pauli::X)), 0.3);
        assert!(h.sub(&h).is_empty());
    }

    #[test]
    fn thread_count_independence() {
        let mut rng = StdRng::seed_from_u64(21);
        let h = random_sum(&mut rng, 12, 40);
        let psi = random_state(&mut rng, 12);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| h.apply(&psi).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn apply_is_linear(seed in 0u64..1000, a in -2.0f64..2.0) {
            let mut rng = StdRng::seed_from_u64(seed);
            let h = random_sum(&mut rng, 4, 6);
            let u = random_state(&mut rng, 4);
            let v = random_state(&mut rng, 4);
            let w: Vec<_> = u.iter().zip(&v).map(|(x, y)| x * a + y).collect();
            let (hu, hv, hw) = (h.apply(&u).unwrap(), h.apply(&v).unwrap(), h.apply(&w).unwrap());
            for i in 0..w.len() {
                prop_assert!((hw[i] - (hu[i] * a + hv[i])).norm() < 1e-12);
            }
        }
    }
}
