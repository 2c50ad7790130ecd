//! Brute-force extended Hubbard model on a handful of double dots.
//!
//! Spinless occupation basis over `2 × ddots` dots. Dot `2k` is the L dot and
//! dot `2k + 1` the R dot of ddot `k`; dot `p` is bit `n_dots - 1 - p` of a
//! basis index, matching the qubit ordering of [`PauliSum`].
//!
//! Hopping enters as `−T (c†_L c_R + h.c.)`, so a ddot with hopping `T`
//! projects onto a qubit with `X` coefficient `−T`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::coulomb::{EdgeCoefficients, MaterialParams};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_two_qubit, Pauli, PauliString, PauliSum};
use crate::lattice::{EdgeClass, LatticeSpec};

pub const MAX_DDOTS: usize = 3;
/// Effectively infinite intra-ddot repulsion [μeV].
pub const DEFAULT_W_INTRA: f64 = 1e9;
/// Minimum ratio of intra-ddot to inter-ddot repulsion.
pub const MIN_W_RATIO: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    #[default]
    Fermion,
    HardcoreBoson,
}

/// One ddot: dot positions [μm], hopping [μeV] and site potentials [μeV].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleDot {
    pub left: [f64; 2],
    pub right: [f64; 2],
    pub tunnel_uev: f64,
    pub v_left_uev: f64,
    pub v_right_uev: f64,
}

impl DoubleDot {
    /// Bias `V = V_L − V_R`.
    pub fn bias(&self) -> f64 {
        self.v_left_uev - self.v_right_uev
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DotArray {
    pub ddots: Vec<DoubleDot>,
    pub e_onsite_uev: f64,
    pub material: MaterialParams,
    pub w_intra_uev: f64,
}

fn distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

impl DotArray {
    /// A lone ddot of width 1 with bias `V` split symmetrically across its dots.
    pub fn single(e: f64, t: f64, v: f64) -> Self {
        DotArray {
            ddots: vec![DoubleDot {
                left: [0.5, 0.0],
                right: [-0.5, 0.0],
                tunnel_uev: t,
                v_left_uev: v / 2.0,
                v_right_uev: -v / 2.0,
            }],
            e_onsite_uev: e,
            material: MaterialParams::gaas(),
            w_intra_uev: DEFAULT_W_INTRA,
        }
    }

    /// Two ddots laid out as an edge of the given class, ddot 0 on the L side.
    pub fn pair(
        geom: &LatticeSpec,
        material: MaterialParams,
        class: EdgeClass,
        e: f64,
        t: f64,
        v: [f64; 2],
    ) -> Self {
        let a = geom.intra_ddot_um;
        let (left, right) = match class {
            // stacked perpendicular to the dipole axis
            EdgeClass::Symmetric => {
                let d = geom.sym_spacing_um;
                (([0.0, 0.0], [-a, 0.0]), ([0.0, d], [-a, d]))
            }
            // collinear, the L ddot sits at larger x
            EdgeClass::Asymmetric => {
                let d = geom.asym_spacing_um;
                (([d, 0.0], [d - a, 0.0]), ([0.0, 0.0], [-a, 0.0]))
            }
        };
        let ddot = |(l, r): ([f64; 2], [f64; 2]), v: f64| DoubleDot {
            left: l,
            right: r,
            tunnel_uev: t,
            v_left_uev: v / 2.0,
            v_right_uev: -v / 2.0,
        };
        DotArray {
            ddots: vec![ddot(left, v[0]), ddot(right, v[1])],
            e_onsite_uev: e,
            material,
            w_intra_uev: DEFAULT_W_INTRA,
        }
    }

    pub fn with_w_intra(mut self, w: f64) -> Self {
        self.w_intra_uev = w;
        self
    }

    pub fn n_ddots(&self) -> usize {
        self.ddots.len()
    }

    pub fn n_dots(&self) -> usize {
        2 * self.ddots.len()
    }

    fn position(&self, p: usize) -> [f64; 2] {
        let d = &self.ddots[p / 2];
        if p % 2 == 0 {
            d.left
        } else {
            d.right
        }
    }

    fn potential(&self, p: usize) -> f64 {
        let d = &self.ddots[p / 2];
        if p % 2 == 0 {
            d.v_left_uev
        } else {
            d.v_right_uev
        }
    }

    /// Repulsion between dots `p != q` [μeV].
    pub fn w(&self, p: usize, q: usize) -> f64 {
        if p / 2 == q / 2 {
            self.w_intra_uev
        } else {
            self.material.vq_uev_um / distance(self.position(p), self.position(q))
        }
    }

    pub fn max_inter_w(&self) -> f64 {
        let n = self.n_dots();
        (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .filter(|(p, q)| p / 2 != q / 2)
            .map(|(p, q)| self.w(p, q))
            .fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ddots.is_empty() || self.ddots.len() > MAX_DDOTS {
            return Err(Error::Size(format!(
                "EHM arrays hold 1 to {MAX_DDOTS} ddots, got {}",
                self.ddots.len()
            )));
        }
        let n = self.n_dots();
        for p in 0..n {
            for q in p + 1..n {
                if distance(self.position(p), self.position(q)) <= 0.0 {
                    return Err(Error::Geometry(format!("dots {p} and {q} coincide")));
                }
            }
        }
        let finite = self.e_onsite_uev.is_finite()
            && self.w_intra_uev.is_finite()
            && self.ddots.iter().all(|d| {
                d.tunnel_uev.is_finite() && d.v_left_uev.is_finite() && d.v_right_uev.is_finite()
            });
        if !finite {
            return Err(Error::Config("EHM parameters must be finite".into()));
        }
        let inter = self.max_inter_w();
        if self.w_intra_uev < MIN_W_RATIO * inter {
            return Err(Error::Config(format!(
                "intra-ddot repulsion {} μeV must be at least {MIN_W_RATIO} × the largest inter-ddot repulsion {inter} μeV",
                self.w_intra_uev
            )));
        }
        Ok(())
    }
}

fn occupied(state: usize, n_dots: usize, p: usize) -> bool {
    state >> (n_dots - 1 - p) & 1 == 1
}

/// Dense Hamiltonian on the full `2^{dots}` occupation space.
pub fn build_ehm(array: &DotArray, statistics: Statistics) -> Result<DMatrix<f64>> {
    array.validate()?;
    let n = array.n_dots();
    let dim = 1usize << n;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        let occ = |p| occupied(s, n, p);
        let mut e = 0.0;
        for p in 0..n {
            if occ(p) {
                e += array.e_onsite_uev;
            }
        }
        // each unordered pair once
        for p in 0..n {
            for q in p + 1..n {
                if occ(p) && occ(q) {
                    e += array.w(p, q);
                }
            }
        }
        // ½ Σ V_pq (n_p − n_q) over ordered intra-ddot pairs
        for k in 0..array.n_ddots() {
            let (l, r) = (2 * k, 2 * k + 1);
            let v = array.potential(l) - array.potential(r);
            let dn = occ(l) as i32 - occ(r) as i32;
            e += v * dn as f64;
        }
        h[(s, s)] = e;
    }
    for (k, d) in array.ddots.iter().enumerate() {
        let (l, r) = (2 * k, 2 * k + 1);
        for s in 0..dim {
            // c†_l c_r
            if occupied(s, n, r) && !occupied(s, n, l) {
                let target = s ^ (1 << (n - 1 - r)) ^ (1 << (n - 1 - l));
                let sign = match statistics {
                    Statistics::HardcoreBoson => 1.0,
                    Statistics::Fermion => {
                        // occupied modes strictly between l and r
                        let between = (l + 1..r).filter(|&p| occupied(s, n, p)).count();
                        if between % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                };
                h[(target, s)] -= sign * d.tunnel_uev;
                h[(s, target)] -= sign * d.tunnel_uev;
            }
        }
    }
    Ok(h)
}

/// Total occupation of each basis state.
pub fn total_occupation(n_dots: usize) -> Vec<u32> {
    (0..1usize << n_dots).map(|s| s.count_ones()).collect()
}

/// Basis indices with exactly one electron per ddot, in qubit order
/// (`|L⟩ → |0⟩`, `|R⟩ → |1⟩`).
fn one_per_ddot_states(n_ddots: usize) -> Vec<usize> {
    let n = 2 * n_ddots;
    (0..1usize << n_ddots)
        .map(|qubits| {
            (0..n_ddots).fold(0usize, |s, k| {
                let right = qubits >> (n_ddots - 1 - k) & 1 == 1;
                let dot = if right { 2 * k + 1 } else { 2 * k };
                s | 1 << (n - 1 - dot)
            })
        })
        .collect()
}

/// Pauli decomposition of a real symmetric `2^n` matrix.
pub fn decompose_real(m: &DMatrix<f64>, n_qubits: usize) -> Result<PauliSum> {
    let dim = 1usize << n_qubits;
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: m.nrows(),
        });
    }
    let paulis = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let mut out = PauliSum::new(n_qubits);
    for code in 0..1usize << (2 * n_qubits) {
        let s = PauliString::from_factors(
            (0..n_qubits).map(|q| (q, paulis[code >> (2 * (n_qubits - 1 - q)) & 3])),
        );
        let p = PauliSum::new(n_qubits).with_term(s, 1.0).to_dense()?;
        let mut tr = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                tr += (p[(i, j)] * m[(j, i)]).re;
            }
        }
        out.add_term(s, tr / dim as f64);
    }
    Ok(out)
}

/// Restrict `h` to one electron per ddot and expand in Pauli strings.
pub fn project_to_qubits(h: &DMatrix<f64>, array: &DotArray) -> Result<PauliSum> {
    let n_dots = array.n_dots();
    let dim = 1usize << n_dots;
    if h.nrows() != dim || h.ncols() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: h.nrows(),
        });
    }
    let states = one_per_ddot_states(array.n_ddots());
    let expected = 1usize << array.n_ddots();
    let distinct = {
        let mut s = states.clone();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    if distinct != expected {
        return Err(Error::Subspace(format!(
            "one-electron-per-ddot subspace has dimension {distinct}, expected {expected}"
        )));
    }
    let m = DMatrix::from_fn(expected, expected, |i, j| h[(states[i], states[j])]);
    decompose_real(&m, array.n_ddots())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub class: Option<EdgeClass>,
    pub w_intra_uev: f64,
    /// Largest non-identity coefficient difference [μeV].
    pub max_deviation_uev: f64,
    pub worst_term: String,
    pub projected: Vec<crate::hamiltonian::JsonTerm>,
}

/// Projected EHM against the two-qubit builder for a 2-ddot array.
pub fn compare_effective(array: &DotArray, edge: &EdgeCoefficients) -> Result<DeviationReport> {
    if array.n_ddots() != 2 {
        return Err(Error::Config(format!(
            "comparison needs 2 ddots, got {}",
            array.n_ddots()
        )));
    }
    let h = build_ehm(array, Statistics::Fermion)?;
    let projected = project_to_qubits(&h, array)?;
    let [d0, d1] = [array.ddots[0], array.ddots[1]];
    let mut reference = build_two_qubit(
        array.e_onsite_uev,
        -d0.tunnel_uev,
        d0.bias(),
        d1.bias(),
        edge,
    );
    reference.add_term(PauliString::single(1, Pauli::X), d0.tunnel_uev - d1.tunnel_uev);
    let diff = projected.sub(&reference).without_identity();
    let (worst_term, max_deviation_uev) = diff
        .terms()
        .map(|(s, c)| (s.label(2), c.abs()))
        .fold((String::new(), 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(DeviationReport {
        class: Some(edge.class),
        w_intra_uev: array.w_intra_uev,
        max_deviation_uev,
        worst_term,
        projected: projected.to_json_terms(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorGap {
    /// Highest level with one electron per ddot.
    pub single_max_uev: f64,
    /// Lowest level with some ddot doubly occupied, at the same total charge.
    pub double_min_uev: f64,
    pub gap_uev: f64,
}

/// Separation between the qubit sector and doubly occupied ddots.
pub fn sector_gap(array: &DotArray) -> Result<SectorGap> {
    let h = build_ehm(array, Statistics::Fermion)?;
    let n = array.n_dots();
    let nd = array.n_ddots();
    // per-ddot occupation is conserved, so each pattern is its own block
    let pattern = |s: usize| -> Vec<u32> {
        (0..nd)
            .map(|k| occupied(s, n, 2 * k) as u32 + occupied(s, n, 2 * k + 1) as u32)
            .collect()
    };
    let mut blocks: std::collections::BTreeMap<Vec<u32>, Vec<usize>> = Default::default();
    for s in 0..1usize << n {
        if s.count_ones() as usize == nd {
            blocks.entry(pattern(s)).or_default().push(s);
        }
    }
    let mut single_max = f64::NEG_INFINITY;
    let mut double_min = f64::INFINITY;
    for (pat, states) in &blocks {
        let m = DMatrix::from_fn(states.len(), states.len(), |i, j| h[(states[i], states[j])]);
        let eig = m.symmetric_eigen().eigenvalues;
        if pat.iter().all(|&c| c == 1) {
            single_max = single_max.max(eig.max());
        } else if pat.contains(&2) {
            double_min = double_min.min(eig.min());
        }
    }
    Ok(SectorGap {
        single_max_uev: single_max,
        double_min_uev: double_min,
        gap_uev: double_min - single_max,
    })
}
