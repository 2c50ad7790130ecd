//! Double-dot lattice geometry.
//!
//! Sites are addressed with 1-based `(row, col)` pairs and enumerated in
//! row-major order, so qubit `q = (row - 1) * cols + (col - 1)`.
//!
//! Every ddot has its dipole axis (L dot to R dot) along the row direction.
//! Neighbours in the same column are displaced perpendicular to that axis
//! ([`EdgeClass::Symmetric`]); neighbours in the same row are displaced along
//! it ([`EdgeClass::Asymmetric`]), which makes the L-R and R-L Coulomb
//! distances differ by `2a`.
//!
//! Column index grows toward the L side of each ddot: in the asymmetric edge
//! `(m, n) - (m, n + 1)` the endpoint `(m, n + 1)` is the *left* ddot. With
//! this orientation the single-qubit offsets produced by the asymmetric
//! coupling land on the boundary columns with the signs used by
//! [`crate::bias`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Open,
    CylindricalInColumns,
}

/// Lattice geometry. Lengths are in micrometres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rows: usize,
    pub cols: usize,
    /// Distance between the two dots of one ddot.
    pub intra_ddot_um: f64,
    /// Spacing between neighbours in the same column (perpendicular to the dipole axis).
    pub sym_spacing_um: f64,
    /// Spacing between neighbours in the same row (collinear with the dipole axis).
    pub asym_spacing_um: f64,
    pub boundary: Boundary,
}

impl LatticeSpec {
    /// GaAs double-dot geometry: a = 400 nm, 5.5 um and 5.85 um spacings.
    pub fn gaas(rows: usize, cols: usize, boundary: Boundary) -> Self {
        LatticeSpec {
            rows,
            cols,
            intra_ddot_um: 0.4,
            sym_spacing_um: 5.5,
            asym_spacing_um: 5.85,
            boundary,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Config(format!(
                "lattice must have at least one row and column, got {}x{}",
                self.rows, self.cols
            )));
        }
        let finite = [self.intra_ddot_um, self.sym_spacing_um, self.asym_spacing_um]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.intra_ddot_um <= 0.0 {
            return Err(Error::Geometry(format!(
                "intra-ddot distance must be positive, got {}",
                self.intra_ddot_um
            )));
        }
        if self.sym_spacing_um <= 0.0 {
            return Err(Error::Geometry(format!(
                "symmetric spacing must be positive, got {}",
                self.sym_spacing_um
            )));
        }
        if self.asym_spacing_um <= self.intra_ddot_um {
            return Err(Error::Geometry(format!(
                "asymmetric spacing {} must exceed the intra-ddot distance {}",
                self.asym_spacing_um, self.intra_ddot_um
            )));
        }
        if self.boundary == Boundary::CylindricalInColumns && self.cols < 3 {
            return Err(Error::Config(format!(
                "cylindrical boundary needs at least 3 columns, got {}",
                self.cols
            )));
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        self.rows * self.cols
    }
}

/// 1-based lattice coordinate of a ddot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    pub row: usize,
    pub col: usize,
}

impl Site {
    pub fn new(row: usize, col: usize) -> Self {
        Site { row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Qubit indices, `a < b` except for cylindrical wrap edges where `a` is
    /// the last column and `b` the first.
    pub a: usize,
    pub b: usize,
    pub class: EdgeClass,
    /// Endpoint on the L side of the pair along the dipole axis. For
    /// symmetric edges the two ddots sit side by side and this is `a`.
    pub left: usize,
}

impl Edge {
    pub fn right(&self) -> usize {
        if self.left == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, q: usize) -> bool {
        self.a == q || self.b == q
    }

    pub fn is_wrap(&self, cols: usize) -> bool {
        self.class == EdgeClass::Asymmetric && self.a % cols == cols - 1 && self.b % cols == 0
    }
}

#[derive(Debug, Clone)]
pub struct Lattice {
    spec: LatticeSpec,
    sites: Vec<Site>,
    edges: Vec<Edge>,
}

impl Lattice {
    pub fn build(spec: LatticeSpec) -> Result<Self> {
        spec.validate()?;
        let (rows, cols) = (spec.rows, spec.cols);
        let sites = (1..=rows)
            .flat_map(|r| (1..=cols).map(move |c| Site::new(r, c)))
            .collect::<Vec<_>>();
        let idx = |r: usize, c: usize| (r - 1) * cols + (c - 1);

        let mut symmetric = Vec::new();
        for r in 1..rows {
            for c in 1..=cols {
                let (a, b) = (idx(r, c), idx(r + 1, c));
                symmetric.push(Edge {
                    a,
                    b,
                    class: EdgeClass::Symmetric,
                    left: a,
                });
            }
        }
        let mut asymmetric = Vec::new();
        for r in 1..=rows {
            for c in 1..cols {
                let (a, b) = (idx(r, c), idx(r, c + 1));
                asymmetric.push(Edge {
                    a,
                    b,
                    class: EdgeClass::Asymmetric,
                    left: b,
                });
            }
            if spec.boundary == Boundary::CylindricalInColumns {
                // column N is followed by column 1
                let (a, b) = (idx(r, cols), idx(r, 1));
                asymmetric.push(Edge {
                    a,
                    b,
                    class: EdgeClass::Asymmetric,
                    left: b,
                });
            }
        }
        let key = |e: &Edge| (e.a.min(e.b), e.a.max(e.b));
        symmetric.sort_by_key(key);
        asymmetric.sort_by_key(key);
        let edges = symmetric.into_iter().chain(asymmetric).collect();
        Ok(Lattice { spec, sites, edges })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.spec.rows
    }

    pub fn cols(&self) -> usize {
        self.spec.cols
    }

    pub fn n_qubits(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Symmetric edges first, then asymmetric, each sorted by endpoint indices.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn qubit(&self, site: Site) -> Result<usize> {
        if site.row == 0 || site.col == 0 || site.row > self.rows() || site.col > self.cols() {
            return Err(Error::SiteOutOfRange {
                row: site.row,
                col: site.col,
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        Ok((site.row - 1) * self.cols() + (site.col - 1))
    }

    pub fn site(&self, qubit: usize) -> Site {
        self.sites[qubit]
    }

    /// `(symmetric, asymmetric)` neighbour counts of a site.
    pub fn neighbor_counts(&self, site: Site) -> Result<(usize, usize)> {
        let q = self.qubit(site)?;
        Ok(self.neighbor_counts_of(q))
    }

    pub fn neighbor_counts_of(&self, q: usize) -> (usize, usize) {
        self.edges
            .iter()
            .filter(|e| e.touches(q))
            .fold((0, 0), |(s, a), e| match e.class {
                EdgeClass::Symmetric => (s + 1, a),
                EdgeClass::Asymmetric => (s, a + 1),
            })
    }

    pub fn degree(&self, q: usize) -> usize {
        let (s, a) = self.neighbor_counts_of(q);
        s + a
    }

    pub fn neighbors(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.touches(q))
            .map(move |e| if e.a == q { e.b } else { e.a })
    }

    /// Linear size used by the fidelity estimate: sqrt(rows * cols).
    pub fn linear_size(&self) -> f64 {
        (self.n_qubits() as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn open(rows: usize, cols: usize) -> Lattice {
        Lattice::build(LatticeSpec::gaas(rows, cols, Boundary::Open)).unwrap()
    }

    fn cyl(rows: usize, cols: usize) -> Lattice {
        Lattice::build(LatticeSpec::gaas(rows, cols, Boundary::CylindricalInColumns)).unwrap()
    }

    fn count(l: &Lattice, class: EdgeClass) -> usize {
        l.edges().iter().filter(|e| e.class == class).count()
    }

    #[test]
    fn small_lattices() {
        let l = open(2, 2);
        assert_eq!(l.n_qubits(), 4);
        assert_eq!(count(&l, EdgeClass::Symmetric), 2);
        assert_eq!(count(&l, EdgeClass::Asymmetric), 2);

        let l = open(1, 1);
        assert_eq!((l.n_qubits(), l.edges().len()), (1, 0));

        let l = cyl(3, 3);
        assert_eq!(l.n_qubits(), 9);
        assert_eq!(count(&l, EdgeClass::Symmetric), 6);
        assert_eq!(count(&l, EdgeClass::Asymmetric), 9);
        assert_eq!(l.edges().iter().filter(|e| e.is_wrap(3)).count(), 3);
    }

    #[test]
    fn single_edge_classes() {
        let l = open(2, 1);
        assert_eq!(l.edges().len(), 1);
        assert_eq!(l.edges()[0].class, EdgeClass::Symmetric);
        let l = open(1, 2);
        assert_eq!(l.edges().len(), 1);
        assert_eq!(l.edges()[0].class, EdgeClass::Asymmetric);
        assert_eq!(l.edges()[0].left, 1);
        let l = cyl(2, 3);
        assert_eq!(count(&l, EdgeClass::Symmetric), 3);
        assert_eq!(count(&l, EdgeClass::Asymmetric), 6);
    }

    #[test]
    fn neighbor_counts_match_corner_edge_centre() {
        let l = open(3, 3);
        assert_eq!(l.neighbor_counts(Site::new(1, 1)).unwrap(), (1, 1));
        assert_eq!(l.neighbor_counts(Site::new(2, 2)).unwrap(), (2, 2));
        let c = cyl(3, 3);
        let (s, a) = c.neighbor_counts(Site::new(1, 2)).unwrap();
        assert_eq!(s + a, 3);
        let (s, a) = c.neighbor_counts(Site::new(2, 2)).unwrap();
        assert_eq!(s + a, 4);
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = LatticeSpec::gaas(2, 2, Boundary::Open);
        spec.asym_spacing_um = 0.4;
        assert!(matches!(Lattice::build(spec), Err(Error::Geometry(_))));
        let spec = LatticeSpec::gaas(3, 2, Boundary::CylindricalInColumns);
        assert!(matches!(Lattice::build(spec), Err(Error::Config(_))));
        let spec = LatticeSpec::gaas(0, 2, Boundary::Open);
        assert!(Lattice::build(spec).is_err());
        assert!(matches!(
            open(2, 2).neighbor_counts(Site::new(3, 1)),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn edge_count_formulas() {
        for rows in 1..6 {
            for cols in 1..6 {
                let l = open(rows, cols);
                assert_eq!(l.edges().len(), rows * (cols - 1) + (rows - 1) * cols);
                if cols >= 3 {
                    let c = cyl(rows, cols);
                    assert_eq!(c.edges().len(), rows * cols + (rows - 1) * cols);
                    assert_eq!(count(&c, EdgeClass::Symmetric), (rows - 1) * cols);
                }
            }
        }
    }

    #[test]
    fn degrees_and_reflection() {
        for (rows, cols) in [(2, 2), (3, 4), (4, 3), (5, 5)] {
            let l = open(rows, cols);
            for q in 0..l.n_qubits() {
                assert!((2..=4).contains(&l.degree(q)));
            }
            // row reflection preserves edges and classes
            let reflect = |q: usize| {
                let s = l.site(q);
                (rows - s.row) * cols + (s.col - 1)
            };
            let mut orig: Vec<_> = l
                .edges()
                .iter()
                .map(|e| (e.a.min(e.b), e.a.max(e.b), e.class))
                .collect();
            let mut refl: Vec<_> = l
                .edges()
                .iter()
                .map(|e| {
                    let (x, y) = (reflect(e.a), reflect(e.b));
                    (x.min(y), x.max(y), e.class)
                })
                .collect();
            orig.sort_by_key(|t| (t.0, t.1));
            refl.sort_by_key(|t| (t.0, t.1));
            assert_eq!(orig, refl);

            if cols >= 3 && rows >= 2 {
                let c = cyl(rows, cols);
                for q in 0..c.n_qubits() {
                    let row = c.site(q).row;
                    let expect = if row == 1 || row == rows { 3 } else { 4 };
                    assert_eq!(c.degree(q), expect);
                }
            }
        }
    }

    #[test]
    fn no_duplicate_edges() {
        let c = cyl(4, 3);
        let mut keys: Vec<_> = c.edges().iter().map(|e| (e.a.min(e.b), e.a.max(e.b))).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), n);
    }
}
