// Extended Hubbard model for two ddots, projected onto one electron per ddot
// and compared with the two-qubit Hamiltonian.

use clusterforge::ehm::{build_ehm, compare_effective, project_to_qubits, sector_gap, DotArray, Statistics};
use clusterforge::lattice::EdgeClass;
use clusterforge::{Boundary, CoulombCoefficients, LatticeSpec, MaterialParams};

fn main() -> clusterforge::Result<()> {
    let spec = LatticeSpec::gaas(2, 2, Boundary::Open);
    let m = MaterialParams::gaas();
    let c = CoulombCoefficients::compute(&spec, &m)?;

    for (class, edge) in [(EdgeClass::Symmetric, &c.sym), (EdgeClass::Asymmetric, &c.asym)] {
        let array = DotArray::pair(&spec, m, class, 0.0, 0.1, [-21.2, -18.7]);
        let projected = project_to_qubits(&build_ehm(&array, Statistics::Fermion)?, &array)?;
        println!("{class:?}: {projected}");
        let r = compare_effective(&array, edge)?;
        println!("  deviation from two-qubit form: {:.1e} μeV", r.max_deviation_uev);
        for w in [1e5, 1e6, 1e9] {
            let g = sector_gap(&array.clone().with_w_intra(w))?;
            println!("  W_intra = {w:.0e}: gap to double occupancy {:.6e} μeV", g.gap_uev);
        }
    }
    Ok(())
}
