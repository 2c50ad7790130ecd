// Pure Ising evolution: |+>^n under ς Σ Z Z + Σ E Z for t = π/(4ς) gives the
// cluster state, certified by its stabilizers.

use std::f64::consts::PI;

use clusterforge::bias::target_effective_offsets;
use clusterforge::evolve::{fidelity, ideal_cluster_state, plus_state, propagate, stabilizer_expectations};
use clusterforge::hamiltonian::build_ising;
use clusterforge::{Boundary, CoulombCoefficients, Lattice, LatticeSpec, MaterialParams};

fn main() -> clusterforge::Result<()> {
    let spec = LatticeSpec::gaas(3, 3, Boundary::Open);
    let lattice = Lattice::build(spec)?;
    let sigma = CoulombCoefficients::compute(&spec, &MaterialParams::gaas())?.sigma;

    let e = target_effective_offsets(&lattice, sigma, 0, 0);
    let h = build_ising(&lattice, sigma, &e)?;
    let psi = propagate(&h, PI / (4.0 * sigma), &plus_state(lattice.n_qubits())?)?;

    println!("1 - F = {:.2e}", 1.0 - fidelity(&psi, &ideal_cluster_state(&lattice)?)?);
    for (q, k) in stabilizer_expectations(&lattice, &psi)?.iter().enumerate() {
        let s = lattice.site(q);
        println!("<K({},{})> = {k:+.12}", s.row, s.col);
    }
    Ok(())
}
