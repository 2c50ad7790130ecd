// Column-periodic lattice: every edge along a row wraps, so a single global
// bias per row class is enough.

use clusterforge::evolve::{run_protocol, ProtocolConfig};
use clusterforge::{bias_assignment, Boundary, CoulombCoefficients, Lattice, LatticeSpec, MaterialParams};

fn main() -> clusterforge::Result<()> {
    let spec = LatticeSpec::gaas(3, 3, Boundary::CylindricalInColumns);
    let lattice = Lattice::build(spec)?;
    let c = CoulombCoefficients::compute(&spec, &MaterialParams::gaas())?;
    let scheme = bias_assignment(&lattice, &c, 0, 0)?;
    println!("distinct biases: {:?}", scheme.distinct_v(1e-9));
    println!("wrapping edges: {}", lattice.edges().iter().filter(|e| e.is_wrap(lattice.cols())).count());

    let r = run_protocol(&ProtocolConfig::gaas(3, 3, Boundary::CylindricalInColumns, 0.1))?;
    println!("1-F exact = {:.3e}, 1-F Ising = {:.3e}", r.one_minus_f_exact, r.one_minus_f_ising);
    Ok(())
}
