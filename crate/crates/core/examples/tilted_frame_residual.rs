// How well the local Y rotation splits H' into the Ising part and the
// first-order error terms, for both sign patterns of the error terms.

use clusterforge::hamiltonian::{frame_residual, IsingOffsets, UndesiredSigns};
use clusterforge::{bias_assignment, Boundary, CoulombCoefficients, Lattice, LatticeSpec, MaterialParams};

fn main() -> clusterforge::Result<()> {
    let spec = LatticeSpec::gaas(2, 2, Boundary::Open);
    let lattice = Lattice::build(spec)?;
    let c = CoulombCoefficients::compute(&spec, &MaterialParams::gaas())?;
    let scheme = bias_assignment(&lattice, &c, 0, 0)?;

    println!("{:>6} {:>12} {:>12}", "T", "derived", "printed");
    for t in [0.4, 0.2, 0.1, 0.05] {
        let norm = |signs| -> clusterforge::Result<f64> {
            Ok(frame_residual(&lattice, &c, &scheme, t, IsingOffsets::TunnelingShifted, signs)?.norm())
        };
        println!(
            "{t:>6} {:>12.3e} {:>12.3e}",
            norm(UndesiredSigns::Derived)?,
            norm(UndesiredSigns::Printed)?
        );
    }
    Ok(())
}
