// Bias values for a 5×5 open lattice and a 5×5 cylinder.

use clusterforge::{bias_assignment, bias_table, Boundary, CoulombCoefficients, Lattice, LatticeSpec, MaterialParams};

fn main() -> clusterforge::Result<()> {
    for boundary in [Boundary::Open, Boundary::CylindricalInColumns] {
        let spec = LatticeSpec::gaas(5, 5, boundary);
        let lattice = Lattice::build(spec)?;
        let c = CoulombCoefficients::compute(&spec, &MaterialParams::gaas())?;
        let scheme = bias_assignment(&lattice, &c, 0, 0)?;
        println!("{boundary:?}");
        println!("  {:<10} {:<10} {:<12} {:>9}", "m", "n", "V", "μeV");
        for row in bias_table(&lattice, &scheme) {
            println!(
                "  {:<10} {:<10} {:<12} {:>9.4}",
                row.m_class, row.n_class, row.formula, row.value_uev
            );
        }
    }
    Ok(())
}
