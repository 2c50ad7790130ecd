// Infidelity against tunneling and lattice size, with the log-log slope.

use clusterforge::evolve::{sweep_scaling, ProtocolConfig, SweepParameter};
use clusterforge::Boundary;

fn main() -> clusterforge::Result<()> {
    let base = ProtocolConfig::gaas(2, 3, Boundary::Open, 0.1);
    for (param, values) in [
        (SweepParameter::Tunneling, vec![0.025, 0.05, 0.1, 0.2]),
        (SweepParameter::LinearSize, vec![2.0, 3.0, 4.0]),
    ] {
        let table = sweep_scaling(&base, param, &values)?;
        println!("{param:?} (slope {:.3})", table.slope);
        for r in &table.rows {
            println!(
                "  {:>6} 1-F={:.3e} bound={:.3e} residual={:.3e}",
                r.param, r.one_minus_f_exact, r.one_minus_f_formula, r.residual_norm
            );
        }
    }
    Ok(())
}
