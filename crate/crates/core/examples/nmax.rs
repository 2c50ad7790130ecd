// Largest cluster reachable at a target fidelity.

use clusterforge::evolve::nmax_quarter_period;

fn main() -> clusterforge::Result<()> {
    println!("{:>6} {:>6} {:>6} {:>10}", "F", "T", "V̄", "N_max");
    for (f, t) in [(0.99, 0.1), (0.9, 1.0), (0.999, 0.1), (0.99, 0.01)] {
        let n = nmax_quarter_period(f, 40.0, t)?;
        println!("{f:>6} {t:>6} {:>6} {n:>10.1}", 40.0);
    }
    Ok(())
}
