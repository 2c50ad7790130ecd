// The full protocol on a 2×3 GaAs lattice: lab-frame evolution under the
// complete Hamiltonian, compared with the tilted cluster state.

use clusterforge::evolve::{run_protocol, ProtocolConfig};
use clusterforge::Boundary;

fn main() -> clusterforge::Result<()> {
    let config = ProtocolConfig::gaas(2, 3, Boundary::Open, 0.1);
    let r = run_protocol(&config)?;
    println!("t         = {:.4} ħ/μeV = {:.4e} s", r.t_hbar_per_uev, r.t_seconds);
    println!("1-F exact = {:.3e}", r.one_minus_f_exact);
    println!("1-F Ising = {:.3e}", r.one_minus_f_ising);
    println!("1-F bound = {:.3e}", r.one_minus_f_formula);
    println!("residual  = {:.3e} μeV", r.residual_norm_uev);
    println!("V̄         = {:.3} μeV", r.vbar_uev);
    println!("min <K>   = {:.6}", r.min_stabilizer);
    for w in &r.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
