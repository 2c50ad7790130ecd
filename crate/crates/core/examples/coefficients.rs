// Edge coefficients for the GaAs geometry, and how they move with the
// dielectric constant.

use clusterforge::coulomb::{exact_pauli_decomposition, vq_from_material};
use clusterforge::{Boundary, CoulombCoefficients, LatticeSpec, MaterialParams};

fn main() -> clusterforge::Result<()> {
    let spec = LatticeSpec::gaas(2, 2, Boundary::Open);
    let c = CoulombCoefficients::compute(&spec, &MaterialParams::gaas())?;

    println!("class        ς_00      ς_01      ς_10      ς_11   (μeV)");
    for e in [&c.sym, &c.asym] {
        println!(
            "{:<11} {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}",
            format!("{:?}", e.class),
            e.s00,
            e.s01,
            e.s10,
            e.s11
        );
    }
    println!("ς = {:.4} μeV, Δς = {:.4} μeV", c.sigma, c.delta_sigma);
    println!("sym/asym ZZ mismatch: {:.3}%", 100.0 * c.minus_mismatch_rel);

    for e in [&c.sym, &c.asym] {
        let d = exact_pauli_decomposition(e);
        println!(
            "{:?} projector form: c_ZI={:+.4} c_IZ={:+.4} c_ZZ={:+.4}",
            e.class, d.c_zi, d.c_iz, d.c_zz
        );
    }

    // GaAs bulk permittivity instead of the quoted V_Q
    let m = vq_from_material(12.9)?;
    let c = CoulombCoefficients::compute(&spec, &m)?;
    println!("eps_r = 12.9: V_Q = {:.4e} N·m², ς = {:.4} μeV", m.vq_n_m2(), c.sigma);
    Ok(())
}
