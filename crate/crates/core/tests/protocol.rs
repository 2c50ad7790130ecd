use clusterforge::evolve::{run_protocol, tilted_frame_fidelity, InitialFrame, ProtocolConfig};
use clusterforge::{Boundary, DecompositionMode};

#[test]
fn krylov_sized_lattice() {
    // 12 qubits goes through the Lanczos propagator
    let r = run_protocol(&ProtocolConfig::gaas(3, 4, Boundary::Open, 0.1)).unwrap();
    assert!(r.one_minus_f_ising <= 1e-9);
    assert!(r.one_minus_f_exact <= 1e-3, "{}", r.one_minus_f_exact);
    assert!(r.one_minus_f_exact <= r.one_minus_f_formula);
    assert!(r.min_stabilizer > 0.999);
}

#[test]
fn frame_consistency() {
    for frame in [InitialFrame::Tilted, InitialFrame::Lab] {
        let mut cfg = ProtocolConfig::gaas(2, 3, Boundary::Open, 0.1);
        cfg.initial_frame = frame;
        let lab = run_protocol(&cfg).unwrap().f_exact;
        assert!((lab - tilted_frame_fidelity(&cfg).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn lab_start_is_worse() {
    let mut cfg = ProtocolConfig::gaas(2, 2, Boundary::Open, 0.1);
    let tilted = run_protocol(&cfg).unwrap().one_minus_f_exact;
    cfg.initial_frame = InitialFrame::Lab;
    let lab = run_protocol(&cfg).unwrap().one_minus_f_exact;
    assert!(lab > tilted);
}

#[test]
fn compensated_bias_still_generates() {
    let mut cfg = ProtocolConfig::gaas(2, 3, Boundary::Open, 0.2);
    cfg.compensate_tunneling = true;
    let r = run_protocol(&cfg).unwrap();
    assert!(r.one_minus_f_exact <= 1e-2);
}

#[test]
fn thread_count_independent() {
    let cfg = ProtocolConfig::gaas(3, 4, Boundary::Open, 0.1);
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| run_protocol(&cfg).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn exact_mode_report() {
    let mut cfg = ProtocolConfig::gaas(2, 2, Boundary::Open, 0.1);
    cfg.mode = DecompositionMode::Exact;
    let r = run_protocol(&cfg).unwrap();
    assert_eq!(r.parameters.mode, DecompositionMode::Exact);
    assert!(r.f_exact < 0.9);
}
