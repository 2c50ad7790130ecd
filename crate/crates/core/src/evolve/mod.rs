//! Statevector dynamics and the cluster-state generation protocol.

pub mod propagate;
pub mod protocol;
pub mod state;

pub use propagate::{propagate, propagate_dense, propagate_krylov, Method, KRYLOV_TOLERANCE};
pub use protocol::{
    fidelity_formula, generation_time, nmax_bound, nmax_quarter_period, run_protocol,
    sweep_scaling, tilted_frame_fidelity, EvolutionReport, InitialFrame, ParameterEcho,
    ProtocolConfig, SweepParameter, SweepRow, SweepTable,
};
pub use state::{
    fidelity, ideal_cluster_state, plus_state, stabilizer, stabilizer_expectations, tilt,
    StateVector, TiltDirection, MAX_STATE_QUBITS,
};
