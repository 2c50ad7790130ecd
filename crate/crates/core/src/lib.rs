//! Cluster-state generation in a lattice of capacitively coupled double-dot charge qubits.
//!
//! The crate goes from dot geometry to Coulomb coefficients ([`coulomb`]),
//! lattice Hamiltonians ([`hamiltonian`]), bias assignments ([`bias`]) and
//! finally statevector evolution of the generation protocol ([`evolve`]).
//! [`ehm`] checks the qubit Hamiltonians against a brute-force extended
//! Hubbard model.

pub mod acceptance;
pub mod bias;
pub mod cli;
pub mod config;
pub mod coulomb;
pub mod ehm;
pub mod error;
pub mod evolve;
pub mod hamiltonian;
pub mod lattice;

pub use bias::{bias_assignment, bias_table, BiasScheme};
pub use config::RunConfig;
pub use coulomb::{CoulombCoefficients, EdgeCoefficients, MaterialParams};
pub use error::{Error, Result};
pub use evolve::{run_protocol, EvolutionReport, ProtocolConfig, StateVector};
pub use hamiltonian::{DecompositionMode, Pauli, PauliString, PauliSum};
pub use lattice::{Boundary, Lattice, LatticeSpec};
