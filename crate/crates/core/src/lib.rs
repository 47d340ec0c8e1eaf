//! Reversible NCT circuits for input-preserving addition.
//!
//! The crate builds the 1-Toffoli full adder ([`adders::build_ppkn`]), a
//! 2-Toffoli baseline and n-bit ripple-carry cascades, simulates them on
//! basis states, and reports gate counts, quantum cost and logical depth.

pub mod adders;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod netlist;
pub mod qasm;
pub mod sim;

pub use adders::{
    build_hng_reference, build_ppkn, build_rca, oracle_add, verify_full_adder, verify_rca,
    AdderLayout, FullAdderSpec, VerificationReport, VerifyMode,
};
pub use circuit::{Circuit, Gate, GateKind, LineId, LineRole, LineSource};
pub use error::{Error, Result};
pub use metrics::{analyze, logical_depth, quantum_cost, CostModel, MetricsReport, Schedule};
pub use netlist::{parse_netlist, serialize_netlist, Layout};
pub use qasm::export_qasm;
pub use sim::{
    apply_gate, is_bijection, permutation_of, simulate, simulate_batch, BatchState, BitState,
    PermutationTable,
};
