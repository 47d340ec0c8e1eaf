//! OpenQASM 3 export.

use std::fmt::Write as _;

use crate::circuit::{Circuit, GateKind};

pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::from("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    writeln!(out, "qubit[{}] q;", circuit.width()).unwrap();
    for gate in circuit.gates() {
        let name = match gate.kind() {
            GateKind::Not => "x",
            GateKind::Cnot => "cx",
            GateKind::Toffoli => "ccx",
        };
        let operands: Vec<String> = gate.support().map(|l| format!("q[{l}]")).collect();
        writeln!(out, "{name} {};", operands.join(", ")).unwrap();
    }
    out
}
