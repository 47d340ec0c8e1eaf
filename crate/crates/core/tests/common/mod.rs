#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revadd::{BitState, Circuit, Gate, LineRole};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Lines a gate reads or writes, built from scratch rather than via `support`.
fn lines_of(g: &Gate) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = g.controls().iter().map(|c| c.0).collect();
    s.insert(g.target().0);
    s
}

/// Longest path through the explicit pairwise conflict DAG. Edges run from
/// every earlier gate to every later gate it conflicts with.
pub fn brute_force_depth(circuit: &Circuit) -> usize {
    let gates = circuit.gates();
    let n = gates.len();
    let mut edges = vec![Vec::new(); n];
    for h in 0..n {
        for g in 0..h {
            let (sg, sh) = (lines_of(&gates[g]), lines_of(&gates[h]));
            if sh.contains(&gates[g].target().0) || sg.contains(&gates[h].target().0) {
                edges[h].push(g);
            }
        }
    }
    fn longest(v: usize, edges: &[Vec<usize>], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[v] {
            return d;
        }
        let d = 1 + edges[v]
            .iter()
            .map(|&u| longest(u, edges, memo))
            .max()
            .unwrap_or(0);
        memo[v] = Some(d);
        d
    }
    let mut memo = vec![None; n];
    (0..n)
        .map(|v| longest(v, &edges, &mut memo))
        .max()
        .unwrap_or(0)
}

/// Longest run of gates writing the same line.
pub fn longest_same_target_chain(circuit: &Circuit) -> usize {
    (0..circuit.width())
        .map(|l| circuit.gates().iter().filter(|g| g.target().0 == l).count())
        .max()
        .unwrap_or(0)
}

/// Reference evaluation straight from the gate semantics.
pub fn eval_reference(circuit: &Circuit, input: u64) -> u64 {
    let mut bits: Vec<bool> = (0..circuit.width())
        .map(|i| (input >> i) & 1 == 1)
        .collect();
    for g in circuit.gates() {
        if g.controls().iter().all(|c| bits[c.0]) {
            bits[g.target().0] ^= true;
        }
    }
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
}

pub fn state(bits: &[u8]) -> BitState {
    BitState::from_bits(bits.iter().map(|&b| b == 1).collect())
}

pub fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let max_arity = width.min(3);
    (1..=max_arity)
        .prop_flat_map(move |arity| {
            proptest::sample::subsequence((0..width).collect::<Vec<_>>(), arity).prop_shuffle()
        })
        .prop_map(|lines| Gate::from_controls(&lines[1..], lines[0]).unwrap())
}

fn arb_name() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}"
}

fn arb_role() -> impl Strategy<Value = LineRole> {
    let source = prop_oneof![
        arb_name().prop_map(LineRole::input),
        Just(LineRole::ancilla()),
    ];
    (source, proptest::option::of(arb_name())).prop_map(|(mut role, out)| {
        role.output = out;
        role
    })
}

/// Valid circuits with random roles, width in `1..=max_width`.
pub fn arb_circuit(max_width: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_width).prop_flat_map(move |width| {
        (
            proptest::collection::vec(arb_role(), width),
            proptest::collection::vec(arb_gate(width), 0..=max_gates),
        )
            .prop_map(move |(roles, gates)| {
                let mut c = Circuit::new(width, roles).unwrap();
                c.extend(gates).unwrap();
                c
            })
    })
}
