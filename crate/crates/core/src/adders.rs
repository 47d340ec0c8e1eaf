//! Input-preserving full adders and the ripple-carry cascade.
//!
//! A full adder here maps `(Cin, A, B, 0)` to `(Sum, A, B, Cout)`: the sum
//! overwrites the carry-in line and the carry-out lands on the ancilla.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, LineId, LineRole};
use crate::error::{Error, Result};
use crate::sim::{permutation_of, simulate, simulate_batch, BatchState, BitState};

/// Largest `n` accepted by [`VerifyMode::Exhaustive`] in [`verify_rca`].
pub const EXHAUSTIVE_RCA_BITS: usize = 8;

/// Line roles of a one-bit full adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FullAdderSpec {
    /// Carry in; holds Sum afterwards.
    pub cin: LineId,
    pub a: LineId,
    pub b: LineId,
    /// Constant 0; holds Cout afterwards.
    pub ancilla: LineId,
}

impl FullAdderSpec {
    pub fn lines(&self) -> [LineId; 4] {
        [self.cin, self.a, self.b, self.ancilla]
    }

    pub fn check(&self, circuit: &Circuit) -> Result<()> {
        let lines = self.lines();
        for (i, l) in lines.iter().enumerate() {
            if l.index() >= circuit.width() {
                return Err(Error::structural(format!(
                    "adder line {l} is out of range for width {}",
                    circuit.width()
                )));
            }
            if lines[i + 1..].contains(l) {
                return Err(Error::structural(format!(
                    "adder line {l} is used for two roles"
                )));
            }
        }
        if !circuit.roles()[self.ancilla.index()].is_ancilla() {
            return Err(Error::structural(format!(
                "line {} must be a constant-0 ancilla",
                self.ancilla
            )));
        }
        Ok(())
    }
}

/// Where each operand and result bit of an n-bit cascade lives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdderLayout {
    pub n_bits: usize,
    pub cin: LineId,
    pub a: Vec<LineId>,
    pub b: Vec<LineId>,
    pub ancilla: Vec<LineId>,
    pub sum: Vec<LineId>,
    pub cout: LineId,
}

impl AdderLayout {
    /// Lines ordered `Cin, A0, B0, anc0, A1, B1, anc1, ...`. Bit 0 of the
    /// sum stays on the carry-in line and bit `i` on ancilla `i - 1`.
    pub fn canonical(n_bits: usize) -> Result<Self> {
        if n_bits == 0 {
            return Err(Error::usage("adder width must be at least 1 bit"));
        }
        let block = |i: usize, k: usize| LineId(3 * i + k);
        let a: Vec<_> = (0..n_bits).map(|i| block(i, 1)).collect();
        let b: Vec<_> = (0..n_bits).map(|i| block(i, 2)).collect();
        let ancilla: Vec<_> = (0..n_bits).map(|i| block(i, 3)).collect();
        let mut sum = vec![LineId(0)];
        sum.extend_from_slice(&ancilla[..n_bits - 1]);
        Ok(AdderLayout {
            n_bits,
            cin: LineId(0),
            cout: ancilla[n_bits - 1],
            a,
            b,
            ancilla,
            sum,
        })
    }

    pub fn width(&self) -> usize {
        3 * self.n_bits + 1
    }

    /// Per-block full-adder roles: block `i` reads its carry from the
    /// previous block's ancilla.
    pub fn block(&self, i: usize) -> FullAdderSpec {
        FullAdderSpec {
            cin: if i == 0 {
                self.cin
            } else {
                self.ancilla[i - 1]
            },
            a: self.a[i],
            b: self.b[i],
            ancilla: self.ancilla[i],
        }
    }

    pub fn check(&self, circuit: &Circuit) -> Result<()> {
        let n = self.n_bits;
        if n == 0 || self.a.len() != n || self.b.len() != n || self.ancilla.len() != n {
            return Err(Error::structural(
                "layout operand lists must have n_bits entries",
            ));
        }
        if circuit.width() != self.width() {
            return Err(Error::structural(format!(
                "a {n}-bit layout needs {} lines, circuit has {}",
                self.width(),
                circuit.width()
            )));
        }
        let mut seen = vec![false; circuit.width()];
        let all = std::iter::once(self.cin)
            .chain(self.a.iter().copied())
            .chain(self.b.iter().copied())
            .chain(self.ancilla.iter().copied());
        for l in all {
            if l.index() >= seen.len() || seen[l.index()] {
                return Err(Error::structural(format!(
                    "layout line {l} is invalid or repeated"
                )));
            }
            seen[l.index()] = true;
        }
        let expected_sum: Vec<_> = std::iter::once(self.cin)
            .chain(self.ancilla[..n - 1].iter().copied())
            .collect();
        if self.sum != expected_sum || self.cout != self.ancilla[n - 1] {
            return Err(Error::structural(
                "sum bits must sit on the carry-in line and the earlier ancillas",
            ));
        }
        if let Some(l) = self
            .ancilla
            .iter()
            .find(|l| !circuit.roles()[l.index()].is_ancilla())
        {
            return Err(Error::structural(format!(
                "line {l} must be a constant-0 ancilla"
            )));
        }
        Ok(())
    }
}

/// The six PPKN gates on the given roles, in program order.
pub fn ppkn_gates(spec: &FullAdderSpec) -> [Gate; 6] {
    let [cin, a, b, anc] = spec.lines().map(LineId::index);
    [
        Gate::cnot(b, cin),
        Gate::cnot(b, a),
        Gate::toffoli(cin, a, anc),
        Gate::cnot(b, a),
        Gate::cnot(b, anc),
        Gate::cnot(a, cin),
    ]
}

/// The 1-Toffoli input-preserving full adder on lines `(Cin, A, B, 0)`.
pub fn build_ppkn() -> (Circuit, FullAdderSpec) {
    let roles = vec![
        LineRole::input("Cin").with_output("Sum"),
        LineRole::input("A").with_output("A"),
        LineRole::input("B").with_output("B"),
        LineRole::ancilla().with_output("Cout"),
    ];
    let spec = FullAdderSpec {
        cin: LineId(0),
        a: LineId(1),
        b: LineId(2),
        ancilla: LineId(3),
    };
    let mut circuit = Circuit::new(4, roles).expect("fixed roles are valid");
    circuit
        .extend(ppkn_gates(&spec))
        .expect("fixed gates are valid");
    (circuit, spec)
}

/// A 2-Toffoli input-preserving full adder on lines `(A, B, Cin, 0)`,
/// used as the comparison baseline.
pub fn build_hng_reference() -> (Circuit, FullAdderSpec) {
    let roles = vec![
        LineRole::input("A").with_output("A"),
        LineRole::input("B").with_output("B"),
        LineRole::input("Cin").with_output("Sum"),
        LineRole::ancilla().with_output("Cout"),
    ];
    let mut circuit = Circuit::new(4, roles).expect("fixed roles are valid");
    circuit
        .extend([
            Gate::toffoli(0, 1, 3),
            Gate::cnot(0, 1),
            Gate::toffoli(1, 2, 3),
            Gate::cnot(1, 2),
            Gate::cnot(0, 1),
        ])
        .expect("fixed gates are valid");
    let spec = FullAdderSpec {
        a: LineId(0),
        b: LineId(1),
        cin: LineId(2),
        ancilla: LineId(3),
    };
    (circuit, spec)
}

/// `n` cascaded PPKN blocks over `3n + 1` lines.
pub fn build_rca(n: usize) -> Result<(Circuit, AdderLayout)> {
    let layout = AdderLayout::canonical(n)?;
    let mut roles = vec![LineRole::ancilla(); layout.width()];
    roles[0] = LineRole::input("Cin");
    for i in 0..n {
        roles[layout.a[i].index()] = LineRole::input(format!("A{i}")).with_output(format!("A{i}"));
        roles[layout.b[i].index()] = LineRole::input(format!("B{i}")).with_output(format!("B{i}"));
    }
    for (i, s) in layout.sum.iter().enumerate() {
        roles[s.index()].output = Some(format!("Sum{i}"));
    }
    roles[layout.cout.index()].output = Some("Cout".into());

    let mut circuit = Circuit::new(layout.width(), roles)?;
    for i in 0..n {
        circuit.extend(ppkn_gates(&layout.block(i)))?;
    }
    Ok((circuit, layout))
}

/// Integer reference: `(a + b + cin) mod 2^n` and the carry out of bit `n - 1`.
pub fn oracle_add(a: u64, b: u64, cin: bool, n: usize) -> Result<(u64, bool)> {
    if n == 0 || n > 64 {
        return Err(Error::usage(format!(
            "operand width must be in 1..=64, got {n}"
        )));
    }
    let limit = 1u128 << n;
    if u128::from(a) >= limit || u128::from(b) >= limit {
        return Err(Error::usage(format!(
            "operands {a} and {b} must fit in {n} bits"
        )));
    }
    let total = u128::from(a) + u128::from(b) + u128::from(cin);
    Ok(((total % limit) as u64, total >= limit))
}

/// One input vector on which a circuit disagreed with the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    pub cin: bool,
    pub expected_sum: u64,
    pub expected_cout: bool,
    pub sum: u64,
    pub cout: bool,
    pub a_out: u64,
    pub b_out: u64,
}

impl Counterexample {
    pub fn preserved(&self) -> bool {
        self.a == self.a_out && self.b == self.b_out
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} b={} cin={}: expected sum={} cout={}, got sum={} cout={} a={} b={}",
            self.a,
            self.b,
            u8::from(self.cin),
            self.expected_sum,
            u8::from(self.expected_cout),
            self.sum,
            u8::from(self.cout),
            self.a_out,
            self.b_out
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub rows_checked: usize,
    pub failures: Vec<Counterexample>,
    /// Whether the full basis-state map is a bijection, when it was checked.
    pub bijective: Option<bool>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.bijective != Some(false)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} ({}/{} rows correct)\n",
            self.subject,
            if self.passed() { "PASS" } else { "FAIL" },
            self.rows_checked - self.failures.len(),
            self.rows_checked
        );
        if let Some(b) = self.bijective {
            out.push_str(&format!("bijective: {}\n", if b { "yes" } else { "no" }));
        }
        for f in &self.failures {
            out.push_str(&format!("  counterexample: {f}\n"));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,cin,expected_sum,expected_cout,sum,cout,a_out,b_out\n");
        for f in &self.failures {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                f.a,
                f.b,
                u8::from(f.cin),
                f.expected_sum,
                u8::from(f.expected_cout),
                f.sum,
                u8::from(f.cout),
                f.a_out,
                f.b_out
            ));
        }
        out
    }
}

/// Checks the 8 ancilla-0 rows against the oracle and the whole basis-state
/// map for bijectivity.
pub fn verify_full_adder(circuit: &Circuit, spec: &FullAdderSpec) -> Result<VerificationReport> {
    spec.check(circuit)?;
    let mut failures = Vec::new();
    for row in 0..8u8 {
        let (cin, a, b) = (row & 4 != 0, row & 2 != 0, row & 1 != 0);
        let mut input = BitState::zeros(circuit.width());
        input.set(spec.cin, cin);
        input.set(spec.a, a);
        input.set(spec.b, b);
        let out = simulate(circuit, &input)?;
        let (expected_sum, expected_cout) = oracle_add(u64::from(a), u64::from(b), cin, 1)?;
        let got = Counterexample {
            a: u64::from(a),
            b: u64::from(b),
            cin,
            expected_sum,
            expected_cout,
            sum: u64::from(out.get(spec.cin)),
            cout: out.get(spec.ancilla),
            a_out: u64::from(out.get(spec.a)),
            b_out: u64::from(out.get(spec.b)),
        };
        if got.sum != expected_sum || got.cout != expected_cout || !got.preserved() {
            failures.push(got);
        }
    }
    let bijective = match permutation_of(circuit) {
        Ok(table) => Some(table.is_bijection()),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(VerificationReport {
        subject: "full adder".into(),
        rows_checked: 8,
        failures,
        bijective,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// All `2^(2n+1)` operand combinations; `n` at most 8.
    Exhaustive,
    /// `trials` vectors drawn from a ChaCha8 generator seeded with `seed`.
    Randomized { trials: usize, seed: u64 },
}

/// Compares the cascade with [`oracle_add`] and checks that every A/B line
/// comes back unchanged.
pub fn verify_rca(
    circuit: &Circuit,
    layout: &AdderLayout,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    layout.check(circuit)?;
    let n = layout.n_bits;
    let operand_mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let vectors: Vec<(u64, u64, bool)> = match mode {
        VerifyMode::Exhaustive => {
            if n > EXHAUSTIVE_RCA_BITS {
                return Err(Error::Capacity {
                    what: "exhaustive ripple-carry verification bits",
                    limit: EXHAUSTIVE_RCA_BITS,
                    requested: n,
                });
            }
            let count = 1u64 << (2 * n + 1);
            (0..count)
                .map(|v| {
                    (
                        v & operand_mask,
                        (v >> n) & operand_mask,
                        (v >> (2 * n)) & 1 == 1,
                    )
                })
                .collect()
        }
        VerifyMode::Randomized { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials)
                .map(|_| {
                    (
                        rng.gen::<u64>() & operand_mask,
                        rng.gen::<u64>() & operand_mask,
                        rng.gen::<bool>(),
                    )
                })
                .collect()
        }
    };

    let read = |out: &BatchState, lines: &[LineId], lane: usize| {
        lines.iter().enumerate().fold(0u64, |acc, (i, &l)| {
            acc | (u64::from(out.bit(l, lane)) << i)
        })
    };

    let mut failures = Vec::new();
    for chunk in vectors.chunks(BatchState::MAX_LANES) {
        let mut batch = BatchState::zeros(circuit.width(), chunk.len())?;
        for (lane, &(a, b, cin)) in chunk.iter().enumerate() {
            batch.set_bit(layout.cin, lane, cin);
            for i in 0..n {
                batch.set_bit(layout.a[i], lane, (a >> i) & 1 == 1);
                batch.set_bit(layout.b[i], lane, (b >> i) & 1 == 1);
            }
        }
        let out = simulate_batch(circuit, &batch)?;
        for (lane, &(a, b, cin)) in chunk.iter().enumerate() {
            let (expected_sum, expected_cout) = oracle_add(a, b, cin, n)?;
            let got = Counterexample {
                a,
                b,
                cin,
                expected_sum,
                expected_cout,
                sum: read(&out, &layout.sum, lane),
                cout: out.bit(layout.cout, lane),
                a_out: read(&out, &layout.a, lane),
                b_out: read(&out, &layout.b, lane),
            };
            if got.sum != expected_sum || got.cout != expected_cout || !got.preserved() {
                failures.push(got);
            }
        }
    }
    Ok(VerificationReport {
        subject: format!("{n}-bit ripple-carry adder"),
        rows_checked: vectors.len(),
        failures,
        bijective: None,
    })
}
