//! Classical basis-state simulation of NCT circuits.
//!
//! Integer encoding of basis states: line 0 is the least significant bit.

use std::fmt;

use crate::circuit::{Circuit, Gate, LineId};
use crate::error::{Error, Result};

/// Default upper bound on the width accepted by [`permutation_of`].
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// One boolean per line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitState(Vec<bool>);

impl BitState {
    pub fn zeros(width: usize) -> Self {
        BitState(vec![false; width])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitState(bits)
    }

    /// Decodes `value` with line 0 as the least significant bit.
    pub fn from_index(value: u64, width: usize) -> Self {
        BitState(
            (0..width)
                .map(|i| i < 64 && (value >> i) & 1 == 1)
                .collect(),
        )
    }

    /// Inverse of [`BitState::from_index`]. Only meaningful for widths up to 64.
    pub fn to_index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .take(64)
            .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, line: LineId) -> bool {
        self.0[line.0]
    }

    pub fn set(&mut self, line: LineId, value: bool) {
        self.0[line.0] = value;
    }

    /// Flips the target iff all controls are set. NOT has no controls, and
    /// the empty conjunction is true.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.0.len())?;
        self.apply_unchecked(gate);
        Ok(())
    }

    #[inline]
    fn apply_unchecked(&mut self, gate: &Gate) {
        if gate.controls().iter().all(|c| self.0[c.0]) {
            let t = gate.target().0;
            self.0[t] = !self.0[t];
        }
    }
}

impl fmt::Display for BitState {
    /// Line 0 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn apply_gate(state: &BitState, gate: &Gate) -> Result<BitState> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

pub fn simulate(circuit: &Circuit, input: &BitState) -> Result<BitState> {
    if input.width() != circuit.width() {
        return Err(Error::structural(format!(
            "state has {} bits, circuit has {} lines",
            input.width(),
            circuit.width()
        )));
    }
    let mut state = input.clone();
    for gate in circuit.gates() {
        state.apply_unchecked(gate);
    }
    Ok(state)
}

/// Runs only the first `prefix` gates.
pub fn simulate_prefix(circuit: &Circuit, input: &BitState, prefix: usize) -> Result<BitState> {
    if input.width() != circuit.width() {
        return Err(Error::structural(format!(
            "state has {} bits, circuit has {} lines",
            input.width(),
            circuit.width()
        )));
    }
    let mut state = input.clone();
    for gate in circuit.gates().iter().take(prefix) {
        state.apply_unchecked(gate);
    }
    Ok(state)
}

type Word = u64;

/// Bit-sliced state: one word per line, lane `j` of every word together
/// forms test vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchState {
    words: Vec<Word>,
    lanes: usize,
}

impl BatchState {
    /// Maximum number of lanes a batch can carry.
    pub const MAX_LANES: usize = Word::BITS as usize;

    pub fn zeros(width: usize, lanes: usize) -> Result<Self> {
        Self::check_lanes(lanes)?;
        Ok(BatchState {
            words: vec![0; width],
            lanes,
        })
    }

    /// Packs scalar states, one per lane. All states must share a width.
    pub fn from_states(states: &[BitState]) -> Result<Self> {
        Self::check_lanes(states.len())?;
        let width = states[0].width();
        let mut words = vec![0 as Word; width];
        for (j, state) in states.iter().enumerate() {
            if state.width() != width {
                return Err(Error::structural("states in a batch must share a width"));
            }
            for (w, &b) in words.iter_mut().zip(state.bits()) {
                *w |= Word::from(b) << j;
            }
        }
        Ok(BatchState {
            words,
            lanes: states.len(),
        })
    }

    /// Lane `j` holds basis state `start + j`.
    pub fn from_index_range(width: usize, start: u64, lanes: usize) -> Result<Self> {
        Self::check_lanes(lanes)?;
        let mut words = vec![0 as Word; width];
        for j in 0..lanes {
            let value = start + j as u64;
            for (i, w) in words.iter_mut().enumerate().take(64) {
                *w |= ((value >> i) & 1) << j;
            }
        }
        Ok(BatchState { words, lanes })
    }

    fn check_lanes(lanes: usize) -> Result<()> {
        if lanes == 0 || lanes > Self::MAX_LANES {
            return Err(Error::structural(format!(
                "batch lane count must be in 1..={}, got {lanes}",
                Self::MAX_LANES
            )));
        }
        Ok(())
    }

    pub fn lanes(&self) -> usize {
        self.lanes
    }

    pub fn width(&self) -> usize {
        self.words.len()
    }

    fn mask(&self) -> Word {
        if self.lanes == Self::MAX_LANES {
            Word::MAX
        } else {
            (1 << self.lanes) - 1
        }
    }

    pub fn word(&self, line: LineId) -> Word {
        self.words[line.0]
    }

    pub fn set_word(&mut self, line: LineId, word: Word) {
        let mask = self.mask();
        self.words[line.0] = word & mask;
    }

    pub fn bit(&self, line: LineId, lane: usize) -> bool {
        (self.words[line.0] >> lane) & 1 == 1
    }

    pub fn set_bit(&mut self, line: LineId, lane: usize, value: bool) {
        let w = &mut self.words[line.0];
        *w = (*w & !(1 << lane)) | (Word::from(value) << lane);
    }

    pub fn lane(&self, lane: usize) -> BitState {
        BitState(self.words.iter().map(|w| (w >> lane) & 1 == 1).collect())
    }

    /// Basis-state index of `lane` (line 0 least significant).
    pub fn lane_index(&self, lane: usize) -> u64 {
        self.words
            .iter()
            .enumerate()
            .take(64)
            .fold(0, |acc, (i, w)| acc | (((w >> lane) & 1) << i))
    }

    #[inline]
    fn apply_unchecked(&mut self, gate: &Gate, mask: Word) {
        let cond = gate
            .controls()
            .iter()
            .fold(mask, |acc, c| acc & self.words[c.0]);
        self.words[gate.target().0] ^= cond;
    }
}

pub fn simulate_batch(circuit: &Circuit, batch: &BatchState) -> Result<BatchState> {
    if batch.width() != circuit.width() {
        return Err(Error::structural(format!(
            "batch has {} lines, circuit has {}",
            batch.width(),
            circuit.width()
        )));
    }
    let mut out = batch.clone();
    let mask = out.mask();
    for gate in circuit.gates() {
        out.apply_unchecked(gate, mask);
    }
    Ok(out)
}

/// The basis-state map of a circuit, `entries[x] = simulate(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTable {
    width: usize,
    entries: Vec<u64>,
}

impl PermutationTable {
    pub fn from_entries(entries: Vec<u64>) -> Self {
        let width = entries.len().max(1).trailing_zeros() as usize;
        PermutationTable { width, entries }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_bijection(&self) -> bool {
        is_bijection(self)
    }
}

pub fn permutation_of(circuit: &Circuit) -> Result<PermutationTable> {
    permutation_of_with_limit(circuit, EXHAUSTIVE_LIMIT)
}

pub fn permutation_of_with_limit(circuit: &Circuit, limit: usize) -> Result<PermutationTable> {
    let width = circuit.width();
    if width > limit {
        return Err(Error::Capacity {
            what: "exhaustive enumeration width",
            limit,
            requested: width,
        });
    }
    let total = 1u64 << width;
    let mut entries = Vec::with_capacity(total as usize);
    let mut start = 0u64;
    while start < total {
        let lanes = (total - start).min(BatchState::MAX_LANES as u64) as usize;
        let batch = BatchState::from_index_range(width, start, lanes)?;
        let out = simulate_batch(circuit, &batch)?;
        entries.extend((0..lanes).map(|j| out.lane_index(j)));
        start += lanes as u64;
    }
    Ok(PermutationTable { width, entries })
}

/// True iff every value in `0..len` occurs exactly once.
pub fn is_bijection(table: &PermutationTable) -> bool {
    let n = table.entries.len();
    let mut seen = vec![false; n];
    for &e in &table.entries {
        let Ok(e) = usize::try_from(e) else {
            return false;
        };
        if e >= n || seen[e] {
            return false;
        }
        seen[e] = true;
    }
    true
}
