//! Circuit intermediate representation: lines, NCT gates and circuits.
//!
//! Line 0 is the topmost wire. Every gate in the NCT library is its own
//! inverse, which makes [`Circuit::inverse`] a reversal of the gate list.

use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{Error, Result};

/// Position of a wire in a circuit, 0-based from the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub usize);

impl LineId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for LineId {
    fn from(index: usize) -> Self {
        LineId(index)
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
}

impl GateKind {
    pub fn control_count(self) -> usize {
        match self {
            GateKind::Not => 0,
            GateKind::Cnot => 1,
            GateKind::Toffoli => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "not",
            GateKind::Cnot => "cnot",
            GateKind::Toffoli => "toffoli",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One NCT gate: the target is flipped iff every control is 1.
///
/// Toffoli controls form a set. The constructors store them in ascending
/// order and equality ignores the order they were given in.
#[derive(Debug, Clone, Copy)]
pub enum Gate {
    Not {
        target: LineId,
    },
    Cnot {
        control: LineId,
        target: LineId,
    },
    Toffoli {
        controls: [LineId; 2],
        target: LineId,
    },
}

impl Gate {
    pub fn not(target: usize) -> Self {
        Gate::Not {
            target: LineId(target),
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot {
            control: LineId(control),
            target: LineId(target),
        }
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        Gate::Toffoli {
            controls: [LineId(lo), LineId(hi)],
            target: LineId(target),
        }
    }

    /// Builds a gate from a control list, picking the kind by its length.
    /// More than two controls is rejected.
    pub fn from_controls(controls: &[usize], target: usize) -> Result<Self> {
        let gate = match *controls {
            [] => Gate::not(target),
            [c] => Gate::cnot(c, target),
            [c1, c2] => Gate::toffoli(c1, c2, target),
            _ => {
                return Err(Error::structural(format!(
                    "{} controls given; only NOT, CNOT and 2-control Toffoli are supported",
                    controls.len()
                )))
            }
        };
        gate.check_distinct()?;
        Ok(gate)
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Not { .. } => GateKind::Not,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Toffoli { .. } => GateKind::Toffoli,
        }
    }

    pub fn target(&self) -> LineId {
        match *self {
            Gate::Not { target } | Gate::Cnot { target, .. } | Gate::Toffoli { target, .. } => {
                target
            }
        }
    }

    pub fn controls(&self) -> &[LineId] {
        match self {
            Gate::Not { .. } => &[],
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Toffoli { controls, .. } => controls,
        }
    }

    /// Controls followed by the target.
    pub fn support(&self) -> impl Iterator<Item = LineId> + '_ {
        self.controls()
            .iter()
            .copied()
            .chain(std::iter::once(self.target()))
    }

    pub fn touches(&self, line: LineId) -> bool {
        self.support().any(|l| l == line)
    }

    /// Largest line index the gate refers to.
    pub fn max_line(&self) -> usize {
        self.support().map(LineId::index).max().unwrap_or(0)
    }

    fn sorted_controls(&self) -> ([usize; 2], usize) {
        match *self {
            Gate::Not { .. } => ([usize::MAX; 2], 0),
            Gate::Cnot { control, .. } => ([control.0, usize::MAX], 1),
            Gate::Toffoli {
                controls: [a, b], ..
            } => ([a.0.min(b.0), a.0.max(b.0)], 2),
        }
    }

    pub(crate) fn check_distinct(&self) -> Result<()> {
        let lines: Vec<LineId> = self.support().collect();
        for (i, a) in lines.iter().enumerate() {
            if lines[i + 1..].contains(a) {
                return Err(Error::structural(format!(
                    "gate {self} uses line {a} more than once"
                )));
            }
        }
        Ok(())
    }

    /// Checks distinctness of lines and that all lines are below `width`.
    pub fn validate(&self, width: usize) -> Result<()> {
        self.check_distinct()?;
        if let Some(bad) = self.support().find(|l| l.0 >= width) {
            return Err(Error::structural(format!(
                "gate {self} refers to line {bad}, circuit width is {width}"
            )));
        }
        Ok(())
    }
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        self.kind() == other.kind()
            && self.target() == other.target()
            && self.sorted_controls() == other.sorted_controls()
    }
}

impl Eq for Gate {}

impl Hash for Gate {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind().hash(state);
        self.target().hash(state);
        self.sorted_controls().hash(state);
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind())?;
        for c in self.controls() {
            write!(f, "{c}, ")?;
        }
        write!(f, "->{})", self.target())
    }
}

/// Where a line's initial value comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LineSource {
    /// A named circuit input.
    Input(String),
    /// A helper line whose initial value is the constant 0.
    Ancilla,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineRole {
    pub source: LineSource,
    pub output: Option<String>,
}

impl LineRole {
    pub fn input(name: impl Into<String>) -> Self {
        LineRole {
            source: LineSource::Input(name.into()),
            output: None,
        }
    }

    pub fn ancilla() -> Self {
        LineRole {
            source: LineSource::Ancilla,
            output: None,
        }
    }

    pub fn with_output(mut self, label: impl Into<String>) -> Self {
        self.output = Some(label.into());
        self
    }

    pub fn is_ancilla(&self) -> bool {
        matches!(self.source, LineSource::Ancilla)
    }

    pub fn input_name(&self) -> Option<&str> {
        match &self.source {
            LineSource::Input(name) => Some(name),
            LineSource::Ancilla => None,
        }
    }
}

/// Names travel through the line-oriented netlist format, so they must be a
/// single non-empty token.
pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::structural(format!(
            "invalid name {name:?}: names must be non-empty and contain no whitespace or '#'"
        )));
    }
    Ok(())
}

/// An ordered NCT gate list over `width` lines, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    roles: Vec<LineRole>,
}

impl Circuit {
    pub fn new(width: usize, roles: Vec<LineRole>) -> Result<Self> {
        if width == 0 {
            return Err(Error::structural("circuit width must be at least 1"));
        }
        if roles.len() != width {
            return Err(Error::structural(format!(
                "width is {width} but {} line roles were given",
                roles.len()
            )));
        }
        for role in &roles {
            if let Some(name) = role.input_name() {
                check_name(name)?;
            }
            if let Some(label) = &role.output {
                check_name(label)?;
            }
        }
        Ok(Circuit {
            width,
            gates: Vec::new(),
            roles,
        })
    }

    /// A circuit whose lines are all inputs named `x0, x1, ...`.
    pub fn with_inputs(width: usize) -> Result<Self> {
        let roles = (0..width)
            .map(|i| LineRole::input(format!("x{i}")))
            .collect();
        Circuit::new(width, roles)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn roles(&self) -> &[LineRole] {
        &self.roles
    }

    pub fn role(&self, line: LineId) -> Option<&LineRole> {
        self.roles.get(line.0)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends `gate`, consuming and returning the circuit.
    pub fn append_gate(mut self, gate: Gate) -> Result<Self> {
        self.push(gate)?;
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for gate in gates {
            self.push(gate)?;
        }
        Ok(())
    }

    pub fn set_output(&mut self, line: LineId, label: impl Into<String>) -> Result<()> {
        let label = label.into();
        check_name(&label)?;
        let width = self.width;
        let role = self.roles.get_mut(line.0).ok_or_else(|| {
            Error::structural(format!("line {line} is out of range for width {width}"))
        })?;
        role.output = Some(label);
        Ok(())
    }

    /// Copy of this circuit with gate `index` removed.
    pub fn without_gate(&self, index: usize) -> Result<Circuit> {
        if index >= self.gates.len() {
            return Err(Error::usage(format!(
                "gate index {index} out of range for {} gates",
                self.gates.len()
            )));
        }
        let mut out = self.clone();
        out.gates.remove(index);
        Ok(out)
    }

    /// The reversed gate list. Since NCT gates are self-inverse, running a
    /// circuit and then its inverse is the identity.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().copied().collect(),
            roles: self.roles.clone(),
        }
    }

    /// Uniformly random valid NCT circuit with input-only line roles.
    /// Gate kinds that need more lines than `width` provides are skipped.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, width: usize, gate_count: usize) -> Result<Self> {
        let mut circuit = Circuit::with_inputs(width)?;
        let max_kind = width.min(3);
        for _ in 0..gate_count {
            let arity = rng.gen_range(1..=max_kind);
            let lines = rand::seq::index::sample(rng, width, arity).into_vec();
            let gate = Gate::from_controls(&lines[1..], lines[0])?;
            circuit.push(gate)?;
        }
        Ok(circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adder_roles() -> Vec<LineRole> {
        vec![
            LineRole::input("Cin"),
            LineRole::input("A"),
            LineRole::input("B"),
            LineRole::ancilla(),
        ]
    }

    #[test]
    fn new_circuit_cases() {
        let c = Circuit::new(4, adder_roles()).unwrap();
        assert_eq!(c.width(), 4);
        assert!(c.is_empty());
        assert!(c.roles()[3].is_ancilla());

        let c = Circuit::new(1, vec![LineRole::input("x")]).unwrap();
        assert_eq!(c.width(), 1);

        assert!(matches!(Circuit::new(0, vec![]), Err(Error::Structural(_))));
        assert!(matches!(
            Circuit::new(3, adder_roles()),
            Err(Error::Structural(_))
        ));
        assert!(Circuit::new(1, vec![LineRole::input("a b")]).is_err());
    }

    #[test]
    fn append_gate_cases() {
        let c = Circuit::new(4, adder_roles()).unwrap();
        let c = c.append_gate(Gate::cnot(2, 0)).unwrap();
        assert_eq!(c.len(), 1);

        let err = c.clone().append_gate(Gate::toffoli(0, 1, 1)).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        let err = c.append_gate(Gate::cnot(5, 0)).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn toffoli_controls_are_a_set() {
        let a = Gate::toffoli(0, 1, 3);
        let b = Gate::toffoli(1, 0, 3);
        assert_eq!(a, b);
        assert_eq!(a.controls(), &[LineId(0), LineId(1)]);
        // Hand-built with reversed slots still compares equal.
        let raw = Gate::Toffoli {
            controls: [LineId(1), LineId(0)],
            target: LineId(3),
        };
        assert_eq!(raw, a);
        assert_ne!(Gate::cnot(0, 1), Gate::cnot(1, 0));
    }

    #[test]
    fn from_controls_rejects_wide_gates() {
        assert!(matches!(
            Gate::from_controls(&[0, 1, 2], 3),
            Err(Error::Structural(_))
        ));
        assert!(Gate::from_controls(&[1, 1], 2).is_err());
        assert_eq!(Gate::from_controls(&[], 2).unwrap(), Gate::not(2));
    }

    #[test]
    fn inverse_reverses_gates() {
        let empty = Circuit::with_inputs(3).unwrap();
        assert!(empty.inverse().is_empty());

        let single = Circuit::with_inputs(3)
            .unwrap()
            .append_gate(Gate::cnot(2, 0))
            .unwrap();
        assert_eq!(single.inverse(), single);

        let mut c = Circuit::with_inputs(3).unwrap();
        c.extend([Gate::not(0), Gate::cnot(0, 1), Gate::toffoli(0, 1, 2)])
            .unwrap();
        let inv = c.inverse();
        assert_eq!(inv.gates()[0], Gate::toffoli(0, 1, 2));
        assert_eq!(inv.gates()[2], Gate::not(0));
    }

    #[test]
    fn random_circuits_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for width in 1..6 {
            let c = Circuit::random(&mut rng, width, 40).unwrap();
            assert_eq!(c.len(), 40);
            for g in c.gates() {
                g.validate(width).unwrap();
            }
        }
    }
}
