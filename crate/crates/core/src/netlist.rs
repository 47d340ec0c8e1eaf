//! Line-oriented netlist text format.
//!
//! ```text
//! lines 4              # width, first statement
//! input 0 Cin          # role declarations
//! ancilla 3
//! cnot 2 0             # gates in program order
//! toffoli 0 1 3
//! output 0 Sum         # output labels
//! layout adder 1       # optional verification layout
//! ```
//!
//! `#` starts a comment. Lines without a declared role default to an input
//! named `q<index>`. Besides `layout adder <n>` (the canonical cascade
//! layout) the format accepts `layout fulladder <cin> <a> <b> <ancilla>`
//! for one-bit adders with any line order.

use std::fmt::Write as _;

use crate::adders::{AdderLayout, FullAdderSpec};
use crate::circuit::{check_name, Circuit, Gate, LineId, LineRole, LineSource};
use crate::error::{Error, Result};

/// Verification layout attached to a netlist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Layout {
    Adder(AdderLayout),
    FullAdder(FullAdderSpec),
}

impl Layout {
    pub fn check(&self, circuit: &Circuit) -> Result<()> {
        match self {
            Layout::Adder(l) => l.check(circuit),
            Layout::FullAdder(spec) => spec.check(circuit),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Parser {
    width: Option<usize>,
    roles: Vec<Option<LineSource>>,
    outputs: Vec<Option<String>>,
    gates: Vec<Gate>,
    layout: Option<(Layout, usize)>,
}

impl Parser {
    fn width(&self, line: usize) -> Result<usize> {
        self.width
            .ok_or_else(|| parse_err(line, "`lines <w>` must come before other statements"))
    }

    fn index(&self, token: &str, line: usize) -> Result<usize> {
        let width = self.width(line)?;
        let idx: usize = token
            .parse()
            .map_err(|_| parse_err(line, format!("expected a line index, found {token:?}")))?;
        if idx >= width {
            return Err(parse_err(
                line,
                format!("line index {idx} out of range for width {width}"),
            ));
        }
        Ok(idx)
    }

    fn statement(&mut self, tokens: &[&str], line: usize) -> Result<()> {
        let arity = |n: usize| {
            if tokens.len() == n + 1 {
                Ok(())
            } else {
                Err(parse_err(
                    line,
                    format!(
                        "`{}` takes {n} argument(s), found {}",
                        tokens[0],
                        tokens.len() - 1
                    ),
                ))
            }
        };
        match tokens[0] {
            "lines" => {
                arity(1)?;
                if self.width.is_some() {
                    return Err(parse_err(line, "width declared twice"));
                }
                let w: usize = tokens[1]
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid width {:?}", tokens[1])))?;
                if w == 0 {
                    return Err(parse_err(line, "width must be at least 1"));
                }
                self.width = Some(w);
                self.roles = vec![None; w];
                self.outputs = vec![None; w];
            }
            "input" => {
                arity(2)?;
                let idx = self.index(tokens[1], line)?;
                check_name(tokens[2]).map_err(|e| parse_err(line, e.to_string()))?;
                self.declare(idx, LineSource::Input(tokens[2].to_string()), line)?;
            }
            "ancilla" => {
                if tokens.len() == 3 {
                    if tokens[2] != "0" {
                        return Err(parse_err(
                            line,
                            format!("ancilla lines start at constant 0, found {:?}", tokens[2]),
                        ));
                    }
                } else {
                    arity(1)?;
                }
                let idx = self.index(tokens[1], line)?;
                self.declare(idx, LineSource::Ancilla, line)?;
            }
            "output" => {
                arity(2)?;
                let idx = self.index(tokens[1], line)?;
                check_name(tokens[2]).map_err(|e| parse_err(line, e.to_string()))?;
                if self.outputs[idx].is_some() {
                    return Err(parse_err(
                        line,
                        format!("output of line {idx} labeled twice"),
                    ));
                }
                self.outputs[idx] = Some(tokens[2].to_string());
            }
            kind @ ("not" | "cnot" | "toffoli") => {
                arity(match kind {
                    "not" => 1,
                    "cnot" => 2,
                    _ => 3,
                })?;
                let lines = tokens[1..]
                    .iter()
                    .map(|t| self.index(t, line))
                    .collect::<Result<Vec<_>>>()?;
                let (target, controls) = lines.split_last().expect("arity checked");
                let gate = Gate::from_controls(controls, *target)
                    .map_err(|e| parse_err(line, e.to_string()))?;
                self.gates.push(gate);
            }
            "layout" => {
                self.width(line)?;
                if self.layout.is_some() {
                    return Err(parse_err(line, "layout declared twice"));
                }
                let layout = match tokens.get(1).copied() {
                    Some("adder") => {
                        arity(2)?;
                        let n: usize = tokens[2].parse().map_err(|_| {
                            parse_err(line, format!("invalid bit count {:?}", tokens[2]))
                        })?;
                        Layout::Adder(
                            AdderLayout::canonical(n)
                                .map_err(|e| parse_err(line, e.to_string()))?,
                        )
                    }
                    Some("fulladder") => {
                        arity(5)?;
                        let l = |k: usize| self.index(tokens[k], line).map(LineId);
                        Layout::FullAdder(FullAdderSpec {
                            cin: l(2)?,
                            a: l(3)?,
                            b: l(4)?,
                            ancilla: l(5)?,
                        })
                    }
                    other => {
                        return Err(parse_err(
                            line,
                            format!("unknown layout kind {:?}", other.unwrap_or("")),
                        ))
                    }
                };
                self.layout = Some((layout, line));
            }
            other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
        }
        Ok(())
    }

    fn declare(&mut self, idx: usize, source: LineSource, line: usize) -> Result<()> {
        if self.roles[idx].is_some() {
            return Err(parse_err(
                line,
                format!("role of line {idx} declared twice"),
            ));
        }
        self.roles[idx] = Some(source);
        Ok(())
    }
}

pub fn parse_netlist(text: &str) -> Result<(Circuit, Option<Layout>)> {
    let mut p = Parser {
        width: None,
        roles: Vec::new(),
        outputs: Vec::new(),
        gates: Vec::new(),
        layout: None,
    };
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        p.statement(&tokens, i + 1)?;
    }
    let width = p
        .width
        .ok_or_else(|| parse_err(last_line.max(1), "missing `lines <w>` statement"))?;

    let roles = p
        .roles
        .into_iter()
        .zip(p.outputs)
        .enumerate()
        .map(|(i, (source, output))| LineRole {
            source: source.unwrap_or_else(|| LineSource::Input(format!("q{i}"))),
            output,
        })
        .collect();
    let mut circuit = Circuit::new(width, roles).map_err(|e| parse_err(1, e.to_string()))?;
    for gate in p.gates {
        circuit.push(gate)?;
    }
    let layout = match p.layout {
        Some((layout, line)) => {
            layout
                .check(&circuit)
                .map_err(|e| parse_err(line, e.to_string()))?;
            Some(layout)
        }
        None => None,
    };
    Ok((circuit, layout))
}

/// Canonical text: roles by ascending line, gates in program order with
/// Toffoli controls ascending, output labels, then the layout.
pub fn serialize_netlist(circuit: &Circuit, layout: Option<&Layout>) -> String {
    let mut out = String::new();
    writeln!(out, "lines {}", circuit.width()).unwrap();
    for (i, role) in circuit.roles().iter().enumerate() {
        match &role.source {
            LineSource::Input(name) => writeln!(out, "input {i} {name}").unwrap(),
            LineSource::Ancilla => writeln!(out, "ancilla {i}").unwrap(),
        }
    }
    for gate in circuit.gates() {
        out.push_str(gate.kind().name());
        let mut controls: Vec<LineId> = gate.controls().to_vec();
        controls.sort();
        for l in controls.into_iter().chain(std::iter::once(gate.target())) {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    for (i, role) in circuit.roles().iter().enumerate() {
        if let Some(label) = &role.output {
            writeln!(out, "output {i} {label}").unwrap();
        }
    }
    match layout {
        Some(Layout::Adder(l)) => writeln!(out, "layout adder {}", l.n_bits).unwrap(),
        Some(Layout::FullAdder(s)) => writeln!(
            out,
            "layout fulladder {} {} {} {}",
            s.cin, s.a, s.b, s.ancilla
        )
        .unwrap(),
        None => {}
    }
    out
}
