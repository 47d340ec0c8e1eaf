//! Gate counts, quantum cost and logical depth.
//!
//! Two gates conflict when the target of either one is used (as control or
//! target) by the other. Gates that only share controls may run in the same
//! time step. Depth is the length of the longest conflict chain, and the
//! scheduler places every gate as early as that chain allows.

use std::fmt;

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::sim::BitState;

/// Per-gate cost in the NCT library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostModel {
    pub not: u64,
    pub cnot: u64,
    pub toffoli: u64,
}

impl CostModel {
    /// NOT = 1, CNOT = 1, Toffoli = 5.
    pub const NCT: CostModel = CostModel {
        not: 1,
        cnot: 1,
        toffoli: 5,
    };

    pub fn cost(&self, kind: GateKind) -> u64 {
        match kind {
            GateKind::Not => self.not,
            GateKind::Cnot => self.cnot,
            GateKind::Toffoli => self.toffoli,
        }
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::NCT
    }
}

pub fn quantum_cost(circuit: &Circuit, model: &CostModel) -> u64 {
    circuit.gates().iter().map(|g| model.cost(g.kind())).sum()
}

/// Time steps of gate indices (0-based into the circuit's gate list).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Schedule {
    timesteps: Vec<Vec<usize>>,
}

impl Schedule {
    pub fn from_timesteps(timesteps: Vec<Vec<usize>>) -> Self {
        Schedule { timesteps }
    }

    pub fn timesteps(&self) -> &[Vec<usize>] {
        &self.timesteps
    }

    pub fn depth(&self) -> usize {
        self.timesteps.iter().filter(|t| !t.is_empty()).count()
    }

    /// Checks placement of every gate exactly once, pairwise compatibility
    /// inside each step, and that conflicting gates keep program order.
    pub fn validate(&self, circuit: &Circuit) -> Result<()> {
        let n = circuit.len();
        let mut step_of = vec![usize::MAX; n];
        for (s, step) in self.timesteps.iter().enumerate() {
            for &g in step {
                if g >= n {
                    return Err(Error::structural(format!("schedule names gate {g} of {n}")));
                }
                if step_of[g] != usize::MAX {
                    return Err(Error::structural(format!("gate {g} scheduled twice")));
                }
                step_of[g] = s;
            }
        }
        if let Some(g) = step_of.iter().position(|&s| s == usize::MAX) {
            return Err(Error::structural(format!("gate {g} is not scheduled")));
        }
        let gates = circuit.gates();
        for h in 0..n {
            for g in 0..h {
                if conflicts(&gates[g], &gates[h]) && step_of[g] >= step_of[h] {
                    return Err(Error::structural(format!(
                        "gates {g} and {h} conflict but are not ordered by the schedule"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Runs the circuit step by step, applying the gates of each step in the
    /// order given by `order` (a permutation of the step's entries).
    pub fn execute_with<F>(
        &self,
        circuit: &Circuit,
        input: &BitState,
        mut order: F,
    ) -> Result<BitState>
    where
        F: FnMut(&mut Vec<usize>),
    {
        let mut state = input.clone();
        for step in &self.timesteps {
            let mut step = step.clone();
            order(&mut step);
            for g in step {
                state.apply(&circuit.gates()[g])?;
            }
        }
        Ok(state)
    }
}

/// Whether the two gates may not share a time step.
pub fn conflicts(a: &crate::circuit::Gate, b: &crate::circuit::Gate) -> bool {
    b.touches(a.target()) || a.touches(b.target())
}

/// ASAP depth with its witness schedule.
pub fn logical_depth(circuit: &Circuit) -> (usize, Schedule) {
    let width = circuit.width();
    // Deepest step so far that used a line in any role, and as a target.
    let mut used = vec![0usize; width];
    let mut written = vec![0usize; width];
    let mut timesteps: Vec<Vec<usize>> = Vec::new();

    for (index, gate) in circuit.gates().iter().enumerate() {
        let target = gate.target().index();
        let after = gate
            .support()
            .map(|l| written[l.index()])
            .fold(used[target], usize::max);
        let step = after + 1;
        for l in gate.support() {
            used[l.index()] = used[l.index()].max(step);
        }
        written[target] = step;
        if timesteps.len() < step {
            timesteps.resize_with(step, Vec::new);
        }
        timesteps[step - 1].push(index);
    }
    (timesteps.len(), Schedule { timesteps })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetricsReport {
    pub gate_count: usize,
    pub not_count: usize,
    pub cnot_count: usize,
    pub toffoli_count: usize,
    pub quantum_cost: u64,
    pub logical_depth: usize,
    pub schedule: Schedule,
}

pub fn analyze(circuit: &Circuit, model: &CostModel) -> MetricsReport {
    let count = |kind| circuit.gates().iter().filter(|g| g.kind() == kind).count();
    let (logical_depth, schedule) = logical_depth(circuit);
    MetricsReport {
        gate_count: circuit.len(),
        not_count: count(GateKind::Not),
        cnot_count: count(GateKind::Cnot),
        toffoli_count: count(GateKind::Toffoli),
        quantum_cost: quantum_cost(circuit, model),
        logical_depth,
        schedule,
    }
}

impl MetricsReport {
    /// Human-readable listing, time steps numbered from 1 and gates from G1.
    pub fn render(&self, circuit: &Circuit) -> String {
        let mut out = String::new();
        out.push_str(&format!("gates: {}\n", self.gate_count));
        out.push_str(&format!("not: {}\n", self.not_count));
        out.push_str(&format!("cnot: {}\n", self.cnot_count));
        out.push_str(&format!("toffoli: {}\n", self.toffoli_count));
        out.push_str(&format!("quantum cost: {}\n", self.quantum_cost));
        out.push_str(&format!("logical depth: {}\n", self.logical_depth));
        out.push_str("schedule:\n");
        for (s, step) in self.schedule.timesteps().iter().enumerate() {
            let gates: Vec<String> = step
                .iter()
                .map(|&g| format!("G{} {}", g + 1, netlist_form(&circuit.gates()[g])))
                .collect();
            out.push_str(&format!("  T{}: {}\n", s + 1, gates.join(", ")));
        }
        out
    }
}

fn netlist_form(gate: &crate::circuit::Gate) -> String {
    let mut s = gate.kind().name().to_string();
    for l in gate.support() {
        s.push(' ');
        s.push_str(&l.to_string());
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Measured on a netlist by this crate.
    Computed,
    /// Copied from published figures.
    Literature,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::Literature => "literature",
        })
    }
}

/// One table row. Literature rows may leave fields unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComparisonRow {
    pub name: String,
    pub provenance: Provenance,
    pub gates: Option<usize>,
    pub toffoli: Option<usize>,
    pub cnot: Option<usize>,
    pub not: Option<usize>,
    pub qc: Option<u64>,
    pub depth: Option<usize>,
}

impl ComparisonRow {
    pub fn computed(name: impl Into<String>, report: &MetricsReport) -> Self {
        ComparisonRow {
            name: name.into(),
            provenance: Provenance::Computed,
            gates: Some(report.gate_count),
            toffoli: Some(report.toffoli_count),
            cnot: Some(report.cnot_count),
            not: Some(report.not_count),
            qc: Some(report.quantum_cost),
            depth: Some(report.logical_depth),
        }
    }

    pub fn literature(
        name: impl Into<String>,
        gates: usize,
        toffoli: usize,
        qc: u64,
        depth: usize,
    ) -> Self {
        ComparisonRow {
            name: name.into(),
            provenance: Provenance::Literature,
            gates: Some(gates),
            toffoli: Some(toffoli),
            cnot: None,
            not: None,
            qc: Some(qc),
            depth: Some(depth),
        }
    }

    fn fields(&self) -> [(&'static str, Option<u64>); 6] {
        [
            ("gates", self.gates.map(|v| v as u64)),
            ("toffoli", self.toffoli.map(|v| v as u64)),
            ("cnot", self.cnot.map(|v| v as u64)),
            ("not", self.not.map(|v| v as u64)),
            ("qc", self.qc),
            ("depth", self.depth.map(|v| v as u64)),
        ]
    }
}

/// Published figures for the input-preserving full adders.
pub fn published_rows() -> Vec<ComparisonRow> {
    vec![
        ComparisonRow::literature("PPKN", 6, 1, 10, 4),
        ComparisonRow::literature("HNG", 5, 2, 12, 5),
        ComparisonRow::literature("TSG", 6, 2, 14, 6),
    ]
}

/// A metric on which a computed row disagrees with the literature row of
/// the same name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Discrepancy {
    pub name: String,
    pub metric: &'static str,
    pub computed: u64,
    pub published: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcReduction {
    pub provenance: Provenance,
    pub baseline: u64,
    pub candidate: u64,
}

impl QcReduction {
    pub fn ratio(&self) -> f64 {
        (self.baseline as f64 - self.candidate as f64) / self.baseline as f64
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.ratio()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    pub discrepancies: Vec<Discrepancy>,
    /// PPKN against HNG, from published and from computed figures when
    /// both rows are present.
    pub reductions: Vec<QcReduction>,
}

pub const CSV_HEADER: &str = "name,provenance,gates,toffoli,cnot,not,qc,depth";

/// Merges computed reports with literature rows. Computed rows come first,
/// in the given order. A computed row is checked field by field against the
/// literature row sharing its name.
pub fn compare_report(
    reports: &[(String, MetricsReport)],
    literature: &[ComparisonRow],
) -> Result<ComparisonTable> {
    if reports.is_empty() {
        return Err(Error::usage(
            "comparison needs at least one computed report",
        ));
    }
    let mut rows: Vec<ComparisonRow> = reports
        .iter()
        .map(|(name, r)| ComparisonRow::computed(name.clone(), r))
        .collect();

    let mut discrepancies = Vec::new();
    for computed in &rows {
        let Some(published) = literature.iter().find(|l| l.name == computed.name) else {
            continue;
        };
        for ((metric, c), (_, p)) in computed.fields().into_iter().zip(published.fields()) {
            if let (Some(c), Some(p)) = (c, p) {
                if c != p {
                    discrepancies.push(Discrepancy {
                        name: computed.name.clone(),
                        metric,
                        computed: c,
                        published: p,
                    });
                }
            }
        }
    }
    rows.extend(literature.iter().map(|row| ComparisonRow {
        provenance: Provenance::Literature,
        ..row.clone()
    }));

    let qc_of = |name: &str, provenance| {
        rows.iter()
            .find(|r| r.name == name && r.provenance == provenance)
            .and_then(|r| r.qc)
    };
    let reductions = [Provenance::Literature, Provenance::Computed]
        .into_iter()
        .filter_map(|provenance| {
            let baseline = qc_of("HNG", provenance)?;
            let candidate = qc_of("PPKN", provenance)?;
            (baseline > 0).then_some(QcReduction {
                provenance,
                baseline,
                candidate,
            })
        })
        .collect();

    Ok(ComparisonTable {
        rows,
        discrepancies,
        reductions,
    })
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl ComparisonTable {
    pub fn is_flagged(&self, name: &str, metric: &str) -> bool {
        self.discrepancies
            .iter()
            .any(|d| d.name == name && d.metric == metric)
    }

    pub fn row(&self, name: &str, provenance: Provenance) -> Option<&ComparisonRow> {
        self.rows
            .iter()
            .find(|r| r.name == name && r.provenance == provenance)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.name,
                r.provenance,
                cell(r.gates),
                cell(r.toffoli),
                cell(r.cnot),
                cell(r.not),
                cell(r.qc),
                cell(r.depth)
            ));
        }
        out
    }

    pub fn render(&self) -> String {
        let headers = [
            "name",
            "provenance",
            "gates",
            "toffoli",
            "cnot",
            "not",
            "qc",
            "depth",
        ];
        let body: Vec<[String; 8]> = self
            .rows
            .iter()
            .map(|r| {
                let dash = |s: String| if s.is_empty() { "-".to_string() } else { s };
                [
                    r.name.clone(),
                    r.provenance.to_string(),
                    dash(cell(r.gates)),
                    dash(cell(r.toffoli)),
                    dash(cell(r.cnot)),
                    dash(cell(r.not)),
                    dash(cell(r.qc)),
                    dash(cell(r.depth)),
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            format!("{}\n", padded.join("  ").trim_end())
        };

        let mut out = line(headers.to_vec());
        for row in &body {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out.push('\n');
        if self.discrepancies.is_empty() {
            out.push_str("discrepancies: none\n");
        } else {
            out.push_str("discrepancies:\n");
            for d in &self.discrepancies {
                out.push_str(&format!(
                    "  FLAG {} {}: computed {} vs published {}\n",
                    d.name, d.metric, d.computed, d.published
                ));
            }
        }
        for r in &self.reductions {
            out.push_str(&format!(
                "QC reduction PPKN vs HNG ({}): ({} - {}) / {} = {:.1}% (~{:.0}%)\n",
                r.provenance,
                r.baseline,
                r.candidate,
                r.baseline,
                r.percent(),
                r.percent()
            ));
        }
        out
    }
}
