// Copyright contributors to the globalqec project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::{Circuit, Op};
use crate::error::{Error, Result};
use crate::model::{ChainLayout, CostModel, InstructionKind, PulseProgram, RestoreKind, TargetOp};
use crate::qsim::{Control, Gate, OneQubitKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Encoding,
    SyndromeRecovery,
    Other,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Encoding => "encoding",
            Phase::SyndromeRecovery => "syndrome_recovery",
            Phase::Other => "other",
        })
    }
}

/// Pulses charged to one circuit operation. Travel into the operation and,
/// for the last gate of a control block, the closing walk are included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCost {
    pub phase: Phase,
    pub index: usize,
    pub op: String,
    pub approach_pulses: u64,
    pub operation_pulses: u64,
    pub pulses: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompilationReport {
    pub encoding_pulses: u64,
    pub syndrome_recovery_pulses: u64,
    pub other_pulses: u64,
    pub total_pulses: u64,
    pub breakdown: Vec<GateCost>,
    /// Slots visited by the CU, starting with its initial slot.
    pub cu_path: Vec<usize>,
    /// Approach cost to return the CU to its initial slot. Not part of
    /// `total_pulses`.
    pub rest_travel: u64,
}

impl CompilationReport {
    pub fn phase_pulses(&self, phase: Phase) -> u64 {
        match phase {
            Phase::Encoding => self.encoding_pulses,
            Phase::SyndromeRecovery => self.syndrome_recovery_pulses,
            Phase::Other => self.other_pulses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    pub program: PulseProgram,
    pub report: CompilationReport,
}

pub fn compile(circuit: &Circuit, layout: &ChainLayout, model: &CostModel) -> Result<Compiled> {
    compile_phases(&[(Phase::Other, circuit)], layout, model, None)
}

/// Compiles several circuits back to back with one CU, charging each
/// circuit's pulses to its phase. `start` is the CU's initial slot; `None`
/// places it next to the first site the program visits.
pub fn compile_phases(
    parts: &[(Phase, &Circuit)],
    layout: &ChainLayout,
    model: &CostModel,
    start: Option<usize>,
) -> Result<Compiled> {
    layout.validate()?;
    model.validate()?;
    let chain = layout.global_slot(layout.num_blocks - 1, layout.block_size_qubits);
    for (_, c) in parts {
        if c.span() > chain {
            return Err(Error::InvalidLayout(format!(
                "circuit spans {} slots, chain holds {chain}",
                c.span()
            )));
        }
    }
    let mut lw = Lowering::new(model, start);
    for (phase, circuit) in parts {
        for (index, op) in circuit.ops().iter().enumerate() {
            lw.lower(*phase, index, op, circuit)?;
        }
        lw.close_block();
    }
    Ok(lw.finish())
}

struct OpenBlock {
    key: Vec<Control>,
    /// Control slots in visiting order.
    path: Vec<usize>,
    /// Slots of controls on `|0>` that were flipped when the block opened.
    negated: Vec<usize>,
    owner: usize,
}

struct Lowering<'a> {
    model: &'a CostModel,
    program: PulseProgram,
    breakdown: Vec<GateCost>,
    cu: Option<usize>,
    start: Option<usize>,
    path: Vec<usize>,
    block: Option<OpenBlock>,
    /// Breakdown entry receiving emitted pulses.
    charge: usize,
}

impl<'a> Lowering<'a> {
    fn new(model: &'a CostModel, start: Option<usize>) -> Self {
        Self {
            model,
            program: PulseProgram::new(),
            breakdown: Vec::new(),
            cu: start,
            start,
            path: start.into_iter().collect(),
            block: None,
            charge: 0,
        }
    }

    fn emit(&mut self, kind: InstructionKind) {
        let cost = self.program.push(kind, self.model);
        let entry = &mut self.breakdown[self.charge];
        if matches!(kind, InstructionKind::Approach { .. }) {
            entry.approach_pulses += cost;
        } else {
            entry.operation_pulses += cost;
        }
        entry.pulses += cost;
    }

    fn move_to(&mut self, slot: usize) {
        match self.cu {
            None => {
                self.start = Some(slot);
                self.path.push(slot);
            }
            Some(cu) if cu != slot => {
                self.emit(InstructionKind::Approach { from: cu, to: slot });
                self.path.push(slot);
            }
            Some(_) => {}
        }
        self.cu = Some(slot);
    }

    fn flip(&mut self, slots: &[usize]) {
        for &s in slots {
            self.move_to(s);
            self.emit(InstructionKind::OneQubitGate {
                qubit: s,
                gate: OneQubitKind::X,
            });
            self.emit(InstructionKind::Restore(RestoreKind::OneQubit));
        }
    }

    fn close_block(&mut self) {
        let Some(block) = self.block.take() else {
            return;
        };
        self.charge = block.owner;
        for &c in block.path.iter().rev() {
            self.move_to(c);
            self.emit(InstructionKind::Restore(RestoreKind::Control(c)));
        }
        self.flip(&block.negated);
    }

    fn lower(&mut self, phase: Phase, index: usize, op: &Op, circuit: &Circuit) -> Result<()> {
        for w in op.wires() {
            if w >= circuit.n_wires() {
                return Err(Error::QubitOutOfRange {
                    index: w,
                    n: circuit.n_wires(),
                });
            }
        }
        let reuse = match (op, &self.block) {
            (Op::Gate(g), Some(b)) if g.is_controlled() => b.key == sorted_controls(g),
            _ => false,
        };
        if !reuse {
            self.close_block();
        }
        self.breakdown.push(GateCost {
            phase,
            index,
            op: op_text(op),
            approach_pulses: 0,
            operation_pulses: 0,
            pulses: 0,
        });
        let me = self.breakdown.len() - 1;
        self.charge = me;
        match op {
            Op::Erase(w) => {
                let s = circuit.position(*w);
                self.move_to(s);
                self.emit(InstructionKind::Erase { qubit: s });
                self.emit(InstructionKind::Restore(RestoreKind::OneQubit));
            }
            Op::Gate(Gate::One { kind, qubit }) => {
                let s = circuit.position(*qubit);
                self.move_to(s);
                self.emit(InstructionKind::OneQubitGate {
                    qubit: s,
                    gate: *kind,
                });
                self.emit(InstructionKind::Restore(RestoreKind::OneQubit));
            }
            Op::Gate(g) => {
                let target = circuit.position(g.target());
                if !reuse {
                    let controls: Vec<usize> = g
                        .controls()
                        .iter()
                        .map(|c| circuit.position(c.wire))
                        .collect();
                    let mut negated: Vec<usize> = Vec::new();
                    if self.model.conjugate_negated_controls {
                        negated = g
                            .controls()
                            .iter()
                            .filter(|c| !c.polarity)
                            .map(|c| circuit.position(c.wire))
                            .collect();
                    }
                    let order = control_order(&controls, target, self.model);
                    negated.sort_by_key(|s| order.iter().position(|o| o == s));
                    self.flip(&negated);
                    for &c in &order {
                        self.move_to(c);
                        self.emit(InstructionKind::ControlEncode { qubit: c });
                    }
                    self.block = Some(OpenBlock {
                        key: sorted_controls(g),
                        path: order,
                        negated,
                        owner: me,
                    });
                }
                self.move_to(target);
                let op = match g {
                    Gate::Cz { .. } | Gate::Mcz { .. } => TargetOp::Z,
                    _ => TargetOp::X,
                };
                self.emit(InstructionKind::TargetGate { qubit: target, op });
                self.emit(InstructionKind::Restore(RestoreKind::Target));
                if let Some(b) = self.block.as_mut() {
                    b.owner = me;
                }
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Compiled {
        self.close_block();
        let mut report = CompilationReport {
            encoding_pulses: 0,
            syndrome_recovery_pulses: 0,
            other_pulses: 0,
            total_pulses: self.program.total_pulses(),
            breakdown: self.breakdown,
            cu_path: self.path,
            rest_travel: match (self.cu, self.start) {
                (Some(cu), Some(s)) if cu != s => self.model.approach(cu, s),
                _ => 0,
            },
        };
        for e in &report.breakdown {
            match e.phase {
                Phase::Encoding => report.encoding_pulses += e.pulses,
                Phase::SyndromeRecovery => report.syndrome_recovery_pulses += e.pulses,
                Phase::Other => report.other_pulses += e.pulses,
            }
        }
        Compiled {
            program: self.program,
            report,
        }
    }
}

fn sorted_controls(g: &Gate) -> Vec<Control> {
    let mut c = g.controls();
    c.sort_by_key(|c| (c.wire, c.polarity));
    c
}

/// Visiting order for the controls of one gate: the permutation minimising
/// travel through every control to the target and back, first in
/// lexicographic order on ties. It depends on the gate alone, so inserting
/// a gate into a circuit never shortens the CU path.
fn control_order(controls: &[usize], target: usize, model: &CostModel) -> Vec<usize> {
    let mut sorted = controls.to_vec();
    sorted.sort_unstable();
    let mut best: Option<(u64, Vec<usize>)> = None;
    permute(&mut sorted, 0, &mut |perm| {
        let legs: u64 = perm
            .windows(2)
            .map(|w| model.approach(w[0], w[1]))
            .chain(std::iter::once(
                model.approach(perm[perm.len() - 1], target),
            ))
            .sum();
        let cost = legs;
        if best
            .as_ref()
            .is_none_or(|(b, p)| cost < *b || (cost == *b && perm < p.as_slice()))
        {
            best = Some((cost, perm.to_vec()));
        }
    });
    best.map(|(_, p)| p).unwrap_or_default()
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn op_text(op: &Op) -> String {
    match op {
        Op::Gate(g) => g.to_string(),
        Op::Erase(w) => format!("ERASE {w}"),
    }
}
