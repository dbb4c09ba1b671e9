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

use super::CostModel;
use crate::qsim::OneQubitKind;

/// Operation applied at the target of a controlled interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetOp {
    X,
    Z,
}

/// Which pattern a restore sequence puts back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RestoreKind {
    /// Tail of a one-qubit gate (or erasure).
    OneQubit,
    /// Tail of a controlled operation at the target.
    Target,
    /// Undo the control interaction at `qubit`.
    Control(usize),
}

/// An abstract toolbox instruction. Qubit arguments are chain slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InstructionKind {
    Approach {
        from: usize,
        to: usize,
    },
    OneQubitGate {
        qubit: usize,
        gate: OneQubitKind,
    },
    ControlEncode {
        qubit: usize,
    },
    TargetGate {
        qubit: usize,
        op: TargetOp,
    },
    Restore(RestoreKind),
    Absorb {
        ss: usize,
    },
    Emit {
        ss: usize,
    },
    /// Marks the start of a label computation for level `level`; the
    /// computation itself is emitted as ordinary instructions.
    LabelCompute {
        level: u32,
    },
    Stabilize,
    Erase {
        qubit: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PulseInstruction {
    pub kind: InstructionKind,
    pub pulse_cost: u64,
}

impl InstructionKind {
    pub fn cost(&self, model: &CostModel) -> u64 {
        match *self {
            InstructionKind::Approach { from, to } => model.approach(from, to),
            InstructionKind::OneQubitGate { .. } | InstructionKind::Erase { .. } => {
                model.one_qubit_op_pulses
            }
            InstructionKind::ControlEncode { .. } => model.control_interact_pulses,
            InstructionKind::TargetGate { .. } => model.target_op_pulses,
            InstructionKind::Restore(RestoreKind::OneQubit) => model.one_qubit_restore_pulses,
            InstructionKind::Restore(RestoreKind::Target) => model.target_restore_pulses,
            InstructionKind::Restore(RestoreKind::Control(_)) => model.control_restore_pulses,
            InstructionKind::Absorb { .. } => model.absorb_pulses,
            InstructionKind::Emit { .. } => model.emit_pulses(),
            InstructionKind::LabelCompute { .. } => 0,
            InstructionKind::Stabilize => model.stabilize_pulses,
        }
    }
}

impl PulseInstruction {
    pub fn new(kind: InstructionKind, model: &CostModel) -> Self {
        Self {
            kind,
            pulse_cost: kind.cost(model),
        }
    }
}

impl fmt::Display for InstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstructionKind::Approach { from, to } => write!(f, "APPROACH {from} {to}"),
            InstructionKind::OneQubitGate { qubit, gate } => write!(f, "GATE1 {qubit} {gate}"),
            InstructionKind::ControlEncode { qubit } => write!(f, "CTRL {qubit}"),
            InstructionKind::TargetGate { qubit, op } => write!(f, "TARGET {qubit} {op:?}"),
            InstructionKind::Restore(RestoreKind::OneQubit) => write!(f, "RESTORE one-qubit"),
            InstructionKind::Restore(RestoreKind::Target) => write!(f, "RESTORE target"),
            InstructionKind::Restore(RestoreKind::Control(q)) => write!(f, "RESTORE control {q}"),
            InstructionKind::Absorb { ss } => write!(f, "ABSORB {ss}"),
            InstructionKind::Emit { ss } => write!(f, "EMIT {ss}"),
            InstructionKind::LabelCompute { level } => write!(f, "LABEL {level}"),
            InstructionKind::Stabilize => write!(f, "STABILIZE"),
            InstructionKind::Erase { qubit } => write!(f, "ERASE {qubit}"),
        }
    }
}

/// An ordered list of costed instructions. `total_pulses` is kept equal to
/// the sum of the instruction costs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PulseProgram {
    instructions: Vec<PulseInstruction>,
    total_pulses: u64,
}

impl PulseProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, kind: InstructionKind, model: &CostModel) -> u64 {
        let instr = PulseInstruction::new(kind, model);
        self.total_pulses += instr.pulse_cost;
        self.instructions.push(instr);
        instr.pulse_cost
    }

    pub fn append(&mut self, other: &PulseProgram) {
        self.instructions.extend_from_slice(&other.instructions);
        self.total_pulses += other.total_pulses;
    }

    pub fn concat(mut self, other: &PulseProgram) -> Self {
        self.append(other);
        self
    }

    pub fn instructions(&self) -> &[PulseInstruction] {
        &self.instructions
    }

    pub fn total_pulses(&self) -> u64 {
        self.total_pulses
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Every `ControlEncode` must be closed by a matching control restore,
    /// innermost first.
    pub fn controls_balanced(&self) -> bool {
        let mut open = Vec::new();
        for instr in &self.instructions {
            match instr.kind {
                InstructionKind::ControlEncode { qubit } => open.push(qubit),
                InstructionKind::Restore(RestoreKind::Control(q)) => {
                    if open.pop() != Some(q) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        open.is_empty()
    }
}

impl fmt::Display for PulseProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for instr in &self.instructions {
            writeln!(f, "{}\t{}", instr.kind, instr.pulse_cost)?;
        }
        write!(f, "TOTAL\t{}", self.total_pulses)
    }
}
