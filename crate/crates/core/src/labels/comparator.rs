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

//! Bitwise `label >= b` test run in every switching station at once.
//!
//! Label bits are read most significant first. Ancilla `c0` holds "equal
//! so far", ancilla `c1` is scratch and is erased after each use, and `r`
//! collects the result. Steps carry a guard on one bit of `b`; the global
//! controller sends only the steps whose guard matches the requested level.

use serde::{Deserialize, Serialize};

use crate::codes::Circuit;
use crate::compiler::compile;
use crate::error::{Error, Result};
use crate::model::{ceil_log2, ChainLayout, CostModel, InstructionKind, PulseProgram};
use crate::qsim::{Control, Gate};

/// Steps emitted per label bit (both guards counted).
pub const COMPARATOR_STEPS_PER_BIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bit {
    /// Label bit `x`, 0 being the most significant.
    Label(u32),
    C0,
    C1,
    Result,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BitOp {
    Not(Bit),
    Cnot {
        control: Bit,
        target: Bit,
    },
    /// Flips `target` when both controls match their polarities.
    Toffoli {
        a: (Bit, bool),
        b: (Bit, bool),
        target: Bit,
    },
    Erase(Bit),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    /// `(x, v)`: run only when bit `x` of `b`, most significant first, is `v`.
    pub guard: Option<(u32, bool)>,
    pub op: BitOp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparatorProgram {
    pub p: u32,
    pub label_bits: u32,
    pub steps: Vec<Step>,
}

impl ComparatorProgram {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn ancillas(&self) -> usize {
        2
    }

    /// Steps sent for level `b`.
    pub fn steps_for(&self, b: u32) -> Result<Vec<BitOp>> {
        self.check_level(b)?;
        Ok(self
            .steps
            .iter()
            .filter(|s| {
                s.guard
                    .is_none_or(|(x, v)| self.bit_of(u64::from(b), x) == v)
            })
            .map(|s| s.op)
            .collect())
    }

    fn bit_of(&self, value: u64, x: u32) -> bool {
        value >> (self.label_bits - 1 - x) & 1 == 1
    }

    fn check_level(&self, b: u32) -> Result<()> {
        if b > self.p {
            return Err(Error::InvalidLabelQuery(format!(
                "level {b} above p={}",
                self.p
            )));
        }
        Ok(())
    }
}

pub fn comparator_program(p: u32) -> ComparatorProgram {
    let n = ceil_log2(u64::from(p) + 1).max(1);
    let always = |op| Step { guard: None, op };
    let mut steps = vec![always(BitOp::Not(Bit::C0))];
    for x in 0..n {
        let on_zero = |op| Step {
            guard: Some((x, false)),
            op,
        };
        // b_x = 0: a set label bit while still equal decides "greater".
        steps.push(on_zero(BitOp::Toffoli {
            a: (Bit::C0, true),
            b: (Bit::Label(x), true),
            target: Bit::C1,
        }));
        steps.push(on_zero(BitOp::Cnot {
            control: Bit::C1,
            target: Bit::Result,
        }));
        steps.push(on_zero(BitOp::Cnot {
            control: Bit::C1,
            target: Bit::C0,
        }));
        steps.push(on_zero(BitOp::Erase(Bit::C1)));
        let on_one = |op| Step {
            guard: Some((x, true)),
            op,
        };
        // b_x = 1: a clear label bit while still equal decides "less".
        steps.push(on_one(BitOp::Toffoli {
            a: (Bit::C0, true),
            b: (Bit::Label(x), false),
            target: Bit::C1,
        }));
        steps.push(on_one(BitOp::Cnot {
            control: Bit::C1,
            target: Bit::C0,
        }));
        steps.push(on_one(BitOp::Erase(Bit::C1)));
    }
    steps.push(always(BitOp::Cnot {
        control: Bit::C0,
        target: Bit::Result,
    }));
    steps.push(always(BitOp::Erase(Bit::C0)));
    ComparatorProgram {
        p,
        label_bits: n,
        steps,
    }
}

/// Runs the program on one station holding `label`, returning `r`.
pub fn evaluate(program: &ComparatorProgram, label: u64, b: u32) -> Result<bool> {
    if label >> program.label_bits != 0 {
        return Err(Error::InvalidLabelQuery(format!(
            "label {label} needs more than {} bits",
            program.label_bits
        )));
    }
    let (mut c0, mut c1, mut r) = (false, false, false);
    let read = |bit: Bit, c0: bool, c1: bool, r: bool| match bit {
        Bit::Label(x) => program.bit_of(label, x),
        Bit::C0 => c0,
        Bit::C1 => c1,
        Bit::Result => r,
    };
    for op in program.steps_for(b)? {
        let (target, flip) = match op {
            BitOp::Not(t) => (t, true),
            BitOp::Cnot { control, target } => (target, read(control, c0, c1, r)),
            BitOp::Toffoli { a, b, target } => (
                target,
                read(a.0, c0, c1, r) == a.1 && read(b.0, c0, c1, r) == b.1,
            ),
            BitOp::Erase(t) => {
                match t {
                    Bit::C0 => c0 = false,
                    Bit::C1 => c1 = false,
                    _ => unreachable!("only ancillas are erased"),
                }
                continue;
            }
        };
        if flip {
            match target {
                Bit::C0 => c0 = !c0,
                Bit::C1 => c1 = !c1,
                Bit::Result => r = !r,
                Bit::Label(_) => unreachable!("label bits are read-only"),
            }
        }
    }
    debug_assert!(!c0 && !c1);
    Ok(r)
}

/// The steps for level `b` as a circuit on one station: label bits on
/// wires `0..n`, `r` on wire `n`, ancillas `c0`, `c1` on `n+1`, `n+2`.
pub fn label_compute_circuit(program: &ComparatorProgram, b: u32) -> Result<Circuit> {
    let n = program.label_bits as usize;
    let wire = |bit: Bit| match bit {
        Bit::Label(x) => x as usize,
        Bit::Result => n,
        Bit::C0 => n + 1,
        Bit::C1 => n + 2,
    };
    let mut c = Circuit::new(n + 1, 2);
    for op in program.steps_for(b)? {
        match op {
            BitOp::Not(t) => c.gate(Gate::x(wire(t)))?,
            BitOp::Cnot { control, target } => c.gate(Gate::cnot(wire(control), wire(target)))?,
            BitOp::Toffoli { a, b, target } => c.gate(Gate::mcx(
                [Control::new(wire(a.0), a.1), Control::new(wire(b.0), b.1)],
                wire(target),
            ))?,
            BitOp::Erase(t) => c.erase(wire(t))?,
        };
    }
    Ok(c)
}

/// Global pulses that compute the level-`b` activation bit in every
/// station simultaneously. Independent of the number of stations.
pub fn label_compute_program(p: u32, b: u32, model: &CostModel) -> Result<PulseProgram> {
    let program = comparator_program(p);
    let circuit = label_compute_circuit(&program, b)?;
    let layout = ChainLayout::blocks(circuit.n_wires(), 1)?;
    let mut out = PulseProgram::new();
    out.push(InstructionKind::LabelCompute { level: b }, model);
    out.append(&compile(&circuit, &layout, model)?.program);
    Ok(out)
}

/// A single CU walking the chain and setting one activation bit per
/// station, `stride` slots apart.
pub fn serial_activation_pulses(num_ss: usize, stride: usize, model: &CostModel) -> u64 {
    if num_ss == 0 {
        return 0;
    }
    num_ss as u64 * model.one_qubit_total() + (num_ss as u64 - 1) * model.approach(0, stride)
}
