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

use serde::{Deserialize, Serialize};

use super::lower::{compile_phases, CompilationReport, Phase};
use crate::codes::{Circuit, CodeKind, CodeSpec, Op};
use crate::error::{Error, Result};
use crate::model::{ChainLayout, CostModel};
use crate::qsim::Gate;

/// One row pair of the per-code pulse table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeTableRow {
    pub code: CodeKind,
    pub encoding: u64,
    pub syndrome_recovery: u64,
    pub total: u64,
    pub report: CompilationReport,
}

/// Compiles encoding followed by one EC round for each code, inside one
/// block with one CU.
pub fn compile_code_tables(codes: &[CodeKind], model: &CostModel) -> Result<Vec<CodeTableRow>> {
    codes
        .iter()
        .map(|&kind| {
            let code = CodeSpec::of(kind);
            let layout = ChainLayout::blocks(code.block_size_qubits, 1)?;
            let (enc, ec) = (code.encode(), code.ec());
            let out = compile_phases(
                &[(Phase::Encoding, &enc), (Phase::SyndromeRecovery, &ec)],
                &layout,
                model,
                None,
            )?;
            Ok(CodeTableRow {
                code: kind,
                encoding: out.report.encoding_pulses,
                syndrome_recovery: out.report.syndrome_recovery_pulses,
                total: out.report.total_pulses,
                report: out.report,
            })
        })
        .collect()
}

/// Copies of `circuit` placed in the listed blocks of one chain. Data wires
/// of copy `i` come before those of copy `i + 1`, ancillas likewise.
fn tile(circuit: &Circuit, blocks: &[usize], layout: &ChainLayout) -> Result<Circuit> {
    let (nd, na) = (circuit.n_data(), circuit.n_ancilla());
    let m = blocks.len();
    let map = |copy: usize, w: usize| {
        if w < nd {
            copy * nd + w
        } else {
            m * nd + copy * na + (w - nd)
        }
    };
    let mut positions = vec![0; m * (nd + na)];
    for (copy, &b) in blocks.iter().enumerate() {
        for w in 0..nd + na {
            positions[map(copy, w)] = layout.global_slot(b, circuit.position(w));
        }
    }
    let mut out = Circuit::new(m * nd, m * na).with_positions(positions)?;
    for copy in 0..m {
        for op in circuit.ops() {
            out.push(match op {
                Op::Gate(g) => Op::Gate(g.map_wires(|w| map(copy, w))),
                Op::Erase(w) => Op::Erase(map(copy, *w)),
            })?;
        }
    }
    Ok(out)
}

fn check_code_layout(code: &CodeSpec, layout: &ChainLayout) -> Result<()> {
    layout.validate()?;
    if layout.block_size_qubits != code.block_size_qubits {
        return Err(Error::InvalidLayout(format!(
            "{} needs blocks of {} qubits, layout has {}",
            code.kind, code.block_size_qubits, layout.block_size_qubits
        )));
    }
    Ok(())
}

/// Global pulses for one EC cycle over the whole device: each CU leaves
/// its switching station, corrects its block and returns. Every block runs
/// the same program under its own CU, so each block is compiled at its own
/// chain offset and the programs are checked to agree.
pub fn ec_cycle_pulses(code: &CodeSpec, layout: &ChainLayout, model: &CostModel) -> Result<u64> {
    check_code_layout(code, layout)?;
    let mut cycle = None;
    for b in 0..layout.num_blocks {
        let local = tile(&code.ec(), &[b], layout)?;
        let home = layout.global_slot(b, layout.block_size_qubits);
        let out = compile_phases(
            &[(Phase::SyndromeRecovery, &local)],
            layout,
            model,
            Some(home),
        )?;
        let pulses = out.report.total_pulses + out.report.rest_travel;
        match cycle {
            None => cycle = Some(pulses),
            Some(c) if c != pulses => {
                return Err(Error::InvalidLayout(format!(
                    "block {b} needs {pulses} pulses, block 0 needs {c}"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(cycle.unwrap_or(0))
}

/// EC of every block performed one after another by a single CU that
/// starts and ends at the first switching station.
pub fn serial_ec_pulses(code: &CodeSpec, layout: &ChainLayout, model: &CostModel) -> Result<u64> {
    check_code_layout(code, layout)?;
    let blocks: Vec<usize> = (0..layout.num_blocks).collect();
    let all = tile(&code.ec(), &blocks, layout)?;
    let home = layout.global_slot(0, layout.block_size_qubits);
    let out = compile_phases(
        &[(Phase::SyndromeRecovery, &all)],
        layout,
        model,
        Some(home),
    )?;
    Ok(out.report.total_pulses + out.report.rest_travel)
}

/// Transversal CNOT between the data wires of two blocks.
fn transversal(code: &CodeSpec, layout: &ChainLayout, pairs: &[(usize, usize)]) -> Result<Circuit> {
    let nd = code.n_data;
    let ec = code.ec();
    let mut blocks: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    blocks.sort_unstable();
    blocks.dedup();
    let copy = |b: usize| blocks.iter().position(|&x| x == b).expect("listed");
    let mut positions = Vec::with_capacity(blocks.len() * nd);
    for &b in &blocks {
        for w in 0..nd {
            positions.push(layout.global_slot(b, ec.position(w)));
        }
    }
    let mut c = Circuit::new(blocks.len() * nd, 0).with_positions(positions)?;
    for &(a, b) in pairs {
        for w in 0..nd {
            c.gate(Gate::cnot(copy(a) * nd + w, copy(b) * nd + w))?;
        }
    }
    Ok(c)
}

fn check_blocks(layout: &ChainLayout, q_a: usize, q_b: usize) -> Result<()> {
    for q in [q_a, q_b] {
        if q >= layout.num_blocks {
            return Err(Error::QubitOutOfRange {
                index: q,
                n: layout.num_blocks,
            });
        }
    }
    if q_a == q_b {
        return Err(Error::SameBlock(q_a));
    }
    Ok(())
}

/// Pulses for a logical CNOT from the qubit in block `q_a` to the one in
/// block `q_b`, driven directly by the single algorithm-phase CU.
pub fn algorithm_phase_gate_cost(
    code: &CodeSpec,
    q_a: usize,
    q_b: usize,
    layout: &ChainLayout,
    model: &CostModel,
) -> Result<u64> {
    check_code_layout(code, layout)?;
    check_blocks(layout, q_a, q_b)?;
    let c = transversal(code, layout, &[(q_a, q_b)])?;
    Ok(compile_phases(&[(Phase::Other, &c)], layout, model, None)?
        .report
        .total_pulses)
}

/// The swap-chain alternative: the logical qubit is carried one block per
/// algorithm phase until it neighbours its partner, then an adjacent gate
/// is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapChain {
    pub swaps: usize,
    pub swap_pulses: u64,
    pub gate_pulses: u64,
    pub total_pulses: u64,
    /// Largest cost spent in any single algorithm phase.
    pub max_phase_pulses: u64,
}

pub fn swap_chain_schedule(
    code: &CodeSpec,
    q_a: usize,
    q_b: usize,
    layout: &ChainLayout,
    model: &CostModel,
) -> Result<SwapChain> {
    check_code_layout(code, layout)?;
    check_blocks(layout, q_a, q_b)?;
    let (lo, hi) = (q_a.min(q_b), q_a.max(q_b));
    let swaps = hi - lo - 1;
    let compile_pairs = |pairs: &[(usize, usize)]| -> Result<u64> {
        let c = transversal(code, layout, pairs)?;
        Ok(compile_phases(&[(Phase::Other, &c)], layout, model, None)?
            .report
            .total_pulses)
    };
    // Every swap acts on one adjacent pair and costs the same wherever it sits.
    let swap_pulses = if swaps > 0 {
        compile_pairs(&[(lo, lo + 1), (lo + 1, lo), (lo, lo + 1)])?
    } else {
        0
    };
    let gate_pulses = compile_pairs(&[(hi - 1, hi)])?;
    Ok(SwapChain {
        swaps,
        swap_pulses,
        gate_pulses,
        total_pulses: swaps as u64 * swap_pulses + gate_pulses,
        max_phase_pulses: swap_pulses.max(gate_pulses),
    })
}
