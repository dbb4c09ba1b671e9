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

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::noise::NoiseModel;
use super::zeno::{cu_marker, frame_label, CellPattern};
use crate::codes::{Circuit, CodeKind, CodeSpec, PauliString};
use crate::compiler::{compile_phases, ec_cycle_pulses, Phase};
use crate::error::{Error, Result};
use crate::labels::{
    comparator_program, evaluate, hierarchy_labels, label_compute_program, ComparatorProgram,
    LabelPlan,
};
use crate::model::{ChainLayout, CostModel};
use crate::qsim::{random_qubit, Gate, Pauli, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MachinePhase {
    Ec,
    Transition,
    Algorithm,
}

impl fmt::Display for MachinePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachinePhase::Ec => "EC",
            MachinePhase::Transition => "transition",
            MachinePhase::Algorithm => "algorithm",
        })
    }
}

/// A CU and its resting slot (block-local; the switching station sits at
/// slot `block_size_qubits`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuState {
    pub active: bool,
    pub position: usize,
}

/// Running pulse totals per phase of the machine cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PulseLedger {
    pub ec: u64,
    pub transition: u64,
    pub algorithm: u64,
}

impl PulseLedger {
    pub fn total(&self) -> u64 {
        self.ec + self.transition + self.algorithm
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceConfig {
    pub code: CodeKind,
    /// Label levels parameter: levels `0..=p` are selectable.
    pub p: u32,
    /// Stations per level-1 group.
    pub l: u64,
    pub seed: u64,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        Self {
            code: CodeKind::Steane,
            p: 1,
            l: 2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogicalOp {
    X,
    Z,
}

/// A logical Pauli requested on `block`. Global pulses act on every block
/// with an active CU, so all of them receive the gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmGate {
    pub block: usize,
    pub op: LogicalOp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndCellOp {
    Prepare(bool),
    Read,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub cycle: u64,
    pub level: u32,
    pub ec_pulses: u64,
    /// One direction; the cycle pays it twice.
    pub transition_pulses: u64,
    pub algorithm_pulses: u64,
    pub total_pulses: u64,
    /// `(block, data wire, error)` injected before EC.
    pub injected: Vec<(usize, usize, Pauli)>,
    /// Blocks whose CU stayed active during the algorithm phase.
    pub active_in_algorithm: Vec<usize>,
    pub fidelities: Vec<f64>,
    /// The classical cell content was a fixed point of the Zeno rule
    /// throughout the cycle.
    pub zeno_stable: bool,
}

pub struct DeviceState {
    code: CodeSpec,
    layout: ChainLayout,
    model: CostModel,
    plan: LabelPlan,
    comparator: ComparatorProgram,
    cus: Vec<CuState>,
    phase: MachinePhase,
    blocks: Vec<StateVector<f64>>,
    references: Vec<StateVector<f64>>,
    ledger: PulseLedger,
    rng: ChaCha8Rng,
    cycles: u64,
    ec_circuit: Circuit,
    ec_pulses: u64,
    gate_pulses: [u64; 2],
}

impl DeviceState {
    /// Every block starts in a random logical state drawn from the seed.
    pub fn new(config: &DeviceConfig, layout: &ChainLayout, model: &CostModel) -> Result<Self> {
        let code = CodeSpec::of(config.code);
        let mut layout = *layout;
        layout.validate()?;
        model.validate()?;
        if layout.block_size_qubits != code.block_size_qubits {
            return Err(Error::InvalidLayout(format!(
                "{} needs blocks of {} qubits, layout has {}",
                code.kind, code.block_size_qubits, layout.block_size_qubits
            )));
        }
        let plan = hierarchy_labels(config.p, config.l, layout.num_blocks)?;
        layout.label_bits = layout.label_bits.max(plan.label_bits as usize);
        let comparator = comparator_program(config.p);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut blocks = Vec::with_capacity(layout.num_blocks);
        let mut references = Vec::with_capacity(layout.num_blocks);
        for _ in 0..layout.num_blocks {
            let (a, b) = random_qubit::<f64, _>(&mut rng);
            blocks.push(code.encoded_block(a, b, 0, rng.gen())?);
            references.push(code.encoded_data(a, b)?);
        }
        let home = layout.block_size_qubits;
        let ec_circuit = code.ec();
        let ec_pulses = ec_cycle_pulses(&code, &layout, model)?;
        let gate_pulses = [
            logical_gate_pulses(&code, &code.logical_x, &layout, model)?,
            logical_gate_pulses(&code, &code.logical_z, &layout, model)?,
        ];
        Ok(Self {
            code,
            layout,
            model: *model,
            plan,
            comparator,
            cus: vec![
                CuState {
                    active: true,
                    position: home,
                };
                layout.num_blocks
            ],
            phase: MachinePhase::Ec,
            blocks,
            references,
            ledger: PulseLedger::default(),
            rng,
            cycles: 0,
            ec_circuit,
            ec_pulses,
            gate_pulses,
        })
    }

    pub fn code(&self) -> &CodeSpec {
        &self.code
    }

    pub fn layout(&self) -> &ChainLayout {
        &self.layout
    }

    pub fn plan(&self) -> &LabelPlan {
        &self.plan
    }

    pub fn cus(&self) -> &[CuState] {
        &self.cus
    }

    pub fn phase(&self) -> MachinePhase {
        self.phase
    }

    pub fn ledger(&self) -> PulseLedger {
        self.ledger
    }

    pub fn ec_pulses(&self) -> u64 {
        self.ec_pulses
    }

    pub fn blocks(&self) -> &[StateVector<f64>] {
        &self.blocks
    }

    pub fn block_mut(&mut self, block: usize) -> Result<&mut StateVector<f64>> {
        let n = self.blocks.len();
        self.blocks
            .get_mut(block)
            .ok_or(Error::QubitOutOfRange { index: block, n })
    }

    /// Encoded data state each block should hold.
    pub fn references(&self) -> &[StateVector<f64>] {
        &self.references
    }

    /// Replaces the logical state of `block` and its reference.
    pub fn set_logical(
        &mut self,
        block: usize,
        alpha: Complex<f64>,
        beta: Complex<f64>,
    ) -> Result<()> {
        let seed = self.rng.gen();
        let state = self.code.encoded_block(alpha, beta, 0, seed)?;
        let reference = self.code.encoded_data(alpha, beta)?;
        *self.block_mut(block)? = state;
        self.references[block] = reference;
        Ok(())
    }

    pub fn fidelities(&self) -> Result<Vec<f64>> {
        let data = self.code.data_wires();
        self.blocks
            .iter()
            .zip(&self.references)
            .map(|(s, r)| s.reduced_fidelity(&data, r))
            .collect()
    }

    /// Pulses for one deactivation (or, reversed, reactivation) at level `b`:
    /// the label comparison followed by absorption.
    pub fn transition_pulses(&self, b: u32) -> Result<u64> {
        Ok(
            label_compute_program(self.plan.p, b, &self.model)?.total_pulses()
                + self.model.absorb_pulses,
        )
    }

    /// Blocks whose station's comparator keeps the CU at level `b`.
    pub fn selected(&self, b: u32) -> Result<Vec<bool>> {
        if b > self.plan.max_level() {
            return Err(Error::InvalidLabelQuery(format!(
                "level {b} above p={}",
                self.plan.p
            )));
        }
        self.plan
            .labels()
            .iter()
            .map(|&l| evaluate(&self.comparator, l, b))
            .collect()
    }

    /// Classical content along the chain: a CU marker or blank cells per
    /// block, then the station's framed label.
    pub fn cell_pattern(&self) -> CellPattern {
        let mut out = CellPattern::default();
        for (cu, &label) in self.cus.iter().zip(self.plan.labels()) {
            out.extend(&if cu.active {
                cu_marker()
            } else {
                CellPattern::zeros(cu_marker().len())
            });
            out.extend(&frame_label(label, self.plan.label_bits));
        }
        out
    }

    fn inject(&mut self, noise: &NoiseModel) -> Result<Vec<(usize, usize, Pauli)>> {
        let mut out = Vec::new();
        if noise.is_silent() {
            return Ok(out);
        }
        for (b, state) in self.blocks.iter_mut().enumerate() {
            for q in 0..self.code.n_data {
                if let Some(p) = noise.sample(&mut self.rng) {
                    state.apply_error(q, p)?;
                    out.push((b, q, p));
                }
            }
        }
        Ok(out)
    }

    /// One machine cycle: noise, EC on every block, deactivation down to the
    /// level-`b` CU set, the algorithm gates, reactivation.
    pub fn run_cycle(
        &mut self,
        b: u32,
        gates: &[AlgorithmGate],
        noise: &NoiseModel,
    ) -> Result<CycleReport> {
        if self.phase != MachinePhase::Ec {
            return Err(Error::WrongPhase(self.phase.to_string()));
        }
        noise.validate()?;
        let selected = self.selected(b)?;
        for g in gates {
            match selected.get(g.block) {
                None => {
                    return Err(Error::QubitOutOfRange {
                        index: g.block,
                        n: selected.len(),
                    })
                }
                Some(false) => return Err(Error::NoActiveCu(g.block)),
                Some(true) => {}
            }
        }
        let transition = self.transition_pulses(b)?;
        let mut zeno_stable = self.cell_pattern().is_stable();

        let injected = self.inject(&noise.per_cycle(self.ec_pulses + 2 * transition))?;

        debug_assert!(self.cus.iter().all(|c| c.active));
        for state in &mut self.blocks {
            self.ec_circuit.run(state)?;
        }
        self.ledger.ec += self.ec_pulses;

        self.phase = MachinePhase::Transition;
        for (cu, &keep) in self.cus.iter_mut().zip(&selected) {
            cu.active = keep;
        }
        self.ledger.transition += transition;
        zeno_stable &= self.cell_pattern().is_stable();

        self.phase = MachinePhase::Algorithm;
        let active: Vec<usize> = (0..self.cus.len())
            .filter(|&i| self.cus[i].active)
            .collect();
        debug_assert_eq!(
            active.iter().map(|i| i + 1).collect::<Vec<_>>(),
            self.plan.active_set(b)?
        );
        let mut algorithm = 0;
        for g in gates {
            let (pauli, cost) = match g.op {
                LogicalOp::X => (&self.code.logical_x, self.gate_pulses[0]),
                LogicalOp::Z => (&self.code.logical_z, self.gate_pulses[1]),
            };
            for &blk in &active {
                pauli.apply(&mut self.blocks[blk])?;
                pauli.apply(&mut self.references[blk])?;
            }
            algorithm += cost;
        }
        self.ledger.algorithm += algorithm;

        self.phase = MachinePhase::Transition;
        for cu in &mut self.cus {
            cu.active = true;
        }
        self.ledger.transition += transition;
        self.phase = MachinePhase::Ec;
        zeno_stable &= self.cell_pattern().is_stable();

        self.cycles += 1;
        Ok(CycleReport {
            cycle: self.cycles,
            level: b,
            ec_pulses: self.ec_pulses,
            transition_pulses: transition,
            algorithm_pulses: algorithm,
            total_pulses: self.ec_pulses + 2 * transition + algorithm,
            injected,
            active_in_algorithm: active,
            fidelities: self.fidelities()?,
            zeno_stable,
        })
    }

    /// Prepares or reads the qubit under the independently addressable end
    /// cell: chain slot 0 of block 0.
    pub fn end_cell_io(
        &mut self,
        block: usize,
        wire: usize,
        op: EndCellOp,
    ) -> Result<Option<bool>> {
        let boundary = (0..self.code.n_wires()).find(|&w| self.code.ec().position(w) == 0);
        if block != 0 || Some(wire) != boundary {
            return Err(Error::NotBoundary { block, wire });
        }
        let state = &mut self.blocks[0];
        match op {
            EndCellOp::Prepare(bit) => {
                state.erase(wire)?;
                if bit {
                    state.apply(&Gate::x(wire))?;
                }
                Ok(None)
            }
            EndCellOp::Read => state.measure(wire).map(Some),
        }
    }
}

/// Pulses for a transversal logical Pauli on one block, from and back to
/// the switching station.
fn logical_gate_pulses(
    code: &CodeSpec,
    pauli: &PauliString,
    layout: &ChainLayout,
    model: &CostModel,
) -> Result<u64> {
    let ec = code.ec();
    let mut c =
        Circuit::new(code.n_data, code.n_ancilla).with_positions(ec.positions().to_vec())?;
    for q in 0..code.n_data {
        if let Some(p) = pauli.factor(q) {
            c.gate(Gate::pauli(p, q))?;
        }
    }
    let single = ChainLayout {
        num_blocks: 1,
        ..*layout
    };
    let out = compile_phases(
        &[(Phase::Other, &c)],
        &single,
        model,
        Some(layout.block_size_qubits),
    )?;
    Ok(out.report.total_pulses + out.report.rest_travel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn device(code: CodeKind, m: usize, p: u32, l: u64, seed: u64) -> DeviceState {
        let spec = CodeSpec::of(code);
        let layout = ChainLayout::blocks(spec.block_size_qubits, m)
            .unwrap()
            .with_ss_cells(16);
        let config = DeviceConfig { code, p, l, seed };
        DeviceState::new(&config, &layout, &CostModel::default()).unwrap()
    }

    #[test]
    fn identity_cycle_keeps_fidelity() {
        let mut d = device(CodeKind::Steane, 3, 1, 2, 1);
        let r = d.run_cycle(0, &[], &NoiseModel::none()).unwrap();
        assert!(r.fidelities.iter().all(|f| *f >= 1.0 - 1e-9));
        assert_eq!(r.active_in_algorithm, vec![0, 1, 2]);
        assert!(r.zeno_stable);
        assert_eq!(d.phase(), MachinePhase::Ec);
        assert!(d.cus().iter().all(|c| c.active));
    }

    #[test]
    fn ledger_decomposes() {
        let mut d = device(CodeKind::Steane, 4, 2, 2, 2);
        let gates = [AlgorithmGate {
            block: 0,
            op: LogicalOp::X,
        }];
        let mut before = d.ledger().total();
        for b in 0..=2 {
            let r = d.run_cycle(b, &gates, &NoiseModel::none()).unwrap();
            assert_eq!(
                r.total_pulses,
                r.ec_pulses + 2 * r.transition_pulses + r.algorithm_pulses
            );
            assert_eq!(d.ledger().total(), before + r.total_pulses);
            before = d.ledger().total();
            assert!(r.fidelities.iter().all(|f| *f >= 1.0 - 1e-9));
        }
    }

    #[test]
    fn ec_pulses_independent_of_m() {
        let counts: Vec<u64> = [1, 2, 4, 8]
            .iter()
            .map(|&m| {
                let mut d = device(CodeKind::Steane, m, 1, 2, 0);
                d.run_cycle(1, &[], &NoiseModel::none()).unwrap().ec_pulses
            })
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]));
        let layout = ChainLayout::blocks(10, 1).unwrap().with_ss_cells(16);
        assert_eq!(
            counts[0],
            ec_cycle_pulses(&CodeSpec::steane(), &layout, &CostModel::default()).unwrap()
        );
    }

    #[test]
    fn gate_on_inactive_block_rejected() {
        let mut d = device(CodeKind::Steane, 4, 1, 2, 0);
        let gates = [AlgorithmGate {
            block: 2,
            op: LogicalOp::Z,
        }];
        assert_eq!(
            d.run_cycle(1, &gates, &NoiseModel::none()),
            Err(Error::NoActiveCu(2))
        );
        assert_eq!(d.phase(), MachinePhase::Ec);
        assert!(d.run_cycle(0, &gates, &NoiseModel::none()).is_ok());
        assert!(d.run_cycle(2, &[], &NoiseModel::none()).is_err());
    }

    #[test]
    fn single_cu_selects_reserved_station() {
        let mut d = device(CodeKind::Steane, 8, 2, 2, 5);
        let r = d.run_cycle(2, &[], &NoiseModel::none()).unwrap();
        assert_eq!(r.active_in_algorithm, vec![0]);
        let r = d.run_cycle(1, &[], &NoiseModel::none()).unwrap();
        assert_eq!(r.active_in_algorithm, vec![0, 2, 4, 6]);
    }

    #[test]
    fn end_cell_io_contract() {
        let mut d = device(CodeKind::Steane, 2, 1, 2, 3);
        d.end_cell_io(0, 0, EndCellOp::Prepare(true)).unwrap();
        assert_eq!(d.end_cell_io(0, 0, EndCellOp::Read).unwrap(), Some(true));
        d.end_cell_io(0, 0, EndCellOp::Prepare(false)).unwrap();
        assert_eq!(d.end_cell_io(0, 0, EndCellOp::Read).unwrap(), Some(false));
        assert_eq!(
            d.end_cell_io(0, 3, EndCellOp::Read),
            Err(Error::NotBoundary { block: 0, wire: 3 })
        );
        assert!(d.end_cell_io(1, 0, EndCellOp::Read).is_err());
    }

    #[test]
    fn seeded_runs_repeat() {
        let noise = NoiseModel::depolarizing(0.05).unwrap();
        let run = || {
            let mut d = device(CodeKind::Steane, 2, 1, 2, 9);
            (0..5)
                .map(|_| d.run_cycle(0, &[], &noise).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }
}
