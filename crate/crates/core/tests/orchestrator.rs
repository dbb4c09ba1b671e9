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

use globalqec::codes::{CodeKind, CodeSpec};
use globalqec::model::{ChainLayout, CostModel};
use globalqec::orchestrator::{
    AlgorithmGate, DeviceConfig, DeviceState, EndCellOp, LogicalOp, NoiseModel,
};
use globalqec::qsim::{Gate, Pauli};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn device(code: CodeKind, m: usize, p: u32, seed: u64) -> DeviceState {
    let spec = CodeSpec::of(code);
    let layout = ChainLayout::blocks(spec.block_size_qubits, m)
        .unwrap()
        .with_ss_cells(16);
    let config = DeviceConfig {
        code,
        p,
        l: 2,
        seed,
    };
    DeviceState::new(&config, &layout, &CostModel::default()).unwrap()
}

#[test]
fn single_x_each_cycle_is_always_repaired() {
    let mut d = device(CodeKind::Steane, 2, 2, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let gate = [AlgorithmGate {
        block: 0,
        op: LogicalOp::X,
    }];
    for cycle in 0..100 {
        let q = rng.gen_range(0..7);
        d.block_mut(0).unwrap().apply_error(q, Pauli::X).unwrap();
        let r = d.run_cycle(2, &gate, &NoiseModel::none()).unwrap();
        assert_eq!(r.active_in_algorithm, vec![0]);
        assert!(
            r.fidelities.iter().all(|f| *f >= 1.0 - 1e-9),
            "cycle {cycle}: {:?}",
            r.fidelities
        );
        assert!(d.cus().iter().all(|c| c.active));
    }
}

#[test]
fn shor_device_cycles_with_gates_on_every_block() {
    let mut d = device(CodeKind::Shor, 2, 1, 4);
    let gates = [
        AlgorithmGate {
            block: 0,
            op: LogicalOp::Z,
        },
        AlgorithmGate {
            block: 1,
            op: LogicalOp::X,
        },
    ];
    for _ in 0..3 {
        let r = d.run_cycle(0, &gates, &NoiseModel::none()).unwrap();
        assert_eq!(r.active_in_algorithm, vec![0, 1]);
        assert!(r.fidelities.iter().all(|f| *f >= 1.0 - 1e-9));
        assert!(r.zeno_stable);
    }
}

#[test]
fn boundary_read_follows_born_statistics() {
    let mut d = device(CodeKind::Steane, 1, 1, 21);
    let shots = 10_000;
    let mut ones = 0;
    for _ in 0..shots {
        d.end_cell_io(0, 0, EndCellOp::Prepare(false)).unwrap();
        d.block_mut(0).unwrap().apply(&Gate::h(0)).unwrap();
        if d.end_cell_io(0, 0, EndCellOp::Read).unwrap() == Some(true) {
            ones += 1;
        }
    }
    let sigma = (shots as f64 * 0.25).sqrt();
    assert!(
        (ones as f64 - shots as f64 / 2.0).abs() <= 3.0 * sigma,
        "{ones} ones"
    );
}
