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

//! The machine cycle: simultaneous EC under one CU per block, CU
//! deactivation through labelled switching stations, the algorithm phase and
//! reactivation. Also the Zeno reset rule for classical cell patterns, Pauli
//! noise and Monte-Carlo sweeps of the logical error rate.

mod device;
mod montecarlo;
mod noise;
mod zeno;

pub use device::{
    AlgorithmGate, CuState, CycleReport, DeviceConfig, DeviceState, EndCellOp, LogicalOp,
    MachinePhase, PulseLedger,
};
pub use montecarlo::{
    fit_loglog_slope, monte_carlo_sweep, ErrorPattern, LogicalClass, LogicalClassifier, SweepPoint,
    SWEEP_CHUNK,
};
pub use noise::{Granularity, NoiseModel};
pub use zeno::{cu_marker, decode_label, frame_label, frame_plan, stabilize, CellPattern, GUARD};
