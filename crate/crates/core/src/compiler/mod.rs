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

//! Lowering of circuits to global-pulse programs.
//!
//! The CU is tracked as a chain slot. A controlled gate opens a *control
//! block*: the CU interacts with each control in turn, walks to the target,
//! applies the target operation and restores the target pattern. The block
//! stays open while following gates share exactly the same controls, so a
//! fan-out visits its targets without re-encoding. Closing a block walks the
//! controls back in reverse order, undoing each interaction.

mod lower;
mod tables;

pub use lower::{compile, compile_phases, CompilationReport, Compiled, GateCost, Phase};
pub use tables::{
    algorithm_phase_gate_cost, compile_code_tables, ec_cycle_pulses, serial_ec_pulses,
    swap_chain_schedule, CodeTableRow, SwapChain,
};
