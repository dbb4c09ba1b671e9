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

//! Device geometry, the abstract pulse-machine instruction set and the cost
//! model that turns instructions into global-pulse counts.

mod cost;
mod layout;
mod pulse;

pub use cost::CostModel;
pub use layout::{ceil_log2, subcomputer_capacity, subcomputer_cell_cost, ChainLayout};
pub use pulse::{InstructionKind, PulseInstruction, PulseProgram, RestoreKind, TargetOp};
