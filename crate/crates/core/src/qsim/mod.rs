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

//! Dense pure-state simulation of one block's qubits plus an optional
//! environment register.
//!
//! Qubit `q` is bit `q` of the amplitude index. Basis labels are printed with
//! qubit 0 first, so `X` on qubit 3 of seven qubits gives `|0001000>`.

mod gate;
mod state;

pub use gate::{Control, Gate, OneQubitKind, Pauli};
pub use state::{basis_label, random_qubit, StateVector};

/// Largest register the dense engine accepts.
pub const MAX_QUBITS: usize = 24;
