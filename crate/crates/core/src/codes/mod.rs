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

//! Steane and Shor code circuits: encoding, coherent syndrome extraction,
//! conditional correction without measurement, and ancilla reuse.

mod circuit;
mod experiment;
mod pauli;
pub mod shor;
mod spec;
pub mod steane;

pub use circuit::{Circuit, Op};
pub use experiment::{
    coherent_ec_experiment, correct_single_error, CoherentReport, ErrorAmplitudes,
};
pub use pauli::PauliString;
pub use shor::{shor_ec, shor_encode};
pub use spec::{CodeKind, CodeSpec};
pub use steane::{steane_ec, steane_encode};
