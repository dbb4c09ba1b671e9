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

//! Executable model of a globally controlled one-dimensional quantum
//! computer.
//!
//! * [`model`]: chain geometry, abstract toolbox instructions and pulse costs.
//! * [`qsim`]: dense state-vector engine with an erasure channel.
//! * [`codes`]: Steane and Shor encoders and measurement-free EC circuits.
//! * [`compiler`]: lowering of circuits to global-pulse programs.
//! * [`config`]: TOML run configuration.
//! * [`labels`]: switching-station labels selecting active control units.
//! * [`orchestrator`]: the error-correction / algorithm machine cycle, Zeno
//!   stabilization, noise injection and Monte-Carlo sweeps.

pub mod codes;
pub mod compiler;
pub mod config;
pub mod error;
pub mod labels;
pub mod model;
pub mod orchestrator;
pub mod qsim;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type StateVector64 = qsim::StateVector<f64>;
pub type StateVector32 = qsim::StateVector<f32>;
