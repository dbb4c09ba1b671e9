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

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("invalid cost model: {0}")]
    InvalidCostModel(String),

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("qubit {0} appears as both control and target")]
    OverlappingQubits(usize),

    #[error("state has {0} qubits, at most {max} are supported", max = crate::qsim::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("branch has zero norm")]
    ZeroNormBranch,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("erase targets wire {0}, which is not an ancilla")]
    EraseOnData(usize),

    #[error("circuit is not unitary (contains erasure)")]
    NotUnitary,

    #[error("circuit parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("error amplitudes cannot be normalized")]
    NotNormalizable,

    #[error("invalid label query: {0}")]
    InvalidLabelQuery(String),

    #[error("label plans cover {left} and {right} switching stations")]
    PlanSizeMismatch { left: usize, right: usize },

    #[error("pattern has {got} entries, expected {expected}")]
    PatternLength { expected: usize, got: usize },

    #[error("both qubits live in block {0}; use the intra-block compiler")]
    SameBlock(usize),

    #[error("block {0} has no active control unit")]
    NoActiveCu(usize),

    #[error("operation allowed only on the boundary qubit, got block {block} wire {wire}")]
    NotBoundary { block: usize, wire: usize },

    #[error("operation not allowed in the {0} phase")]
    WrongPhase(String),

    #[error("invalid noise model: {0}")]
    InvalidNoise(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
