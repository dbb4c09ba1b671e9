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

use crate::error::{Error, Result};

/// Physical cells used to represent one logical qubit in the two-species
/// always-on Ising encoding.
pub const DEFAULT_CELLS_PER_QUBIT: usize = 8;

/// Geometry of the cell chain: `num_blocks` blocks of `block_size_qubits`
/// qubits, each followed by a switching station of `ss_cells` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainLayout {
    pub cells_per_qubit: usize,
    pub block_size_qubits: usize,
    pub ss_cells: usize,
    pub num_blocks: usize,
    pub label_bits: usize,
}

impl Default for ChainLayout {
    fn default() -> Self {
        Self {
            cells_per_qubit: DEFAULT_CELLS_PER_QUBIT,
            block_size_qubits: 10,
            ss_cells: 0,
            num_blocks: 1,
            label_bits: 0,
        }
    }
}

impl ChainLayout {
    pub fn new(
        cells_per_qubit: usize,
        block_size_qubits: usize,
        ss_cells: usize,
        num_blocks: usize,
        label_bits: usize,
    ) -> Result<Self> {
        let layout = Self {
            cells_per_qubit,
            block_size_qubits,
            ss_cells,
            num_blocks,
            label_bits,
        };
        layout.validate()?;
        Ok(layout)
    }

    /// A layout of `num_blocks` blocks with default cell geometry and no
    /// switching-station cells.
    pub fn blocks(block_size_qubits: usize, num_blocks: usize) -> Result<Self> {
        Self::new(DEFAULT_CELLS_PER_QUBIT, block_size_qubits, 0, num_blocks, 0)
    }

    pub fn with_ss_cells(mut self, ss_cells: usize) -> Self {
        self.ss_cells = ss_cells;
        self
    }

    pub fn with_num_blocks(mut self, num_blocks: usize) -> Result<Self> {
        self.num_blocks = num_blocks;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("cells_per_qubit", self.cells_per_qubit),
            ("block_size_qubits", self.block_size_qubits),
            ("num_blocks", self.num_blocks),
        ] {
            if v == 0 {
                return Err(Error::InvalidLayout(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn block_cells(&self) -> usize {
        self.block_size_qubits * self.cells_per_qubit + self.ss_cells
    }

    pub fn total_cells(&self) -> usize {
        self.num_blocks * self.block_cells()
    }

    pub fn total_qubits(&self) -> usize {
        self.num_blocks * self.block_size_qubits
    }

    /// Number of qubit-sized slots a switching station occupies on the CU's
    /// path, rounded up.
    pub fn ss_slots(&self) -> usize {
        self.ss_cells.div_ceil(self.cells_per_qubit)
    }

    /// Distance, in qubit slots, between the same wire of adjacent blocks.
    pub fn block_stride_slots(&self) -> usize {
        self.block_size_qubits + self.ss_slots()
    }

    /// Chain slot of `slot` inside block `block`.
    pub fn global_slot(&self, block: usize, slot: usize) -> usize {
        block * self.block_stride_slots() + slot
    }

    /// Plain-architecture capacity: how many qubits `cells` cells can hold
    /// with no switching stations or sub-computers.
    pub fn plain_capacity(cells: usize, cells_per_qubit: usize) -> usize {
        cells / cells_per_qubit
    }
}

pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1, "ceil_log2 of zero");
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Cells needed per qubit in the sub-computer architecture, including its
/// label bits, `r_aux` auxiliary bits, spacing and the CU.
pub fn subcomputer_cell_cost(n_qubits: u64, r_aux: u64) -> u64 {
    2 * 4 * (u64::from(ceil_log2(n_qubits)) + r_aux) + 10
}

/// Largest qubit count `n` whose sub-computer layout fits into `cells`,
/// i.e. `n * subcomputer_cell_cost(n, r_aux) <= cells`.
pub fn subcomputer_capacity(cells: u64, r_aux: u64) -> u64 {
    // cost grows with n, so the fitting set is a prefix of the naturals.
    let fits = |n: u64| n == 0 || n * subcomputer_cell_cost(n, r_aux) <= cells;
    let (mut lo, mut hi) = (0u64, cells / 10 + 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}
