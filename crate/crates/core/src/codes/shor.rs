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

//! Shor [[9,1,3]] circuits on a 16-qubit block (9 data + 7 ancillas).
//!
//! Data triples occupy chain slots 0-2, 5-7 and 10-12 with the ancillas in
//! the gaps (3, 4, 8, 9) and at the end (13-15), so a dense
//! 3-on/2-off/3-on/2-off/3-on control pattern addresses exactly the data.

use crate::codes::Circuit;
use crate::qsim::{Control, Gate};

pub const N_DATA: usize = 9;
pub const N_ANCILLA: usize = 7;

pub const DATA_SLOTS: [usize; 9] = [0, 1, 2, 5, 6, 7, 10, 11, 12];
pub const ANCILLA_SLOTS: [usize; 7] = [3, 4, 8, 9, 13, 14, 15];

/// Ancilla wire index `k` (0-based among ancillas).
const fn anc(k: usize) -> usize {
    N_DATA + k
}

pub fn positions() -> Vec<usize> {
    DATA_SLOTS.iter().chain(&ANCILLA_SLOTS).copied().collect()
}

fn circuit() -> Circuit {
    Circuit::new(N_DATA, N_ANCILLA)
        .with_positions(positions())
        .expect("distinct slots")
}

/// `|psi>|0>^8` on the data wires to `alpha|0_L> + beta|1_L>` with
/// `|0_L> = (|000> + |111>)^3 / 2^(3/2)`.
pub fn shor_encode() -> Circuit {
    let mut c = circuit();
    let mut g = |gate| {
        c.gate(gate).expect("encoder wires are in range");
    };
    g(Gate::cnot(0, 3));
    g(Gate::cnot(0, 6));
    for lead in [0, 3, 6] {
        g(Gate::h(lead));
    }
    for lead in [0, 3, 6] {
        g(Gate::cnot(lead, lead + 1));
        g(Gate::cnot(lead, lead + 2));
    }
    c
}

/// Section (i) resolves phase flips through the two X-type generators;
/// its ancillas are erased and reused by section (ii), which resolves bit
/// flips triple by triple.
pub fn shor_ec() -> Circuit {
    let mut c = circuit();
    let mut g = |gate| {
        c.gate(gate).expect("EC wires are in range");
    };

    // (i) phase flips, read in the Hadamard-rotated data frame. Ancilla 0
    // holds the parity of triples 0+1, ancilla 2 that of triples 1+2.
    let (p0, p1) = (anc(0), anc(2));
    for d in 0..N_DATA {
        g(Gate::h(d));
    }
    for d in 0..N_DATA {
        if d < 6 {
            g(Gate::cnot(d, p0));
        }
        if d >= 3 {
            g(Gate::cnot(d, p1));
        }
    }
    for (triple, (s0, s1)) in [(true, false), (true, true), (false, true)]
        .into_iter()
        .enumerate()
    {
        g(Gate::mcx(
            [Control::new(p0, s0), Control::new(p1, s1)],
            3 * triple,
        ));
    }
    c.erase(p0).expect("ancilla wire");
    c.erase(p1).expect("ancilla wire");
    for d in 0..N_DATA {
        c.gate(Gate::h(d)).expect("data wire");
    }

    // (ii) bit flips: ancillas 2t and 2t+1 read Z_aZ_b and Z_bZ_c of triple t.
    let mut g = |gate| {
        c.gate(gate).expect("EC wires are in range");
    };
    for t in 0..3 {
        let (da, db, dc) = (3 * t, 3 * t + 1, 3 * t + 2);
        let (s0, s1) = (anc(2 * t), anc(2 * t + 1));
        g(Gate::cnot(da, s0));
        g(Gate::cnot(db, s0));
        g(Gate::cnot(db, s1));
        g(Gate::cnot(dc, s1));
        for (d, (b0, b1)) in [(da, (true, false)), (db, (true, true)), (dc, (false, true))] {
            g(Gate::mcx([Control::new(s0, b0), Control::new(s1, b1)], d));
        }
    }
    for k in 0..6 {
        c.erase(anc(k)).expect("ancilla wire");
    }
    c
}
