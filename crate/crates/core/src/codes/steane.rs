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

//! Steane [[7,1,3]] circuits on a 10-qubit block (7 data + 3 ancillas).
//!
//! Data wire `w` sits at Hamming position `w + 1`; its bit-flip syndrome is
//! the binary expansion of `w + 1` with ancilla 7 carrying weight 4,
//! ancilla 8 weight 2 and ancilla 9 weight 1.

use crate::codes::Circuit;
use crate::qsim::{Control, Gate};

pub const N_DATA: usize = 7;
pub const N_ANCILLA: usize = 3;

/// Ancilla wire holding the syndrome bit of weight `4 >> k`.
const ANCILLAS: [usize; 3] = [7, 8, 9];

/// Data wires in the support of the check read by ancilla `k`.
pub(crate) fn check_support(k: usize) -> Vec<usize> {
    (0..N_DATA)
        .filter(|w| (w + 1) >> (2 - k) & 1 == 1)
        .collect()
}

fn syndrome_controls(data: usize) -> Vec<Control> {
    (0..3)
        .map(|k| Control::new(ANCILLAS[k], (data + 1) >> (2 - k) & 1 == 1))
        .collect()
}

/// `|psi>|0>^6` on the data wires to `alpha|0_L> + beta|1_L>`. The input
/// sits on wire 2; wires 0, 1 and 3 seed the three X-type generators.
pub fn steane_encode() -> Circuit {
    let mut c = Circuit::new(N_DATA, N_ANCILLA);
    let mut g = |gate| {
        c.gate(gate).expect("encoder wires are in range");
    };
    g(Gate::cnot(2, 4));
    g(Gate::cnot(2, 5));
    for pivot in [0, 1, 3] {
        g(Gate::h(pivot));
    }
    for (pivot, targets) in [(0, [2, 4, 6]), (1, [2, 5, 6]), (3, [4, 5, 6])] {
        for t in targets {
            g(Gate::cnot(pivot, t));
        }
    }
    c
}

/// Coherent bit-flip then phase-flip correction, erasing the same three
/// ancillas after each half.
pub fn steane_ec() -> Circuit {
    let mut c = Circuit::new(N_DATA, N_ANCILLA);
    bit_flip_section(&mut c);
    // Phase flips: the same section in the Hadamard-rotated frame.
    for data in 0..N_DATA {
        c.gate(Gate::h(data)).expect("data wire");
    }
    bit_flip_section(&mut c);
    for data in 0..N_DATA {
        c.gate(Gate::h(data)).expect("data wire");
    }
    c
}

/// Z-type parities onto the ancillas, the seven keyed corrections, then
/// erasure of the three ancillas.
fn bit_flip_section(c: &mut Circuit) {
    let mut g = |gate| {
        c.gate(gate).expect("EC wires are in range");
    };
    // Grouped by data control so that shared controls fan out.
    for data in (0..N_DATA).rev() {
        for (k, &a) in ANCILLAS.iter().enumerate() {
            if check_support(k).contains(&data) {
                g(Gate::cnot(data, a));
            }
        }
    }
    for data in (0..N_DATA).rev() {
        g(Gate::mcx(syndrome_controls(data), data));
    }
    for a in ANCILLAS {
        c.erase(a).expect("ancilla wire");
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;

    use super::*;
    use crate::codes::{CodeSpec, Op};
    use crate::qsim::Pauli;

    #[test]
    fn x_syndromes_are_distinct() {
        let code = CodeSpec::steane();
        let ec = steane_ec();
        let extraction: Vec<_> = ec
            .ops()
            .iter()
            .take_while(|op| matches!(op, Op::Gate(g) if matches!(g, Gate::Cnot { .. })))
            .cloned()
            .collect();
        assert_eq!(extraction.len(), 12);
        let mut seen = Vec::new();
        for q in 0..N_DATA {
            let mut s = code
                .encoded_block(Complex::new(0.6, 0.0), Complex::new(0.8, 0.0), 0, 0)
                .unwrap();
            s.apply_error(q, Pauli::X).unwrap();
            for op in &extraction {
                if let Op::Gate(g) = op {
                    s.apply(g).unwrap();
                }
            }
            let bits: Vec<bool> = ANCILLAS
                .iter()
                .map(|&a| {
                    let p = s.prob_one(a).unwrap();
                    assert!(p < 1e-12 || p > 1.0 - 1e-12);
                    p > 0.5
                })
                .collect();
            assert!(bits.iter().any(|&b| b));
            assert!(!seen.contains(&bits), "repeated syndrome at {q}");
            seen.push(bits);
        }
    }

    #[test]
    fn ancillas_are_reused_across_halves() {
        let ec = steane_ec();
        assert_eq!(ec.peak_ancilla_usage(), 3);
        let first_erase = ec
            .ops()
            .iter()
            .position(|op| matches!(op, Op::Erase(_)))
            .unwrap();
        let used_after: Vec<usize> = ec.ops()[first_erase + 3..]
            .iter()
            .flat_map(|op| op.wires())
            .filter(|&w| w >= N_DATA)
            .collect();
        for a in ANCILLAS {
            assert!(used_after.contains(&a));
        }
        let mcx = ec.ops()[..first_erase]
            .iter()
            .filter(|op| matches!(op, Op::Gate(Gate::Mcx { .. })))
            .count();
        assert_eq!(mcx, 7);
    }
}
