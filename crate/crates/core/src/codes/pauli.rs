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

use std::fmt;

use crate::error::Result;
use crate::qsim::{Pauli, StateVector};
use crate::scalar::Scalar;

/// Phase-free Pauli operator on up to 64 qubits as `(x, z)` bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub n: usize,
    pub x: u64,
    pub z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self { n, x: 0, z: 0 }
    }

    pub fn xs(n: usize, support: &[usize]) -> Self {
        Self {
            n,
            x: mask(support),
            z: 0,
        }
    }

    pub fn zs(n: usize, support: &[usize]) -> Self {
        Self {
            n,
            x: 0,
            z: mask(support),
        }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let b = 1u64 << qubit;
        match p {
            Pauli::X => Self { n, x: b, z: 0 },
            Pauli::Y => Self { n, x: b, z: b },
            Pauli::Z => Self { n, x: 0, z: b },
        }
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Product up to phase.
    pub fn mul(&self, other: &PauliString) -> Self {
        Self {
            n: self.n.max(other.n),
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }

    pub fn factor(&self, q: usize) -> Option<Pauli> {
        match (self.x >> q & 1, self.z >> q & 1) {
            (0, 0) => None,
            (1, 0) => Some(Pauli::X),
            (0, 1) => Some(Pauli::Z),
            _ => Some(Pauli::Y),
        }
    }

    /// Applies the operator to qubits `0..n` of `state`.
    pub fn apply<T: Scalar>(&self, state: &mut StateVector<T>) -> Result<()> {
        for q in 0..self.n {
            if let Some(p) = self.factor(q) {
                state.apply_error(q, p)?;
            }
        }
        Ok(())
    }
}

fn mask(support: &[usize]) -> u64 {
    support.iter().fold(0, |m, &q| m | 1 << q)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            let c = match self.factor(q) {
                None => 'I',
                Some(Pauli::X) => 'X',
                Some(Pauli::Y) => 'Y',
                Some(Pauli::Z) => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation() {
        let a = PauliString::xs(3, &[0, 1]);
        let b = PauliString::zs(3, &[0, 1]);
        let c = PauliString::zs(3, &[0]);
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
        assert_eq!(PauliString::single(3, 1, Pauli::Y).to_string(), "IYI");
        assert_eq!(a.mul(&b).to_string(), "YYI");
    }
}
