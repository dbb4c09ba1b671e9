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
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{shor, steane, Circuit, PauliString};
use crate::error::{Error, Result};
use crate::qsim::StateVector;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Steane,
    Shor,
}

impl CodeKind {
    pub const ALL: [CodeKind; 2] = [CodeKind::Steane, CodeKind::Shor];
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Steane => "steane",
            CodeKind::Shor => "shor",
        })
    }
}

impl FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "steane" => Ok(CodeKind::Steane),
            "shor" => Ok(CodeKind::Shor),
            _ => Err(Error::Config(format!("unknown code {s:?}"))),
        }
    }
}

/// Stabilizer description of a code together with its block geometry.
/// Pauli strings act on the data wires only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub n_data: usize,
    pub n_ancilla: usize,
    pub block_size_qubits: usize,
    pub stabilizers: Vec<PauliString>,
    pub logical_x: PauliString,
    pub logical_z: PauliString,
}

impl CodeSpec {
    pub fn steane() -> Self {
        let n = steane::N_DATA;
        let mut stabilizers = Vec::new();
        for k in 0..3 {
            stabilizers.push(PauliString::zs(n, &steane::check_support(k)));
        }
        for k in 0..3 {
            stabilizers.push(PauliString::xs(n, &steane::check_support(k)));
        }
        let all: Vec<usize> = (0..n).collect();
        Self {
            kind: CodeKind::Steane,
            n_data: n,
            n_ancilla: steane::N_ANCILLA,
            block_size_qubits: n + steane::N_ANCILLA,
            stabilizers,
            logical_x: PauliString::xs(n, &all),
            logical_z: PauliString::zs(n, &all),
        }
    }

    pub fn shor() -> Self {
        let n = shor::N_DATA;
        let mut stabilizers = Vec::new();
        for t in 0..3 {
            stabilizers.push(PauliString::zs(n, &[3 * t, 3 * t + 1]));
            stabilizers.push(PauliString::zs(n, &[3 * t + 1, 3 * t + 2]));
        }
        stabilizers.push(PauliString::xs(n, &[0, 1, 2, 3, 4, 5]));
        stabilizers.push(PauliString::xs(n, &[3, 4, 5, 6, 7, 8]));
        let all: Vec<usize> = (0..n).collect();
        Self {
            kind: CodeKind::Shor,
            n_data: n,
            n_ancilla: shor::N_ANCILLA,
            block_size_qubits: n + shor::N_ANCILLA,
            stabilizers,
            logical_x: PauliString::zs(n, &all),
            logical_z: PauliString::xs(n, &all),
        }
    }

    pub fn of(kind: CodeKind) -> Self {
        match kind {
            CodeKind::Steane => Self::steane(),
            CodeKind::Shor => Self::shor(),
        }
    }

    pub fn n_wires(&self) -> usize {
        self.n_data + self.n_ancilla
    }

    pub fn encode(&self) -> Circuit {
        match self.kind {
            CodeKind::Steane => steane::steane_encode(),
            CodeKind::Shor => shor::shor_encode(),
        }
    }

    pub fn ec(&self) -> Circuit {
        match self.kind {
            CodeKind::Steane => steane::steane_ec(),
            CodeKind::Shor => shor::shor_ec(),
        }
    }

    pub fn data_wires(&self) -> Vec<usize> {
        (0..self.n_data).collect()
    }

    /// Checks the stabilizer/logical commutation relations.
    pub fn check_algebra(&self) -> bool {
        let s = &self.stabilizers;
        let pairwise = s
            .iter()
            .enumerate()
            .all(|(i, a)| s[i + 1..].iter().all(|b| a.commutes_with(b)));
        let logicals = s
            .iter()
            .all(|a| a.commutes_with(&self.logical_x) && a.commutes_with(&self.logical_z));
        pairwise && logicals && !self.logical_x.commutes_with(&self.logical_z)
    }

    /// Data-register state `alpha|0_L> + beta|1_L>` produced by the encoder.
    pub fn encoded_data<T: Scalar>(
        &self,
        alpha: Complex<T>,
        beta: Complex<T>,
    ) -> Result<StateVector<T>> {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << self.n_data];
        amps[0] = alpha;
        amps[1 << self.input_wire()] = beta;
        let mut s = StateVector::from_amplitudes(amps, 0)?;
        for op in self.encode().ops() {
            match op {
                super::Op::Gate(g) => s.apply(g)?,
                super::Op::Erase(_) => return Err(Error::NotUnitary),
            }
        }
        Ok(s)
    }

    /// Full block (data + ancillas at `|0>`) plus `extra` trailing qubits at
    /// `|0>`, holding the encoded logical state.
    pub fn encoded_block<T: Scalar>(
        &self,
        alpha: Complex<T>,
        beta: Complex<T>,
        extra: usize,
        seed: u64,
    ) -> Result<StateVector<T>> {
        let data = self.encoded_data(alpha, beta)?;
        let mut rest = StateVector::new(self.n_ancilla + extra, seed)?;
        rest.reseed(seed);
        let mut s = data.tensor(&rest)?;
        s.reseed(seed);
        Ok(s)
    }

    /// Wire carrying the unencoded input qubit.
    pub fn input_wire(&self) -> usize {
        match self.kind {
            CodeKind::Steane => 2,
            CodeKind::Shor => 0,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::codes::Op;
    use crate::qsim::Gate;

    type C = Complex<f64>;

    fn c(re: f64) -> C {
        Complex::new(re, 0.0)
    }

    /// `|0_L>` built without the encoder: project a seed basis state with
    /// `(1 + S)/2` for every generator and for the logical Z.
    pub(crate) fn codeword_by_projection(code: &CodeSpec, one: bool) -> StateVector<f64> {
        let n = code.n_data;
        for seed in 0..1usize << n {
            let mut s = StateVector::<f64>::basis(n, seed, 0).unwrap();
            let mut ok = true;
            for g in code.stabilizers.iter().chain([&code.logical_z]) {
                let mut t = s.clone();
                g.apply(&mut t).unwrap();
                let amps: Vec<C> = s
                    .amplitudes()
                    .iter()
                    .zip(t.amplitudes())
                    .map(|(a, b)| (a + b) * 0.5)
                    .collect();
                match StateVector::from_amplitudes(amps, 0) {
                    Ok(next) => s = next,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                if one {
                    code.logical_x.apply(&mut s).unwrap();
                }
                return s;
            }
        }
        unreachable!("some basis state overlaps the code space")
    }

    #[test]
    fn algebra_and_geometry() {
        let steane = CodeSpec::steane();
        let shor = CodeSpec::shor();
        assert!(steane.check_algebra());
        assert!(shor.check_algebra());
        assert_eq!(steane.block_size_qubits, 10);
        assert_eq!(shor.block_size_qubits, 16);
        assert_eq!(steane.stabilizers.len(), 6);
        assert_eq!(shor.stabilizers.len(), 8);
        assert_eq!(steane.ec().positions().len(), 10);
        assert_eq!(shor.ec().span(), 16);
    }

    #[test]
    fn encoded_zero_is_stabilized() {
        for code in [CodeSpec::steane(), CodeSpec::shor()] {
            let zero = code.encoded_data(c(1.0), c(0.0)).unwrap();
            for g in &code.stabilizers {
                let mut t = zero.clone();
                g.apply(&mut t).unwrap();
                let overlap = zero.inner(&t).unwrap();
                assert!((overlap - c(1.0)).norm() < 1e-12, "{} {g}", code.kind);
            }
        }
    }

    #[test]
    fn encoder_matches_projected_codewords() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for code in [CodeSpec::steane(), CodeSpec::shor()] {
            let zero = codeword_by_projection(&code, false);
            let one = codeword_by_projection(&code, true);
            let plus_l: Vec<C> = zero
                .amplitudes()
                .iter()
                .zip(one.amplitudes())
                .map(|(a, b)| (a + b) * h)
                .collect();
            let plus_l = StateVector::from_amplitudes(plus_l, 0).unwrap();
            let enc = code.encoded_data(c(h), c(h)).unwrap();
            let ovl = enc.inner(&plus_l).unwrap();
            // Equal including the relative sign of the two codewords.
            assert!((ovl.norm_sqr() - 1.0).abs() < 1e-12, "{}", code.kind);
            let enc0 = code.encoded_data(c(1.0), c(0.0)).unwrap();
            let enc1 = code.encoded_data(c(0.0), c(1.0)).unwrap();
            let (o0, o1) = (enc0.inner(&zero).unwrap(), enc1.inner(&one).unwrap());
            assert!((o0 - o1).norm() < 1e-12 && (o0.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn steane_zero_supported_on_dual_hamming_words() {
        let code = CodeSpec::steane();
        let block = code.encoded_block(c(1.0), c(0.0), 0, 0).unwrap();
        // Span of the three Hamming parity rows, as data-bit masks.
        let rows: Vec<usize> = (0..3)
            .map(|k| {
                crate::codes::steane::check_support(k)
                    .iter()
                    .fold(0, |m, &w| m | 1 << w)
            })
            .collect();
        let words: Vec<usize> = (0..8)
            .map(|sel: usize| {
                (0..3)
                    .filter(|k| sel >> k & 1 == 1)
                    .fold(0, |m, k| m ^ rows[k])
            })
            .collect();
        let amp = 1.0 / 8f64.sqrt();
        for (i, a) in block.amplitudes().iter().enumerate() {
            if words.contains(&i) {
                assert!((a - c(amp)).norm() < 1e-12, "index {i}");
                assert_eq!((i as u32).count_ones() % 2, 0);
            } else {
                assert!(a.norm() < 1e-12, "index {i}");
            }
        }
    }

    #[test]
    fn shor_plus_has_ghz_triples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let code = CodeSpec::shor();
        let plus = code.encoded_data(c(h), c(h)).unwrap();
        for t in 0..3 {
            let sv = plus
                .schmidt_coefficients(&[3 * t, 3 * t + 1, 3 * t + 2])
                .unwrap();
            let rank = sv.iter().filter(|&&s| s > 1e-9).count();
            assert_eq!(rank, 2, "triple {t}");
        }
    }

    #[test]
    fn shor_encode_then_inverse_is_identity() {
        let code = CodeSpec::shor();
        let enc = code.encode();
        let inv = enc.inverse().unwrap();
        let (a, b) = (Complex::new(0.6, 0.0), Complex::new(0.0, 0.8));
        let mut amps = vec![c(0.0); 1 << 16];
        amps[0] = a;
        amps[1] = b;
        let input = StateVector::from_amplitudes(amps, 0).unwrap();
        let mut s = input.clone();
        enc.run(&mut s).unwrap();
        inv.run(&mut s).unwrap();
        assert!((s.fidelity(&input).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn encoders_touch_only_data() {
        for code in [CodeSpec::steane(), CodeSpec::shor()] {
            for op in code.encode().ops() {
                match op {
                    Op::Gate(g) => assert!(g.wires().iter().all(|&w| w < code.n_data)),
                    Op::Erase(_) => panic!("encoder erases"),
                }
            }
        }
        let _ = Gate::h(0);
    }
}
