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

use num_complex::Complex;
use num_traits::Zero;

use super::CodeSpec;
use crate::error::{Error, Result};
use crate::qsim::{Gate, Pauli, StateVector};
use crate::scalar::Scalar;

/// Amplitudes of the four environment branches `|E_0>..|E_3>`: no error,
/// X, Y and Z on the chosen data qubit. Normalized by the experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorAmplitudes<T: Scalar> {
    pub identity: Complex<T>,
    pub x: Complex<T>,
    pub y: Complex<T>,
    pub z: Complex<T>,
}

impl<T: Scalar> ErrorAmplitudes<T> {
    /// Unit no-error branch plus the given error amplitudes.
    pub fn new(x: Complex<T>, y: Complex<T>, z: Complex<T>) -> Self {
        Self {
            identity: Complex::new(T::one(), T::zero()),
            x,
            y,
            z,
        }
    }

    pub fn real(x: f64, y: f64, z: f64) -> Self {
        let c = |v: f64| Complex::new(T::from_f64_lossy(v), T::zero());
        Self::new(c(x), c(y), c(z))
    }

    fn branches(&self) -> [(Option<Pauli>, Complex<T>); 4] {
        [
            (None, self.identity),
            (Some(Pauli::X), self.x),
            (Some(Pauli::Y), self.y),
            (Some(Pauli::Z), self.z),
        ]
    }

    fn norm_sqr(&self) -> T {
        self.branches()
            .iter()
            .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentReport {
    /// `<Q_P| rho_data |Q_P>` after the full EC circuit.
    pub data_fidelity: f64,
    /// Data factorizes from environment + ancillas before the final erasure.
    pub product_before_erasure: bool,
    /// ... and still after it.
    pub product_after_erasure: bool,
    /// Every ancilla is back in `|0>`.
    pub ancilla_reset: bool,
    /// Second Schmidt coefficient across data | rest before the final erasure.
    pub schmidt_residual: f64,
}

/// Prepares `|Q_P>|E_0> + dx|Q_X>|E_1> + dy|Q_Y>|E_2> + dz|Q_Z>|E_3>` with a
/// two-qubit environment appended after the block, runs the measurement-free
/// EC circuit, and checks that the data factorizes back to `|Q_P>`.
pub fn coherent_ec_experiment<T: Scalar>(
    code: &CodeSpec,
    amps: ErrorAmplitudes<T>,
    error_qubit: usize,
    logical: (Complex<T>, Complex<T>),
    product_tol: f64,
    seed: u64,
) -> Result<CoherentReport> {
    if error_qubit >= code.n_data {
        return Err(Error::QubitOutOfRange {
            index: error_qubit,
            n: code.n_data,
        });
    }
    let norm = amps.norm_sqr();
    if !norm.is_finite() || norm.is_zero() {
        return Err(Error::NotNormalizable);
    }

    let n_block = code.n_wires();
    let env = [n_block, n_block + 1];
    let base = code.encoded_block(logical.0, logical.1, 2, seed)?;
    let mut total = vec![Complex::new(T::zero(), T::zero()); base.amplitudes().len()];
    for (k, (pauli, c)) in amps.branches().into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut branch = base.clone();
        if let Some(p) = pauli {
            branch.apply_error(error_qubit, p)?;
        }
        for (bit, &w) in env.iter().enumerate() {
            if k >> bit & 1 == 1 {
                branch.apply(&Gate::x(w))?;
            }
        }
        for (t, a) in total.iter_mut().zip(branch.amplitudes()) {
            *t = *t + c * a;
        }
    }
    let mut state = StateVector::from_amplitudes(total, seed)?;

    let (body, tail) = code.ec().split_trailing_erasures();
    let data = code.data_wires();
    body.run(&mut state)?;
    let sv = state.schmidt_coefficients(&data)?;
    let schmidt_residual = sv.get(1).copied().unwrap_or(0.0);
    tail.run(&mut state)?;

    let reference = code.encoded_data(logical.0, logical.1)?;
    let eps = T::epsilon_check();
    let mut ancilla_reset = true;
    for a in code.n_data..n_block {
        ancilla_reset &= state.prob_one(a)? < eps;
    }
    Ok(CoherentReport {
        data_fidelity: state
            .reduced_fidelity(&data, &reference)?
            .to_f64()
            .unwrap_or(f64::NAN),
        product_before_erasure: schmidt_residual < product_tol,
        product_after_erasure: state.is_product(&data, product_tol)?,
        ancilla_reset,
        schmidt_residual,
    })
}

/// Encodes `(alpha, beta)`, applies `pauli` to data qubit `error_qubit`,
/// runs the EC circuit and returns the fidelity of the data register with
/// the uncorrupted codeword.
pub fn correct_single_error<T: Scalar>(
    code: &CodeSpec,
    logical: (Complex<T>, Complex<T>),
    error: Option<(usize, Pauli)>,
    seed: u64,
) -> Result<f64> {
    let mut state = code.encoded_block(logical.0, logical.1, 0, seed)?;
    if let Some((q, p)) = error {
        if q >= code.n_data {
            return Err(Error::QubitOutOfRange {
                index: q,
                n: code.n_data,
            });
        }
        state.apply_error(q, p)?;
    }
    code.ec().run(&mut state)?;
    let reference = code.encoded_data(logical.0, logical.1)?;
    Ok(state
        .reduced_fidelity(&code.data_wires(), &reference)?
        .to_f64()
        .unwrap_or(f64::NAN))
}
