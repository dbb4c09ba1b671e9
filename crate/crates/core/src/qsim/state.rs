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

use std::io::{self, Write};

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Gate, OneQubitKind, Pauli, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Basis-state label with qubit 0 first.
pub fn basis_label(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A uniformly random single-qubit state `(alpha, beta)`.
pub fn random_qubit<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> (Complex<T>, Complex<T>) {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let half = cos_theta.acos() / 2.0;
    let alpha = Complex::new(T::from_f64_lossy(half.cos()), T::zero());
    let beta = Complex::from_polar(T::from_f64_lossy(half.sin()), T::from_f64_lossy(phi));
    (alpha, beta)
}

/// Pure state over `n` qubits with its own seeded RNG for erasure and
/// measurement outcomes.
#[derive(Debug, Clone)]
pub struct StateVector<T: Scalar> {
    n: usize,
    amps: Vec<Complex<T>>,
    rng: ChaCha8Rng,
}

impl<T: Scalar> StateVector<T> {
    /// `|0...0>` on `n` qubits.
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        Self::basis(n, 0, seed)
    }

    pub fn basis(n: usize, index: usize, seed: u64) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        if index >> n != 0 {
            return Err(Error::QubitOutOfRange { index, n: 1 << n });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self {
            n,
            amps,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Builds a state from raw amplitudes, normalizing them.
    pub fn from_amplitudes(amps: Vec<Complex<T>>, seed: u64) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidPartition(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let mut s = Self {
            n,
            amps,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        s.normalize()?;
        Ok(s)
    }

    pub fn reseed(&mut self, seed: u64) {
        self.rng = ChaCha8Rng::seed_from_u64(seed);
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    fn normalize(&mut self) -> Result<()> {
        let norm = self.norm_sqr().sqrt();
        if !(norm > T::epsilon_check()) || !norm.is_finite() {
            return Err(Error::ZeroNormBranch);
        }
        let inv = T::one() / norm;
        for a in &mut self.amps {
            *a = a.scale(inv);
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            Err(Error::QubitOutOfRange {
                index: q,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// `self` on the low qubits, `other` on the high ones. The RNG is taken
    /// from `self`.
    pub fn tensor(&self, other: &StateVector<T>) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let mut amps = Vec::with_capacity(1 << n);
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            n,
            amps,
            rng: self.rng.clone(),
        })
    }

    fn matrix(kind: OneQubitKind) -> [[Complex<T>; 2]; 2] {
        let z = Complex::new(T::zero(), T::zero());
        let o = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let h = T::from_f64_lossy(std::f64::consts::FRAC_1_SQRT_2);
        let hc = Complex::new(h, T::zero());
        match kind {
            OneQubitKind::X => [[z, o], [o, z]],
            OneQubitKind::Y => [[z, -i], [i, z]],
            OneQubitKind::Z => [[o, z], [z, -o]],
            OneQubitKind::H => [[hc, hc], [hc, -hc]],
            OneQubitKind::S => [[o, z], [z, i]],
            OneQubitKind::Sdg => [[o, z], [z, -i]],
        }
    }

    fn apply_controlled(
        &mut self,
        mask: usize,
        value: usize,
        target: usize,
        m: &[[Complex<T>; 2]; 2],
    ) {
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & tbit != 0 || i & mask != value {
                continue;
            }
            let j = i | tbit;
            let (a, b) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0][0] * a + m[0][1] * b;
            self.amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }

    fn apply_controlled_x(&mut self, mask: usize, value: usize, target: usize) {
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & tbit == 0 && i & mask == value {
                self.amps.swap(i, i | tbit);
            }
        }
    }

    fn apply_controlled_z(&mut self, mask: usize, value: usize, target: usize) {
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & tbit != 0 && i & mask == value {
                self.amps[i] = -self.amps[i];
            }
        }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        let (mut mask, mut value) = (0usize, 0usize);
        for c in gate.controls() {
            mask |= 1 << c.wire;
            if c.polarity {
                value |= 1 << c.wire;
            }
        }
        match gate {
            Gate::One {
                kind: OneQubitKind::X,
                qubit,
            } => self.apply_controlled_x(0, 0, *qubit),
            Gate::One {
                kind: OneQubitKind::Z,
                qubit,
            } => self.apply_controlled_z(0, 0, *qubit),
            Gate::One { kind, qubit } => self.apply_controlled(0, 0, *qubit, &Self::matrix(*kind)),
            Gate::Cnot { target, .. } | Gate::Mcx { target, .. } => {
                self.apply_controlled_x(mask, value, *target)
            }
            Gate::Cz { target, .. } | Gate::Mcz { target, .. } => {
                self.apply_controlled_z(mask, value, *target)
            }
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    /// Applies a Pauli error; `Y` is the exact Pauli matrix, equal to `Z X`
    /// up to the global phase `i`.
    pub fn apply_error(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        self.apply(&Gate::pauli(pauli, qubit))
    }

    /// Probability that `qubit` reads 1.
    pub fn prob_one(&self, qubit: usize) -> Result<T> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .fold(T::zero(), |acc, (_, a)| acc + a.norm_sqr()))
    }

    /// Projects `qubit` onto `outcome` and renormalizes, returning the
    /// branch probability.
    pub fn project(&mut self, qubit: usize, outcome: bool) -> Result<T> {
        let p1 = self.prob_one(qubit)?;
        let p = if outcome { p1 } else { T::one() - p1 };
        if !(p > T::epsilon_check()) {
            return Err(Error::ZeroNormBranch);
        }
        let bit = 1usize << qubit;
        let zero = Complex::new(T::zero(), T::zero());
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & bit != 0) != outcome {
                *a = zero;
            }
        }
        self.normalize()?;
        Ok(p)
    }

    /// Projective Z measurement with Born-rule sampling; the state collapses.
    pub fn measure(&mut self, qubit: usize) -> Result<bool> {
        let p1 = self.prob_one(qubit)?.to_f64().unwrap_or(0.0);
        let outcome = self.rng.gen::<f64>() < p1;
        self.project(qubit, outcome)?;
        Ok(outcome)
    }

    /// Resets `qubit` to `|0>` by selecting the `outcome` branch and
    /// relaxing it to ground. Returns the branch probability.
    pub fn erase_forced(&mut self, qubit: usize, outcome: bool) -> Result<T> {
        let p = self.project(qubit, outcome)?;
        if outcome {
            self.apply_controlled_x(0, 0, qubit);
        }
        Ok(p)
    }

    /// Erasure channel: the qubit ends in `|0>` with certainty. The
    /// dissipative decay is modelled as a sampled branch selection followed
    /// by relaxation to ground; the sampled branch is returned.
    pub fn erase(&mut self, qubit: usize) -> Result<bool> {
        let outcome = self.measure(qubit)?;
        if outcome {
            self.apply_controlled_x(0, 0, qubit);
        }
        Ok(outcome)
    }

    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            }))
    }

    /// `|<a|b>|^2`.
    pub fn fidelity(&self, other: &StateVector<T>) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `<target| rho_wires |target>` where `rho_wires` is the reduced state of
    /// `self` on `wires` (in that order, `wires[k]` carrying qubit `k` of
    /// `target`).
    pub fn reduced_fidelity(&self, wires: &[usize], target: &StateVector<T>) -> Result<T> {
        self.check_partition(wires, true)?;
        if wires.len() != target.n {
            return Err(Error::DimensionMismatch {
                left: wires.len(),
                right: target.n,
            });
        }
        let rest: Vec<usize> = (0..self.n).filter(|q| !wires.contains(q)).collect();
        let mut total = T::zero();
        for r in 0..1usize << rest.len() {
            let base = scatter(r, &rest);
            let mut overlap = Complex::new(T::zero(), T::zero());
            for (d, t) in target.amps.iter().enumerate() {
                overlap = overlap + t.conj() * self.amps[base | scatter(d, wires)];
            }
            total = total + overlap.norm_sqr();
        }
        Ok(total)
    }

    fn check_partition(&self, part: &[usize], allow_full: bool) -> Result<()> {
        if part.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if !allow_full && part.len() >= self.n {
            return Err(Error::InvalidPartition(
                "partition must be a proper subset".into(),
            ));
        }
        for (i, &q) in part.iter().enumerate() {
            self.check_qubit(q)?;
            if part[..i].contains(&q) {
                return Err(Error::InvalidPartition(format!("qubit {q} repeated")));
            }
        }
        Ok(())
    }

    /// Schmidt coefficients across `part | rest`, largest first.
    pub fn schmidt_coefficients(&self, part: &[usize]) -> Result<Vec<f64>> {
        self.check_partition(part, false)?;
        let rest: Vec<usize> = (0..self.n).filter(|q| !part.contains(q)).collect();
        let (rows, cols) = if part.len() <= rest.len() {
            (part, rest.as_slice())
        } else {
            (rest.as_slice(), part)
        };
        let m = DMatrix::from_fn(1 << rows.len(), 1 << cols.len(), |r, c| {
            let a = self.amps[scatter(r, rows) | scatter(c, cols)];
            Complex::new(
                a.re.to_f64().unwrap_or(f64::NAN),
                a.im.to_f64().unwrap_or(f64::NAN),
            )
        });
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        Ok(sv)
    }

    /// True when the Schmidt rank across `part | rest` is one, i.e. the
    /// second singular value is below `tol`.
    pub fn is_product(&self, part: &[usize], tol: f64) -> Result<bool> {
        let sv = self.schmidt_coefficients(part)?;
        Ok(sv.get(1).copied().unwrap_or(0.0) < tol)
    }

    /// Writes `index real imag` per line.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (i, a) in self.amps.iter().enumerate() {
            writeln!(out, "{i} {:e} {:e}", a.re, a.im)?;
        }
        Ok(())
    }
}

/// Deposits the bits of `value` onto the positions `wires`.
fn scatter(value: usize, wires: &[usize]) -> usize {
    wires
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &w)| acc | ((value >> k & 1) << w))
}
