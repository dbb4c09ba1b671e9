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

//! Logical error rate under i.i.d. Pauli noise between EC cycles.
//!
//! For Pauli errors the measurement-free EC always returns a codeword, up
//! to a logical Pauli fixed by the error pattern. That logical class is
//! found once per distinct pattern by simulating two probe states, and
//! trials then only sample patterns and combine classes.
//!
//! Trials are split into chunks of [`SWEEP_CHUNK`]. Chunk `k` of rate
//! index `r` draws from stream `(r << 32) | k` of a ChaCha generator keyed
//! by the master seed, so results do not depend on the thread count.

use std::collections::{HashMap, HashSet};
use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::BitXor;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::qsim::{Pauli, StateVector};

pub const SWEEP_CHUNK: u64 = 1 << 16;

/// Pauli error on the data register: bit `2q` is the X part on qubit `q`,
/// bit `2q + 1` the Z part.
pub type ErrorPattern = u64;

/// Logical Pauli left after correction, up to phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LogicalClass {
    /// Flips `|0_L>` and `|1_L>`.
    pub bit: bool,
    /// Flips `|+_L>` and `|-_L>`.
    pub phase: bool,
}

impl LogicalClass {
    pub fn is_identity(&self) -> bool {
        !self.bit && !self.phase
    }
}

impl BitXor for LogicalClass {
    type Output = LogicalClass;

    fn bitxor(self, rhs: LogicalClass) -> LogicalClass {
        LogicalClass {
            bit: self.bit ^ rhs.bit,
            phase: self.phase ^ rhs.phase,
        }
    }
}

pub struct LogicalClassifier {
    code: CodeSpec,
    probes: [(StateVector<f64>, StateVector<f64>); 2],
}

impl LogicalClassifier {
    pub fn new(code: &CodeSpec) -> Result<Self> {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        let probe =
            |a, b| -> Result<_> { Ok((code.encoded_block(a, b, 0, 0)?, code.encoded_data(a, b)?)) };
        Ok(Self {
            code: code.clone(),
            probes: [probe(one, zero)?, probe(h, h)?],
        })
    }

    pub fn pattern_from(&self, errors: &[(usize, Pauli)]) -> ErrorPattern {
        errors.iter().fold(0, |acc, &(q, p)| {
            acc ^ match p {
                Pauli::X => 1 << (2 * q),
                Pauli::Z => 2 << (2 * q),
                Pauli::Y => 3 << (2 * q),
            }
        })
    }

    /// Simulates one EC round on both probes carrying `pattern`.
    pub fn classify(&self, pattern: ErrorPattern) -> Result<LogicalClass> {
        if pattern >> (2 * self.code.n_data) != 0 {
            return Err(Error::PatternLength {
                expected: self.code.n_data,
                got: 64 - pattern.leading_zeros().div_ceil(2) as usize,
            });
        }
        let ec = self.code.ec();
        let data = self.code.data_wires();
        let mut flips = [false; 2];
        for (k, (block, reference)) in self.probes.iter().enumerate() {
            let mut s = block.clone();
            for q in 0..self.code.n_data {
                let p = match pattern >> (2 * q) & 3 {
                    1 => Pauli::X,
                    2 => Pauli::Z,
                    3 => Pauli::Y,
                    _ => continue,
                };
                s.apply_error(q, p)?;
            }
            ec.run(&mut s)?;
            let f = s.reduced_fidelity(&data, reference)?;
            if (1e-9..1.0 - 1e-9).contains(&f) {
                return Err(Error::InvalidNoise(format!(
                    "pattern {pattern:#x} left a non-codeword (fidelity {f})"
                )));
            }
            flips[k] = f < 0.5;
        }
        Ok(LogicalClass {
            bit: flips[0],
            phase: flips[1],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub rate: f64,
    pub trials: u64,
    pub failures: u64,
    pub logical_error_rate: f64,
    pub stderr: f64,
}

fn chunk_rng(seed: u64, rate_index: usize, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((rate_index as u64) << 32 | chunk);
    rng
}

/// One cycle's depolarizing pattern on `n` data qubits.
fn sample_pattern<R: Rng>(rng: &mut R, n: usize, rate: f64) -> ErrorPattern {
    let mut pattern = 0;
    for q in 0..n {
        let u: f64 = rng.gen();
        if u < rate {
            // X, Y, Z with equal weight.
            let which = ((u / rate) * 3.0) as u64;
            pattern |= [1u64, 3, 2][which.min(2) as usize] << (2 * q);
        }
    }
    pattern
}

/// Each chunk replays the same draws, feeding every trial's per-cycle
/// patterns to `visit`.
#[allow(clippy::too_many_arguments)]
fn for_each_trial<F>(
    seed: u64,
    rate_index: usize,
    chunk: u64,
    trials: u64,
    n: usize,
    rate: f64,
    cycles: usize,
    mut visit: F,
) where
    F: FnMut(&[ErrorPattern]),
{
    let mut rng = chunk_rng(seed, rate_index, chunk);
    let start = chunk * SWEEP_CHUNK;
    let end = (start + SWEEP_CHUNK).min(trials);
    let mut buf = vec![0; cycles];
    for _ in start..end {
        for slot in buf.iter_mut() {
            *slot = sample_pattern(&mut rng, n, rate);
        }
        visit(&buf);
    }
}

/// Depolarizing noise of total rate `rate` on each data qubit before every
/// EC cycle; a trial fails when the accumulated logical class is not the
/// identity.
pub fn monte_carlo_sweep(
    code: &CodeSpec,
    rates: &[f64],
    cycles: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if trials == 0 || cycles == 0 {
        return Err(Error::InvalidNoise(
            "need at least one trial and one cycle".into(),
        ));
    }
    for &r in rates {
        if !(0.0..0.2).contains(&r) {
            return Err(Error::InvalidNoise(format!("rate {r} outside [0, 0.2)")));
        }
    }
    let n = code.n_data;
    let chunks = trials.div_ceil(SWEEP_CHUNK);
    let jobs: Vec<(usize, u64)> = (0..rates.len())
        .flat_map(|r| (0..chunks).map(move |c| (r, c)))
        .collect();

    let patterns: HashSet<ErrorPattern> = jobs
        .par_iter()
        .map(|&(r, c)| {
            let mut seen = HashSet::new();
            for_each_trial(seed, r, c, trials, n, rates[r], cycles, |ps| {
                seen.extend(ps.iter().copied().filter(|&p| p != 0));
            });
            seen
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    let classifier = LogicalClassifier::new(code)?;
    let mut sorted: Vec<ErrorPattern> = patterns.into_iter().collect();
    sorted.sort_unstable();
    let classes: HashMap<ErrorPattern, LogicalClass> = sorted
        .par_iter()
        .map(|&p| classifier.classify(p).map(|c| (p, c)))
        .collect::<Result<_>>()?;

    let failures: Vec<u64> = jobs
        .par_iter()
        .map(|&(r, c)| {
            let mut fails = vec![0u64; rates.len()];
            for_each_trial(seed, r, c, trials, n, rates[r], cycles, |ps| {
                let class = ps
                    .iter()
                    .filter(|&&p| p != 0)
                    .fold(LogicalClass::default(), |acc, p| acc ^ classes[p]);
                if !class.is_identity() {
                    fails[r] += 1;
                }
            });
            fails
        })
        .reduce(
            || vec![0u64; rates.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );

    Ok(rates
        .iter()
        .zip(failures)
        .map(|(&rate, failures)| {
            let p = failures as f64 / trials as f64;
            SweepPoint {
                rate,
                trials,
                failures,
                logical_error_rate: p,
                stderr: (p * (1.0 - p) / trials as f64).sqrt(),
            }
        })
        .collect())
}

/// Least-squares slope of `ln(logical)` against `ln(physical)` over points
/// with at least one failure.
pub fn fit_loglog_slope(points: &[SweepPoint]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.failures > 0 && p.rate > 0.0)
        .map(|p| (p.rate.ln(), p.logical_error_rate.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}
