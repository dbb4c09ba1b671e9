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

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::Pauli;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    /// Rates are per qubit per cycle.
    #[default]
    PerCycle,
    /// Rates are per qubit per global pulse; a cycle's exposure is its
    /// pulse count.
    PerPulseExposure,
}

/// Independent Pauli noise on every data qubit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseModel {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub granularity: Granularity,
}

impl NoiseModel {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(p_x: f64, p_y: f64, p_z: f64, granularity: Granularity) -> Result<Self> {
        let m = Self {
            p_x,
            p_y,
            p_z,
            granularity,
        };
        m.validate()?;
        Ok(m)
    }

    /// Total rate `p` split evenly over X, Y and Z.
    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(p / 3.0, p / 3.0, p / 3.0, Granularity::PerCycle)
    }

    pub fn validate(&self) -> Result<()> {
        let rates = [self.p_x, self.p_y, self.p_z];
        if rates.iter().any(|r| !r.is_finite() || *r < 0.0) || self.total() > 1.0 {
            return Err(Error::InvalidNoise(format!(
                "rates ({}, {}, {}) must be non-negative and sum to at most 1",
                self.p_x, self.p_y, self.p_z
            )));
        }
        Ok(())
    }

    pub fn total(&self) -> f64 {
        self.p_x + self.p_y + self.p_z
    }

    pub fn is_silent(&self) -> bool {
        self.total() == 0.0
    }

    /// Per-cycle rates for a cycle of `pulses` pulses.
    pub fn per_cycle(&self, pulses: u64) -> NoiseModel {
        match self.granularity {
            Granularity::PerCycle => *self,
            Granularity::PerPulseExposure => {
                let total = self.total();
                if total == 0.0 {
                    return *self;
                }
                let hit = 1.0 - (1.0 - total).powf(pulses as f64);
                let k = hit / total;
                NoiseModel {
                    p_x: self.p_x * k,
                    p_y: self.p_y * k,
                    p_z: self.p_z * k,
                    granularity: Granularity::PerCycle,
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Pauli> {
        let u: f64 = rng.gen();
        if u < self.p_x {
            Some(Pauli::X)
        } else if u < self.p_x + self.p_y {
            Some(Pauli::Y)
        } else if u < self.total() {
            Some(Pauli::Z)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn validation() {
        assert!(NoiseModel::new(0.5, 0.5, 0.1, Granularity::PerCycle).is_err());
        assert!(NoiseModel::new(-0.1, 0.0, 0.0, Granularity::PerCycle).is_err());
        assert!(NoiseModel::depolarizing(0.3).is_ok());
    }

    #[test]
    fn sampling_frequencies() {
        let m = NoiseModel::new(0.1, 0.05, 0.2, Granularity::PerCycle).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 200_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            let k = match m.sample(&mut rng) {
                Some(Pauli::X) => 0,
                Some(Pauli::Y) => 1,
                Some(Pauli::Z) => 2,
                None => 3,
            };
            counts[k] += 1;
        }
        for (c, p) in counts.iter().zip([0.1, 0.05, 0.2, 0.65]) {
            let f = *c as f64 / n as f64;
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!((f - p).abs() < 4.0 * sigma, "{f} vs {p}");
        }
    }

    #[test]
    fn exposure_scaling() {
        let m = NoiseModel::new(1e-4, 0.0, 1e-4, Granularity::PerPulseExposure).unwrap();
        let c = m.per_cycle(1000);
        let hit = 1.0 - (1.0 - 2e-4f64).powi(1000);
        assert!((c.total() - hit).abs() < 1e-12);
        assert!((c.p_x - c.p_z).abs() < 1e-15);
        assert_eq!(c.granularity, Granularity::PerCycle);
        assert_eq!(m.per_cycle(0).total(), 0.0);
    }
}
