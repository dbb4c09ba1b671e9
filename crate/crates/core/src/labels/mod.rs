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

//! Switching-station labels for concatenated-code CU patterns.
//!
//! Stations are numbered from 1. A [`LabelPlan`] stores one classical label
//! per station together with the rule that turns a label and a level `b`
//! into an activation bit:
//!
//! - [`Scheme::Hierarchy`]: one CU every `L^b` stations, active iff
//!   `label >= b`; level `p` keeps only the reserved station.
//! - [`Scheme::SuperCu`]: a dense 3-on/2-off pattern that grows with the
//!   level, active iff `label <= b`.
//! - [`Scheme::Explicit`]: bit `b` of the label is the activation bit.

mod comparator;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ceil_log2;

pub use comparator::{
    comparator_program, evaluate, label_compute_circuit, label_compute_program,
    serial_activation_pulses, Bit, BitOp, ComparatorProgram, Step, COMPARATOR_STEPS_PER_BIT,
};

/// Offsets (0-based, within one group of `L`) switched on by the super-CU
/// pattern.
pub const SUPER_CU_OFFSETS: [u64; 9] = [0, 1, 2, 5, 6, 7, 10, 11, 12];
const SUPER_CU_R: [u64; 3] = [0, 5, 10];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Hierarchy,
    SuperCu,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelPlan {
    pub scheme: Scheme,
    pub p: u32,
    pub l: u64,
    labels: Vec<u64>,
    pub label_bits: u32,
}

/// Activation rule of the hierarchy scheme.
pub fn active_at_level(label: u64, b: u32) -> bool {
    label >= u64::from(b)
}

fn r(x: u64) -> u64 {
    u64::from(x == 1)
}

/// `i mod L^j`, with `L^j` beyond `u64` treated as larger than `i`.
fn mod_pow(i: u64, l: u64, j: u32) -> u64 {
    l.checked_pow(j).map_or(i, |m| i % m)
}

fn le_pow(i: u64, l: u64, j: u32) -> bool {
    l.checked_pow(j).is_none_or(|m| i <= m)
}

fn r_prime(x: u64, l: u64, k: u32) -> u64 {
    let Some(unit) = l.checked_pow(k - 1) else {
        return 0;
    };
    let hit = SUPER_CU_R
        .iter()
        .any(|&r| 1 + r * unit <= x && x <= (r + 3) * unit);
    u64::from(hit)
}

fn check_geometry(p: u32, l: u64, num_ss: usize) -> Result<()> {
    if p == 0 || l < 2 || num_ss == 0 {
        return Err(Error::InvalidLabelQuery(format!(
            "need p >= 1, L >= 2 and at least one station (p={p}, L={l}, N={num_ss})"
        )));
    }
    Ok(())
}

fn value_bits(p: u32) -> u32 {
    ceil_log2(u64::from(p) + 1).max(1)
}

/// One CU every `L^b` stations. Station 1 carries the reserved value `p`.
pub fn hierarchy_labels(p: u32, l: u64, num_ss: usize) -> Result<LabelPlan> {
    check_geometry(p, l, num_ss)?;
    let mut labels: Vec<u64> = (1..=num_ss as u64)
        .map(|i| (1..p).map(|j| r(mod_pow(i, l, j))).sum())
        .collect();
    labels[0] = u64::from(p);
    Ok(LabelPlan {
        scheme: Scheme::Hierarchy,
        p,
        l,
        labels,
        label_bits: value_bits(p),
    })
}

/// One super-CU per concatenation level above the lowest, in the
/// 3-on/2-off/3-on/2-off/3-on arrangement of a 16-qubit Shor block. No
/// station is reserved.
pub fn supercu_labels(p: u32, l: u64, num_ss: usize) -> Result<LabelPlan> {
    check_geometry(p, l, num_ss)?;
    if p < 2 {
        return Err(Error::InvalidLabelQuery(
            "super-CU labels need p >= 2".into(),
        ));
    }
    if l < 13 {
        return Err(Error::InvalidLabelQuery(format!(
            "super-CU pattern spans 13 stations, L={l}"
        )));
    }
    let labels = (1..=num_ss as u64)
        .map(|i| {
            let f: u64 = (1..p)
                .filter(|&j| le_pow(i, l, j))
                .map(|j| {
                    (1..j)
                        .map(|k| r_prime(mod_pow(i, l, k), l, k))
                        .product::<u64>()
                })
                .sum();
            u64::from(p) - f
        })
        .collect();
    Ok(LabelPlan {
        scheme: Scheme::SuperCu,
        p,
        l,
        labels,
        label_bits: value_bits(p),
    })
}

/// Stores the activation bit of every level directly: bit `b` of station
/// `i`'s label is `patterns[b][i - 1]`.
pub fn explicit_per_level_labels(patterns: &[Vec<bool>]) -> Result<LabelPlan> {
    let p = patterns.len();
    if p == 0 || p > 64 {
        return Err(Error::InvalidLabelQuery(format!(
            "explicit labels hold 1 to 64 levels, got {p}"
        )));
    }
    let num_ss = patterns[0].len();
    if num_ss == 0 {
        return Err(Error::InvalidLabelQuery("no stations".into()));
    }
    for level in patterns {
        if level.len() != num_ss {
            return Err(Error::PatternLength {
                expected: num_ss,
                got: level.len(),
            });
        }
    }
    let labels = (0..num_ss)
        .map(|i| {
            patterns
                .iter()
                .enumerate()
                .fold(0u64, |acc, (b, lv)| acc | u64::from(lv[i]) << b)
        })
        .collect();
    Ok(LabelPlan {
        scheme: Scheme::Explicit,
        p: p as u32,
        l: 0,
        labels,
        label_bits: p as u32,
    })
}

impl LabelPlan {
    pub fn num_ss(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Label of station `i` (1-based).
    pub fn label(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.labels.len() {
            return Err(Error::InvalidLabelQuery(format!(
                "station {i} outside 1..={}",
                self.labels.len()
            )));
        }
        Ok(self.labels[i - 1])
    }

    /// Highest level accepted by [`LabelPlan::active`].
    pub fn max_level(&self) -> u32 {
        match self.scheme {
            Scheme::Hierarchy | Scheme::SuperCu => self.p,
            Scheme::Explicit => self.p - 1,
        }
    }

    pub fn active(&self, i: usize, b: u32) -> Result<bool> {
        let label = self.label(i)?;
        if b > self.max_level() {
            return Err(Error::InvalidLabelQuery(format!(
                "level {b} above {}",
                self.max_level()
            )));
        }
        Ok(match self.scheme {
            Scheme::Hierarchy => active_at_level(label, b),
            Scheme::SuperCu => label <= u64::from(b),
            Scheme::Explicit => label >> b & 1 == 1,
        })
    }

    /// Active stations (1-based) at level `b`.
    pub fn active_set(&self, b: u32) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 1..=self.num_ss() {
            if self.active(i, b)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Stations carrying the reserved value `p` in the hierarchy scheme.
    pub fn reserved(&self) -> Vec<usize> {
        match self.scheme {
            Scheme::Hierarchy => (1..=self.num_ss())
                .filter(|&i| self.labels[i - 1] == u64::from(self.p))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// The same activation patterns for levels `0..levels`, stored one bit
    /// per level.
    pub fn to_explicit(&self, levels: u32) -> Result<LabelPlan> {
        let patterns = (0..levels)
            .map(|b| {
                (1..=self.num_ss())
                    .map(|i| self.active(i, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        explicit_per_level_labels(&patterns)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    A,
    B,
}

/// Two plans stored side by side in each station. Queries pick a half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositePlan {
    pub a: LabelPlan,
    pub b: LabelPlan,
}

pub fn composite_labels(a: LabelPlan, b: LabelPlan) -> Result<CompositePlan> {
    if a.num_ss() != b.num_ss() {
        return Err(Error::PlanSizeMismatch {
            left: a.num_ss(),
            right: b.num_ss(),
        });
    }
    Ok(CompositePlan { a, b })
}

impl CompositePlan {
    pub fn num_ss(&self) -> usize {
        self.a.num_ss()
    }

    pub fn label_bits(&self) -> u32 {
        self.a.label_bits + self.b.label_bits
    }

    pub fn half(&self, half: Half) -> &LabelPlan {
        match half {
            Half::A => &self.a,
            Half::B => &self.b,
        }
    }

    /// Both labels packed into one word, half A in the high bits.
    pub fn label(&self, i: usize) -> Result<u128> {
        let (la, lb) = (self.a.label(i)?, self.b.label(i)?);
        Ok(u128::from(la) << self.b.label_bits | u128::from(lb))
    }

    pub fn active(&self, i: usize, half: Half, b: u32) -> Result<bool> {
        self.half(half).active(i, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of `j` in `1..p` with `i ≡ 1 (mod L^j)`, by repeated division.
    fn hierarchy_oracle(i: u64, p: u32, l: u64) -> u64 {
        let mut count = 0;
        let mut m = 1u128;
        for _ in 1..p {
            m *= u128::from(l);
            if u128::from(i) % m == 1 % m {
                count += 1;
            }
        }
        count
    }

    /// Offset digit of station `i` at depth `k` lies in the on-pattern for
    /// every depth below `depth`.
    fn in_pattern(i: u64, depth: u32, l: u64) -> bool {
        (0..depth).all(|k| {
            let digit = (i - 1) / l.pow(k) % l;
            SUPER_CU_OFFSETS.contains(&digit)
        })
    }

    fn supercu_oracle(i: u64, p: u32, l: u64) -> u64 {
        let count = (1..p)
            .filter(|&j| i <= l.pow(j) && in_pattern(i, j - 1, l))
            .count() as u64;
        u64::from(p) - count
    }

    #[test]
    fn hierarchy_examples() {
        let plan = hierarchy_labels(3, 4, 64).unwrap();
        assert_eq!(plan.label(5).unwrap(), 1);
        assert_eq!(plan.label(1).unwrap(), 3);
        assert_eq!(plan.label(17).unwrap(), 2);
        assert_eq!(plan.reserved(), vec![1]);
        assert_eq!(plan.label_bits, 2);
        let flat = hierarchy_labels(1, 4, 10).unwrap();
        assert_eq!(flat.labels()[1..], [0; 9]);
        assert_eq!(flat.reserved(), vec![1]);
    }

    #[test]
    fn hierarchy_matches_oracle() {
        for p in [2u32, 3, 4] {
            for l in [2u64, 4, 16] {
                let n = l.pow(p - 1) as usize;
                let plan = hierarchy_labels(p, l, n).unwrap();
                assert_eq!(plan.reserved(), vec![1]);
                for i in 2..=n as u64 {
                    let got = plan.label(i as usize).unwrap();
                    assert_eq!(got, hierarchy_oracle(i, p, l), "p={p} L={l} i={i}");
                    assert!(got < u64::from(p));
                }
            }
        }
    }

    #[test]
    fn hierarchy_levels() {
        let plan = hierarchy_labels(3, 4, 256).unwrap();
        assert_eq!(plan.active_set(0).unwrap().len(), 256);
        let expect: Vec<usize> = (1..=256).filter(|i| i % 16 == 1).collect();
        assert_eq!(plan.active_set(2).unwrap(), expect);
        let expect: Vec<usize> = (1..=256).filter(|i| i % 4 == 1).collect();
        assert_eq!(plan.active_set(1).unwrap(), expect);
        assert_eq!(plan.active_set(3).unwrap(), vec![1]);
        assert!(plan.active(1, 4).is_err());
        assert!(plan.active(0, 0).is_err());
        assert!(plan.active(257, 0).is_err());
    }

    #[test]
    fn levels_are_nested() {
        let plans = [
            hierarchy_labels(4, 4, 300).unwrap(),
            hierarchy_labels(3, 2, 64).unwrap(),
            supercu_labels(3, 16, 600).unwrap(),
            supercu_labels(4, 16, 5000).unwrap(),
        ];
        for plan in &plans {
            let sets: Vec<Vec<usize>> = (0..=plan.p).map(|b| plan.active_set(b).unwrap()).collect();
            for b in 0..sets.len() {
                for b2 in b + 1..sets.len() {
                    let (lo, hi) = (&sets[b], &sets[b2]);
                    let (small, big) = match plan.scheme {
                        Scheme::Hierarchy => (hi, lo),
                        _ => (lo, hi),
                    };
                    assert!(
                        small.iter().all(|i| big.contains(i)),
                        "{:?} {b} {b2}",
                        plan.scheme
                    );
                }
            }
        }
    }

    #[test]
    fn supercu_level_one_offsets() {
        let plan = supercu_labels(3, 16, 512).unwrap();
        let level1 = plan.active_set(1).unwrap();
        assert_eq!(level1, vec![1, 2, 3, 6, 7, 8, 11, 12, 13]);
        let shape: String = (1..=16)
            .map(|i| if level1.contains(&i) { '1' } else { '0' })
            .collect();
        assert_eq!(shape, "1110011100111000");
        assert!(plan.active_set(0).unwrap().is_empty());
        assert_eq!(plan.active_set(3).unwrap().len(), 512);
    }

    #[test]
    fn supercu_matches_recursive_oracle() {
        for (p, n) in [(2u32, 16usize), (2, 40), (3, 600), (4, 5000)] {
            let plan = supercu_labels(p, 16, n).unwrap();
            for i in 1..=n as u64 {
                assert_eq!(
                    plan.label(i as usize).unwrap(),
                    supercu_oracle(i, p, 16),
                    "p={p} i={i}"
                );
            }
        }
        assert!(supercu_labels(1, 16, 4).is_err());
        assert!(supercu_labels(3, 8, 4).is_err());
    }

    #[test]
    fn explicit_round_trip_and_cross_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let patterns: Vec<Vec<bool>> = (0..5)
            .map(|_| (0..97).map(|_| rng.gen_bool(0.4)).collect())
            .collect();
        let plan = explicit_per_level_labels(&patterns).unwrap();
        assert_eq!(plan.label_bits, 5);
        for (b, lv) in patterns.iter().enumerate() {
            for (i, &bit) in lv.iter().enumerate() {
                assert_eq!(plan.active(i + 1, b as u32).unwrap(), bit);
            }
        }
        let h = hierarchy_labels(3, 4, 100).unwrap();
        let e = h.to_explicit(3).unwrap();
        for b in 0..3 {
            assert_eq!(h.active_set(b).unwrap(), e.active_set(b).unwrap());
        }
        let one = explicit_per_level_labels(&[vec![true, false]]).unwrap();
        assert_eq!(one.label_bits, 1);
        assert!(matches!(
            explicit_per_level_labels(&[vec![true], vec![true, false]]),
            Err(Error::PatternLength { .. })
        ));
    }

    #[test]
    fn composite_projects_each_half() {
        let a = hierarchy_labels(3, 16, 300).unwrap();
        let b = supercu_labels(3, 16, 300).unwrap();
        let c = composite_labels(a.clone(), b.clone()).unwrap();
        assert_eq!(c.label_bits(), a.label_bits + b.label_bits);
        for i in 1..=300 {
            for lv in 0..=3 {
                assert_eq!(c.active(i, Half::A, lv).unwrap(), a.active(i, lv).unwrap());
                assert_eq!(c.active(i, Half::B, lv).unwrap(), b.active(i, lv).unwrap());
            }
            let packed = c.label(i).unwrap();
            assert_eq!(packed >> b.label_bits, u128::from(a.label(i).unwrap()));
        }
        let short = hierarchy_labels(3, 16, 10).unwrap();
        assert_eq!(
            composite_labels(a, short),
            Err(Error::PlanSizeMismatch {
                left: 300,
                right: 10
            })
        );
    }
}
