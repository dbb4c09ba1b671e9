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

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::LabelPlan;

/// Classical content of a run of cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CellPattern {
    bits: Vec<bool>,
}

impl CellPattern {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    /// The low `len` bits of `value`, least significant first.
    pub fn from_word(value: u64, len: usize) -> Self {
        Self {
            bits: (0..len).map(|i| value >> i & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn extend(&mut self, other: &CellPattern) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn is_stable(&self) -> bool {
        stabilize(self) == *self
    }
}

impl fmt::Display for CellPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CellPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 1,
                    msg: format!("cell value {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// One simultaneous pass of the dissipative reset: a 1 whose neighbours are
/// both 0 becomes 0. Cells beyond the ends count as 0.
pub fn stabilize(pattern: &CellPattern) -> CellPattern {
    let b = &pattern.bits;
    let n = b.len();
    let bits = (0..n)
        .map(|i| {
            let left = i > 0 && b[i - 1];
            let right = i + 1 < n && b[i + 1];
            b[i] && (left || right)
        })
        .collect();
    CellPattern { bits }
}

/// Guard pair opening and closing every framed label.
pub const GUARD: [bool; 2] = [true, true];

/// A label written as cells: a guard pair, then each bit (most significant
/// first) doubled and preceded by a 0, then a 0 and a closing guard pair.
/// No framed label contains a lone 1.
pub fn frame_label(value: u64, bits: u32) -> CellPattern {
    let mut out = GUARD.to_vec();
    for x in (0..bits).rev() {
        let b = value >> x & 1 == 1;
        out.extend([false, b, b]);
    }
    out.push(false);
    out.extend(GUARD);
    CellPattern::new(out)
}

pub fn decode_label(pattern: &CellPattern, bits: u32) -> Result<u64> {
    let c = pattern.bits();
    let expected = 2 + 3 * bits as usize + 3;
    let bad = |msg: &str| Error::Parse {
        line: 1,
        msg: msg.to_string(),
    };
    if c.len() != expected {
        return Err(bad("framed label has the wrong length"));
    }
    if c[..2] != GUARD || c[expected - 2..] != GUARD || c[expected - 3] {
        return Err(bad("missing guard"));
    }
    let mut value = 0;
    for x in 0..bits as usize {
        let cell = &c[2 + 3 * x..5 + 3 * x];
        if cell[0] || cell[1] != cell[2] {
            return Err(bad("corrupt label bit"));
        }
        value = value << 1 | u64::from(cell[1]);
    }
    Ok(value)
}

/// Every station's label, framed, in station order.
pub fn frame_plan(plan: &LabelPlan) -> CellPattern {
    let mut out = CellPattern::default();
    for &l in plan.labels() {
        out.extend(&frame_label(l, plan.label_bits));
    }
    out
}

/// Classical marker of a CU sitting on the chain.
pub fn cu_marker() -> CellPattern {
    CellPattern::new(vec![false, true, true, false])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{explicit_per_level_labels, hierarchy_labels, supercu_labels};

    fn has_lone_one(bits: &[bool]) -> bool {
        (0..bits.len())
            .any(|i| bits[i] && (i == 0 || !bits[i - 1]) && (i + 1 == bits.len() || !bits[i + 1]))
    }

    #[test]
    fn examples() {
        let p: CellPattern = "010".parse().unwrap();
        assert_eq!(stabilize(&p).to_string(), "000");
        let p: CellPattern = "0110".parse().unwrap();
        assert_eq!(stabilize(&p), p);
        let p: CellPattern = "1".parse().unwrap();
        assert_eq!(stabilize(&p).to_string(), "0");
        assert!("012".parse::<CellPattern>().is_err());
    }

    #[test]
    fn exhaustive_up_to_twelve() {
        for n in 0..=12usize {
            for w in 0..1u64 << n {
                let p = CellPattern::from_word(w, n);
                let s = stabilize(&p);
                for i in 0..n {
                    let lone = p.bits()[i]
                        && (i == 0 || !p.bits()[i - 1])
                        && (i + 1 == n || !p.bits()[i + 1]);
                    assert_eq!(s.bits()[i], p.bits()[i] && !lone);
                }
                assert_eq!(p.is_stable(), !has_lone_one(p.bits()));
            }
        }
    }

    #[test]
    fn framed_labels_are_fixed_points() {
        for bits in 1..=6 {
            for v in 0..1u64 << bits {
                let f = frame_label(v, bits);
                assert!(f.is_stable(), "{f}");
                assert_eq!(decode_label(&f, bits).unwrap(), v);
            }
        }
        assert!(cu_marker().is_stable());
        let plans = [
            hierarchy_labels(4, 4, 200).unwrap(),
            supercu_labels(3, 16, 300).unwrap(),
            explicit_per_level_labels(&[vec![true, false, true], vec![false, true, true]]).unwrap(),
        ];
        for plan in &plans {
            assert!(frame_plan(plan).is_stable());
        }
    }

    #[test]
    fn decode_rejects_damage() {
        let mut f = frame_label(5, 3).bits().to_vec();
        f[3] = !f[3];
        assert!(decode_label(&CellPattern::new(f), 3).is_err());
        assert!(decode_label(&frame_label(5, 3), 4).is_err());
    }
}
