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

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pulse counts for the primitive operations of the global-control toolbox.
///
/// Defaults follow the counting convention for the two-species Ising chain:
/// a one-qubit gate is 8 operation pulses plus 7 restoring pulses, a
/// controlled gate is 5 pulses to interact with the control, approach pulses
/// to the target, 9 operation pulses and 8 restoring pulses, followed by the
/// reverse of the approach and of the control interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostModel {
    pub one_qubit_op_pulses: u64,
    pub one_qubit_restore_pulses: u64,
    pub control_interact_pulses: u64,
    /// Pulses to undo a control interaction. Defaults to the full
    /// `control_interact_pulses`.
    pub control_restore_pulses: u64,
    pub target_op_pulses: u64,
    pub target_restore_pulses: u64,
    pub approach_pulses_per_step: u64,
    /// Approach cost is `approach_pulses_per_step * (distance + offset)`.
    pub approach_step_offset: u64,
    /// Absorbing a CU into a switching station; emission is the exact
    /// reverse and costs the same.
    pub absorb_pulses: u64,
    /// One dissipative lone-1 reset pulse.
    pub stabilize_pulses: u64,
    /// Compile a control on `|0>` as an X gate on the control before and
    /// after the controlled operation. When false, polarity is free.
    pub conjugate_negated_controls: bool,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            one_qubit_op_pulses: 8,
            one_qubit_restore_pulses: 7,
            control_interact_pulses: 5,
            control_restore_pulses: 5,
            target_op_pulses: 9,
            target_restore_pulses: 8,
            approach_pulses_per_step: 2,
            approach_step_offset: 1,
            absorb_pulses: 10,
            stabilize_pulses: 1,
            conjugate_negated_controls: true,
        }
    }
}

impl CostModel {
    pub fn emit_pulses(&self) -> u64 {
        self.absorb_pulses
    }

    pub fn one_qubit_total(&self) -> u64 {
        self.one_qubit_op_pulses + self.one_qubit_restore_pulses
    }

    pub fn approach(&self, from: usize, to: usize) -> u64 {
        self.approach_pulses_per_step * (from.abs_diff(to) as u64 + self.approach_step_offset)
    }

    pub fn validate(&self) -> Result<()> {
        if self.one_qubit_restore_pulses > self.one_qubit_op_pulses {
            return Err(Error::InvalidCostModel(
                "one-qubit restore re-runs a prefix of the operation pulses".into(),
            ));
        }
        if self.target_restore_pulses > self.target_op_pulses {
            return Err(Error::InvalidCostModel(
                "target restore re-runs a prefix of the operation pulses".into(),
            ));
        }
        if self.control_restore_pulses > self.control_interact_pulses {
            return Err(Error::InvalidCostModel(
                "control restore cannot exceed the control interaction".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let m = CostModel::default();
        assert_eq!(m.one_qubit_total(), 15);
        assert_eq!(m.emit_pulses(), m.absorb_pulses);
        assert_eq!(m.approach(1, 4), 8);
        assert_eq!(m.approach(4, 1), 8);
        assert_eq!(m.approach(3, 3), 2);
        m.validate().unwrap();
    }

    #[test]
    fn inconsistent_restore_rejected() {
        let m = CostModel {
            one_qubit_restore_pulses: 9,
            ..CostModel::default()
        };
        assert!(m.validate().is_err());
    }
}
