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

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OneQubitKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
}

impl OneQubitKind {
    pub fn inverse(self) -> Self {
        match self {
            OneQubitKind::S => OneQubitKind::Sdg,
            OneQubitKind::Sdg => OneQubitKind::S,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OneQubitKind::X => "X",
            OneQubitKind::Y => "Y",
            OneQubitKind::Z => "Z",
            OneQubitKind::H => "H",
            OneQubitKind::S => "S",
            OneQubitKind::Sdg => "SDG",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "X" => OneQubitKind::X,
            "Y" => OneQubitKind::Y,
            "Z" => OneQubitKind::Z,
            "H" => OneQubitKind::H,
            "S" => OneQubitKind::S,
            "SDG" => OneQubitKind::Sdg,
            _ => return None,
        })
    }
}

impl From<Pauli> for OneQubitKind {
    fn from(p: Pauli) -> Self {
        match p {
            Pauli::X => OneQubitKind::X,
            Pauli::Y => OneQubitKind::Y,
            Pauli::Z => OneQubitKind::Z,
        }
    }
}

impl fmt::Display for OneQubitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A control wire that fires when the qubit equals `polarity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub wire: usize,
    pub polarity: bool,
}

impl Control {
    pub fn on(wire: usize) -> Self {
        Self {
            wire,
            polarity: true,
        }
    }

    pub fn new(wire: usize, polarity: bool) -> Self {
        Self { wire, polarity }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    One {
        kind: OneQubitKind,
        qubit: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Cz {
        control: usize,
        target: usize,
    },
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
    Mcz {
        controls: Vec<Control>,
        target: usize,
    },
}

impl Gate {
    pub fn one(kind: OneQubitKind, qubit: usize) -> Self {
        Gate::One { kind, qubit }
    }

    pub fn x(qubit: usize) -> Self {
        Self::one(OneQubitKind::X, qubit)
    }

    pub fn y(qubit: usize) -> Self {
        Self::one(OneQubitKind::Y, qubit)
    }

    pub fn z(qubit: usize) -> Self {
        Self::one(OneQubitKind::Z, qubit)
    }

    pub fn h(qubit: usize) -> Self {
        Self::one(OneQubitKind::H, qubit)
    }

    pub fn s(qubit: usize) -> Self {
        Self::one(OneQubitKind::S, qubit)
    }

    pub fn pauli(p: Pauli, qubit: usize) -> Self {
        Self::one(p.into(), qubit)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn cz(control: usize, target: usize) -> Self {
        Gate::Cz { control, target }
    }

    pub fn mcx(controls: impl Into<Vec<Control>>, target: usize) -> Self {
        Gate::Mcx {
            controls: controls.into(),
            target,
        }
    }

    pub fn mcz(controls: impl Into<Vec<Control>>, target: usize) -> Self {
        Gate::Mcz {
            controls: controls.into(),
            target,
        }
    }

    /// The wire the gate acts on (for controlled gates, the target).
    pub fn target(&self) -> usize {
        match *self {
            Gate::One { qubit, .. } => qubit,
            Gate::Cnot { target, .. }
            | Gate::Cz { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Mcz { target, .. } => target,
        }
    }

    pub fn controls(&self) -> Vec<Control> {
        match self {
            Gate::One { .. } => Vec::new(),
            Gate::Cnot { control, .. } | Gate::Cz { control, .. } => vec![Control::on(*control)],
            Gate::Mcx { controls, .. } | Gate::Mcz { controls, .. } => controls.clone(),
        }
    }

    pub fn is_controlled(&self) -> bool {
        !matches!(self, Gate::One { .. })
    }

    pub fn wires(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.controls().iter().map(|c| c.wire).collect();
        w.push(self.target());
        w
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let wires = self.wires();
        for (i, &w) in wires.iter().enumerate() {
            if w >= n_qubits {
                return Err(Error::QubitOutOfRange {
                    index: w,
                    n: n_qubits,
                });
            }
            if wires[..i].contains(&w) {
                return Err(Error::OverlappingQubits(w));
            }
        }
        Ok(())
    }

    /// All gates in the alphabet are self-inverse except `S`/`SDG`.
    pub fn inverse(&self) -> Self {
        match self {
            Gate::One { kind, qubit } => Gate::One {
                kind: kind.inverse(),
                qubit: *qubit,
            },
            g => g.clone(),
        }
    }

    /// The same gate with wires renamed by `f`.
    pub fn map_wires(&self, f: impl Fn(usize) -> usize) -> Self {
        let mc = |cs: &[Control]| {
            cs.iter()
                .map(|c| Control::new(f(c.wire), c.polarity))
                .collect::<Vec<_>>()
        };
        match self {
            Gate::One { kind, qubit } => Gate::One {
                kind: *kind,
                qubit: f(*qubit),
            },
            Gate::Cnot { control, target } => Gate::cnot(f(*control), f(*target)),
            Gate::Cz { control, target } => Gate::cz(f(*control), f(*target)),
            Gate::Mcx { controls, target } => Gate::mcx(mc(controls), f(*target)),
            Gate::Mcz { controls, target } => Gate::mcz(mc(controls), f(*target)),
        }
    }
}

impl fmt::Display for Gate {
    /// `GATE target [controls...] [polarities...]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = |f: &mut fmt::Formatter<'_>, name: &str, cs: &[Control], t: usize| {
            write!(f, "{name} {t}")?;
            for c in cs {
                write!(f, " {}", c.wire)?;
            }
            for c in cs {
                write!(f, " {}", u8::from(c.polarity))?;
            }
            Ok(())
        };
        match self {
            Gate::One { kind, qubit } => write!(f, "{kind} {qubit}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {target} {control}"),
            Gate::Cz { control, target } => write!(f, "CZ {target} {control}"),
            Gate::Mcx { controls, target } => multi(f, "MCX", controls, *target),
            Gate::Mcz { controls, target } => multi(f, "MCZ", controls, *target),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Gate::cnot(0, 1).validate(2).is_ok());
        assert_eq!(
            Gate::cnot(0, 2).validate(2),
            Err(Error::QubitOutOfRange { index: 2, n: 2 })
        );
        assert_eq!(
            Gate::cnot(1, 1).validate(2),
            Err(Error::OverlappingQubits(1))
        );
        let g = Gate::mcx([Control::on(0), Control::new(2, false)], 2);
        assert_eq!(g.validate(3), Err(Error::OverlappingQubits(2)));
    }

    #[test]
    fn display() {
        let g = Gate::mcx([Control::on(7), Control::new(8, false)], 3);
        assert_eq!(g.to_string(), "MCX 3 7 8 1 0");
        assert_eq!(Gate::cnot(1, 4).to_string(), "CNOT 4 1");
        assert_eq!(Gate::h(5).to_string(), "H 5");
    }
}
