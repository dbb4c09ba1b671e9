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

use crate::error::{Error, Result};
use crate::qsim::{Control, Gate, OneQubitKind, StateVector};
use crate::scalar::Scalar;

/// One circuit step: a unitary gate or an ancilla erasure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Op {
    Gate(Gate),
    Erase(usize),
}

impl Op {
    pub fn wires(&self) -> Vec<usize> {
        match self {
            Op::Gate(g) => g.wires(),
            Op::Erase(q) => vec![*q],
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Gate(g) => write!(f, "{g}"),
            Op::Erase(q) => write!(f, "ERASE {q}"),
        }
    }
}

/// Gate list over one block. Wires `0..n_data` are data, the next
/// `n_ancilla` are ancillas. `positions[w]` is the chain slot (within the
/// block) holding wire `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    ops: Vec<Op>,
    n_data: usize,
    n_ancilla: usize,
    positions: Vec<usize>,
}

impl Circuit {
    pub fn new(n_data: usize, n_ancilla: usize) -> Self {
        Self {
            ops: Vec::new(),
            n_data,
            n_ancilla,
            positions: (0..n_data + n_ancilla).collect(),
        }
    }

    /// Places wire `w` at chain slot `positions[w]`.
    pub fn with_positions(mut self, positions: Vec<usize>) -> Result<Self> {
        if positions.len() != self.n_wires() {
            return Err(Error::PatternLength {
                expected: self.n_wires(),
                got: positions.len(),
            });
        }
        for (i, p) in positions.iter().enumerate() {
            if positions[..i].contains(p) {
                return Err(Error::OverlappingQubits(*p));
            }
        }
        self.positions = positions;
        Ok(self)
    }

    pub fn n_data(&self) -> usize {
        self.n_data
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn n_wires(&self) -> usize {
        self.n_data + self.n_ancilla
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn position(&self, wire: usize) -> usize {
        self.positions[wire]
    }

    /// Slots spanned by the block (max position + 1).
    pub fn span(&self) -> usize {
        self.positions.iter().max().map_or(0, |m| m + 1)
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn is_ancilla(&self, wire: usize) -> bool {
        (self.n_data..self.n_wires()).contains(&wire)
    }

    pub fn ancilla_wires(&self) -> std::ops::Range<usize> {
        self.n_data..self.n_wires()
    }

    pub fn push(&mut self, op: Op) -> Result<&mut Self> {
        match &op {
            Op::Gate(g) => g.validate(self.n_wires())?,
            Op::Erase(q) => {
                if *q >= self.n_wires() {
                    return Err(Error::QubitOutOfRange {
                        index: *q,
                        n: self.n_wires(),
                    });
                }
                if !self.is_ancilla(*q) {
                    return Err(Error::EraseOnData(*q));
                }
            }
        }
        self.ops.push(op);
        Ok(self)
    }

    pub fn gate(&mut self, gate: Gate) -> Result<&mut Self> {
        self.push(Op::Gate(gate))
    }

    pub fn erase(&mut self, wire: usize) -> Result<&mut Self> {
        self.push(Op::Erase(wire))
    }

    /// Appends all ops of `other`, which must have the same wire layout.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_wires() != self.n_wires() {
            return Err(Error::DimensionMismatch {
                left: self.n_wires(),
                right: other.n_wires(),
            });
        }
        for op in &other.ops {
            self.push(op.clone())?;
        }
        Ok(())
    }

    /// Largest number of ancillas holding information at once. An ancilla
    /// becomes live when a gate touches it and is released by its erasure.
    pub fn peak_ancilla_usage(&self) -> usize {
        let mut live = vec![false; self.n_wires()];
        let mut peak = 0;
        for op in &self.ops {
            match op {
                Op::Gate(g) => {
                    for w in g.wires() {
                        if self.is_ancilla(w) {
                            live[w] = true;
                        }
                    }
                }
                Op::Erase(q) => live[*q] = false,
            }
            peak = peak.max(live.iter().filter(|&&l| l).count());
        }
        peak
    }

    /// Ancilla wires that are ever used.
    pub fn ancillas_used(&self) -> Vec<usize> {
        self.ancilla_wires()
            .filter(|w| self.ops.iter().any(|op| op.wires().contains(w)))
            .collect()
    }

    /// Runs the circuit on qubits `0..n_wires` of `state` (further qubits,
    /// such as an environment register, are left alone). Returns the sampled
    /// erasure branches in order.
    pub fn run<T: Scalar>(&self, state: &mut StateVector<T>) -> Result<Vec<bool>> {
        if state.n_qubits() < self.n_wires() {
            return Err(Error::DimensionMismatch {
                left: state.n_qubits(),
                right: self.n_wires(),
            });
        }
        let mut outcomes = Vec::new();
        for op in &self.ops {
            match op {
                Op::Gate(g) => state.apply(g)?,
                Op::Erase(q) => outcomes.push(state.erase(*q)?),
            }
        }
        Ok(outcomes)
    }

    /// Unitary inverse; fails if the circuit contains an erasure.
    pub fn inverse(&self) -> Result<Circuit> {
        let mut inv = Circuit {
            ops: Vec::with_capacity(self.ops.len()),
            ..self.clone()
        };
        for op in self.ops.iter().rev() {
            match op {
                Op::Gate(g) => inv.ops.push(Op::Gate(g.inverse())),
                Op::Erase(_) => return Err(Error::NotUnitary),
            }
        }
        Ok(inv)
    }

    /// Splits off the trailing run of erasures: `(body, tail)`.
    pub fn split_trailing_erasures(&self) -> (Circuit, Circuit) {
        let cut = self
            .ops
            .iter()
            .rposition(|op| !matches!(op, Op::Erase(_)))
            .map_or(0, |i| i + 1);
        let body = Circuit {
            ops: self.ops[..cut].to_vec(),
            ..self.clone()
        };
        let tail = Circuit {
            ops: self.ops[cut..].to_vec(),
            ..self.clone()
        };
        (body, tail)
    }

    /// Line-oriented text: a `# wires DATA ANCILLA` header, a
    /// `# positions ...` header, then one op per line.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# wires {} {}", self.n_data, self.n_ancilla)?;
        write!(f, "# positions")?;
        for p in &self.positions {
            write!(f, " {p}")?;
        }
        writeln!(f)?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

fn parse_op(line: &str) -> std::result::Result<Op, String> {
    let mut tokens = line.split_whitespace();
    let name = tokens.next().ok_or("empty line")?;
    let nums = tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| format!("bad integer {t:?}: {e}"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(format!("{name} takes {k} arguments, got {}", nums.len()))
        }
    };
    if let Some(kind) = OneQubitKind::from_name(name) {
        arity(1)?;
        return Ok(Op::Gate(Gate::one(kind, nums[0])));
    }
    match name {
        "ERASE" => {
            arity(1)?;
            Ok(Op::Erase(nums[0]))
        }
        "CNOT" => {
            arity(2)?;
            Ok(Op::Gate(Gate::cnot(nums[1], nums[0])))
        }
        "CZ" => {
            arity(2)?;
            Ok(Op::Gate(Gate::cz(nums[1], nums[0])))
        }
        "MCX" | "MCZ" => {
            if nums.len() < 3 || nums.len() % 2 == 0 {
                return Err(format!(
                    "{name} takes a target and matching controls and polarities"
                ));
            }
            let k = (nums.len() - 1) / 2;
            let controls = (0..k)
                .map(|i| match nums[1 + k + i] {
                    0 => Ok(Control::new(nums[1 + i], false)),
                    1 => Ok(Control::new(nums[1 + i], true)),
                    p => Err(format!("polarity must be 0 or 1, got {p}")),
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Op::Gate(if name == "MCX" {
                Gate::mcx(controls, nums[0])
            } else {
                Gate::mcz(controls, nums[0])
            }))
        }
        _ => Err(format!("unknown gate {name:?}")),
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut wires: Option<(usize, usize)> = None;
        let mut positions: Option<Vec<usize>> = None;
        let mut ops = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            if let Some(comment) = line.strip_prefix('#') {
                let mut t = comment.split_whitespace();
                let parse_all = |t: std::str::SplitWhitespace| {
                    t.map(str::parse::<usize>)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| e.to_string())
                };
                match t.next() {
                    Some("wires") => {
                        let v = parse_all(t).map_err(err)?;
                        if v.len() != 2 {
                            return Err(Error::Parse {
                                line: i + 1,
                                msg: "wires header takes DATA ANCILLA".into(),
                            });
                        }
                        wires = Some((v[0], v[1]));
                    }
                    Some("positions") => positions = Some(parse_all(t).map_err(err)?),
                    _ => {}
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            ops.push((i + 1, parse_op(line).map_err(err)?));
        }
        let (n_data, n_ancilla) = match wires {
            Some(w) => w,
            None => {
                let n = ops
                    .iter()
                    .flat_map(|(_, op)| op.wires())
                    .max()
                    .map_or(0, |m| m + 1);
                let first_erased = ops
                    .iter()
                    .filter_map(|(_, op)| match op {
                        Op::Erase(q) => Some(*q),
                        Op::Gate(_) => None,
                    })
                    .min()
                    .unwrap_or(n);
                (first_erased, n - first_erased)
            }
        };
        let mut c = Circuit::new(n_data, n_ancilla);
        if let Some(p) = positions {
            c = c.with_positions(p)?;
        }
        for (line, op) in ops {
            c.push(op).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(c)
    }
}
