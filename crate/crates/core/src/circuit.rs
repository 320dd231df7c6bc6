//! Parameterized circuit intermediate representation and execution on the
//! ideal (statevector) and noisy (density-matrix) backends.

use crate::channels::{ChannelKind, KrausSet, NoiseModel};
use crate::density::DensityMatrix;
use crate::error::SimError;
use crate::gates::GateMatrix;
use crate::state::StateVector;

/// A rotation/phase argument: a literal angle in radians or a reference
/// into the circuit's symbol table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arg {
    Literal(f64),
    Symbol(usize),
}

impl From<f64> for Arg {
    fn from(v: f64) -> Self {
        Arg::Literal(v)
    }
}

/// One circuit instruction. Arity is fixed by the variant.
#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Rx(usize, Arg),
    Ry(usize, Arg),
    Rz(usize, Arg),
    Cx(usize, usize),
    Cz(usize, usize),
    Cp(usize, usize, Arg),
    Noise(ChannelKind, usize, f64),
}

impl Op {
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Op::H(q) | Op::X(q) | Op::Y(q) | Op::Z(q) => vec![q],
            Op::Rx(q, _) | Op::Ry(q, _) | Op::Rz(q, _) => vec![q],
            Op::Cx(a, b) | Op::Cz(a, b) | Op::Cp(a, b, _) => vec![a, b],
            Op::Noise(_, q, _) => vec![q],
        }
    }

    pub fn arg(&self) -> Option<Arg> {
        match *self {
            Op::Rx(_, a) | Op::Ry(_, a) | Op::Rz(_, a) | Op::Cp(_, _, a) => Some(a),
            _ => None,
        }
    }

    /// True for the single-qubit Pauli rotations the shift rule supports.
    pub fn is_rotation(&self) -> bool {
        matches!(self, Op::Rx(..) | Op::Ry(..) | Op::Rz(..))
    }

    pub fn is_noise(&self) -> bool {
        matches!(self, Op::Noise(..))
    }
}

/// An ordered instruction list over a fixed register, with a symbol table
/// for unbound parameters.
#[derive(Debug, Clone)]
pub struct Circuit {
    num_qubits: usize,
    ops: Vec<Op>,
    symbols: Vec<String>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self, SimError> {
        if num_qubits == 0 || num_qubits > crate::state::MAX_QUBITS {
            return Err(SimError::CapacityExceeded {
                requested: num_qubits,
                max: crate::state::MAX_QUBITS,
            });
        }
        Ok(Self {
            num_qubits,
            ops: Vec::new(),
            symbols: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn has_noise(&self) -> bool {
        self.ops.iter().any(Op::is_noise)
    }

    /// Intern a symbol name, returning an argument referencing it. The
    /// same name always maps to the same slot.
    pub fn symbol(&mut self, name: &str) -> Arg {
        if let Some(idx) = self.symbols.iter().position(|s| s == name) {
            Arg::Symbol(idx)
        } else {
            self.symbols.push(name.to_string());
            Arg::Symbol(self.symbols.len() - 1)
        }
    }

    pub fn symbol_name(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    /// Append an instruction after validating targets and symbol indices.
    pub fn push(&mut self, op: Op) -> Result<(), SimError> {
        let targets = op.targets();
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits {
                return Err(SimError::QubitOutOfRange {
                    index: t,
                    num_qubits: self.num_qubits,
                });
            }
            if targets[..i].contains(&t) {
                return Err(SimError::DuplicateTarget(t));
            }
        }
        if let Some(Arg::Symbol(idx)) = op.arg() {
            if idx >= self.symbols.len() {
                return Err(SimError::BindingMismatch {
                    expected: self.symbols.len(),
                    got: idx + 1,
                });
            }
        }
        if let Op::Noise(_, _, p) = op {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::InvalidParameter {
                    name: "noise probability",
                    value: p,
                    range: "[0, 1]",
                });
            }
        }
        self.ops.push(op);
        Ok(())
    }

    /// Bind one value per symbol, in symbol-table order.
    pub fn bind<'c>(&'c self, values: &[f64]) -> Result<BoundCircuit<'c>, SimError> {
        if values.len() != self.symbols.len() {
            return Err(SimError::BindingMismatch {
                expected: self.symbols.len(),
                got: values.len(),
            });
        }
        Ok(BoundCircuit {
            circuit: self,
            values: values.to_vec(),
        })
    }

    /// The angle of each instruction under `values` (None for
    /// non-parameterized instructions), aligned with `ops()`.
    pub fn resolve_angles(&self, values: &[f64]) -> Result<Vec<Option<f64>>, SimError> {
        if values.len() != self.symbols.len() {
            return Err(SimError::BindingMismatch {
                expected: self.symbols.len(),
                got: values.len(),
            });
        }
        Ok(self
            .ops
            .iter()
            .map(|op| {
                op.arg().map(|a| match a {
                    Arg::Literal(v) => v,
                    Arg::Symbol(i) => values[i],
                })
            })
            .collect())
    }
}

/// Circuits compare structurally: identical register size and instruction
/// stream, with symbol references compared by name.
impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        if self.num_qubits != other.num_qubits || self.ops.len() != other.ops.len() {
            return false;
        }
        let arg_eq = |a: &Arg, b: &Arg| match (a, b) {
            (Arg::Literal(x), Arg::Literal(y)) => x == y,
            (Arg::Symbol(i), Arg::Symbol(j)) => self.symbols[*i] == other.symbols[*j],
            _ => false,
        };
        self.ops.iter().zip(&other.ops).all(|(a, b)| match (a, b) {
            (Op::Rx(q, x), Op::Rx(p, y))
            | (Op::Ry(q, x), Op::Ry(p, y))
            | (Op::Rz(q, x), Op::Rz(p, y)) => q == p && arg_eq(x, y),
            (Op::Cp(q, r, x), Op::Cp(s, t, y)) => q == s && r == t && arg_eq(x, y),
            _ => a == b,
        })
    }
}

/// A circuit together with one value per symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCircuit<'c> {
    circuit: &'c Circuit,
    values: Vec<f64>,
}

impl<'c> BoundCircuit<'c> {
    pub fn circuit(&self) -> &Circuit {
        self.circuit
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// |ψ⟩ = U(θ)|0…0⟩. Fails if the circuit contains noise instructions.
    pub fn run_ideal(&self) -> Result<StateVector, SimError> {
        let angles = self.circuit.resolve_angles(&self.values)?;
        run_ideal_with_angles(self.circuit, &angles, false)
    }

    /// As `run_ideal`, skipping noise instructions instead of failing.
    pub fn run_ideal_ignoring_noise(&self) -> Result<StateVector, SimError> {
        let angles = self.circuit.resolve_angles(&self.values)?;
        run_ideal_with_angles(self.circuit, &angles, true)
    }

    /// Evolve |0…0⟩⟨0…0| through the instruction stream (unitaries and
    /// inline channels), then apply the noise model's channels. A flat
    /// instruction list is a single layer, so both placements strike at
    /// the end.
    pub fn run_noisy(&self, noise: &NoiseModel) -> Result<DensityMatrix, SimError> {
        let angles = self.circuit.resolve_angles(&self.values)?;
        run_noisy_with_angles(self.circuit, &angles, noise)
    }
}

fn gate_for(op: &Op, angle: Option<f64>) -> Option<(GateMatrix, Vec<usize>)> {
    match *op {
        Op::H(q) => Some((GateMatrix::h(), vec![q])),
        Op::X(q) => Some((GateMatrix::x(), vec![q])),
        Op::Y(q) => Some((GateMatrix::y(), vec![q])),
        Op::Z(q) => Some((GateMatrix::z(), vec![q])),
        Op::Rx(q, _) => Some((GateMatrix::rx(angle.unwrap()), vec![q])),
        Op::Ry(q, _) => Some((GateMatrix::ry(angle.unwrap()), vec![q])),
        Op::Rz(q, _) => Some((GateMatrix::rz(angle.unwrap()), vec![q])),
        Op::Cx(a, b) => Some((GateMatrix::cx(), vec![a, b])),
        Op::Cz(a, b) => Some((GateMatrix::cz(), vec![a, b])),
        Op::Cp(a, b, _) => Some((GateMatrix::cp(angle.unwrap()), vec![a, b])),
        Op::Noise(..) => None,
    }
}

/// Statevector execution with per-instruction resolved angles (aligned
/// with `circuit.ops()`). Low-level entry point shared with the gradient
/// code, which shifts individual occurrences.
pub fn run_ideal_with_angles(
    circuit: &Circuit,
    angles: &[Option<f64>],
    ignore_noise: bool,
) -> Result<StateVector, SimError> {
    let mut state = StateVector::new_zero(circuit.num_qubits())?;
    for (i, op) in circuit.ops().iter().enumerate() {
        if op.is_noise() {
            if ignore_noise {
                continue;
            }
            return Err(SimError::NoiseOnIdealBackend(i));
        }
        let (gate, targets) = gate_for(op, angles[i]).expect("non-noise op");
        state.apply_gate(&gate, &targets)?;
    }
    Ok(state)
}

/// Density-matrix execution with per-instruction resolved angles.
pub fn run_noisy_with_angles(
    circuit: &Circuit,
    angles: &[Option<f64>],
    noise: &NoiseModel,
) -> Result<DensityMatrix, SimError> {
    let mut rho = DensityMatrix::new_zero(circuit.num_qubits())?;
    for (i, op) in circuit.ops().iter().enumerate() {
        if let Op::Noise(kind, qubit, p) = *op {
            let channel = KrausSet::new(kind, p)?;
            rho = channel.apply(&rho, qubit)?;
        } else {
            let (gate, targets) = gate_for(op, angles[i]).expect("non-noise op");
            rho.apply_gate(&gate, &targets)?;
        }
    }
    noise.apply_all(&mut rho)?;
    Ok(rho)
}
