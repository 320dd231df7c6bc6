//! The circuit text format.
//!
//! ```text
//! # comment to end of line
//! qubits 2
//! h 0
//! ry 0 theta
//! cx 0 1
//! cp 0 1 7.8539816339744828e-1
//! noise depol 1 5.0000000000000000e-2
//! ```
//!
//! One instruction per line, whitespace-separated tokens, `qubits N`
//! header first. Rotation arguments are decimal radian literals or symbol
//! names; serialization renders literals with 17 significant digits so a
//! round trip is bit-exact.

use crate::channels::ChannelKind;
use crate::circuit::{Arg, Circuit, Op};
use crate::error::SimError;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("missing `qubits` header")]
    MissingHeader,
    #[error("duplicate `qubits` header")]
    DuplicateHeader,
    #[error("unknown instruction `{0}`")]
    UnknownInstruction(String),
    #[error("unknown noise kind `{0}`")]
    UnknownNoiseKind(String),
    #[error("expected {expected} argument(s) for `{kind}`, got {got}")]
    BadArity {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("invalid qubit count `{0}`")]
    BadQubitCount(String),
    #[error("{0}")]
    Invalid(SimError),
}

/// A parse failure carrying its 1-based line number.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::at(line, ParseErrorKind::BadNumber(token.to_string())))
}

fn parse_angle_arg(token: &str, circuit: &mut Circuit) -> Arg {
    // a token that parses as f64 is a literal; anything else is a symbol
    match token.parse::<f64>() {
        Ok(v) => Arg::Literal(v),
        Err(_) => circuit.symbol(token),
    }
}

/// Parse the text format into a circuit, with 1-based line numbers in
/// every diagnostic.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }

        if tokens[0] == "qubits" {
            if circuit.is_some() {
                return Err(ParseError::at(line_no, ParseErrorKind::DuplicateHeader));
            }
            if tokens.len() != 2 {
                return Err(ParseError::at(
                    line_no,
                    ParseErrorKind::BadArity {
                        kind: "qubits".into(),
                        expected: 1,
                        got: tokens.len() - 1,
                    },
                ));
            }
            let n = tokens[1].parse::<usize>().map_err(|_| {
                ParseError::at(line_no, ParseErrorKind::BadQubitCount(tokens[1].into()))
            })?;
            circuit = Some(Circuit::new(n).map_err(|e| {
                ParseError::at(line_no, ParseErrorKind::Invalid(e))
            })?);
            continue;
        }

        let circuit = circuit
            .as_mut()
            .ok_or_else(|| ParseError::at(line_no, ParseErrorKind::MissingHeader))?;

        let kind = tokens[0];
        let args = &tokens[1..];
        let arity = |expected: usize| -> Result<(), ParseError> {
            if args.len() != expected {
                Err(ParseError::at(
                    line_no,
                    ParseErrorKind::BadArity {
                        kind: kind.to_string(),
                        expected,
                        got: args.len(),
                    },
                ))
            } else {
                Ok(())
            }
        };

        let op = match kind {
            "h" | "x" | "y" | "z" => {
                arity(1)?;
                let q = parse_index(args[0], line_no)?;
                match kind {
                    "h" => Op::H(q),
                    "x" => Op::X(q),
                    "y" => Op::Y(q),
                    _ => Op::Z(q),
                }
            }
            "rx" | "ry" | "rz" => {
                arity(2)?;
                let q = parse_index(args[0], line_no)?;
                let arg = parse_angle_arg(args[1], circuit);
                match kind {
                    "rx" => Op::Rx(q, arg),
                    "ry" => Op::Ry(q, arg),
                    _ => Op::Rz(q, arg),
                }
            }
            "cx" | "cz" => {
                arity(2)?;
                let a = parse_index(args[0], line_no)?;
                let b = parse_index(args[1], line_no)?;
                if kind == "cx" {
                    Op::Cx(a, b)
                } else {
                    Op::Cz(a, b)
                }
            }
            "cp" => {
                arity(3)?;
                let a = parse_index(args[0], line_no)?;
                let b = parse_index(args[1], line_no)?;
                let arg = parse_angle_arg(args[2], circuit);
                Op::Cp(a, b, arg)
            }
            "noise" => {
                arity(3)?;
                let ch: ChannelKind = args[0].parse().map_err(|_| {
                    ParseError::at(line_no, ParseErrorKind::UnknownNoiseKind(args[0].into()))
                })?;
                let q = parse_index(args[1], line_no)?;
                let p = args[2].parse::<f64>().map_err(|_| {
                    ParseError::at(line_no, ParseErrorKind::BadNumber(args[2].into()))
                })?;
                Op::Noise(ch, q, p)
            }
            other => {
                return Err(ParseError::at(
                    line_no,
                    ParseErrorKind::UnknownInstruction(other.to_string()),
                ))
            }
        };

        circuit
            .push(op)
            .map_err(|e| ParseError::at(line_no, ParseErrorKind::Invalid(e)))?;
    }

    circuit.ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingHeader,
    })
}

/// Render a literal with 17 significant digits (round-trip exact for f64).
fn fmt_literal(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_arg(arg: &Arg, circuit: &Circuit) -> String {
    match arg {
        Arg::Literal(v) => fmt_literal(*v),
        Arg::Symbol(i) => circuit.symbol_name(*i).to_string(),
    }
}

/// Canonical text form; `parse_circuit(serialize_circuit(c))` is
/// structurally equal to `c`.
pub fn serialize_circuit(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.num_qubits());
    for op in circuit.ops() {
        let line = match op {
            Op::H(q) => format!("h {q}"),
            Op::X(q) => format!("x {q}"),
            Op::Y(q) => format!("y {q}"),
            Op::Z(q) => format!("z {q}"),
            Op::Rx(q, a) => format!("rx {q} {}", fmt_arg(a, circuit)),
            Op::Ry(q, a) => format!("ry {q} {}", fmt_arg(a, circuit)),
            Op::Rz(q, a) => format!("rz {q} {}", fmt_arg(a, circuit)),
            Op::Cx(a, b) => format!("cx {a} {b}"),
            Op::Cz(a, b) => format!("cz {a} {b}"),
            Op::Cp(a, b, arg) => format!("cp {a} {b} {}", fmt_arg(arg, circuit)),
            Op::Noise(kind, q, p) => format!("noise {kind} {q} {}", fmt_literal(*p)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_circuit(self))
    }
}
