//! Ideal (statevector) and noisy (density-matrix) quantum circuit
//! simulation with parameter-shift autodifferentiation.
//!
//! Conventions used throughout:
//! - Qubit indexing is little-endian: qubit 0 is the least significant bit
//!   of a basis index.
//! - All arithmetic is double-precision complex; expectations are exact
//!   (no shot sampling).
//! - Gates rewrite amplitudes in place through index masks; no 2^n x 2^n
//!   operator is ever formed.

pub mod channels;
pub mod circuit;
pub mod density;
pub mod error;
pub mod gates;
pub mod gradients;
pub mod observable;
pub mod optimize;
pub mod parse;
pub mod qpe;
pub mod random;
pub mod state;

mod apply;

pub use channels::{ChannelKind, KrausSet, NoiseEntry, NoiseModel, NoisePlacement, NoiseScope};
pub use circuit::{Arg, BoundCircuit, Circuit, Op};
pub use density::DensityMatrix;
pub use error::SimError;
pub use gates::GateMatrix;
pub use gradients::{finite_diff_gradient, shift_rule_gradient};
pub use observable::{Observable, Pauli, PauliTerm};
pub use optimize::{Optimizer, OptimizerKind, ParamVector};
pub use parse::{parse_circuit, serialize_circuit, ParseError, ParseErrorKind};
pub use qpe::{build_qpe, counting_distribution, expected_outcome};
pub use state::{postselect, StateVector};
