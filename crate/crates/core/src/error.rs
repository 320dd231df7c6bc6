use thiserror::Error;

/// Errors raised by state manipulation, channel application, circuit
/// execution and gradient evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("{requested} qubits exceeds the simulator capacity of {max}")]
    CapacityExceeded { requested: usize, max: usize },

    #[error("gate acts on {gate_qubits} qubit(s) but {targets} target(s) were given")]
    GateArityMismatch { gate_qubits: usize, targets: usize },

    #[error("duplicate target qubit {0}")]
    DuplicateTarget(usize),

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("keep set must not be empty")]
    EmptyKeepSet,

    #[error("post-selection impossible: outcome probability {0:.3e} is below 1e-12")]
    PostSelectionImpossible(f64),

    #[error("{name} = {value} outside the valid range {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("noise instruction at position {0} cannot run on the ideal backend")]
    NoiseOnIdealBackend(usize),

    #[error("expected {expected} bound parameter value(s), got {got}")]
    BindingMismatch { expected: usize, got: usize },

    #[error("symbol '{0}' parameterizes a non-rotation gate; the shift rule only supports rx/ry/rz")]
    UnsupportedGenerator(String),

    #[error("gradient and parameter vector lengths differ: {grad} vs {params}")]
    GradientLengthMismatch { grad: usize, params: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
}
