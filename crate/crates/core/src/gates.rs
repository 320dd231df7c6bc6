//! Constant and parameterized gate matrices.
//!
//! Matrices are stored row-major over the gate's local basis. For a
//! multi-target gate the first listed target is the least significant bit
//! of the local index, matching the register's little-endian convention.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense unitary (or, for internal channel use, arbitrary) matrix acting
/// on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    num_qubits: usize,
    elems: Vec<Complex64>,
}

impl GateMatrix {
    pub fn new(num_qubits: usize, elems: Vec<Complex64>) -> Self {
        let dim = 1usize << num_qubits;
        assert_eq!(elems.len(), dim * dim, "gate matrix has wrong element count");
        Self { num_qubits, elems }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn elems(&self) -> &[Complex64] {
        &self.elems
    }

    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.elems[row * self.dim() + col]
    }

    /// Elementwise complex conjugate (not the adjoint).
    pub fn conjugated(&self) -> Self {
        Self {
            num_qubits: self.num_qubits,
            elems: self.elems.iter().map(|c| c.conj()).collect(),
        }
    }

    /// ‖G·G† − I‖_max, zero for an exactly unitary matrix.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut max = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.at(r, k) * self.at(c, k).conj();
                }
                let expect = if r == c { ONE } else { ZERO };
                max = max.max((acc - expect).norm());
            }
        }
        max
    }

    pub fn h() -> Self {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::new(1, vec![s, s, s, -s])
    }

    pub fn x() -> Self {
        Self::new(1, vec![ZERO, ONE, ONE, ZERO])
    }

    pub fn y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::new(1, vec![ZERO, -i, i, ZERO])
    }

    pub fn z() -> Self {
        Self::new(1, vec![ONE, ZERO, ZERO, -ONE])
    }

    pub fn rx(theta: f64) -> Self {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new(0.0, -(theta / 2.0).sin());
        Self::new(1, vec![c, s, s, c])
    }

    pub fn ry(theta: f64) -> Self {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new((theta / 2.0).sin(), 0.0);
        Self::new(1, vec![c, -s, s, c])
    }

    pub fn rz(theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta / 2.0);
        Self::new(1, vec![phase.conj(), ZERO, ZERO, phase])
    }

    /// CNOT with the control on the first target slot (local bit 0).
    pub fn cx() -> Self {
        let mut m = vec![ZERO; 16];
        // |c t⟩: 00→00, 01→11, 10→10, 11→01 (control is local bit 0)
        m[0] = ONE;
        m[1 * 4 + 3] = ONE;
        m[2 * 4 + 2] = ONE;
        m[3 * 4 + 1] = ONE;
        Self::new(2, m)
    }

    pub fn cz() -> Self {
        let mut m = vec![ZERO; 16];
        m[0] = ONE;
        m[5] = ONE;
        m[10] = ONE;
        m[15] = -ONE;
        Self::new(2, m)
    }

    /// Controlled phase: diag(1, 1, 1, e^{iθ}). Symmetric in its targets.
    pub fn cp(theta: f64) -> Self {
        let mut m = vec![ZERO; 16];
        m[0] = ONE;
        m[5] = ONE;
        m[10] = ONE;
        m[15] = Complex64::from_polar(1.0, theta);
        Self::new(2, m)
    }
}
