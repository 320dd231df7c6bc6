//! Mixed states as 2^n x 2^n density matrices.
//!
//! Entries are row-major. A gate U is applied as UρU† by two passes of the
//! same index-mask routine used for statevectors: the column index occupies
//! the low n bits of the flattened entry index and the row index the high n
//! bits, so left-multiplication targets qubits t+n and right-multiplication
//! by U† targets qubits t with the conjugated matrix.

use crate::apply::{apply_matrix, validate_targets};
use crate::error::SimError;
use crate::gates::GateMatrix;
use crate::observable::Observable;
use crate::state::{z_expectations_from_probs, StateVector};
use num_complex::Complex64;

/// Largest register the density-matrix backend accepts (4^n entries).
pub const MAX_DM_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// |0…0⟩⟨0…0|.
    pub fn new_zero(num_qubits: usize) -> Result<Self, SimError> {
        if num_qubits == 0 || num_qubits > MAX_DM_QUBITS {
            return Err(SimError::CapacityExceeded {
                requested: num_qubits,
                max: MAX_DM_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        entries[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            entries,
        })
    }

    pub(crate) fn from_entries_unchecked(num_qubits: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), (1usize << num_qubits) * (1usize << num_qubits));
        Self {
            num_qubits,
            entries,
        }
    }

    pub fn from_pure_state(state: &StateVector) -> Self {
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(amps[r] * amps[c].conj());
            }
        }
        Self {
            num_qubits: state.num_qubits(),
            entries,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> f64 {
        let dim = self.dim();
        (0..dim).map(|i| self.entries[i * dim + i].re).sum()
    }

    /// ρ ← UρU†.
    pub fn apply_gate(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<(), SimError> {
        validate_targets(self.num_qubits, gate.num_qubits(), targets)?;
        self.apply_matrix_both_sides(gate, targets);
        Ok(())
    }

    /// Sandwich ρ ← MρM† for an arbitrary (not necessarily unitary) matrix.
    pub(crate) fn apply_matrix_both_sides(&mut self, gate: &GateMatrix, targets: &[usize]) {
        let n = self.num_qubits;
        let row_targets: Vec<usize> = targets.iter().map(|t| t + n).collect();
        apply_matrix(&mut self.entries, 2 * n, gate.elems(), &row_targets);
        let conj = gate.conjugated();
        apply_matrix(&mut self.entries, 2 * n, conj.elems(), targets);
    }

    /// Diagonal of ρ: the exact measurement distribution.
    pub fn probabilities(&self) -> Vec<f64> {
        let dim = self.dim();
        (0..dim).map(|i| self.entries[i * dim + i].re).collect()
    }

    /// Tr(ρO); the imaginary residue is discarded.
    pub fn expectation(&self, obs: &Observable) -> Result<f64, SimError> {
        obs.validate(self.num_qubits)?;
        let dim = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for term in obs.terms() {
            acc += term.coefficient() * term.trace_with(&self.entries, dim);
        }
        Ok(acc.re)
    }

    pub fn z_expectations(&self) -> Vec<f64> {
        z_expectations_from_probs(&self.probabilities(), self.num_qubits)
    }

    /// Reduced state over `keep`; output qubit j is input qubit keep[j].
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix, SimError> {
        if keep.is_empty() {
            return Err(SimError::EmptyKeepSet);
        }
        for (i, &q) in keep.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(SimError::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
            if keep[..i].contains(&q) {
                return Err(SimError::DuplicateTarget(q));
            }
        }
        let traced: Vec<usize> = (0..self.num_qubits)
            .filter(|q| !keep.contains(q))
            .collect();

        let out_dim = 1usize << keep.len();
        let env_dim = 1usize << traced.len();
        let dim = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); out_dim * out_dim];

        let scatter = |bits: usize, positions: &[usize]| -> usize {
            let mut out = 0usize;
            for (b, &q) in positions.iter().enumerate() {
                if (bits >> b) & 1 == 1 {
                    out |= 1 << q;
                }
            }
            out
        };

        for a in 0..out_dim {
            let ka = scatter(a, keep);
            for b in 0..out_dim {
                let kb = scatter(b, keep);
                let mut acc = Complex64::new(0.0, 0.0);
                for e in 0..env_dim {
                    let env = scatter(e, &traced);
                    acc += self.entries[(ka | env) * dim + (kb | env)];
                }
                entries[a * out_dim + b] = acc;
            }
        }
        Ok(DensityMatrix {
            num_qubits: keep.len(),
            entries,
        })
    }

    /// max |ρ − ρ†| entry; zero for exactly Hermitian ρ.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut max = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                let d = (self.entry(r, c) - self.entry(c, r).conj()).norm();
                max = max.max(d);
            }
        }
        max
    }

    pub fn max_abs_difference(&self, other: &DensityMatrix) -> f64 {
        assert_eq!(self.num_qubits, other.num_qubits);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
