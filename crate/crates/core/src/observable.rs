//! Measurement operators: weighted sums of Pauli products.

use crate::error::SimError;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// One coefficient times a tensor product of single-qubit Paulis.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    factors: Vec<(usize, Pauli)>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, factors: Vec<(usize, Pauli)>) -> Self {
        let mut factors: Vec<_> = factors
            .into_iter()
            .filter(|(_, p)| *p != Pauli::I)
            .collect();
        factors.sort_by_key(|(q, _)| *q);
        factors.dedup_by_key(|(q, _)| *q);
        Self {
            coefficient,
            factors,
        }
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn factors(&self) -> &[(usize, Pauli)] {
        &self.factors
    }

    fn x_mask(&self) -> usize {
        self.factors
            .iter()
            .filter(|(_, p)| matches!(p, Pauli::X | Pauli::Y))
            .fold(0, |m, (q, _)| m | (1 << q))
    }

    /// Phase picked up by basis state |i⟩: P|i⟩ = phase(i)·|i ^ x_mask⟩.
    fn phase(&self, index: usize) -> Complex64 {
        let mut phase = Complex64::new(1.0, 0.0);
        for &(q, p) in &self.factors {
            let bit = (index >> q) & 1 == 1;
            match p {
                Pauli::I | Pauli::X => {}
                Pauli::Y => {
                    phase *= if bit {
                        Complex64::new(0.0, -1.0)
                    } else {
                        Complex64::new(0.0, 1.0)
                    }
                }
                Pauli::Z => {
                    if bit {
                        phase = -phase;
                    }
                }
            }
        }
        phase
    }

    /// out += P · amps (without the coefficient).
    pub(crate) fn apply_to_amplitudes(&self, amps: &[Complex64], out: &mut [Complex64]) {
        let mask = self.x_mask();
        for (i, &a) in amps.iter().enumerate() {
            out[i ^ mask] += self.phase(i) * a;
        }
    }

    /// Tr(ρ·P) without the coefficient, given row-major entries.
    pub(crate) fn trace_with(&self, entries: &[Complex64], dim: usize) -> Complex64 {
        let mask = self.x_mask();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            acc += self.phase(j) * entries[j * dim + (j ^ mask)];
        }
        acc
    }

    fn max_qubit(&self) -> Option<usize> {
        self.factors.iter().map(|(q, _)| *q).max()
    }
}

/// A Hermitian observable as a real-weighted sum of Pauli products. A
/// single unit-coefficient product has eigenvalues in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    terms: Vec<PauliTerm>,
}

impl Observable {
    pub fn new(terms: Vec<PauliTerm>) -> Self {
        Self { terms }
    }

    pub fn single(qubit: usize, pauli: Pauli) -> Self {
        Self::new(vec![PauliTerm::new(1.0, vec![(qubit, pauli)])])
    }

    pub fn z(qubit: usize) -> Self {
        Self::single(qubit, Pauli::Z)
    }

    pub fn x(qubit: usize) -> Self {
        Self::single(qubit, Pauli::X)
    }

    pub fn y(qubit: usize) -> Self {
        Self::single(qubit, Pauli::Y)
    }

    pub fn pauli_product(factors: &[(usize, Pauli)]) -> Self {
        Self::new(vec![PauliTerm::new(1.0, factors.to_vec())])
    }

    /// a·A + b·B + …
    pub fn weighted_sum(weighted: Vec<(f64, Observable)>) -> Self {
        let mut terms = Vec::new();
        for (w, obs) in weighted {
            for t in obs.terms {
                terms.push(PauliTerm::new(w * t.coefficient, t.factors));
            }
        }
        Self::new(terms)
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub(crate) fn validate(&self, num_qubits: usize) -> Result<(), SimError> {
        for t in &self.terms {
            if let Some(q) = t.max_qubit() {
                if q >= num_qubits {
                    return Err(SimError::QubitOutOfRange {
                        index: q,
                        num_qubits,
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_phases() {
        let y = PauliTerm::new(1.0, vec![(0, Pauli::Y)]);
        assert_eq!(y.phase(0), Complex64::new(0.0, 1.0));
        assert_eq!(y.phase(1), Complex64::new(0.0, -1.0));
        let z = PauliTerm::new(1.0, vec![(0, Pauli::Z)]);
        assert_eq!(z.phase(0), Complex64::new(1.0, 0.0));
        assert_eq!(z.phase(1), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn identity_factors_dropped() {
        let t = PauliTerm::new(2.0, vec![(0, Pauli::I), (1, Pauli::Z)]);
        assert_eq!(t.factors().len(), 1);
        assert_eq!(t.x_mask(), 0);
    }

    #[test]
    fn observable_range_check() {
        let obs = Observable::z(3);
        assert!(obs.validate(3).is_err());
        assert!(obs.validate(4).is_ok());
    }
}
