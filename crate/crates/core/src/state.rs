//! Pure states as 2^n complex amplitude vectors.

use crate::apply::{apply_matrix, validate_targets};
use crate::density::DensityMatrix;
use crate::error::SimError;
use crate::gates::GateMatrix;
use crate::observable::Observable;
use num_complex::Complex64;

/// Largest register the statevector backend accepts.
pub const MAX_QUBITS: usize = 20;

/// A pure n-qubit state: 2^n amplitudes, qubit 0 least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `num_qubits` qubits.
    pub fn new_zero(num_qubits: usize) -> Result<Self, SimError> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(SimError::CapacityExceeded {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Build from raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let n = amps.len();
        if n < 2 || !n.is_power_of_two() || n > (1 << MAX_QUBITS) {
            return Err(SimError::CapacityExceeded {
                requested: n,
                max: 1 << MAX_QUBITS,
            });
        }
        Ok(Self {
            num_qubits: n.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Apply a unitary to the listed target qubits. `targets[0]` is the
    /// least significant bit of the gate's local basis index.
    pub fn apply_gate(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<(), SimError> {
        validate_targets(self.num_qubits, gate.num_qubits(), targets)?;
        apply_matrix(&mut self.amps, self.num_qubits, gate.elems(), targets);
        Ok(())
    }

    /// |amplitude_i|² for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// ⟨ψ|O|ψ⟩; the imaginary residue (below 1e-10 for Hermitian O) is
    /// discarded.
    pub fn expectation(&self, obs: &Observable) -> Result<f64, SimError> {
        obs.validate(self.num_qubits)?;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for term in obs.terms() {
            scratch.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
            term.apply_to_amplitudes(&self.amps, &mut scratch);
            let dot: Complex64 = self
                .amps
                .iter()
                .zip(&scratch)
                .map(|(a, b)| a.conj() * b)
                .sum();
            acc += term.coefficient() * dot;
        }
        Ok(acc.re)
    }

    /// ⟨Z_q⟩ for every qubit, in one pass over the probabilities.
    pub fn z_expectations(&self) -> Vec<f64> {
        z_expectations_from_probs(&self.probabilities(), self.num_qubits)
    }

    /// ρ = |ψ⟩⟨ψ|.
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure_state(self)
    }

    /// Kronecker product; `self` occupies the low qubits of the result.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector, SimError> {
        let total = self.num_qubits + other.num_qubits;
        if total > MAX_QUBITS {
            return Err(SimError::CapacityExceeded {
                requested: total,
                max: MAX_QUBITS,
            });
        }
        let mut amps = Vec::with_capacity(1 << total);
        for hi in &other.amps {
            for lo in &self.amps {
                amps.push(hi * lo);
            }
        }
        Ok(StateVector {
            num_qubits: total,
            amps,
        })
    }
}

pub(crate) fn z_expectations_from_probs(probs: &[f64], num_qubits: usize) -> Vec<f64> {
    let mut out = vec![0.0; num_qubits];
    for (i, &p) in probs.iter().enumerate() {
        for (q, o) in out.iter_mut().enumerate() {
            if (i >> q) & 1 == 0 {
                *o += p;
            } else {
                *o -= p;
            }
        }
    }
    out
}

/// Condition a measured distribution on an ancilla outcome.
///
/// `probs` is a distribution over 2^n basis indices (it must sum to 1
/// within 1e-8); `ancilla[i]` is matched against `outcome[i]`. Returns the
/// renormalized distribution over the remaining qubits (ascending order)
/// and the probability of observing the outcome.
pub fn postselect(
    probs: &[f64],
    ancilla: &[usize],
    outcome: &[bool],
) -> Result<(Vec<f64>, f64), SimError> {
    assert!(probs.len().is_power_of_two() && probs.len() >= 2);
    let num_qubits = probs.len().trailing_zeros() as usize;
    debug_assert!(
        (probs.iter().sum::<f64>() - 1.0).abs() < 1e-8,
        "postselect input must be a normalized distribution"
    );
    assert_eq!(ancilla.len(), outcome.len());
    for (i, &a) in ancilla.iter().enumerate() {
        if a >= num_qubits {
            return Err(SimError::QubitOutOfRange {
                index: a,
                num_qubits,
            });
        }
        if ancilla[..i].contains(&a) {
            return Err(SimError::DuplicateTarget(a));
        }
    }

    let mut match_mask = 0usize;
    let mut match_bits = 0usize;
    for (&a, &bit) in ancilla.iter().zip(outcome) {
        match_mask |= 1 << a;
        if bit {
            match_bits |= 1 << a;
        }
    }

    let data: Vec<usize> = (0..num_qubits).filter(|q| !ancilla.contains(q)).collect();
    let mut conditional = vec![0.0; 1 << data.len()];
    let mut success = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        if i & match_mask != match_bits {
            continue;
        }
        success += p;
        let mut j = 0usize;
        for (b, &q) in data.iter().enumerate() {
            if (i >> q) & 1 == 1 {
                j |= 1 << b;
            }
        }
        conditional[j] += p;
    }

    if success < 1e-12 {
        return Err(SimError::PostSelectionImpossible(success));
    }
    for c in conditional.iter_mut() {
        *c /= success;
    }
    Ok((conditional, success))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn zero_state_examples() {
        let s = StateVector::new_zero(1).unwrap();
        assert_eq!(s.amplitudes(), &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let s2 = StateVector::new_zero(2).unwrap();
        assert_eq!(s2.amplitude(0), Complex64::new(1.0, 0.0));
        assert_eq!(s2.amplitudes().len(), 4);
        assert!((1..4).all(|i| s2.amplitude(i).norm() == 0.0));
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(
            StateVector::new_zero(21),
            Err(SimError::CapacityExceeded { requested: 21, max: 20 })
        ));
        assert!(StateVector::new_zero(0).is_err());
    }

    #[test]
    fn hadamard_makes_plus() {
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::h(), &[0]).unwrap();
        assert_close(s.amplitude(0).re, FRAC_1_SQRT_2, 1e-15);
        assert_close(s.amplitude(1).re, FRAC_1_SQRT_2, 1e-15);
        assert_eq!(s.probabilities(), s.amplitudes().iter().map(|a| a.norm_sqr()).collect::<Vec<_>>());
    }

    #[test]
    fn x_flips_zero() {
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::x(), &[0]).unwrap();
        assert_close(s.amplitude(1).re, 1.0, 1e-15);
        assert_close(s.amplitude(0).norm(), 0.0, 1e-15);
    }

    #[test]
    fn bell_preparation() {
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_gate(&GateMatrix::h(), &[0]).unwrap();
        s.apply_gate(&GateMatrix::cx(), &[0, 1]).unwrap();
        let probs = s.probabilities();
        assert_close(probs[0], 0.5, 1e-12);
        assert_close(probs[1], 0.0, 1e-12);
        assert_close(probs[2], 0.0, 1e-12);
        assert_close(probs[3], 0.5, 1e-12);
    }

    #[test]
    fn gate_target_validation() {
        let mut s = StateVector::new_zero(2).unwrap();
        assert!(matches!(
            s.apply_gate(&GateMatrix::h(), &[2]),
            Err(SimError::QubitOutOfRange { index: 2, num_qubits: 2 })
        ));
        assert!(matches!(
            s.apply_gate(&GateMatrix::cx(), &[0]),
            Err(SimError::GateArityMismatch { .. })
        ));
        assert!(matches!(
            s.apply_gate(&GateMatrix::cx(), &[1, 1]),
            Err(SimError::DuplicateTarget(1))
        ));
    }

    #[test]
    fn measure_probs_plus_and_zero() {
        let mut s = StateVector::new_zero(1).unwrap();
        assert_eq!(s.probabilities(), vec![1.0, 0.0]);
        s.apply_gate(&GateMatrix::h(), &[0]).unwrap();
        let p = s.probabilities();
        assert_close(p[0], 0.5, 1e-12);
        assert_close(p[1], 0.5, 1e-12);
        assert_close(p.iter().sum::<f64>(), 1.0, 1e-10);
    }

    #[test]
    fn expectation_z_on_zero() {
        let s = StateVector::new_zero(1).unwrap();
        assert_close(s.expectation(&Observable::z(0)).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn expectation_after_ry_matches_matrix_algebra() {
        // Oracle: RY(θ)|0⟩ = (cos θ/2, sin θ/2); ⟨Z⟩ = cos²(θ/2) − sin²(θ/2).
        for theta in [PI / 3.0, 0.7, -1.3, 2.9] {
            let oracle = {
                let c = (theta / 2.0).cos();
                let s = (theta / 2.0).sin();
                c * c - s * s
            };
            let mut s = StateVector::new_zero(1).unwrap();
            s.apply_gate(&GateMatrix::ry(theta), &[0]).unwrap();
            assert_close(s.expectation(&Observable::z(0)).unwrap(), oracle, 1e-12);
        }
        // spec figure: θ = π/3 gives 1/2
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::ry(PI / 3.0), &[0]).unwrap();
        assert_close(s.expectation(&Observable::z(0)).unwrap(), 0.5, 1e-12);
    }

    #[test]
    fn expectation_zz_on_bell_brute_force() {
        // Oracle: explicit 4x4 Z⊗Z against the Bell amplitudes.
        let mut s = StateVector::new_zero(2).unwrap();
        s.apply_gate(&GateMatrix::h(), &[0]).unwrap();
        s.apply_gate(&GateMatrix::cx(), &[0, 1]).unwrap();
        let zz_diag = [1.0, -1.0, -1.0, 1.0];
        let oracle: f64 = s
            .amplitudes()
            .iter()
            .zip(zz_diag)
            .map(|(a, d)| a.norm_sqr() * d)
            .sum();
        let obs = Observable::pauli_product(&[(0, crate::observable::Pauli::Z), (1, crate::observable::Pauli::Z)]);
        let got = s.expectation(&obs).unwrap();
        assert_close(got, oracle, 1e-12);
        assert_close(got, 1.0, 1e-12);
    }

    #[test]
    fn postselect_bell_on_ancilla_zero() {
        let probs = vec![0.5, 0.0, 0.0, 0.5];
        let (cond, success) = postselect(&probs, &[1], &[false]).unwrap();
        assert_eq!(cond.len(), 2);
        assert_close(cond[0], 1.0, 1e-12);
        assert_close(cond[1], 0.0, 1e-12);
        assert_close(success, 0.5, 1e-12);
    }

    #[test]
    fn postselect_uniform() {
        let probs = vec![0.25; 4];
        let (cond, success) = postselect(&probs, &[0], &[false]).unwrap();
        assert_close(cond[0], 0.5, 1e-12);
        assert_close(cond[1], 0.5, 1e-12);
        assert_close(success, 0.5, 1e-12);
    }

    #[test]
    fn postselect_impossible() {
        let probs = vec![1.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            postselect(&probs, &[0], &[true]),
            Err(SimError::PostSelectionImpossible(_))
        ));
    }

    #[test]
    fn tensor_product_layout() {
        // |0⟩ ⊗ |1⟩ with |0⟩ on qubit 0 → index 2 (qubit 1 set)
        let zero = StateVector::new_zero(1).unwrap();
        let mut one = StateVector::new_zero(1).unwrap();
        one.apply_gate(&GateMatrix::x(), &[0]).unwrap();
        let prod = zero.tensor(&one).unwrap();
        assert_close(prod.amplitude(2).re, 1.0, 1e-15);
    }
}
