//! Quantum phase estimation over a single-qubit phase gate.
//!
//! The counting register occupies qubits 0..m (qubit j carrying bit j of
//! the estimate) and the target qubit m is prepared in |1⟩, the eigenstate
//! of the phase gate P(2π·phase). Measuring the counting register peaks at
//! round(phase·2^m) mod 2^m, exactly so when the phase is k/2^m.

use crate::circuit::{Arg, Circuit, Op};
use crate::error::SimError;
use std::f64::consts::PI;

pub const MAX_COUNTING_QUBITS: usize = 8;

/// Build the QPE circuit for `eigenphase` in [0,1) with `counting_qubits`
/// bits of precision. Uses counting_qubits + 1 qubits in total.
pub fn build_qpe(eigenphase: f64, counting_qubits: usize) -> Result<Circuit, SimError> {
    if counting_qubits == 0 || counting_qubits > MAX_COUNTING_QUBITS {
        return Err(SimError::InvalidParameter {
            name: "counting_qubits",
            value: counting_qubits as f64,
            range: "[1, 8]",
        });
    }
    if !(0.0..1.0).contains(&eigenphase) {
        return Err(SimError::InvalidParameter {
            name: "eigenphase",
            value: eigenphase,
            range: "[0, 1)",
        });
    }

    let m = counting_qubits;
    let target = m;
    let mut c = Circuit::new(m + 1)?;

    c.push(Op::X(target))?;
    for j in 0..m {
        c.push(Op::H(j))?;
    }
    // controlled-U^(2^j) with U = P(2π·phase); cp is symmetric in targets
    for j in 0..m {
        let angle = 2.0 * PI * eigenphase * (1u64 << j) as f64;
        c.push(Op::Cp(j, target, Arg::Literal(angle)))?;
    }
    inverse_qft(&mut c, m)?;
    Ok(c)
}

/// Append the inverse QFT on qubits 0..m (little-endian basis encoding).
/// Exact: no rotation is dropped.
fn inverse_qft(c: &mut Circuit, m: usize) -> Result<(), SimError> {
    for j in 0..m / 2 {
        swap(c, j, m - 1 - j)?;
    }
    for j in 0..m {
        for k in 0..j {
            let angle = -PI / (1u64 << (j - k)) as f64;
            c.push(Op::Cp(k, j, Arg::Literal(angle)))?;
        }
        c.push(Op::H(j))?;
    }
    Ok(())
}

fn swap(c: &mut Circuit, a: usize, b: usize) -> Result<(), SimError> {
    c.push(Op::Cx(a, b))?;
    c.push(Op::Cx(b, a))?;
    c.push(Op::Cx(a, b))
}

/// Marginal distribution of the counting register (the low `m` qubits of
/// a QPE run), from the full-register distribution.
pub fn counting_distribution(probs: &[f64], counting_qubits: usize) -> Vec<f64> {
    let m_dim = 1usize << counting_qubits;
    let mut out = vec![0.0; m_dim];
    for (i, &p) in probs.iter().enumerate() {
        out[i & (m_dim - 1)] += p;
    }
    out
}

/// The basis index where an exact estimate of `eigenphase` lands.
pub fn expected_outcome(eigenphase: f64, counting_qubits: usize) -> usize {
    let m_dim = 1usize << counting_qubits;
    ((eigenphase * m_dim as f64).round() as usize) % m_dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{ChannelKind, NoiseModel};

    #[test]
    fn zero_phase_measures_all_zeros() {
        let c = build_qpe(0.0, 3).unwrap();
        let state = c.bind(&[]).unwrap().run_ideal().unwrap();
        let dist = counting_distribution(&state.probabilities(), 3);
        assert!((dist[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_eighth_phase_measures_001() {
        let c = build_qpe(0.125, 3).unwrap();
        let state = c.bind(&[]).unwrap().run_ideal().unwrap();
        let dist = counting_distribution(&state.probabilities(), 3);
        assert_eq!(expected_outcome(0.125, 3), 1);
        assert!(dist[1] >= 0.999, "success {}", dist[1]);
    }

    #[test]
    fn noise_strictly_degrades_success() {
        let c = build_qpe(0.125, 3).unwrap();
        let ideal = {
            let state = c.bind(&[]).unwrap().run_ideal().unwrap();
            counting_distribution(&state.probabilities(), 3)[1]
        };
        let noisy = {
            let nm = NoiseModel::end_of_circuit(ChannelKind::Depolarizing, 0.05).unwrap();
            let rho = c.bind(&[]).unwrap().run_noisy(&nm).unwrap();
            counting_distribution(&rho.probabilities(), 3)[1]
        };
        assert!(noisy < ideal, "noisy {noisy} vs ideal {ideal}");
    }

    #[test]
    fn counting_register_bounds() {
        assert!(build_qpe(0.5, 0).is_err());
        assert!(build_qpe(0.5, 9).is_err());
        assert!(build_qpe(1.0, 3).is_err());
        assert!(build_qpe(-0.1, 3).is_err());
    }
}
