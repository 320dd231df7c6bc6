//! Index-mask application of small matrices to amplitude vectors.
//!
//! Qubit `q` is the bit of weight 2^q in a basis index (little-endian). A
//! gate on k targets touches groups of 2^k amplitudes that share all other
//! bits; the full 2^n x 2^n operator is never materialized.

use crate::error::SimError;
use num_complex::Complex64;

pub(crate) fn validate_targets(
    num_qubits: usize,
    gate_qubits: usize,
    targets: &[usize],
) -> Result<(), SimError> {
    if targets.len() != gate_qubits {
        return Err(SimError::GateArityMismatch {
            gate_qubits,
            targets: targets.len(),
        });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= num_qubits {
            return Err(SimError::QubitOutOfRange {
                index: t,
                num_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(SimError::DuplicateTarget(t));
        }
    }
    Ok(())
}

/// Insert zero bits at the (ascending) `positions` of `packed`, spreading
/// the remaining bits around them.
#[inline]
fn spread_free_bits(packed: usize, sorted_positions: &[usize]) -> usize {
    let mut value = packed;
    for &p in sorted_positions {
        let low = value & ((1usize << p) - 1);
        let high = (value >> p) << (p + 1);
        value = high | low;
    }
    value
}

/// In-place `amps ← (M on targets) · amps` where `amps` spans
/// `total_qubits` qubits and `matrix` is row-major of dimension
/// 2^targets.len(). Targets must already be validated. `targets[0]` is the
/// least significant bit of the matrix's local index.
pub(crate) fn apply_matrix(
    amps: &mut [Complex64],
    total_qubits: usize,
    matrix: &[Complex64],
    targets: &[usize],
) {
    let k = targets.len();
    let dim = 1usize << k;
    debug_assert_eq!(matrix.len(), dim * dim);
    debug_assert_eq!(amps.len(), 1usize << total_qubits);

    let mut sorted = targets.to_vec();
    sorted.sort_unstable();

    // offsets[j] sets the target bits according to local index j
    let mut offsets = vec![0usize; dim];
    for (j, off) in offsets.iter_mut().enumerate() {
        for (b, &t) in targets.iter().enumerate() {
            if (j >> b) & 1 == 1 {
                *off |= 1 << t;
            }
        }
    }

    let free_count = 1usize << (total_qubits - k);
    let mut scratch = vec![Complex64::new(0.0, 0.0); dim];
    for packed in 0..free_count {
        let base = spread_free_bits(packed, &sorted);
        for j in 0..dim {
            scratch[j] = amps[base | offsets[j]];
        }
        for (r, &off) in offsets.iter().enumerate() {
            let row = &matrix[r * dim..(r + 1) * dim];
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, &s) in scratch.iter().enumerate() {
                acc += row[c] * s;
            }
            amps[base | off] = acc;
        }
    }
}
