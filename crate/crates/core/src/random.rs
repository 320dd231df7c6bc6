//! Random circuit generation for self-checks and property suites.

use crate::channels::ChannelKind;
use crate::circuit::{Arg, Circuit, Op};
use rand::Rng;

/// Shape of the circuits to sample.
#[derive(Debug, Clone)]
pub struct RandomCircuitSpec {
    pub min_qubits: usize,
    pub max_qubits: usize,
    pub min_gates: usize,
    pub max_gates: usize,
    /// Rotations draw symbols from a pool of this size (0 = literals only).
    /// Symbols can repeat across instructions.
    pub max_symbols: usize,
    /// Allow inline noise instructions.
    pub include_noise: bool,
    /// Allow cp gates (always with literal angles).
    pub include_cp: bool,
}

impl RandomCircuitSpec {
    /// Noiseless, parameter-free circuits for backend cross-checks.
    pub fn noiseless(max_qubits: usize, max_gates: usize) -> Self {
        Self {
            min_qubits: 1,
            max_qubits,
            min_gates: 1,
            max_gates,
            max_symbols: 0,
            include_noise: false,
            include_cp: true,
        }
    }

    /// Parameterized circuits for gradient checks.
    pub fn parameterized(max_qubits: usize, max_gates: usize, max_symbols: usize) -> Self {
        Self {
            min_qubits: 1,
            max_qubits,
            min_gates: 1,
            max_gates,
            max_symbols,
            include_noise: false,
            include_cp: false,
        }
    }

    /// Everything the grammar can express, for parser round-trips.
    pub fn full(max_qubits: usize, max_gates: usize) -> Self {
        Self {
            min_qubits: 1,
            max_qubits,
            min_gates: 0,
            max_gates,
            max_symbols: 4,
            include_noise: true,
            include_cp: true,
        }
    }
}

/// Sample a circuit. Rotation angles are literal with probability 1/2 when
/// a symbol pool exists (symbol names `p0`, `p1`, …).
pub fn random_circuit<R: Rng>(rng: &mut R, spec: &RandomCircuitSpec) -> Circuit {
    let n = rng.random_range(spec.min_qubits..=spec.max_qubits);
    let gates = rng.random_range(spec.min_gates..=spec.max_gates);
    let mut c = Circuit::new(n).expect("spec within capacity");

    for _ in 0..gates {
        let q = rng.random_range(0..n);
        let q2 = if n > 1 {
            let mut other = rng.random_range(0..n - 1);
            if other >= q {
                other += 1;
            }
            other
        } else {
            q
        };
        let mut angle_arg = |c: &mut Circuit, rng: &mut R| -> Arg {
            if spec.max_symbols > 0 && rng.random_bool(0.5) {
                let idx = rng.random_range(0..spec.max_symbols);
                c.symbol(&format!("p{idx}"))
            } else {
                Arg::Literal(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
            }
        };

        let two_qubit_ok = n > 1;
        let choice = rng.random_range(0..10);
        let op = match choice {
            0 => Op::H(q),
            1 => Op::X(q),
            2 => Op::Y(q),
            3 => Op::Z(q),
            4 => Op::Rx(q, angle_arg(&mut c, rng)),
            5 => Op::Ry(q, angle_arg(&mut c, rng)),
            6 => Op::Rz(q, angle_arg(&mut c, rng)),
            7 if two_qubit_ok => Op::Cx(q, q2),
            8 if two_qubit_ok => Op::Cz(q, q2),
            9 if two_qubit_ok && spec.include_cp => Op::Cp(
                q,
                q2,
                Arg::Literal(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)),
            ),
            _ => Op::Ry(q, angle_arg(&mut c, rng)),
        };
        let op = if spec.include_noise && rng.random_bool(0.1) {
            let kind = ChannelKind::ALL[rng.random_range(0..4)];
            Op::Noise(kind, q, rng.random_range(0.0..=1.0))
        } else {
            op
        };
        c.push(op).expect("generated op is valid");
    }
    c
}

/// Uniform values in [−π, π] for every symbol of `circuit`.
pub fn random_values<R: Rng>(rng: &mut R, circuit: &Circuit) -> Vec<f64> {
    (0..circuit.num_symbols())
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_circuits_execute() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..50 {
            let spec = RandomCircuitSpec::parameterized(3, 12, 4);
            let c = random_circuit(&mut rng, &spec);
            let values = random_values(&mut rng, &c);
            let state = c.bind(&values).unwrap().run_ideal().unwrap();
            assert!((state.norm() - 1.0).abs() < 1e-10);
        }
    }
}
