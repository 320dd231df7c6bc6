//! Parameter-shift gradients of circuit expectation values, plus the
//! central-finite-difference oracle used to verify them.
//!
//! The shift rule here is the exact ±π/2 form with scale 1/2, valid for
//! the Pauli-rotation generators rx/ry/rz (the only parameterized gates
//! the rule accepts). A symbol may appear in several instructions; its
//! gradient is the sum over occurrences, each occurrence shifted
//! independently.

use crate::channels::NoiseModel;
use crate::circuit::{Arg, Circuit};
use crate::error::SimError;
use crate::observable::Observable;
use rayon::prelude::*;
use std::f64::consts::FRAC_PI_2;

/// Evaluate the expectation of `obs` for the circuit with fully resolved
/// per-instruction angles. The density backend is used whenever a noise
/// model is supplied or the circuit carries inline noise.
fn evaluate(
    circuit: &Circuit,
    angles: &[Option<f64>],
    obs: &Observable,
    noise: Option<&NoiseModel>,
) -> Result<f64, SimError> {
    if noise.is_none() && !circuit.has_noise() {
        let state = crate::circuit::run_ideal_with_angles(circuit, angles, false)?;
        state.expectation(obs)
    } else {
        let empty = NoiseModel::empty();
        let nm = noise.unwrap_or(&empty);
        let rho = crate::circuit::run_noisy_with_angles(circuit, angles, nm)?;
        rho.expectation(obs)
    }
}

/// Instruction indices carrying each symbol, with a guard against symbols
/// attached to unsupported (non-rotation) generators.
fn symbol_occurrences(circuit: &Circuit) -> Result<Vec<Vec<usize>>, SimError> {
    let mut occ = vec![Vec::new(); circuit.num_symbols()];
    for (i, op) in circuit.ops().iter().enumerate() {
        if let Some(Arg::Symbol(s)) = op.arg() {
            if !op.is_rotation() {
                return Err(SimError::UnsupportedGenerator(
                    circuit.symbol_name(s).to_string(),
                ));
            }
            occ[s].push(i);
        }
    }
    Ok(occ)
}

/// d⟨obs⟩/dθ_j for every symbol, via the parameter-shift rule. The
/// 2·(occurrence count) backend executions run in parallel.
pub fn shift_rule_gradient(
    circuit: &Circuit,
    theta: &[f64],
    obs: &Observable,
    noise: Option<&NoiseModel>,
) -> Result<Vec<f64>, SimError> {
    let occurrences = symbol_occurrences(circuit)?;
    let base = circuit.resolve_angles(theta)?;

    // (symbol, instruction, sign) jobs, evaluated independently
    let jobs: Vec<(usize, usize, f64)> = occurrences
        .iter()
        .enumerate()
        .flat_map(|(s, occs)| {
            occs.iter()
                .flat_map(move |&i| [(s, i, 1.0), (s, i, -1.0)])
        })
        .collect();

    let results: Vec<(usize, f64)> = jobs
        .par_iter()
        .map(|&(s, i, sign)| {
            let mut angles = base.clone();
            angles[i] = Some(angles[i].expect("rotation has angle") + sign * FRAC_PI_2);
            evaluate(circuit, &angles, obs, noise).map(|e| (s, sign * e / 2.0))
        })
        .collect::<Result<_, _>>()?;

    let mut grad = vec![0.0; circuit.num_symbols()];
    for (s, contribution) in results {
        grad[s] += contribution;
    }
    Ok(grad)
}

/// Central finite differences (E(θ_j+h) − E(θ_j−h)) / 2h on the symbol
/// values. Independent of the shift-rule path; serves as its oracle.
pub fn finite_diff_gradient(
    circuit: &Circuit,
    theta: &[f64],
    obs: &Observable,
    noise: Option<&NoiseModel>,
    h: f64,
) -> Result<Vec<f64>, SimError> {
    if h <= 0.0 || !h.is_finite() {
        return Err(SimError::InvalidParameter {
            name: "h",
            value: h,
            range: "(0, inf)",
        });
    }
    if theta.len() != circuit.num_symbols() {
        return Err(SimError::BindingMismatch {
            expected: circuit.num_symbols(),
            got: theta.len(),
        });
    }

    (0..theta.len())
        .into_par_iter()
        .map(|j| {
            let mut plus = theta.to_vec();
            let mut minus = theta.to_vec();
            plus[j] += h;
            minus[j] -= h;
            let ep = evaluate(circuit, &circuit.resolve_angles(&plus)?, obs, noise)?;
            let em = evaluate(circuit, &circuit.resolve_angles(&minus)?, obs, noise)?;
            Ok((ep - em) / (2.0 * h))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Op;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn ry_circuit() -> Circuit {
        let mut c = Circuit::new(1).unwrap();
        let t = c.symbol("t");
        c.push(Op::Ry(0, t)).unwrap();
        c
    }

    #[test]
    fn gradient_of_cos_at_zero_is_zero() {
        let c = ry_circuit();
        let g = shift_rule_gradient(&c, &[0.0], &Observable::z(0), None).unwrap();
        assert!(g[0].abs() < 1e-12);
    }

    #[test]
    fn gradient_at_half_pi_matches_finite_differences() {
        let c = ry_circuit();
        let obs = Observable::z(0);
        let g = shift_rule_gradient(&c, &[FRAC_PI_2], &obs, None).unwrap();
        let fd = finite_diff_gradient(&c, &[FRAC_PI_2], &obs, None, 1e-4).unwrap();
        assert!((g[0] - (-1.0)).abs() < 1e-12);
        assert!((g[0] - fd[0]).abs() < 1e-5);
    }

    #[test]
    fn repeated_symbol_sums_occurrences() {
        // ⟨Z⟩ = cos(a+b); both gradients are −sin(a+b).
        let mut c = Circuit::new(1).unwrap();
        let a = c.symbol("a");
        let b = c.symbol("b");
        c.push(Op::Ry(0, a)).unwrap();
        c.push(Op::Ry(0, b)).unwrap();
        let g =
            shift_rule_gradient(&c, &[FRAC_PI_4, FRAC_PI_4], &Observable::z(0), None).unwrap();
        assert!((g[0] - (-1.0)).abs() < 1e-12, "{}", g[0]);
        assert!((g[1] - (-1.0)).abs() < 1e-12, "{}", g[1]);

        // the same symbol on both rotations: d/dt cos(2t) = −2 sin(2t)
        let mut c2 = Circuit::new(1).unwrap();
        let t = c2.symbol("t");
        c2.push(Op::Ry(0, t)).unwrap();
        c2.push(Op::Ry(0, t)).unwrap();
        let g2 = shift_rule_gradient(&c2, &[0.3], &Observable::z(0), None).unwrap();
        assert!((g2[0] - (-2.0 * (0.6f64).sin())).abs() < 1e-12);
    }

    #[test]
    fn symbol_on_cp_is_unsupported() {
        let mut c = Circuit::new(2).unwrap();
        let t = c.symbol("phi");
        c.push(Op::Cp(0, 1, t)).unwrap();
        assert!(matches!(
            shift_rule_gradient(&c, &[0.1], &Observable::z(0), None),
            Err(SimError::UnsupportedGenerator(_))
        ));
    }

    #[test]
    fn parameter_free_circuit_has_empty_gradient() {
        let mut c = Circuit::new(1).unwrap();
        c.push(Op::H(0)).unwrap();
        let g = shift_rule_gradient(&c, &[], &Observable::z(0), None).unwrap();
        assert!(g.is_empty());
        let fd = finite_diff_gradient(&c, &[], &Observable::z(0), None, 1e-4).unwrap();
        assert!(fd.is_empty());
    }

    #[test]
    fn rz_on_zero_state_has_zero_gradient() {
        let mut c = Circuit::new(1).unwrap();
        let t = c.symbol("t");
        c.push(Op::Rz(0, t)).unwrap();
        let g = shift_rule_gradient(&c, &[0.7], &Observable::z(0), None).unwrap();
        assert!(g[0].abs() < 1e-12);
        let fd = finite_diff_gradient(&c, &[0.7], &Observable::z(0), None, 1e-4).unwrap();
        assert!(fd[0].abs() < 1e-12);
    }

    #[test]
    fn gradient_is_linear_in_the_observable() {
        let mut c = Circuit::new(2).unwrap();
        let a = c.symbol("a");
        let b = c.symbol("b");
        c.push(Op::Ry(0, a)).unwrap();
        c.push(Op::Rx(1, b)).unwrap();
        c.push(Op::Cz(0, 1)).unwrap();
        let theta = [0.4, -1.1];

        let g0 = shift_rule_gradient(&c, &theta, &Observable::z(0), None).unwrap();
        let g1 = shift_rule_gradient(&c, &theta, &Observable::z(1), None).unwrap();
        let combined = Observable::weighted_sum(vec![
            (2.5, Observable::z(0)),
            (-0.75, Observable::z(1)),
        ]);
        let gc = shift_rule_gradient(&c, &theta, &combined, None).unwrap();
        for j in 0..2 {
            let expect = 2.5 * g0[j] - 0.75 * g1[j];
            assert!((gc[j] - expect).abs() < 1e-10);
        }
    }
}
