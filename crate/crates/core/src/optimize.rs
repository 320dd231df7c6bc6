//! Flat parameter storage and the gradient-descent optimizers.

use crate::error::SimError;
use std::str::FromStr;

/// The unit of optimization: a flat real vector, optionally labeled, shared
/// by circuit templates and classical layers. Values stay finite; the
/// optimizer refuses non-finite gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    values: Vec<f64>,
    names: Option<Vec<String>>,
}

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values,
            names: None,
        }
    }

    pub fn with_names(values: Vec<f64>, names: Vec<String>) -> Self {
        assert_eq!(values.len(), names.len());
        Self {
            values,
            names: Some(names),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerKind {
    Sgd,
    SgdMomentum,
    Adaptive,
}

impl FromStr for OptimizerKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "sgd" => Ok(OptimizerKind::Sgd),
            "sgd-momentum" | "momentum" => Ok(OptimizerKind::SgdMomentum),
            "adaptive" | "adam" => Ok(OptimizerKind::Adaptive),
            _ => Err(()),
        }
    }
}

impl OptimizerKind {
    pub fn token(&self) -> &'static str {
        match self {
            OptimizerKind::Sgd => "sgd",
            OptimizerKind::SgdMomentum => "sgd-momentum",
            OptimizerKind::Adaptive => "adaptive",
        }
    }
}

const MOMENTUM_DECAY: f64 = 0.9;
const ADAPTIVE_BETA1: f64 = 0.9;
const ADAPTIVE_BETA2: f64 = 0.999;
const ADAPTIVE_EPSILON: f64 = 1e-8;

/// Per-parameter accumulator state for one of the three update rules.
/// Deterministic: identical inputs give bit-identical trajectories.
#[derive(Debug, Clone)]
pub struct Optimizer {
    kind: OptimizerKind,
    learning_rate: f64,
    momentum: Vec<f64>,
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
    step_count: u64,
}

impl Optimizer {
    pub fn new(kind: OptimizerKind, learning_rate: f64) -> Result<Self, SimError> {
        if learning_rate <= 0.0 || !learning_rate.is_finite() {
            return Err(SimError::InvalidParameter {
                name: "learning_rate",
                value: learning_rate,
                range: "(0, inf)",
            });
        }
        Ok(Self {
            kind,
            learning_rate,
            momentum: Vec::new(),
            first_moment: Vec::new(),
            second_moment: Vec::new(),
            step_count: 0,
        })
    }

    pub fn kind(&self) -> OptimizerKind {
        self.kind
    }

    pub fn learning_rate(&self) -> f64 {
        self.learning_rate
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    /// θ ← θ − lr·(update direction). sgd uses the raw gradient; momentum
    /// keeps a decaying velocity (0.9); adaptive keeps bias-corrected
    /// first/second moments (0.9 / 0.999, ε = 1e-8).
    pub fn step(&mut self, theta: &mut ParamVector, grad: &[f64]) -> Result<(), SimError> {
        if grad.len() != theta.len() {
            return Err(SimError::GradientLengthMismatch {
                grad: grad.len(),
                params: theta.len(),
            });
        }
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(SimError::NonFinite("gradient"));
        }

        self.step_count += 1;
        let lr = self.learning_rate;
        let values = theta.values_mut();
        match self.kind {
            OptimizerKind::Sgd => {
                for (v, g) in values.iter_mut().zip(grad) {
                    *v -= lr * g;
                }
            }
            OptimizerKind::SgdMomentum => {
                self.momentum.resize(values.len(), 0.0);
                for ((v, g), m) in values.iter_mut().zip(grad).zip(&mut self.momentum) {
                    *m = MOMENTUM_DECAY * *m + g;
                    *v -= lr * *m;
                }
            }
            OptimizerKind::Adaptive => {
                self.first_moment.resize(values.len(), 0.0);
                self.second_moment.resize(values.len(), 0.0);
                let t = self.step_count as i32;
                let bias1 = 1.0 - ADAPTIVE_BETA1.powi(t);
                let bias2 = 1.0 - ADAPTIVE_BETA2.powi(t);
                for (i, (v, g)) in values.iter_mut().zip(grad).enumerate() {
                    let m = &mut self.first_moment[i];
                    let s = &mut self.second_moment[i];
                    *m = ADAPTIVE_BETA1 * *m + (1.0 - ADAPTIVE_BETA1) * g;
                    *s = ADAPTIVE_BETA2 * *s + (1.0 - ADAPTIVE_BETA2) * g * g;
                    let m_hat = *m / bias1;
                    let s_hat = *s / bias2;
                    *v -= lr * m_hat / (s_hat.sqrt() + ADAPTIVE_EPSILON);
                }
            }
        }

        if !theta.is_finite() {
            return Err(SimError::NonFinite("parameters after optimizer step"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn sgd_arithmetic() {
        let mut opt = Optimizer::new(OptimizerKind::Sgd, 0.1).unwrap();
        let mut theta = ParamVector::new(vec![1.0]);
        opt.step(&mut theta, &[2.0]).unwrap();
        assert!((theta.values()[0] - 0.8).abs() < 1e-15);
        assert_eq!(opt.step_count(), 1);
    }

    #[test]
    fn zero_gradient_leaves_parameters() {
        let mut opt = Optimizer::new(OptimizerKind::Sgd, 0.5).unwrap();
        let mut theta = ParamVector::new(vec![0.25, -0.5]);
        let before = theta.clone();
        opt.step(&mut theta, &[0.0, 0.0]).unwrap();
        assert_eq!(theta, before);
    }

    #[test]
    fn sgd_descends_cosine() {
        // E(θ) = cos θ, E'(π/2) = −1; one step moves θ to π/2 + lr and
        // the objective decreases.
        let theta0 = FRAC_PI_2;
        let grad = -theta0.sin();
        let mut opt = Optimizer::new(OptimizerKind::Sgd, 0.1).unwrap();
        let mut theta = ParamVector::new(vec![theta0]);
        opt.step(&mut theta, &[grad]).unwrap();
        let theta1 = theta.values()[0];
        assert!((theta1 - (FRAC_PI_2 + 0.1)).abs() < 1e-15);
        assert!(theta1.cos() < theta0.cos());
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let mut opt = Optimizer::new(OptimizerKind::Sgd, 0.1).unwrap();
        let mut theta = ParamVector::new(vec![1.0, 2.0]);
        assert!(matches!(
            opt.step(&mut theta, &[1.0]),
            Err(SimError::GradientLengthMismatch { .. })
        ));
    }

    #[test]
    fn non_finite_gradient_rejected() {
        let mut opt = Optimizer::new(OptimizerKind::Adaptive, 0.1).unwrap();
        let mut theta = ParamVector::new(vec![1.0]);
        assert!(matches!(
            opt.step(&mut theta, &[f64::NAN]),
            Err(SimError::NonFinite(_))
        ));
    }

    #[test]
    fn learning_rate_must_be_positive() {
        assert!(Optimizer::new(OptimizerKind::Sgd, 0.0).is_err());
        assert!(Optimizer::new(OptimizerKind::Sgd, -1.0).is_err());
    }

    #[test]
    fn adaptive_and_momentum_descend_a_quadratic() {
        for kind in [OptimizerKind::SgdMomentum, OptimizerKind::Adaptive] {
            let mut opt = Optimizer::new(kind, 0.05).unwrap();
            let mut theta = ParamVector::new(vec![3.0]);
            for _ in 0..200 {
                let g = 2.0 * theta.values()[0];
                opt.step(&mut theta, &[g]).unwrap();
            }
            assert!(
                theta.values()[0].abs() < 0.5,
                "{kind:?} failed to descend: {}",
                theta.values()[0]
            );
        }
    }

    #[test]
    fn identical_inputs_give_identical_trajectories() {
        let run = || {
            let mut opt = Optimizer::new(OptimizerKind::Adaptive, 0.01).unwrap();
            let mut theta = ParamVector::new(vec![0.3, -0.7]);
            let mut trace = Vec::new();
            for i in 0..50 {
                let g = [theta.values()[0] + i as f64 * 0.01, theta.values()[1]];
                opt.step(&mut theta, &g).unwrap();
                trace.extend(theta.values().iter().map(|v| v.to_bits()));
            }
            trace
        };
        assert_eq!(run(), run());
    }
}
