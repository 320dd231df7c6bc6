//! Single-qubit Kraus noise channels and circuit-level noise models.

use crate::density::DensityMatrix;
use crate::error::SimError;
use crate::gates::GateMatrix;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
    AmplitudeDamping,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::AmplitudeDamping,
        ChannelKind::Depolarizing,
    ];

    /// Token used in the circuit text format and config files.
    pub fn token(&self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bitflip",
            ChannelKind::PhaseFlip => "phaseflip",
            ChannelKind::AmplitudeDamping => "damp",
            ChannelKind::Depolarizing => "depol",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "bitflip" => Ok(ChannelKind::BitFlip),
            "phaseflip" => Ok(ChannelKind::PhaseFlip),
            "damp" => Ok(ChannelKind::AmplitudeDamping),
            "depol" => Ok(ChannelKind::Depolarizing),
            _ => Err(()),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// The Kraus operators of one single-qubit channel, completeness-checked
/// on construction: Σ K†K = I within 1e-12 for every parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    kind: ChannelKind,
    parameter: f64,
    operators: Vec<GateMatrix>,
}

impl KrausSet {
    /// Build the named channel.
    ///
    /// bit flip: {√(1−p)·I, √p·X}; phase flip: {√(1−p)·I, √p·Z};
    /// amplitude damping: {[[1,0],[0,√(1−γ)]], [[0,√γ],[0,0]]};
    /// depolarizing: {√(1−3p/4)·I, √(p/4)·X, √(p/4)·Y, √(p/4)·Z}, which
    /// realizes ρ → (1−p)ρ + p·I/2.
    pub fn new(kind: ChannelKind, parameter: f64) -> Result<Self, SimError> {
        if !(0.0..=1.0).contains(&parameter) || !parameter.is_finite() {
            return Err(SimError::InvalidParameter {
                name: "channel parameter",
                value: parameter,
                range: "[0, 1]",
            });
        }
        let p = parameter;
        let scale = |m: &GateMatrix, s: f64| -> GateMatrix {
            GateMatrix::new(1, m.elems().iter().map(|c| c * s).collect())
        };
        let identity = GateMatrix::new(1, vec![ONE, ZERO, ZERO, ONE]);
        let operators = match kind {
            ChannelKind::BitFlip => vec![
                scale(&identity, (1.0 - p).sqrt()),
                scale(&GateMatrix::x(), p.sqrt()),
            ],
            ChannelKind::PhaseFlip => vec![
                scale(&identity, (1.0 - p).sqrt()),
                scale(&GateMatrix::z(), p.sqrt()),
            ],
            ChannelKind::AmplitudeDamping => vec![
                GateMatrix::new(1, vec![ONE, ZERO, ZERO, Complex64::new((1.0 - p).sqrt(), 0.0)]),
                GateMatrix::new(1, vec![ZERO, Complex64::new(p.sqrt(), 0.0), ZERO, ZERO]),
            ],
            ChannelKind::Depolarizing => vec![
                scale(&identity, (1.0 - 0.75 * p).sqrt()),
                scale(&GateMatrix::x(), (p / 4.0).sqrt()),
                scale(&GateMatrix::y(), (p / 4.0).sqrt()),
                scale(&GateMatrix::z(), (p / 4.0).sqrt()),
            ],
        };
        Ok(Self {
            kind,
            parameter,
            operators,
        })
    }

    /// Assemble a channel from raw 2x2 operators without any checks.
    /// Intended for experiments with custom (possibly broken) sets;
    /// `completeness_deviation` reports how far from CPTP it is.
    pub fn from_raw(kind: ChannelKind, parameter: f64, operators: Vec<GateMatrix>) -> Self {
        assert!(operators.iter().all(|k| k.num_qubits() == 1));
        Self {
            kind,
            parameter,
            operators,
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn parameter(&self) -> f64 {
        self.parameter
    }

    pub fn operators(&self) -> &[GateMatrix] {
        &self.operators
    }

    /// ‖Σ K†K − I‖_max.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = [ZERO; 4];
        for k in &self.operators {
            let e = k.elems();
            // K†K for a 2x2 matrix
            let kd = [e[0].conj(), e[2].conj(), e[1].conj(), e[3].conj()];
            sum[0] += kd[0] * e[0] + kd[1] * e[2];
            sum[1] += kd[0] * e[1] + kd[1] * e[3];
            sum[2] += kd[2] * e[0] + kd[3] * e[2];
            sum[3] += kd[2] * e[1] + kd[3] * e[3];
        }
        let id = [ONE, ZERO, ZERO, ONE];
        sum.iter()
            .zip(id)
            .map(|(s, i)| (s - i).norm())
            .fold(0.0, f64::max)
    }

    /// ρ → Σ K_i ρ K_i† on one qubit.
    pub fn apply(&self, rho: &DensityMatrix, qubit: usize) -> Result<DensityMatrix, SimError> {
        if qubit >= rho.num_qubits() {
            return Err(SimError::QubitOutOfRange {
                index: qubit,
                num_qubits: rho.num_qubits(),
            });
        }
        let dim = rho.dim();
        let mut acc = vec![ZERO; dim * dim];
        for k in &self.operators {
            let mut branch = rho.clone();
            branch.apply_matrix_both_sides(k, &[qubit]);
            for (a, b) in acc.iter_mut().zip(branch.entries()) {
                *a += b;
            }
        }
        Ok(DensityMatrix::from_entries_unchecked(rho.num_qubits(), acc))
    }
}

/// Where a noise entry strikes relative to the circuit structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoisePlacement {
    EndOfCircuit,
    /// After each structural layer. Flat instruction lists count as a
    /// single layer; layered circuit builders (the classifier kernel, the
    /// GAN sub-generator) insert these between layers.
    AfterEachLayer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoiseScope {
    AllQubits,
    Qubits(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseEntry {
    pub kind: ChannelKind,
    pub parameter: f64,
    pub placement: NoisePlacement,
    pub scope: NoiseScope,
}

/// A set of channels to weave into circuit execution.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NoiseModel {
    entries: Vec<NoiseEntry>,
}

impl NoiseModel {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[NoiseEntry] {
        &self.entries
    }

    pub fn push(&mut self, entry: NoiseEntry) -> Result<(), SimError> {
        if !(0.0..=1.0).contains(&entry.parameter) {
            return Err(SimError::InvalidParameter {
                name: "noise parameter",
                value: entry.parameter,
                range: "[0, 1]",
            });
        }
        self.entries.push(entry);
        Ok(())
    }

    /// One channel on every qubit at the end of the circuit.
    pub fn end_of_circuit(kind: ChannelKind, parameter: f64) -> Result<Self, SimError> {
        let mut nm = Self::empty();
        nm.push(NoiseEntry {
            kind,
            parameter,
            placement: NoisePlacement::EndOfCircuit,
            scope: NoiseScope::AllQubits,
        })?;
        Ok(nm)
    }

    /// The Table-style joint "flip parameter": bit flip and phase flip with
    /// the same probability on every qubit at the end of the circuit.
    pub fn flip_pair(parameter: f64) -> Result<Self, SimError> {
        let mut nm = Self::end_of_circuit(ChannelKind::BitFlip, parameter)?;
        nm.push(NoiseEntry {
            kind: ChannelKind::PhaseFlip,
            parameter,
            placement: NoisePlacement::EndOfCircuit,
            scope: NoiseScope::AllQubits,
        })?;
        Ok(nm)
    }

    /// Apply every entry matching `placement` to `rho`.
    pub fn apply_placement(
        &self,
        rho: &mut DensityMatrix,
        placement: NoisePlacement,
    ) -> Result<(), SimError> {
        for entry in self.entries.iter().filter(|e| e.placement == placement) {
            let channel = KrausSet::new(entry.kind, entry.parameter)?;
            let qubits: Vec<usize> = match &entry.scope {
                NoiseScope::AllQubits => (0..rho.num_qubits()).collect(),
                NoiseScope::Qubits(qs) => qs.clone(),
            };
            for q in qubits {
                *rho = channel.apply(rho, q)?;
            }
        }
        Ok(())
    }

    /// Apply all entries regardless of placement (a flat circuit is a
    /// single layer, so both placements collapse to "at the end").
    pub fn apply_all(&self, rho: &mut DensityMatrix) -> Result<(), SimError> {
        self.apply_placement(rho, NoisePlacement::EndOfCircuit)?;
        self.apply_placement(rho, NoisePlacement::AfterEachLayer)
    }

    pub fn has_placement(&self, placement: NoisePlacement) -> bool {
        self.entries.iter().any(|e| e.placement == placement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateVector;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn parameter_range_enforced() {
        assert!(KrausSet::new(ChannelKind::BitFlip, -0.1).is_err());
        assert!(KrausSet::new(ChannelKind::Depolarizing, 1.5).is_err());
        assert!(KrausSet::new(ChannelKind::AmplitudeDamping, 1.0).is_ok());
    }

    #[test]
    fn completeness_of_builtin_channels() {
        for kind in ChannelKind::ALL {
            for k in 0..=10 {
                let p = k as f64 / 10.0;
                let ch = KrausSet::new(kind, p).unwrap();
                assert!(
                    ch.completeness_deviation() < 1e-12,
                    "{kind:?} p={p} deviated"
                );
            }
        }
    }

    #[test]
    fn broken_set_deviation() {
        let id = GateMatrix::new(
            1,
            vec![
                Complex64::new(1.0, 0.0),
                ZERO,
                ZERO,
                Complex64::new(1.0, 0.0),
            ],
        );
        let broken = KrausSet::from_raw(ChannelKind::BitFlip, 0.0, vec![id.clone(), id]);
        // ΣK†K = 2I, so the max deviation from I is exactly 1.
        assert_close(broken.completeness_deviation(), 1.0, 1e-15);
    }

    #[test]
    fn damping_zero_is_identity() {
        let ch = KrausSet::new(ChannelKind::AmplitudeDamping, 0.0).unwrap();
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::ry(0.7), &[0]).unwrap();
        let rho = s.to_density();
        let out = ch.apply(&rho, 0).unwrap();
        assert!(out.max_abs_difference(&rho) < 1e-14);
    }

    #[test]
    fn bit_flip_half_fully_mixes_zero() {
        let ch = KrausSet::new(ChannelKind::BitFlip, 0.5).unwrap();
        let rho = StateVector::new_zero(1).unwrap().to_density();
        let out = ch.apply(&rho, 0).unwrap();
        assert_close(out.entry(0, 0).re, 0.5, 1e-12);
        assert_close(out.entry(1, 1).re, 0.5, 1e-12);
        assert_close(out.entry(0, 1).norm(), 0.0, 1e-12);
    }

    #[test]
    fn full_damping_decays_one_to_zero() {
        let ch = KrausSet::new(ChannelKind::AmplitudeDamping, 1.0).unwrap();
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::x(), &[0]).unwrap();
        let out = ch.apply(&s.to_density(), 0).unwrap();
        assert_close(out.entry(0, 0).re, 1.0, 1e-12);
        assert_close(out.entry(1, 1).norm(), 0.0, 1e-12);
    }

    #[test]
    fn depolarizing_one_gives_maximally_mixed() {
        let ch = KrausSet::new(ChannelKind::Depolarizing, 1.0).unwrap();
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::ry(1.234), &[0]).unwrap();
        let out = ch.apply(&s.to_density(), 0).unwrap();
        assert_close(out.entry(0, 0).re, 0.5, 1e-12);
        assert_close(out.entry(1, 1).re, 0.5, 1e-12);
        assert_close(out.entry(0, 1).norm(), 0.0, 1e-12);
    }

    #[test]
    fn phase_flip_keeps_diagonal() {
        let mut s = StateVector::new_zero(1).unwrap();
        s.apply_gate(&GateMatrix::ry(0.9), &[0]).unwrap();
        let rho = s.to_density();
        let out = KrausSet::new(ChannelKind::PhaseFlip, 0.3)
            .unwrap()
            .apply(&rho, 0)
            .unwrap();
        assert_close(out.entry(0, 0).re, rho.entry(0, 0).re, 1e-12);
        assert_close(out.entry(1, 1).re, rho.entry(1, 1).re, 1e-12);
    }

    #[test]
    fn out_of_range_qubit() {
        let ch = KrausSet::new(ChannelKind::BitFlip, 0.1).unwrap();
        let rho = DensityMatrix::new_zero(1).unwrap();
        assert!(matches!(
            ch.apply(&rho, 1),
            Err(SimError::QubitOutOfRange { .. })
        ));
    }
}
