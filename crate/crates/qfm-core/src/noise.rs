//! Noise channels applied around and inside the model circuit.
//!
//! Seven incoherent channels are modelled as single-qubit Kraus maps:
//! bit flip, phase flip and depolarizing act after every gate on each
//! touched wire; amplitude damping and phase damping act once on every
//! qubit after the circuit; state-preparation and measurement errors are
//! bit flips on every qubit before and after the circuit. Coherent gate
//! error is not a Kraus map: it perturbs rotation angles and is carried
//! separately as a frozen [`CgeDraw`].

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Noise channel families, in the abbreviation used by configs and CSVs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    /// Bit flip after every gate.
    Bf,
    /// Phase flip after every gate.
    Pf,
    /// Depolarizing after every gate.
    Dp,
    /// Amplitude damping after the circuit.
    Ad,
    /// Phase damping after the circuit.
    Pd,
    /// State-preparation bit flip before the circuit.
    Sp,
    /// Measurement bit flip after the circuit.
    Me,
    /// Coherent gate error: Gaussian perturbation of rotation angles.
    Cge,
}

pub const ALL_NOISE_KINDS: [NoiseKind; 8] = [
    NoiseKind::Bf,
    NoiseKind::Pf,
    NoiseKind::Dp,
    NoiseKind::Ad,
    NoiseKind::Pd,
    NoiseKind::Sp,
    NoiseKind::Me,
    NoiseKind::Cge,
];

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NoiseKind::Bf => "bf",
            NoiseKind::Pf => "pf",
            NoiseKind::Dp => "dp",
            NoiseKind::Ad => "ad",
            NoiseKind::Pd => "pd",
            NoiseKind::Sp => "sp",
            NoiseKind::Me => "me",
            NoiseKind::Cge => "cge",
        };
        f.write_str(s)
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bf" => Ok(NoiseKind::Bf),
            "pf" => Ok(NoiseKind::Pf),
            "dp" => Ok(NoiseKind::Dp),
            "ad" => Ok(NoiseKind::Ad),
            "pd" => Ok(NoiseKind::Pd),
            "sp" => Ok(NoiseKind::Sp),
            "me" => Ok(NoiseKind::Me),
            "cge" => Ok(NoiseKind::Cge),
            other => Err(Error::InvalidInput(format!("unknown noise kind `{other}`"))),
        }
    }
}

/// Which rotation angles coherent gate error perturbs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CgeScope {
    /// Scale the angle of every encoding gate by an independent factor
    /// 1 + ε.
    #[serde(rename = "enc")]
    Encoding,
    /// Offset every trainable parameter by an independent ε.
    #[serde(rename = "train")]
    Trainable,
    /// Both of the above.
    #[default]
    #[serde(rename = "both")]
    Both,
}

impl fmt::Display for CgeScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CgeScope::Encoding => "enc",
            CgeScope::Trainable => "train",
            CgeScope::Both => "both",
        };
        f.write_str(s)
    }
}

impl FromStr for CgeScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enc" => Ok(CgeScope::Encoding),
            "train" => Ok(CgeScope::Trainable),
            "both" => Ok(CgeScope::Both),
            other => Err(Error::InvalidInput(format!("unknown cge scope `{other}`"))),
        }
    }
}

impl CgeScope {
    pub fn covers_encoding(&self) -> bool {
        matches!(self, CgeScope::Encoding | CgeScope::Both)
    }

    pub fn covers_trainable(&self) -> bool {
        matches!(self, CgeScope::Trainable | CgeScope::Both)
    }
}

/// A single-qubit Kraus channel, validated for completeness Σ K†K = I.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<[C64; 4]>,
}

impl KrausChannel {
    pub fn new(ops: Vec<[C64; 4]>) -> Result<Self> {
        let mut sum = [ZERO; 4];
        for k in &ops {
            // K†K for row-major 2×2
            sum[0] += k[0].conj() * k[0] + k[2].conj() * k[2];
            sum[1] += k[0].conj() * k[1] + k[2].conj() * k[3];
            sum[2] += k[1].conj() * k[0] + k[3].conj() * k[2];
            sum[3] += k[1].conj() * k[1] + k[3].conj() * k[3];
        }
        let dev = (sum[0] - ONE)
            .norm()
            .max(sum[1].norm())
            .max(sum[2].norm())
            .max((sum[3] - ONE).norm());
        if dev > 1e-12 {
            return Err(Error::IncompleteChannel { deviation: dev });
        }
        Ok(Self { ops })
    }

    pub fn ops(&self) -> &[[C64; 4]] {
        &self.ops
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::InvalidProbability { value: p });
    }
    Ok(())
}

/// Kraus operators for an incoherent channel at strength `p`.
///
/// State-preparation and measurement errors share the bit-flip operators;
/// coherent gate error has no Kraus form and is rejected.
pub fn kraus_for(kind: NoiseKind, p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let re = |x: f64| C64::new(x, 0.0);
    let q = (1.0 - p).sqrt();
    let ops = match kind {
        NoiseKind::Bf | NoiseKind::Sp | NoiseKind::Me => vec![
            [re(q), ZERO, ZERO, re(q)],
            [ZERO, re(p.sqrt()), re(p.sqrt()), ZERO],
        ],
        NoiseKind::Pf => vec![
            [re(q), ZERO, ZERO, re(q)],
            [re(p.sqrt()), ZERO, ZERO, re(-p.sqrt())],
        ],
        NoiseKind::Dp => {
            let r = (p / 3.0).sqrt();
            vec![
                [re(q), ZERO, ZERO, re(q)],
                [ZERO, re(r), re(r), ZERO],
                [ZERO, C64::new(0.0, -r), C64::new(0.0, r), ZERO],
                [re(r), ZERO, ZERO, re(-r)],
            ]
        }
        NoiseKind::Ad => vec![
            [ONE, ZERO, ZERO, re(q)],
            [ZERO, re(p.sqrt()), ZERO, ZERO],
        ],
        NoiseKind::Pd => vec![
            [ONE, ZERO, ZERO, re(q)],
            [ZERO, ZERO, ZERO, re(p.sqrt())],
        ],
        NoiseKind::Cge => {
            return Err(Error::InvalidInput(
                "coherent gate error has no Kraus representation".into(),
            ))
        }
    };
    KrausChannel::new(ops)
}

/// Strengths for every channel family; zero disables a channel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    #[serde(default)]
    pub bit_flip: f64,
    #[serde(default)]
    pub phase_flip: f64,
    #[serde(default)]
    pub depolarizing: f64,
    #[serde(default)]
    pub amplitude_damping: f64,
    #[serde(default)]
    pub phase_damping: f64,
    #[serde(default)]
    pub state_preparation: f64,
    #[serde(default)]
    pub measurement: f64,
    #[serde(default)]
    pub coherent_gate_error: f64,
    #[serde(default)]
    pub cge_scope: CgeScope,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self::default()
    }

    /// A model with one channel active at `level`.
    pub fn single(kind: NoiseKind, level: f64, cge_scope: CgeScope) -> Self {
        let mut m = Self {
            cge_scope,
            ..Self::default()
        };
        *m.level_mut(kind) = level;
        m
    }

    pub fn level(&self, kind: NoiseKind) -> f64 {
        match kind {
            NoiseKind::Bf => self.bit_flip,
            NoiseKind::Pf => self.phase_flip,
            NoiseKind::Dp => self.depolarizing,
            NoiseKind::Ad => self.amplitude_damping,
            NoiseKind::Pd => self.phase_damping,
            NoiseKind::Sp => self.state_preparation,
            NoiseKind::Me => self.measurement,
            NoiseKind::Cge => self.coherent_gate_error,
        }
    }

    pub fn level_mut(&mut self, kind: NoiseKind) -> &mut f64 {
        match kind {
            NoiseKind::Bf => &mut self.bit_flip,
            NoiseKind::Pf => &mut self.phase_flip,
            NoiseKind::Dp => &mut self.depolarizing,
            NoiseKind::Ad => &mut self.amplitude_damping,
            NoiseKind::Pd => &mut self.phase_damping,
            NoiseKind::Sp => &mut self.state_preparation,
            NoiseKind::Me => &mut self.measurement,
            NoiseKind::Cge => &mut self.coherent_gate_error,
        }
    }

    /// Channel kinds with nonzero strength, in canonical order.
    pub fn active_kinds(&self) -> Vec<(NoiseKind, f64)> {
        ALL_NOISE_KINDS
            .iter()
            .filter(|k| self.level(**k) > 0.0)
            .map(|k| (*k, self.level(*k)))
            .collect()
    }

    pub fn is_noiseless(&self) -> bool {
        self.active_kinds().is_empty()
    }

    /// True if any channel requiring density-operator simulation is
    /// active. Coherent gate error alone keeps the state pure.
    pub fn needs_density(&self) -> bool {
        self.bit_flip > 0.0
            || self.phase_flip > 0.0
            || self.depolarizing > 0.0
            || self.amplitude_damping > 0.0
            || self.phase_damping > 0.0
            || self.state_preparation > 0.0
            || self.measurement > 0.0
    }

    pub fn validate(&self) -> Result<()> {
        for kind in ALL_NOISE_KINDS {
            if kind == NoiseKind::Cge {
                continue;
            }
            check_probability(self.level(kind))?;
        }
        if !self.coherent_gate_error.is_finite() || self.coherent_gate_error < 0.0 {
            return Err(Error::InvalidProbability {
                value: self.coherent_gate_error,
            });
        }
        Ok(())
    }

    /// Kraus channels applied after every gate on each touched wire, in
    /// fixed bit-flip, phase-flip, depolarizing order.
    pub fn gate_channels(&self) -> Result<Vec<KrausChannel>> {
        let mut out = Vec::new();
        for (kind, level) in [
            (NoiseKind::Bf, self.bit_flip),
            (NoiseKind::Pf, self.phase_flip),
            (NoiseKind::Dp, self.depolarizing),
        ] {
            if level > 0.0 {
                out.push(kraus_for(kind, level)?);
            }
        }
        Ok(out)
    }

    /// Kraus channels applied once per qubit after the circuit, in
    /// amplitude-damping, phase-damping order.
    pub fn terminal_channels(&self) -> Result<Vec<KrausChannel>> {
        let mut out = Vec::new();
        for (kind, level) in [
            (NoiseKind::Ad, self.amplitude_damping),
            (NoiseKind::Pd, self.phase_damping),
        ] {
            if level > 0.0 {
                out.push(kraus_for(kind, level)?);
            }
        }
        Ok(out)
    }

    /// Bit-flip channel applied per qubit before the circuit, if active.
    pub fn preparation_channel(&self) -> Result<Option<KrausChannel>> {
        if self.state_preparation > 0.0 {
            Ok(Some(kraus_for(NoiseKind::Sp, self.state_preparation)?))
        } else {
            Ok(None)
        }
    }

    /// Bit-flip channel applied per qubit after the circuit, if active.
    pub fn measurement_channel(&self) -> Result<Option<KrausChannel>> {
        if self.measurement > 0.0 {
            Ok(Some(kraus_for(NoiseKind::Me, self.measurement)?))
        } else {
            Ok(None)
        }
    }
}

/// One frozen sample of coherent gate error: an additive offset per
/// trainable parameter slot and a multiplicative angle scale per encoding
/// gate instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CgeDraw {
    trainable_offsets: Vec<f64>,
    encoding_scales: Vec<f64>,
}

impl CgeDraw {
    /// The draw that leaves every angle untouched.
    pub fn identity(n_trainable: usize, n_encoding_gates: usize) -> Self {
        Self {
            trainable_offsets: vec![0.0; n_trainable],
            encoding_scales: vec![1.0; n_encoding_gates],
        }
    }

    /// Sample offsets ε ~ N(0, σ²) i.i.d. for every slot the scope
    /// covers; slots outside the scope stay untouched. Trainable offsets
    /// are drawn before encoding scales so a fixed seed yields a fixed
    /// draw regardless of scope.
    pub fn sample<R: Rng>(
        n_trainable: usize,
        n_encoding_gates: usize,
        sigma: f64,
        scope: CgeScope,
        rng: &mut R,
    ) -> Self {
        if sigma == 0.0 {
            return Self::identity(n_trainable, n_encoding_gates);
        }
        let normal = Normal::new(0.0, sigma).expect("valid cge sigma");
        let trainable_offsets = (0..n_trainable)
            .map(|_| {
                let eps = normal.sample(rng);
                if scope.covers_trainable() {
                    eps
                } else {
                    0.0
                }
            })
            .collect();
        let encoding_scales = (0..n_encoding_gates)
            .map(|_| {
                let eps = normal.sample(rng);
                if scope.covers_encoding() {
                    1.0 + eps
                } else {
                    1.0
                }
            })
            .collect();
        Self {
            trainable_offsets,
            encoding_scales,
        }
    }

    pub fn trainable_offset(&self, slot: usize) -> f64 {
        self.trainable_offsets.get(slot).copied().unwrap_or(0.0)
    }

    pub fn encoding_scale(&self, gate_index: usize) -> f64 {
        self.encoding_scales.get(gate_index).copied().unwrap_or(1.0)
    }

    pub fn is_identity(&self) -> bool {
        self.trainable_offsets.iter().all(|&x| x == 0.0)
            && self.encoding_scales.iter().all(|&x| x == 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rx, ry};
    use crate::observable::Observable;
    use crate::state::{DensityOperator, PureState};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn channels_are_complete() {
        for kind in [
            NoiseKind::Bf,
            NoiseKind::Pf,
            NoiseKind::Dp,
            NoiseKind::Ad,
            NoiseKind::Pd,
            NoiseKind::Sp,
            NoiseKind::Me,
        ] {
            for p in [0.0, 0.005, 0.3, 1.0] {
                kraus_for(kind, p).unwrap();
            }
        }
    }

    #[test]
    fn invalid_probabilities_rejected() {
        assert!(kraus_for(NoiseKind::Bf, -0.1).is_err());
        assert!(kraus_for(NoiseKind::Dp, 1.5).is_err());
        assert!(kraus_for(NoiseKind::Cge, 0.1).is_err());
        let mut m = NoiseModel::noiseless();
        m.depolarizing = 2.0;
        assert!(m.validate().is_err());
    }

    #[test]
    fn depolarizing_shrinks_z() {
        let p = 0.12;
        let mut rho = DensityOperator::zero_state(1);
        rho.apply_kraus_1q(kraus_for(NoiseKind::Dp, p).unwrap().ops(), 0)
            .unwrap();
        let z = Observable::MeanZ.expectation(&rho);
        assert!((z - (1.0 - 4.0 * p / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn amplitude_damping_relaxes_excited_state() {
        let p = 0.37;
        let mut psi = PureState::zero(1);
        psi.apply_1q(&rx(PI), 0).unwrap();
        let mut rho = DensityOperator::from_pure(&psi);
        rho.apply_kraus_1q(kraus_for(NoiseKind::Ad, p).unwrap().ops(), 0)
            .unwrap();
        let z = Observable::MeanZ.expectation(&rho);
        assert!((z - (2.0 * p - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn phase_damping_shrinks_coherence() {
        let p = 0.2;
        let mut psi = PureState::zero(1);
        psi.apply_1q(&ry(FRAC_PI_2), 0).unwrap();
        let mut rho = DensityOperator::from_pure(&psi);
        rho.apply_kraus_1q(kraus_for(NoiseKind::Pd, p).unwrap().ops(), 0)
            .unwrap();
        // ⟨X⟩ = 2 Re ρ01 shrinks by √(1−p)
        assert!((2.0 * rho.data()[1].re - (1.0 - p).sqrt()).abs() < 1e-14);
        assert!((rho.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bit_flip_purity() {
        let mut rho = DensityOperator::zero_state(1);
        rho.apply_kraus_1q(kraus_for(NoiseKind::Bf, 0.25).unwrap().ops(), 0)
            .unwrap();
        assert!((rho.purity() - 0.625).abs() < 1e-14);
    }

    #[test]
    fn cge_draw_respects_scope() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let d = CgeDraw::sample(4, 3, 0.1, CgeScope::Trainable, &mut rng);
        assert!(d.trainable_offset(0) != 0.0);
        assert_eq!(d.encoding_scale(1), 1.0);

        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let e = CgeDraw::sample(4, 3, 0.1, CgeScope::Encoding, &mut rng);
        assert_eq!(e.trainable_offset(0), 0.0);
        assert!(e.encoding_scale(1) != 1.0);

        // same seed, same underlying stream across scopes
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let b = CgeDraw::sample(4, 3, 0.1, CgeScope::Both, &mut rng);
        assert_eq!(b.trainable_offset(2), d.trainable_offset(2));
        assert_eq!(b.encoding_scale(1), e.encoding_scale(1));
        assert!(CgeDraw::identity(4, 3).is_identity());
    }

    #[test]
    fn noise_model_roundtrips_through_json() {
        let mut m = NoiseModel::single(NoiseKind::Cge, 0.02, CgeScope::Encoding);
        m.amplitude_damping = 0.01;
        let json = serde_json::to_string(&m).unwrap();
        let back: NoiseModel = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
        assert_eq!(back.active_kinds().len(), 2);
        assert!(back.needs_density());
        assert!(!NoiseModel::single(NoiseKind::Cge, 0.02, CgeScope::Both).needs_density());
    }
}
