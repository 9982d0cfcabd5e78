//! Variational circuit layouts.
//!
//! A model circuit alternates trainable blocks with data-encoding layers:
//! W(1) S(1) W(2) … S(L) W(L+1). Every encoding layer rotates each qubit
//! by each input feature about that feature's axis, so an `n`-qubit,
//! `L`-layer model reaches integer frequencies up to `n·L` per feature.
//! Trainable parameter slots and encoding-gate instances are numbered in
//! gate-emission order, which fixes both the parameter-vector layout and
//! the mapping of coherent-error draws onto gates.

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Primitive gates the layouts are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    Cnot,
    Crx,
}

impl GateKind {
    pub fn is_two_qubit(&self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Crx)
    }

    pub fn has_angle(&self) -> bool {
        !matches!(self, GateKind::Cnot)
    }

    /// 2×2 matrix for single-qubit rotations.
    pub fn matrix_1q(&self, angle: f64) -> [C64; 4] {
        match self {
            GateKind::Rx => linalg::rx(angle),
            GateKind::Ry => linalg::ry(angle),
            GateKind::Rz => linalg::rz(angle),
            _ => unreachable!("two-qubit gate asked for a 2×2 matrix"),
        }
    }

    /// 4×4 matrix for two-qubit gates; the angle is ignored by CNOT.
    pub fn matrix_2q(&self, angle: f64) -> [C64; 16] {
        match self {
            GateKind::Cnot => linalg::cnot(),
            GateKind::Crx => linalg::crx(angle),
            _ => unreachable!("single-qubit gate asked for a 4×4 matrix"),
        }
    }
}

/// Where a gate's angle comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateParam {
    /// Read from the trainable parameter vector.
    Trainable { slot: usize },
    /// Read from the input features; `index` counts encoding gates in
    /// emission order and keys coherent-error scale factors.
    Encoding { feature: usize, index: usize },
    /// Fixed gate without an angle.
    None,
}

/// One gate in the layout. `wires[1]` is meaningful only for two-qubit
/// gates; `wires[0]` is the control of CNOT and CRX.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateSpec {
    pub kind: GateKind,
    pub wires: [usize; 2],
    pub param: GateParam,
}

impl GateSpec {
    pub fn touched_wires(&self) -> &[usize] {
        if self.kind.is_two_qubit() {
            &self.wires
        } else {
            &self.wires[..1]
        }
    }
}

/// Rotation axis used to encode one input feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingAxis {
    X,
    Y,
    Z,
}

impl EncodingAxis {
    pub fn rotation_kind(&self) -> GateKind {
        match self {
            EncodingAxis::X => GateKind::Rx,
            EncodingAxis::Y => GateKind::Ry,
            EncodingAxis::Z => GateKind::Rz,
        }
    }
}

impl fmt::Display for EncodingAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingAxis::X => "x",
            EncodingAxis::Y => "y",
            EncodingAxis::Z => "z",
        })
    }
}

/// Axes for each input feature, in feature order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingSpec {
    pub axes: Vec<EncodingAxis>,
}

impl EncodingSpec {
    pub fn single(axis: EncodingAxis) -> Self {
        Self { axes: vec![axis] }
    }

    /// Default axes: Y for one feature, X then Y for two, cycling
    /// X, Y, Z beyond that.
    pub fn default_for(n_features: usize) -> Self {
        let cycle = [EncodingAxis::X, EncodingAxis::Y, EncodingAxis::Z];
        let axes = match n_features {
            1 => vec![EncodingAxis::Y],
            _ => (0..n_features).map(|d| cycle[d % 3]).collect(),
        };
        Self { axes }
    }

    pub fn n_features(&self) -> usize {
        self.axes.len()
    }
}

impl fmt::Display for EncodingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in &self.axes {
            write!(f, "{axis}")?;
        }
        Ok(())
    }
}

impl FromStr for EncodingSpec {
    type Err = Error;

    /// Parse one axis letter per feature, e.g. `"y"` or `"xy"`.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty encoding spec".into()));
        }
        let axes = s
            .chars()
            .map(|c| match c {
                'x' => Ok(EncodingAxis::X),
                'y' => Ok(EncodingAxis::Y),
                'z' => Ok(EncodingAxis::Z),
                other => Err(Error::InvalidInput(format!(
                    "unknown encoding axis `{other}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { axes })
    }
}

/// Trainable-block families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzKind {
    /// Per qubit RZ·RY·RZ followed by a CNOT ring.
    Sea,
    /// Per qubit RY·RZ followed by a CNOT ring.
    Hea,
    /// Two RY columns, each followed by a CNOT ring of opposite
    /// orientation.
    C15,
    /// RX column, RZ column, then a trainable CRX ring.
    C19,
    /// Empty blocks; useful as a do-nothing baseline.
    Identity,
    /// One RY per qubit per block; with one qubit and one layer the model
    /// is the closed-form cos(θ₁ + x + θ₂).
    Rotations,
}

pub const ALL_ANSATZE: [AnsatzKind; 4] = [
    AnsatzKind::Sea,
    AnsatzKind::Hea,
    AnsatzKind::C15,
    AnsatzKind::C19,
];

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnsatzKind::Sea => "sea",
            AnsatzKind::Hea => "hea",
            AnsatzKind::C15 => "c15",
            AnsatzKind::C19 => "c19",
            AnsatzKind::Identity => "identity",
            AnsatzKind::Rotations => "rotations",
        })
    }
}

impl FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sea" => Ok(AnsatzKind::Sea),
            "hea" => Ok(AnsatzKind::Hea),
            "c15" => Ok(AnsatzKind::C15),
            "c19" => Ok(AnsatzKind::C19),
            "identity" => Ok(AnsatzKind::Identity),
            "rotations" => Ok(AnsatzKind::Rotations),
            other => Err(Error::UnknownAnsatz(other.to_string())),
        }
    }
}

/// A fully laid-out circuit: gate sequence plus slot bookkeeping.
#[derive(Clone, Debug)]
pub struct CircuitLayout {
    pub ansatz: AnsatzKind,
    pub n_qubits: usize,
    pub n_layers: usize,
    pub encoding: EncodingSpec,
    pub gates: Vec<GateSpec>,
    pub n_trainable: usize,
    pub n_encoding_gates: usize,
    /// Gate kind driving each trainable slot, used to pick gradient
    /// shift rules.
    pub slot_kinds: Vec<GateKind>,
}

impl CircuitLayout {
    pub fn n_features(&self) -> usize {
        self.encoding.n_features()
    }

    /// The same trainable blocks with zero encoding layers: a single
    /// W(1) block, as used for expressibility and entangling capability.
    pub fn strip_for_metrics(&self) -> CircuitLayout {
        build_circuit(self.ansatz, self.n_qubits, 0, self.encoding.clone())
            .expect("stripping a valid layout cannot fail")
    }
}

struct Builder {
    gates: Vec<GateSpec>,
    slot_kinds: Vec<GateKind>,
    n_encoding_gates: usize,
}

impl Builder {
    fn rot(&mut self, kind: GateKind, wire: usize) {
        let slot = self.slot_kinds.len();
        self.slot_kinds.push(kind);
        self.gates.push(GateSpec {
            kind,
            wires: [wire, 0],
            param: GateParam::Trainable { slot },
        });
    }

    fn cnot(&mut self, control: usize, target: usize) {
        self.gates.push(GateSpec {
            kind: GateKind::Cnot,
            wires: [control, target],
            param: GateParam::None,
        });
    }

    fn crx(&mut self, control: usize, target: usize) {
        let slot = self.slot_kinds.len();
        self.slot_kinds.push(GateKind::Crx);
        self.gates.push(GateSpec {
            kind: GateKind::Crx,
            wires: [control, target],
            param: GateParam::Trainable { slot },
        });
    }

    fn encode(&mut self, axis: EncodingAxis, feature: usize, wire: usize) {
        let index = self.n_encoding_gates;
        self.n_encoding_gates += 1;
        self.gates.push(GateSpec {
            kind: axis.rotation_kind(),
            wires: [wire, 0],
            param: GateParam::Encoding { feature, index },
        });
    }

    fn trainable_block(&mut self, ansatz: AnsatzKind, n: usize) {
        match ansatz {
            AnsatzKind::Identity => {}
            AnsatzKind::Rotations => {
                for q in 0..n {
                    self.rot(GateKind::Ry, q);
                }
            }
            AnsatzKind::Sea => {
                for q in 0..n {
                    self.rot(GateKind::Rz, q);
                    self.rot(GateKind::Ry, q);
                    self.rot(GateKind::Rz, q);
                }
                if n > 1 {
                    for q in 0..n {
                        self.cnot(q, (q + 1) % n);
                    }
                }
            }
            AnsatzKind::Hea => {
                for q in 0..n {
                    self.rot(GateKind::Ry, q);
                    self.rot(GateKind::Rz, q);
                }
                if n > 1 {
                    for q in 0..n {
                        self.cnot(q, (q + 1) % n);
                    }
                }
            }
            AnsatzKind::C15 => {
                for q in 0..n {
                    self.rot(GateKind::Ry, q);
                }
                if n > 1 {
                    for q in (0..n).rev() {
                        self.cnot(q, (q + n - 1) % n);
                    }
                }
                for q in 0..n {
                    self.rot(GateKind::Ry, q);
                }
                if n > 1 {
                    for q in 0..n {
                        self.cnot(q, (q + 1) % n);
                    }
                }
            }
            AnsatzKind::C19 => {
                for q in 0..n {
                    self.rot(GateKind::Rx, q);
                }
                for q in 0..n {
                    self.rot(GateKind::Rz, q);
                }
                if n > 1 {
                    for q in 0..n {
                        self.crx(q, (q + 1) % n);
                    }
                }
            }
        }
    }

    fn encoding_layer(&mut self, encoding: &EncodingSpec, n: usize) {
        for (feature, axis) in encoding.axes.iter().enumerate() {
            for q in 0..n {
                self.encode(*axis, feature, q);
            }
        }
    }
}

/// Lay out `n_layers` encoding layers interleaved with `n_layers + 1`
/// trainable blocks. With zero layers the circuit is a single trainable
/// block and ignores its inputs.
pub fn build_circuit(
    ansatz: AnsatzKind,
    n_qubits: usize,
    n_layers: usize,
    encoding: EncodingSpec,
) -> Result<CircuitLayout> {
    if n_qubits == 0 {
        return Err(Error::TooFewQubits {
            n: n_qubits,
            needed: 1,
        });
    }
    if encoding.n_features() == 0 {
        return Err(Error::InvalidInput("encoding spec has no features".into()));
    }
    let mut b = Builder {
        gates: Vec::new(),
        slot_kinds: Vec::new(),
        n_encoding_gates: 0,
    };
    b.trainable_block(ansatz, n_qubits);
    for _ in 0..n_layers {
        b.encoding_layer(&encoding, n_qubits);
        b.trainable_block(ansatz, n_qubits);
    }
    Ok(CircuitLayout {
        ansatz,
        n_qubits,
        n_layers,
        encoding,
        n_trainable: b.slot_kinds.len(),
        n_encoding_gates: b.n_encoding_gates,
        gates: b.gates,
        slot_kinds: b.slot_kinds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(ansatz: AnsatzKind, n: usize, l: usize) -> CircuitLayout {
        build_circuit(ansatz, n, l, EncodingSpec::default_for(1)).unwrap()
    }

    #[test]
    fn parameter_counts_match_block_structure() {
        // params per block: sea 3n, hea 2n, c15 2n, c19 3n (n ≥ 2)
        for (ansatz, per_qubit) in [
            (AnsatzKind::Sea, 3),
            (AnsatzKind::Hea, 2),
            (AnsatzKind::C15, 2),
            (AnsatzKind::C19, 3),
        ] {
            for n in 2..=4 {
                for l in 0..=3 {
                    let lay = layout(ansatz, n, l);
                    assert_eq!(lay.n_trainable, per_qubit * n * (l + 1), "{ansatz} n={n} L={l}");
                    assert_eq!(lay.n_encoding_gates, l * n);
                }
            }
        }
    }

    #[test]
    fn single_qubit_layouts_drop_entanglers() {
        assert_eq!(layout(AnsatzKind::C19, 1, 1).n_trainable, 4);
        assert_eq!(layout(AnsatzKind::Sea, 1, 0).n_trainable, 3);
        assert!(layout(AnsatzKind::Hea, 1, 2)
            .gates
            .iter()
            .all(|g| !g.kind.is_two_qubit()));
    }

    #[test]
    fn slots_and_encoding_indices_are_contiguous() {
        let lay = layout(AnsatzKind::C19, 3, 2);
        let mut slots = vec![false; lay.n_trainable];
        let mut enc = vec![false; lay.n_encoding_gates];
        for g in &lay.gates {
            match g.param {
                GateParam::Trainable { slot } => {
                    assert!(!slots[slot]);
                    slots[slot] = true;
                    assert_eq!(lay.slot_kinds[slot], g.kind);
                }
                GateParam::Encoding { index, feature } => {
                    assert!(!enc[index]);
                    enc[index] = true;
                    assert_eq!(feature, 0);
                }
                GateParam::None => assert_eq!(g.kind, GateKind::Cnot),
            }
            for &w in g.touched_wires() {
                assert!(w < lay.n_qubits);
            }
        }
        assert!(slots.iter().all(|&s| s));
        assert!(enc.iter().all(|&s| s));
    }

    #[test]
    fn two_feature_encoding_emits_axis_per_feature() {
        let lay = build_circuit(AnsatzKind::Hea, 2, 2, EncodingSpec::default_for(2)).unwrap();
        assert_eq!(lay.n_encoding_gates, 2 * 2 * 2);
        let axes: Vec<GateKind> = lay
            .gates
            .iter()
            .filter(|g| matches!(g.param, GateParam::Encoding { .. }))
            .map(|g| g.kind)
            .collect();
        assert_eq!(
            axes,
            vec![
                GateKind::Rx,
                GateKind::Rx,
                GateKind::Ry,
                GateKind::Ry,
                GateKind::Rx,
                GateKind::Rx,
                GateKind::Ry,
                GateKind::Ry,
            ]
        );
    }

    #[test]
    fn strip_for_metrics_keeps_one_block() {
        let lay = layout(AnsatzKind::Sea, 3, 4);
        let stripped = lay.strip_for_metrics();
        assert_eq!(stripped.n_layers, 0);
        assert_eq!(stripped.n_encoding_gates, 0);
        assert_eq!(stripped.n_trainable, 9);
        assert_eq!(stripped.n_trainable * (lay.n_layers + 1), lay.n_trainable);
    }

    #[test]
    fn ansatz_tokens_roundtrip() {
        for s in ["sea", "hea", "c15", "c19", "identity", "rotations"] {
            assert_eq!(s.parse::<AnsatzKind>().unwrap().to_string(), s);
        }
        assert!("bogus".parse::<AnsatzKind>().is_err());
        assert_eq!(
            "xy".parse::<EncodingSpec>().unwrap(),
            EncodingSpec::default_for(2)
        );
        assert!("q".parse::<EncodingSpec>().is_err());
    }

    #[test]
    fn encoding_defaults() {
        assert_eq!(
            EncodingSpec::default_for(1),
            EncodingSpec::single(EncodingAxis::Y)
        );
        assert_eq!(
            EncodingSpec::default_for(2).axes,
            vec![EncodingAxis::X, EncodingAxis::Y]
        );
    }
}
