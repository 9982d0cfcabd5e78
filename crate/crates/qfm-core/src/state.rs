//! Pure-state and density-operator representations with in-place gate
//! application.
//!
//! Wire convention is little-endian throughout: qubit `w` owns bit `w` of
//! the computational-basis index, so qubit 0 is the least significant bit.
//! Density operators are stored as flat row-major `Vec<Complex64>` of
//! dimension `2^n × 2^n`; a unitary is applied as two sweeps, `ρ ← UρU†`,
//! and a Kraus channel as an accumulated sum over its operators.

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ONE, ZERO};

/// Spread `base` so that bit `pos` of the result is zero and the original
/// bits keep their order around it.
#[inline]
fn insert_zero_bit(base: usize, pos: usize) -> usize {
    ((base >> pos) << (pos + 1)) | (base & ((1 << pos) - 1))
}

fn check_wire(wire: usize, n: usize) -> Result<()> {
    if wire >= n {
        return Err(Error::WireOutOfRange { wire, n });
    }
    Ok(())
}

fn check_wire_pair(wires: [usize; 2], n: usize) -> Result<()> {
    check_wire(wires[0], n)?;
    check_wire(wires[1], n)?;
    if wires[0] == wires[1] {
        return Err(Error::DuplicateWire { wire: wires[0] });
    }
    Ok(())
}

/// State vector over `n` qubits.
#[derive(Clone, Debug)]
pub struct PureState {
    n: usize,
    amps: Vec<C64>,
}

impl PureState {
    /// |0…0⟩ on `n` qubits.
    pub fn zero(n: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Self { n, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Build directly from amplitudes; the caller is responsible for
    /// normalization.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "amplitude vector length {dim} is not a power of two"
            )));
        }
        Ok(Self {
            n: dim.trailing_zeros() as usize,
            amps,
        })
    }

    /// Apply a 2×2 matrix to `wire`.
    pub fn apply_1q(&mut self, u: &[C64; 4], wire: usize) -> Result<()> {
        check_wire(wire, self.n)?;
        let bit = 1 << wire;
        for base in 0..self.dim() / 2 {
            let i0 = insert_zero_bit(base, wire);
            let i1 = i0 | bit;
            let a = self.amps[i0];
            let b = self.amps[i1];
            self.amps[i0] = u[0] * a + u[1] * b;
            self.amps[i1] = u[2] * a + u[3] * b;
        }
        Ok(())
    }

    /// Apply a 4×4 matrix to a wire pair. Bit 0 of the local index is
    /// `wires[0]`, bit 1 is `wires[1]`.
    pub fn apply_2q(&mut self, u: &[C64; 16], wires: [usize; 2]) -> Result<()> {
        check_wire_pair(wires, self.n)?;
        let (lo, hi) = (wires[0].min(wires[1]), wires[0].max(wires[1]));
        let local = local_indices(wires);
        for base in 0..self.dim() / 4 {
            let root = insert_zero_bit(insert_zero_bit(base, lo), hi);
            let idx = [
                root | local[0],
                root | local[1],
                root | local[2],
                root | local[3],
            ];
            let v = [
                self.amps[idx[0]],
                self.amps[idx[1]],
                self.amps[idx[2]],
                self.amps[idx[3]],
            ];
            for l in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += u[l * 4 + k] * v[k];
                }
                self.amps[idx[l]] = acc;
            }
        }
        Ok(())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Σ_i diag[i]·|ψ_i|² for a diagonal observable.
    pub fn expectation_diag(&self, diag: &[f64]) -> f64 {
        self.amps
            .iter()
            .zip(diag)
            .map(|(a, d)| d * a.norm_sqr())
            .sum()
    }

    /// Single-qubit reduced density matrix of `wire`, row-major 2×2.
    pub fn reduced_single(&self, wire: usize) -> Result<[C64; 4]> {
        check_wire(wire, self.n)?;
        let bit = 1 << wire;
        let mut out = [ZERO; 4];
        for base in 0..self.dim() / 2 {
            let i0 = insert_zero_bit(base, wire);
            let i1 = i0 | bit;
            let a = self.amps[i0];
            let b = self.amps[i1];
            out[0] += a * a.conj();
            out[1] += a * b.conj();
            out[2] += b * a.conj();
            out[3] += b * b.conj();
        }
        Ok(out)
    }
}

/// Density operator over `n` qubits, flat row-major storage.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    n: usize,
    data: Vec<C64>,
}

impl DensityOperator {
    /// |0…0⟩⟨0…0| on `n` qubits.
    pub fn zero_state(n: usize) -> Self {
        let dim = 1 << n;
        let mut data = vec![ZERO; dim * dim];
        data[0] = ONE;
        Self { n, data }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let dim = psi.dim();
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[r * dim + c] = psi.amps[r] * psi.amps[c].conj();
            }
        }
        Self { n: psi.n, data }
    }

    /// Build from a flat row-major matrix, validating the shape and
    /// Hermiticity. Useful for assembling explicit mixtures.
    pub fn from_matrix(data: Vec<C64>) -> Result<Self> {
        let len = data.len();
        let dim = (len as f64).sqrt() as usize;
        if dim * dim != len || !dim.is_power_of_two() || dim == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix length {len} is not a square power-of-two dimension"
            )));
        }
        let dev = linalg::hermiticity_deviation(&data, dim);
        if dev > 1e-9 {
            return Err(Error::NonHermitian { deviation: dev });
        }
        Ok(Self {
            n: dim.trailing_zeros() as usize,
            data,
        })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1 << n;
        let mut data = vec![ZERO; dim * dim];
        let p = C64::new(1.0 / dim as f64, 0.0);
        for r in 0..dim {
            data[r * dim + r] = p;
        }
        Self { n, data }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        let dim = self.dim();
        (0..dim).map(|r| self.data[r * dim + r].re).sum()
    }

    /// Tr[ρ²]; real because ρ is Hermitian.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    /// ρ ← (U ⊗ I) ρ (U† ⊗ I) for a 2×2 matrix on `wire`.
    pub fn apply_1q(&mut self, u: &[C64; 4], wire: usize) -> Result<()> {
        check_wire(wire, self.n)?;
        self.left_1q(u, wire);
        self.right_dag_1q(u, wire);
        Ok(())
    }

    /// Same as [`apply_1q`](Self::apply_1q) for a 4×4 matrix on a wire
    /// pair; local-index convention as in [`PureState::apply_2q`].
    pub fn apply_2q(&mut self, u: &[C64; 16], wires: [usize; 2]) -> Result<()> {
        check_wire_pair(wires, self.n)?;
        self.left_2q(u, wires);
        self.right_dag_2q(u, wires);
        Ok(())
    }

    /// ρ ← Σ_i K_i ρ K_i† for single-qubit Kraus operators on `wire`.
    pub fn apply_kraus_1q(&mut self, kraus: &[[C64; 4]], wire: usize) -> Result<()> {
        check_wire(wire, self.n)?;
        let mut acc = vec![ZERO; self.data.len()];
        for k in kraus {
            let mut term = self.clone();
            term.left_1q(k, wire);
            term.right_dag_1q(k, wire);
            for (dst, src) in acc.iter_mut().zip(&term.data) {
                *dst += src;
            }
        }
        self.data = acc;
        Ok(())
    }

    fn left_1q(&mut self, u: &[C64; 4], wire: usize) {
        let dim = self.dim();
        let bit = 1 << wire;
        for base in 0..dim / 2 {
            let r0 = insert_zero_bit(base, wire) * dim;
            let r1 = r0 + bit * dim;
            for c in 0..dim {
                let a = self.data[r0 + c];
                let b = self.data[r1 + c];
                self.data[r0 + c] = u[0] * a + u[1] * b;
                self.data[r1 + c] = u[2] * a + u[3] * b;
            }
        }
    }

    fn right_dag_1q(&mut self, u: &[C64; 4], wire: usize) {
        let dim = self.dim();
        let bit = 1 << wire;
        let uc = [u[0].conj(), u[1].conj(), u[2].conj(), u[3].conj()];
        for r in 0..dim {
            let row = r * dim;
            for base in 0..dim / 2 {
                let c0 = insert_zero_bit(base, wire);
                let c1 = c0 | bit;
                let a = self.data[row + c0];
                let b = self.data[row + c1];
                self.data[row + c0] = a * uc[0] + b * uc[1];
                self.data[row + c1] = a * uc[2] + b * uc[3];
            }
        }
    }

    fn left_2q(&mut self, u: &[C64; 16], wires: [usize; 2]) {
        let dim = self.dim();
        let (lo, hi) = (wires[0].min(wires[1]), wires[0].max(wires[1]));
        let local = local_indices(wires);
        for base in 0..dim / 4 {
            let root = insert_zero_bit(insert_zero_bit(base, lo), hi);
            let rows = [
                (root | local[0]) * dim,
                (root | local[1]) * dim,
                (root | local[2]) * dim,
                (root | local[3]) * dim,
            ];
            for c in 0..dim {
                let v = [
                    self.data[rows[0] + c],
                    self.data[rows[1] + c],
                    self.data[rows[2] + c],
                    self.data[rows[3] + c],
                ];
                for l in 0..4 {
                    let mut acc = ZERO;
                    for k in 0..4 {
                        acc += u[l * 4 + k] * v[k];
                    }
                    self.data[rows[l] + c] = acc;
                }
            }
        }
    }

    fn right_dag_2q(&mut self, u: &[C64; 16], wires: [usize; 2]) {
        let dim = self.dim();
        let (lo, hi) = (wires[0].min(wires[1]), wires[0].max(wires[1]));
        let local = local_indices(wires);
        for r in 0..dim {
            let row = r * dim;
            for base in 0..dim / 4 {
                let root = insert_zero_bit(insert_zero_bit(base, lo), hi);
                let cols = [
                    root | local[0],
                    root | local[1],
                    root | local[2],
                    root | local[3],
                ];
                let v = [
                    self.data[row + cols[0]],
                    self.data[row + cols[1]],
                    self.data[row + cols[2]],
                    self.data[row + cols[3]],
                ];
                for l in 0..4 {
                    let mut acc = ZERO;
                    for k in 0..4 {
                        acc += v[k] * u[l * 4 + k].conj();
                    }
                    self.data[row + cols[l]] = acc;
                }
            }
        }
    }

    /// Σ_i diag[i]·ρ_ii for a diagonal observable.
    pub fn expectation_diag(&self, diag: &[f64]) -> f64 {
        let dim = self.dim();
        (0..dim).map(|r| diag[r] * self.data[r * dim + r].re).sum()
    }

    /// Single-qubit reduced density matrix of `wire`, row-major 2×2.
    pub fn partial_trace_single(&self, wire: usize) -> Result<[C64; 4]> {
        check_wire(wire, self.n)?;
        let dim = self.dim();
        let bit = 1 << wire;
        let mut out = [ZERO; 4];
        for base in 0..dim / 2 {
            let e = insert_zero_bit(base, wire);
            for a in 0..2usize {
                for b in 0..2usize {
                    out[a * 2 + b] += self.data[(e | (a * bit)) * dim + (e | (b * bit))];
                }
            }
        }
        Ok(out)
    }

    /// Spectral decomposition into pure states, skipping eigenvalues below
    /// `cutoff`. Eigenvalues come back sorted descending.
    pub fn eigen_pure_states(&self, cutoff: f64) -> Vec<(f64, PureState)> {
        let dim = self.dim();
        let (values, vectors) = linalg::hermitian_eigen(&self.data, dim);
        values
            .into_iter()
            .zip(vectors)
            .filter(|(v, _)| *v > cutoff)
            .map(|(v, amps)| (v, PureState { n: self.n, amps }))
            .collect()
    }
}

/// Map local 2-qubit index `l` (bit 0 ↔ `wires[0]`, bit 1 ↔ `wires[1]`)
/// to its contribution in the global index.
#[inline]
fn local_indices(wires: [usize; 2]) -> [usize; 4] {
    let b0 = 1 << wires[0];
    let b1 = 1 << wires[1];
    [0, b0, b1, b0 | b1]
}

/// |⟨ψ|φ⟩|² for pure states.
pub fn pure_fidelity(a: &PureState, b: &PureState) -> f64 {
    a.inner(b).norm_sqr()
}

/// Uhlmann fidelity F(ρ,σ) = (Tr √(√ρ σ √ρ))², computed by spectral
/// decomposition. Negative eigenvalues from roundoff are clamped to zero.
pub fn uhlmann_fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    let dim = rho.dim();
    let (values, vectors) = linalg::hermitian_eigen(&rho.data, dim);
    let mut sqrt_rho = vec![ZERO; dim * dim];
    for (v, vec) in values.iter().zip(&vectors) {
        let s = v.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        for r in 0..dim {
            for c in 0..dim {
                sqrt_rho[r * dim + c] += C64::new(s, 0.0) * vec[r] * vec[c].conj();
            }
        }
    }
    let inner = linalg::mat_mul(&linalg::mat_mul(&sqrt_rho, &sigma.data, dim), &sqrt_rho, dim);
    let roots: f64 = linalg::hermitian_eigenvalues(&inner, dim)
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .sum();
    roots * roots
}
