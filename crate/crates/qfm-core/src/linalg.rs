//! Dense complex matrix helpers shared by the simulator and metrics.
//!
//! Density operators and observables are stored as flat row-major
//! `Vec<Complex64>` buffers; this module provides the handful of general
//! matrix operations they need. Hermitian eigendecomposition is delegated
//! to nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `a * b` for square row-major matrices of dimension `dim`.
pub fn mat_mul(a: &[C64], b: &[C64], dim: usize) -> Vec<C64> {
    let mut out = vec![ZERO; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == ZERO {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

/// Conjugate transpose of a square row-major matrix.
pub fn adjoint(a: &[C64], dim: usize) -> Vec<C64> {
    let mut out = vec![ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = a[i * dim + j].conj();
        }
    }
    out
}

/// Maximum entrywise deviation from the identity, ‖a − I‖_max.
pub fn max_dev_from_identity(a: &[C64], dim: usize) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let expect = if i == j { ONE } else { ZERO };
            dev = dev.max((a[i * dim + j] - expect).norm());
        }
    }
    dev
}

/// Maximum entrywise deviation from Hermiticity, ‖a − a†‖_max.
pub fn hermiticity_deviation(a: &[C64], dim: usize) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..dim {
        for j in i..dim {
            dev = dev.max((a[i * dim + j] - a[j * dim + i].conj()).norm());
        }
    }
    dev
}

/// Maximum entrywise absolute difference between two matrices.
pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// Returns `(eigenvalues, eigenvectors)` where `eigenvectors[k]` is the
/// normalized eigenvector for `eigenvalues[k]`. The input is assumed
/// Hermitian; only its Hermitian part informs the result.
pub fn hermitian_eigen(data: &[C64], dim: usize) -> (Vec<f64>, Vec<Vec<C64>>) {
    let m = DMatrix::from_fn(dim, dim, |r, c| data[r * dim + c]);
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalue comparison")
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// RX(θ) = exp(−iθX/2) as a row-major 2×2 matrix.
pub fn rx(theta: f64) -> [C64; 4] {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        C64::new(c, 0.0),
        C64::new(0.0, -s),
        C64::new(0.0, -s),
        C64::new(c, 0.0),
    ]
}

/// RY(θ) = exp(−iθY/2) as a row-major 2×2 matrix.
pub fn ry(theta: f64) -> [C64; 4] {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        C64::new(c, 0.0),
        C64::new(-s, 0.0),
        C64::new(s, 0.0),
        C64::new(c, 0.0),
    ]
}

/// RZ(θ) = exp(−iθZ/2) as a row-major 2×2 matrix.
pub fn rz(theta: f64) -> [C64; 4] {
    let (s, c) = (theta / 2.0).sin_cos();
    [C64::new(c, -s), ZERO, ZERO, C64::new(c, s)]
}

/// CNOT as a row-major 4×4 matrix. Local index bit 0 is the control
/// wire, bit 1 the target wire.
pub fn cnot() -> [C64; 16] {
    let mut m = [ZERO; 16];
    m[0] = ONE; // |c=0,t=0> fixed
    m[2 * 4 + 2] = ONE; // |c=0,t=1> fixed
    m[3 * 4 + 1] = ONE; // |c=1,t=0> -> |c=1,t=1>
    m[4 + 3] = ONE; // |c=1,t=1> -> |c=1,t=0>
    m
}

/// Controlled-RX(θ) as a row-major 4×4 matrix, same wire convention as
/// [`cnot`]: RX acts on the target when the control bit is set.
pub fn crx(theta: f64) -> [C64; 16] {
    let (s, c) = (theta / 2.0).sin_cos();
    let mut m = [ZERO; 16];
    m[0] = ONE;
    m[2 * 4 + 2] = ONE;
    m[4 + 1] = C64::new(c, 0.0);
    m[4 + 3] = C64::new(0.0, -s);
    m[3 * 4 + 1] = C64::new(0.0, -s);
    m[3 * 4 + 3] = C64::new(c, 0.0);
    m
}

/// Eigenvalues only, sorted descending.
pub fn hermitian_eigenvalues(data: &[C64], dim: usize) -> Vec<f64> {
    let m = DMatrix::from_fn(dim, dim, |r, c| data[r * dim + c]);
    let mut vals: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalue comparison"));
    vals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(values: &[f64], vectors: &[Vec<C64>], dim: usize) -> Vec<C64> {
        let mut out = vec![ZERO; dim * dim];
        for (v, vec) in values.iter().zip(vectors) {
            for r in 0..dim {
                for c in 0..dim {
                    out[r * dim + c] += C64::new(*v, 0.0) * vec[r] * vec[c].conj();
                }
            }
        }
        out
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for dim in [2usize, 4, 8, 16] {
            let mut raw = vec![ZERO; dim * dim];
            for v in raw.iter_mut() {
                *v = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            // Hermitian part
            let adj = adjoint(&raw, dim);
            let herm: Vec<C64> = raw
                .iter()
                .zip(&adj)
                .map(|(a, b)| (a + b) * 0.5)
                .collect();
            let (values, vectors) = hermitian_eigen(&herm, dim);
            let rec = reconstruct(&values, &vectors, dim);
            assert!(
                max_abs_diff(&herm, &rec) < 1e-10,
                "reconstruction failed at dim {dim}: {}",
                max_abs_diff(&herm, &rec)
            );
            // orthonormality
            for a in 0..dim {
                for b in 0..dim {
                    let dot: C64 = (0..dim).map(|r| vectors[a][r].conj() * vectors[b][r]).sum();
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((dot.norm() - expect).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn gate_builders_are_unitary() {
        for theta in [0.0, 0.4, -1.3, std::f64::consts::PI] {
            for m in [rx(theta), ry(theta), rz(theta)] {
                let prod = mat_mul(&adjoint(&m, 2), &m, 2);
                assert!(max_dev_from_identity(&prod, 2) < 1e-14);
            }
            let c = crx(theta);
            let prod = mat_mul(&adjoint(&c, 4), &c, 4);
            assert!(max_dev_from_identity(&prod, 4) < 1e-14);
        }
        let c = cnot();
        let prod = mat_mul(&adjoint(&c, 4), &c, 4);
        assert!(max_dev_from_identity(&prod, 4) < 1e-14);
    }

    #[test]
    fn crx_reduces_to_cnot_at_pi_up_to_phase() {
        // CRX(π) equals CNOT up to a −i phase on the control=1 block.
        let c = crx(std::f64::consts::PI);
        let n = cnot();
        for (idx, (a, b)) in c.iter().zip(n.iter()).enumerate() {
            let row = idx / 4;
            if row == 1 || row == 3 {
                assert!((a - b * C64::new(0.0, -1.0)).norm() < 1e-15);
            } else {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn eigenvalues_match_trace() {
        let m = [
            C64::new(0.7, 0.0),
            C64::new(0.1, 0.2),
            C64::new(0.1, -0.2),
            C64::new(0.3, 0.0),
        ];
        let vals = hermitian_eigenvalues(&m, 2);
        assert!((vals.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(vals[0] >= vals[1]);
    }
}
