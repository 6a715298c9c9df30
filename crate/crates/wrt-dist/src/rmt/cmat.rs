//! Small dense complex matrices, row-major. The multiply kernels are
//! hand-written: walk products at d ~ 20 over 1e5 trials are the hot path
//! of the whole crate, and the general-purpose routes are not fast enough
//! for that on two cores. QR (for re-orthonormalization) and determinants
//! go through nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> CMatrix {
        CMatrix {
            n,
            data: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Build from row-major entries; panics unless `data.len() == n * n`.
    pub fn from_data(n: usize, data: Vec<Complex64>) -> CMatrix {
        assert_eq!(data.len(), n * n);
        CMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// `out = self * rhs`.
    pub fn mul_into(&self, rhs: &CMatrix, out: &mut CMatrix) {
        let n = self.n;
        assert!(rhs.n == n && out.n == n);
        out.data.fill(Complex64::ZERO);
        for i in 0..n {
            let arow = &self.data[i * n..(i + 1) * n];
            let crow = &mut out.data[i * n..(i + 1) * n];
            for (k, &aik) in arow.iter().enumerate() {
                let brow = &rhs.data[k * n..(k + 1) * n];
                for (c, &b) in crow.iter_mut().zip(brow) {
                    *c += aik * b;
                }
            }
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Max-norm unitarity certificate `max_ij |(U* U - I)_ij|`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut dot = Complex64::ZERO;
                for k in 0..n {
                    dot += self.data[k * n + i].conj() * self.data[k * n + j];
                }
                if i == j {
                    dot -= Complex64::ONE;
                }
                worst = worst.max(dot.norm());
            }
        }
        worst
    }

    pub fn determinant(&self) -> Complex64 {
        self.to_na().determinant()
    }

    /// Nearest unitary through QR: decompose, then rotate each column of Q
    /// by the phase of the matching diagonal entry of R, which is exactly
    /// the factorization with positive real diagonal. Returns `None` on a
    /// numerically zero pivot.
    pub fn reunitarized(&self) -> Option<CMatrix> {
        let n = self.n;
        let (mut q, r) = self.to_na().qr().unpack();
        for i in 0..n {
            let rii = r[(i, i)];
            let norm = rii.norm();
            if norm < f64::MIN_POSITIVE {
                return None;
            }
            let phase = rii / norm;
            for k in 0..n {
                q[(k, i)] *= phase;
            }
        }
        Some(CMatrix::from_na(&q))
    }

    fn to_na(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.data[i * self.n + j])
    }

    fn from_na(m: &DMatrix<Complex64>) -> CMatrix {
        let n = m.nrows();
        CMatrix {
            n,
            data: (0..n * n)
                .map(|idx| m[(idx / n, idx % n)])
                .collect(),
        }
    }
}

/// `out = v * m` for a row vector `v` (length n).
pub(crate) fn row_mul(v: &[Complex64], m: &CMatrix, out: &mut [Complex64]) {
    let n = m.n;
    debug_assert!(v.len() == n && out.len() == n);
    out.fill(Complex64::ZERO);
    for (k, &vk) in v.iter().enumerate() {
        let mrow = &m.data[k * n..(k + 1) * n];
        for (o, &mkj) in out.iter_mut().zip(mrow) {
            *o += vk * mkj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> (CMatrix, CMatrix) {
        let a = CMatrix::from_data(
            2,
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(-1.0, 0.5),
            ],
        );
        let b = CMatrix::from_data(
            2,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(1.0, -1.0),
                Complex64::new(2.0, 2.0),
                Complex64::new(0.0, 1.0),
            ],
        );
        (a, b)
    }

    #[test]
    fn multiply_matches_nalgebra() {
        let (a, b) = small();
        let mut c = CMatrix::zeros(2);
        a.mul_into(&b, &mut c);
        let expected = a.to_na() * b.to_na();
        for i in 0..2 {
            for j in 0..2 {
                assert!((c.entry(i, j) - expected[(i, j)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn row_mul_matches_full_product() {
        let (a, b) = small();
        let mut full = CMatrix::zeros(2);
        a.mul_into(&b, &mut full);
        let v = [a.entry(0, 0), a.entry(0, 1)];
        let mut out = [Complex64::ZERO; 2];
        row_mul(&v, &b, &mut out);
        assert!((out[0] - full.entry(0, 0)).norm() < 1e-14);
        assert!((out[1] - full.entry(0, 1)).norm() < 1e-14);
    }

    #[test]
    fn identity_is_unitary() {
        let id = CMatrix::identity(5);
        assert_eq!(id.unitarity_error(), 0.0);
        assert!((id.determinant() - Complex64::ONE).norm() < 1e-14);
        assert_eq!(id.trace(), Complex64::new(5.0, 0.0));
    }

    #[test]
    fn reunitarized_fixes_drift() {
        // Scale a unitary away from unitarity and reunitarize back.
        let theta = 0.7f64;
        let u = CMatrix::from_data(
            2,
            vec![
                Complex64::new(theta.cos(), 0.0),
                Complex64::new(0.0, theta.sin()),
                Complex64::new(0.0, theta.sin()),
                Complex64::new(theta.cos(), 0.0),
            ],
        );
        assert!(u.unitarity_error() < 1e-15);
        let mut drifted = u.clone();
        for z in &mut drifted.data {
            *z *= Complex64::new(1.0 + 1e-8, 0.0);
        }
        assert!(drifted.unitarity_error() > 1e-9);
        let fixed = drifted.reunitarized().unwrap();
        assert!(fixed.unitarity_error() < 1e-12);
        // Re-orthonormalization must not move an already-unitary matrix.
        for i in 0..2 {
            for j in 0..2 {
                assert!((fixed.entry(i, j) - u.entry(i, j)).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn adjoint_inverts_unitaries() {
        let theta = 1.2f64;
        let u = CMatrix::from_data(
            2,
            vec![
                Complex64::new(theta.cos(), 0.0),
                Complex64::new(-theta.sin(), 0.0),
                Complex64::new(theta.sin(), 0.0),
                Complex64::new(theta.cos(), 0.0),
            ],
        );
        let mut prod = CMatrix::zeros(2);
        u.mul_into(&u.adjoint(), &mut prod);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
                assert!((prod.entry(i, j) - expected).norm() < 1e-14);
            }
        }
    }
}
