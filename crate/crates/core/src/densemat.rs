//! Dense complex linear algebra for small Hermitian problems (dim ≤ 64):
//! Kronecker products, partial traces, eigendecomposition, matrix functions.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest matrix dimension supported by the kernel.
pub const MAX_DIM: usize = 64;

/// Dense complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = v;
        }
        m
    }

    /// Builds a matrix from a row-major element function.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] += v;
    }

    /// Elementwise sum. Panics on dimension mismatch (programmer error).
    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            dim: self.dim,
            data,
        }
    }

    /// Elementwise difference. Panics on dimension mismatch.
    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Matrix product. Panics on dimension mismatch.
    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions must match");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let n = self.dim;
        CMatrix::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn dist_frobenius(&self, other: &CMatrix) -> f64 {
        self.sub(other).frobenius_norm()
    }

    /// Largest entrywise deviation from Hermiticity, max |m[i][j] − conj(m[j][i])|.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }
}

/// Kronecker product; entry ((i·b.dim+k),(j·b.dim+l)) = a[i,j]·b[k,l].
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let dim = a.dim * b.dim;
    if dim > MAX_DIM {
        return Err(Error::Capacity { dim, max: MAX_DIM });
    }
    let mut out = CMatrix::zeros(dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let aij = a.get(i, j);
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.dim {
                for l in 0..b.dim {
                    out.set(i * b.dim + k, j * b.dim + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Partial trace onto the qubits in `keep` (strictly increasing indices).
///
/// Qubit q corresponds to bit q of the basis index (little-endian); the
/// output keeps that correspondence, with keep[t] mapped to output bit t.
pub fn partial_trace(m: &CMatrix, num_qubits: usize, keep: &[usize]) -> Result<CMatrix> {
    if m.dim != 1usize << num_qubits {
        return Err(Error::DimMismatch(format!(
            "matrix dim {} is not 2^{}",
            m.dim, num_qubits
        )));
    }
    if keep.is_empty() {
        return Err(Error::Contract("keep set must be non-empty".into()));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Contract(
            "keep indices must be strictly increasing".into(),
        ));
    }
    if let Some(&bad) = keep.iter().find(|&&q| q >= num_qubits) {
        return Err(Error::Index(format!(
            "keep index {bad} out of range for {num_qubits} qubits"
        )));
    }

    let rest: Vec<usize> = (0..num_qubits).filter(|q| !keep.contains(q)).collect();
    let dout = 1usize << keep.len();
    let dtr = 1usize << rest.len();
    let mut out = CMatrix::zeros(dout);
    for r in 0..dout {
        for c in 0..dout {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..dtr {
                let mut row = 0usize;
                let mut col = 0usize;
                for (t, &q) in keep.iter().enumerate() {
                    row |= ((r >> t) & 1) << q;
                    col |= ((c >> t) & 1) << q;
                }
                for (t, &q) in rest.iter().enumerate() {
                    let bit = ((b >> t) & 1) << q;
                    row |= bit;
                    col |= bit;
                }
                acc += m.get(row, col);
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    /// Ascending real eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the corresponding eigenvectors.
    pub eigenvectors: CMatrix,
}

const HERMITICITY_TOL: f64 = 1e-10;

/// Eigendecomposition via cyclic complex Jacobi rotations.
///
/// Input must be Hermitian within 1e-10 entrywise; it is symmetrized before
/// decomposition to suppress accumulation noise. Eigenvalues are returned in
/// ascending order.
pub fn herm_eig(m: &CMatrix) -> Result<EigDecomposition> {
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::Contract(format!(
            "matrix is not Hermitian: entrywise defect {defect:.3e}"
        )));
    }
    let n = m.dim;
    // Symmetrize: a = (m + m†)/2.
    let mut a = m.add(&m.dagger()).scale(Complex64::new(0.5, 0.0));
    let mut v = CMatrix::identity(n);

    let norm = a.frobenius_norm().max(1.0);
    let target = 1e-14 * norm;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a.get(i, j).norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                // Smaller-magnitude root of t² − 2τt − 1 = 0, in the
                // cancellation-free reciprocal form.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    1.0 / (-tau + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // Column update: A ← A·U with U = [[c, −s·φ],[s·φ̄, c]] on (p,q).
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * c + akq * s * phase.conj());
                    a.set(k, q, akq * c - akp * s * phase);
                }
                // Row update: A ← U†·A.
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * c + aqk * s * phase);
                    a.set(q, k, aqk * c - apk * s * phase.conj());
                }
                // Zero the pivot pair exactly and keep the diagonal real.
                let app_new = a.get(p, p).re;
                let aqq_new = a.get(q, q).re;
                a.set(p, p, Complex64::new(app_new, 0.0));
                a.set(q, q, Complex64::new(aqq_new, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c + vkq * s * phase.conj());
                    v.set(k, q, vkq * c - vkp * s * phase);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let eigenvectors = CMatrix::from_fn(n, |i, j| v.get(i, order[j]));
    Ok(EigDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Applies a scalar function to a Hermitian matrix through its spectrum:
/// V·diag(f(λ))·V†.
pub fn func_herm(m: &CMatrix, f: impl Fn(f64) -> Complex64) -> Result<CMatrix> {
    let eig = herm_eig(m)?;
    let n = m.dim;
    let mut fv: Vec<Complex64> = Vec::with_capacity(n);
    for &lambda in &eig.eigenvalues {
        let y = f(lambda);
        if !y.re.is_finite() || !y.im.is_finite() {
            return Err(Error::Domain(format!(
                "scalar map undefined at eigenvalue {lambda:.6e}"
            )));
        }
        fv.push(y);
    }
    let v = &eig.eigenvectors;
    let scaled = CMatrix::from_fn(n, |i, j| v.get(i, j) * fv[j]);
    Ok(scaled.mul(&v.dagger()))
}
