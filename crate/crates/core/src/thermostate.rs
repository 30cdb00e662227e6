//! Thermal qubit states and information measures.
//!
//! Each qubit has local Hamiltonian ε·|1⟩⟨1|, so a Gibbs state at (signed)
//! temperature kT is diagonal with excited population e^{−ε/kT}/(1+e^{−ε/kT}).
//! Chains of such qubits may carry two-body exchange correlations α on the
//! |01⟩⟨10| elements of nearest-neighbour pairs.
//!
//! Basis convention: little-endian. Qubit q is bit q of the computational
//! index, so a product state over qubits 0..n−1 is kron(ρ_{n−1}, …, ρ_0).

use num_complex::Complex64;

use crate::densemat::{herm_eig, kron, partial_trace, CMatrix};
use crate::error::{Error, Result};

const HERM_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const EIG_FLOOR: f64 = -1e-9;
const LOG_CLAMP: f64 = 1e-14;

/// Qubit energy splitting ε. Energies and temperatures are expressed in the
/// same unit as ε, so the default scale of 1 keeps everything dimensionless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyScale {
    epsilon: f64,
}

impl EnergyScale {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::Contract(format!(
                "energy splitting must be a finite positive number, got {epsilon}"
            )));
        }
        Ok(EnergyScale { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Default for EnergyScale {
    fn default() -> Self {
        EnergyScale { epsilon: 1.0 }
    }
}

/// A validated density matrix on `num_qubits` qubits.
///
/// Construction checks Hermiticity (entrywise 1e-10), unit trace (1e-10) and
/// positivity (eigenvalues ≥ −1e-9, allowing for roundoff).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    num_qubits: usize,
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(num_qubits: usize, mat: CMatrix) -> Result<Self> {
        if mat.dim() != 1usize << num_qubits {
            return Err(Error::DimMismatch(format!(
                "matrix dim {} is not 2^{}",
                mat.dim(),
                num_qubits
            )));
        }
        let defect = mat.hermiticity_defect();
        if defect > HERM_TOL {
            return Err(Error::Contract(format!(
                "density matrix is not Hermitian: entrywise defect {defect:.3e}"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Contract(format!(
                "density matrix trace {} + {}i is not 1",
                tr.re, tr.im
            )));
        }
        let eig = herm_eig(&mat)?;
        if eig.eigenvalues[0] < EIG_FLOOR {
            return Err(Error::Positivity(format!(
                "density matrix has negative eigenvalue {:.6e}",
                eig.eigenvalues[0]
            )));
        }
        Ok(DensityMatrix { num_qubits, mat })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> CMatrix {
        self.mat
    }

    /// Reduced state on the given (strictly increasing) qubit subset.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let m = partial_trace(&self.mat, self.num_qubits, keep)?;
        DensityMatrix::new(keep.len(), m)
    }
}

/// Gibbs populations (p0, p1) of one qubit at signed temperature kT.
///
/// kT > 0 gives p0 > p1; kT < 0 the inverted ordering; kT = 0 the ground
/// state; kT = ∞ the maximally mixed state.
pub fn gibbs_populations(kt: f64, scale: &EnergyScale) -> (f64, f64) {
    if kt.is_infinite() {
        return (0.5, 0.5);
    }
    if kt == 0.0 {
        return (1.0, 0.0);
    }
    let x = scale.epsilon / kt;
    if x >= 0.0 {
        let w = (-x).exp();
        (1.0 / (1.0 + w), w / (1.0 + w))
    } else {
        let w = x.exp();
        (w / (1.0 + w), 1.0 / (1.0 + w))
    }
}

/// Single-qubit Gibbs state at signed temperature kT.
pub fn gibbs_qubit(kt: f64, scale: &EnergyScale) -> DensityMatrix {
    let (p0, p1) = gibbs_populations(kt, scale);
    let mat = CMatrix::from_diag(&[Complex64::new(p0, 0.0), Complex64::new(p1, 0.0)]);
    DensityMatrix { num_qubits: 1, mat }
}

/// Signed temperature of a single-qubit state that is diagonal in the energy
/// basis.
///
/// Returns `f64::INFINITY` for the maximally mixed state (populations equal
/// within 1e-12) and `0.0` when the excited population is not positive.
/// States with off-diagonal weight above 1e-8 have no local Gibbs description
/// and are rejected.
pub fn temperature(rho: &DensityMatrix, scale: &EnergyScale) -> Result<f64> {
    if rho.num_qubits != 1 {
        return Err(Error::DimMismatch(format!(
            "temperature is defined for one qubit, got {}",
            rho.num_qubits
        )));
    }
    let offdiag = rho.mat.get(0, 1).norm();
    if offdiag > 1e-8 {
        return Err(Error::Lgc { offdiag, tol: 1e-8 });
    }
    let p0 = rho.mat.get(0, 0).re;
    let p1 = rho.mat.get(1, 1).re;
    if p1 <= 0.0 {
        return Ok(0.0);
    }
    if (p0 - p1).abs() < 1e-12 {
        return Ok(f64::INFINITY);
    }
    Ok(scale.epsilon / (p0 / p1).ln())
}

/// Mean energy Tr[ρ·ε|1⟩⟨1|] of a single-qubit state.
pub fn qubit_energy(rho: &DensityMatrix, scale: &EnergyScale) -> Result<f64> {
    if rho.num_qubits != 1 {
        return Err(Error::DimMismatch(format!(
            "qubit energy is defined for one qubit, got {}",
            rho.num_qubits
        )));
    }
    Ok(scale.epsilon * rho.mat.get(1, 1).re)
}

/// Von Neumann entropy −Tr[ρ ln ρ] in nats.
pub fn entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = herm_eig(&rho.mat)?;
    let mut s = 0.0;
    for &lambda in &eig.eigenvalues {
        if lambda > LOG_CLAMP {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s)
}

/// Relative entropy S(ρ‖σ) = Tr[ρ ln ρ] − Tr[ρ ln σ] in nats.
///
/// When ρ has weight outside the support of σ the divergence is infinite;
/// this is reported as `Ok(f64::INFINITY)`, not as an error.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits != sigma.num_qubits {
        return Err(Error::DimMismatch(format!(
            "relative entropy needs equal qubit counts, got {} and {}",
            rho.num_qubits, sigma.num_qubits
        )));
    }
    let n = rho.mat.dim();
    let eig_rho = herm_eig(&rho.mat)?;
    let mut tr_rho_ln_rho = 0.0;
    for &lambda in &eig_rho.eigenvalues {
        if lambda > LOG_CLAMP {
            tr_rho_ln_rho += lambda * lambda.ln();
        }
    }
    let eig_sigma = herm_eig(&sigma.mat)?;
    let mut tr_rho_ln_sigma = 0.0;
    for j in 0..n {
        // Weight of ρ along σ's j-th eigenvector: ⟨w_j|ρ|w_j⟩.
        let mut w = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                w += eig_sigma.eigenvectors.get(r, j).conj()
                    * rho.mat.get(r, c)
                    * eig_sigma.eigenvectors.get(c, j);
            }
        }
        let w = w.re.max(0.0);
        let mu = eig_sigma.eigenvalues[j];
        if mu > LOG_CLAMP {
            tr_rho_ln_sigma += w * mu.ln();
        } else if w > 1e-12 {
            return Ok(f64::INFINITY);
        }
    }
    Ok(tr_rho_ln_rho - tr_rho_ln_sigma)
}

/// Mutual information I(A:B) = S(A) + S(B) − S(AB) between two disjoint
/// qubit subsets that together cover the whole register.
pub fn mutual_information(rho: &DensityMatrix, part_a: &[usize], part_b: &[usize]) -> Result<f64> {
    let n = rho.num_qubits;
    let mut seen = vec![0usize; n];
    for &q in part_a.iter().chain(part_b) {
        if q >= n {
            return Err(Error::Index(format!(
                "partition index {q} out of range for {n} qubits"
            )));
        }
        seen[q] += 1;
    }
    if seen.iter().any(|&c| c != 1) {
        return Err(Error::Contract(
            "partitions must be disjoint and cover every qubit".into(),
        ));
    }
    let rho_a = rho.reduce(&sorted(part_a))?;
    let rho_b = rho.reduce(&sorted(part_b))?;
    Ok(entropy(&rho_a)? + entropy(&rho_b)? - entropy(rho)?)
}

fn sorted(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

/// Defining data for a correlated thermal chain: one signed temperature per
/// qubit plus one exchange-correlation amplitude per nearest-neighbour pair.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub kts: Vec<f64>,
    pub alphas: Vec<Complex64>,
}

impl ChainSpec {
    pub fn new(kts: Vec<f64>, alphas: Vec<Complex64>) -> Result<Self> {
        if kts.len() < 2 {
            return Err(Error::Contract("a chain needs at least two qubits".into()));
        }
        if 1usize << kts.len() > crate::densemat::MAX_DIM {
            return Err(Error::Capacity {
                dim: 1usize << kts.len(),
                max: crate::densemat::MAX_DIM,
            });
        }
        if alphas.len() != kts.len() - 1 {
            return Err(Error::Contract(format!(
                "expected {} pair correlations for {} qubits, got {}",
                kts.len() - 1,
                kts.len(),
                alphas.len()
            )));
        }
        Ok(ChainSpec { kts, alphas })
    }

    pub fn num_qubits(&self) -> usize {
        self.kts.len()
    }
}

/// 4×4 correlation block for one pair: α on |:j=1,i=0:⟩⟨:j=0,i=1:| and its
/// conjugate, zero elsewhere. Pair basis index is b_j·2 + b_i.
fn chi_block(alpha: Complex64) -> CMatrix {
    let mut chi = CMatrix::zeros(4);
    chi.set(2, 1, alpha);
    chi.set(1, 2, alpha.conj());
    chi
}

/// Assembles the correlated chain state
/// ρ = ⊗_q ρ_q + Σ_i (⊗_{q>i+1} ρ_q) ⊗ χ_i ⊗ (⊗_{q<i} ρ_q),
/// then validates positivity of the result.
///
/// Each χ_i deforms only the |01⟩/|10⟩ coherence of pair (i, i+1); all local
/// populations (hence local temperatures) are untouched.
pub fn chain_state(spec: &ChainSpec, scale: &EnergyScale) -> Result<DensityMatrix> {
    let n = spec.num_qubits();
    let locals: Vec<CMatrix> = spec
        .kts
        .iter()
        .map(|&kt| gibbs_qubit(kt, scale).into_mat())
        .collect();

    // Little-endian product: high qubits first in the kron chain.
    let kron_range = |lo: usize, hi: usize| -> Result<CMatrix> {
        let mut acc = CMatrix::identity(1);
        for q in (lo..hi).rev() {
            acc = kron(&acc, &locals[q])?;
        }
        Ok(acc)
    };

    let mut rho = kron_range(0, n)?;
    for (i, &alpha) in spec.alphas.iter().enumerate() {
        if alpha.norm() == 0.0 {
            continue;
        }
        let upper = kron_range(i + 2, n)?;
        let lower = kron_range(0, i)?;
        let term = kron(&kron(&upper, &chi_block(alpha))?, &lower)?;
        rho = rho.add(&term);
    }

    let eig = herm_eig(&rho)?;
    if eig.eigenvalues[0] < EIG_FLOOR {
        return Err(Error::Positivity(format!(
            "chain correlations are too strong: assembled state has eigenvalue {:.6e}",
            eig.eigenvalues[0]
        )));
    }
    DensityMatrix::new(n, rho)
}

/// Largest |α| admissible for a pair at the given temperatures:
/// √(p0·p1·q0·q1) with (p, q) the two Gibbs populations.
pub fn alpha_max(kt_i: f64, kt_j: f64, scale: &EnergyScale) -> f64 {
    let (p0, p1) = gibbs_populations(kt_i, scale);
    let (q0, q1) = gibbs_populations(kt_j, scale);
    (p0 * p1 * q0 * q1).sqrt()
}

/// Two-qubit correlated thermal state; rejects |α| beyond the positivity
/// bound, reporting the admissible maximum.
pub fn pair_state(
    kt_i: f64,
    kt_j: f64,
    alpha: Complex64,
    scale: &EnergyScale,
) -> Result<DensityMatrix> {
    let bound = alpha_max(kt_i, kt_j, scale);
    if alpha.norm() > bound + 1e-12 {
        return Err(Error::Positivity(format!(
            "|α| = {:.6e} exceeds the admissible bound {:.6e} at these temperatures",
            alpha.norm(),
            bound
        )));
    }
    let spec = ChainSpec::new(vec![kt_i, kt_j], vec![alpha])?;
    chain_state(&spec, scale)
}

/// Reads the exchange-correlation amplitudes of every qubit pair from a
/// state: entry [2][1] of the reduced pair matrix (α of pair (i, j)).
///
/// Returns (adjacent pairs in order of i, non-adjacent pairs in
/// lexicographic (i, j) order).
pub fn extract_alphas(rho: &DensityMatrix) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = rho.num_qubits;
    let mut adjacent = Vec::new();
    let mut distant = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let pair = partial_trace(rho.mat(), n, &[i, j])?;
            let a = pair.get(2, 1);
            if j == i + 1 {
                adjacent.push(a);
            } else {
                distant.push(a);
            }
        }
    }
    Ok((adjacent, distant))
}

/// Geometric quantum discord of a two-qubit state (measurement on qubit 0):
/// D = ½(‖x‖² + ‖T‖²_F − k_max), with x the Bloch vector of qubit 0, T the
/// correlation matrix T_ab = Tr[ρ·σ_a⊗σ_b], and k_max the largest eigenvalue
/// of K = x xᵀ + T Tᵀ.
pub fn gqd(rho: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits != 2 {
        return Err(Error::DimMismatch(format!(
            "geometric discord is defined for two qubits, got {}",
            rho.num_qubits
        )));
    }
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let id2 = CMatrix::identity(2);

    let mut x = [0.0f64; 3];
    for (a, sigma) in paulis.iter().enumerate() {
        // Qubit 0 is the low bit, so its operator sits right in the kron.
        let op = kron(&id2, sigma)?;
        x[a] = trace_prod(rho.mat(), &op).re;
    }
    let mut t = [[0.0f64; 3]; 3];
    for (a, sa) in paulis.iter().enumerate() {
        for (b, sb) in paulis.iter().enumerate() {
            let op = kron(sb, sa)?;
            t[a][b] = trace_prod(rho.mat(), &op).re;
        }
    }

    let x_sq: f64 = x.iter().map(|v| v * v).sum();
    let t_sq: f64 = t.iter().flatten().map(|v| v * v).sum();

    // K = x xᵀ + T Tᵀ, symmetric 3×3.
    let mut k = [[0.0f64; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            k[a][b] = x[a] * x[b] + (0..3).map(|c| t[a][c] * t[b][c]).sum::<f64>();
        }
    }
    let k_max = sym3_max_eigenvalue(&k);
    Ok(0.5 * (x_sq + t_sq - k_max))
}

fn trace_prod(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a.get(i, k) * b.get(k, i);
        }
    }
    acc
}

/// Largest eigenvalue of a symmetric 3×3 matrix via the trigonometric
/// closed form for the characteristic cubic.
fn sym3_max_eigenvalue(a: &[[f64; 3]; 3]) -> f64 {
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if p1 == 0.0 {
        return a[0][0].max(a[1][1]).max(a[2][2]);
    }
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return q;
    }
    // B = (A − qI)/p; r = det(B)/2 lies in [−1, 1] up to roundoff.
    let b = |i: usize, j: usize| (a[i][j] - if i == j { q } else { 0.0 }) / p;
    let det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    q + 2.0 * p * phi.cos()
}

fn pauli_x() -> CMatrix {
    CMatrix::from_fn(2, |i, j| {
        if i != j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn pauli_y() -> CMatrix {
    let mut m = CMatrix::zeros(2);
    m.set(0, 1, Complex64::new(0.0, -1.0));
    m.set(1, 0, Complex64::new(0.0, 1.0));
    m
}

fn pauli_z() -> CMatrix {
    CMatrix::from_diag(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)])
}
