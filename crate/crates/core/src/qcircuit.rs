//! Gate-level circuits for the exchange dynamics.
//!
//! The compiler targets a linear qubit chain with CNOT as the only two-qubit
//! primitive (explicit SWAPs are accounted as three CNOTs). Circuits carry a
//! classical readout remap so that a trailing SWAP can be elided instead of
//! spent as gates.
//!
//! Little-endian convention throughout: qubit q is bit q of the basis index.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use crate::densemat::{func_herm, kron, CMatrix, MAX_DIM};
use crate::dynamics::DMChainHamiltonian;
use crate::error::{Error, Result};
use crate::thermostate::DensityMatrix;

/// Maximum register size for dense unitaries (dim 64).
pub const MAX_UNITARY_QUBITS: usize = 6;
/// Maximum register size for statevector simulation. Wider than the unitary
/// cap so that purifications of 4-qubit mixed states (8 wires) stay testable.
pub const MAX_STATEVECTOR_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Cnot(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => (q, None),
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) => (q, None),
            Gate::Cnot(c, t) => (c, Some(t)),
            Gate::Swap(a, b) => (a, Some(b)),
        }
    }

    fn inverse(&self) -> Gate {
        match *self {
            Gate::Rx(q, a) => Gate::Rx(q, -a),
            Gate::Ry(q, a) => Gate::Ry(q, -a),
            Gate::Rz(q, a) => Gate::Rz(q, -a),
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Gate::Rx(..) => "RX",
            Gate::Ry(..) => "RY",
            Gate::Rz(..) => "RZ",
            Gate::H(..) => "H",
            Gate::S(..) => "S",
            Gate::Sdg(..) => "SDG",
            Gate::X(..) => "X",
            Gate::Cnot(..) => "CNOT",
            Gate::Swap(..) => "SWAP",
        }
    }
}

/// A gate list on a fixed register plus a readout permutation.
///
/// `readout_remap[q] = p` means logical qubit q is read out at wire position
/// p after the gates have run; the permutation is applied as a final
/// relabeling, costing nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub readout_remap: Vec<usize>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
            readout_remap: (0..num_qubits).collect(),
        }
    }

    fn with_gates(num_qubits: usize, gates: Vec<Gate>) -> Self {
        Circuit {
            num_qubits,
            gates,
            readout_remap: (0..num_qubits).collect(),
        }
    }

    fn validate(&self, max_qubits: usize) -> Result<()> {
        if self.num_qubits == 0 || self.num_qubits > max_qubits {
            return Err(Error::Capacity {
                dim: 1usize << self.num_qubits,
                max: 1usize << max_qubits,
            });
        }
        for (k, g) in self.gates.iter().enumerate() {
            let (a, b) = g.qubits();
            if a >= self.num_qubits || b.is_some_and(|q| q >= self.num_qubits) {
                return Err(Error::Index(format!(
                    "gate {k} ({}) addresses a qubit outside the register",
                    g.name()
                )));
            }
            if let Some(b) = b {
                if a == b {
                    return Err(Error::Index(format!(
                        "gate {k} ({}) uses the same qubit twice",
                        g.name()
                    )));
                }
            }
        }
        let mut seen = vec![false; self.num_qubits];
        if self.readout_remap.len() != self.num_qubits {
            return Err(Error::Contract(
                "readout remap length must equal the qubit count".into(),
            ));
        }
        for &p in &self.readout_remap {
            if p >= self.num_qubits || seen[p] {
                return Err(Error::Contract(
                    "readout remap must be a permutation of the qubits".into(),
                ));
            }
            seen[p] = true;
        }
        Ok(())
    }

    fn remap_is_identity(&self) -> bool {
        self.readout_remap.iter().enumerate().all(|(q, &p)| q == p)
    }

    /// Basis-index permutation realized by the readout remap.
    fn remap_index(&self, b: usize) -> usize {
        let mut out = 0usize;
        for (q, &p) in self.readout_remap.iter().enumerate() {
            out |= ((b >> q) & 1) << p;
        }
        out
    }
}

/// Total CNOT cost: explicit CNOTs plus three per SWAP.
pub fn cnot_count(circuit: &Circuit) -> usize {
    circuit
        .gates
        .iter()
        .map(|g| match g {
            Gate::Cnot(..) => 1,
            Gate::Swap(..) => 3,
            _ => 0,
        })
        .sum()
}

/// Reverses a circuit: gates in reverse order with each gate inverted.
/// Only defined for circuits with an identity readout remap.
pub fn dagger(circuit: &Circuit) -> Result<Circuit> {
    if !circuit.remap_is_identity() {
        return Err(Error::Contract(
            "cannot invert a circuit with a non-trivial readout remap".into(),
        ));
    }
    Ok(Circuit::with_gates(
        circuit.num_qubits,
        dagger_gates(&circuit.gates),
    ))
}

fn dagger_gates(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(|g| g.inverse()).collect()
}

// --- simulation -------------------------------------------------------------

fn gate_matrix_1q(g: &Gate) -> Option<(usize, [Complex64; 4])> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match *g {
        Gate::Rx(q, a) => {
            let (h, t) = ((a / 2.0).cos(), (a / 2.0).sin());
            Some((q, [c(h, 0.0), c(0.0, -t), c(0.0, -t), c(h, 0.0)]))
        }
        Gate::Ry(q, a) => {
            let (h, t) = ((a / 2.0).cos(), (a / 2.0).sin());
            Some((q, [c(h, 0.0), c(-t, 0.0), c(t, 0.0), c(h, 0.0)]))
        }
        Gate::Rz(q, a) => Some((
            q,
            [
                Complex64::from_polar(1.0, -a / 2.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                Complex64::from_polar(1.0, a / 2.0),
            ],
        )),
        Gate::H(q) => {
            let s = 1.0 / SQRT_2;
            Some((q, [c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]))
        }
        Gate::S(q) => Some((q, [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])),
        Gate::Sdg(q) => Some((q, [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)])),
        Gate::X(q) => Some((q, [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])),
        _ => None,
    }
}

fn apply_gate_vec(psi: &mut [Complex64], g: &Gate) {
    if let Some((q, m)) = gate_matrix_1q(g) {
        let bit = 1usize << q;
        for i in 0..psi.len() {
            if i & bit == 0 {
                let a = psi[i];
                let b = psi[i | bit];
                psi[i] = m[0] * a + m[1] * b;
                psi[i | bit] = m[2] * a + m[3] * b;
            }
        }
        return;
    }
    match *g {
        Gate::Cnot(c, t) => {
            let (cb, tb) = (1usize << c, 1usize << t);
            for i in 0..psi.len() {
                if i & cb != 0 && i & tb == 0 {
                    psi.swap(i, i | tb);
                }
            }
        }
        Gate::Swap(a, b) => {
            let (ab, bb) = (1usize << a, 1usize << b);
            for i in 0..psi.len() {
                if i & ab != 0 && i & bb == 0 {
                    psi.swap(i, (i & !ab) | bb);
                }
            }
        }
        _ => unreachable!(),
    }
}

/// Runs the circuit on a statevector (up to 8 qubits) and applies the
/// readout remap. The input length must be 2^num_qubits.
pub fn apply_statevector(circuit: &Circuit, psi: &[Complex64]) -> Result<Vec<Complex64>> {
    circuit.validate(MAX_STATEVECTOR_QUBITS)?;
    let dim = 1usize << circuit.num_qubits;
    if psi.len() != dim {
        return Err(Error::DimMismatch(format!(
            "statevector length {} is not 2^{}",
            psi.len(),
            circuit.num_qubits
        )));
    }
    let mut state = psi.to_vec();
    for g in &circuit.gates {
        apply_gate_vec(&mut state, g);
    }
    if circuit.remap_is_identity() {
        return Ok(state);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (b, &amp) in state.iter().enumerate() {
        out[circuit.remap_index(b)] = amp;
    }
    Ok(out)
}

/// Dense unitary of the circuit (up to 6 qubits), readout remap included.
pub fn unitary_of(circuit: &Circuit) -> Result<CMatrix> {
    circuit.validate(MAX_UNITARY_QUBITS)?;
    let dim = 1usize << circuit.num_qubits;
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|c| {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[c] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    for col in cols.iter_mut() {
        for g in &circuit.gates {
            apply_gate_vec(col, g);
        }
    }
    let mut u = CMatrix::zeros(dim);
    for (c, col) in cols.iter().enumerate() {
        for (r, &amp) in col.iter().enumerate() {
            u.set(circuit.remap_index(r), c, amp);
        }
    }
    Ok(u)
}

/// Runs the circuit on a density matrix gate by gate (no dense unitary is
/// formed), then applies the readout remap to rows and columns.
pub fn apply_density(circuit: &Circuit, rho: &DensityMatrix) -> Result<DensityMatrix> {
    circuit.validate(MAX_UNITARY_QUBITS)?;
    if rho.num_qubits() != circuit.num_qubits {
        return Err(Error::DimMismatch(format!(
            "state has {} qubits, circuit has {}",
            rho.num_qubits(),
            circuit.num_qubits
        )));
    }
    let dim = 1usize << circuit.num_qubits;
    let mut m = rho.mat().clone();
    let mut scratch = vec![Complex64::new(0.0, 0.0); dim];
    for g in &circuit.gates {
        // ρ ← G ρ: transform every column as a vector over row indices.
        for c in 0..dim {
            for (r, s) in scratch.iter_mut().enumerate() {
                *s = m.get(r, c);
            }
            apply_gate_vec(&mut scratch, g);
            for (r, s) in scratch.iter().enumerate() {
                m.set(r, c, *s);
            }
        }
        // ρ ← ρ G†: conjugated transform over column indices.
        for r in 0..dim {
            for (c, s) in scratch.iter_mut().enumerate() {
                *s = m.get(r, c).conj();
            }
            apply_gate_vec(&mut scratch, g);
            for (c, s) in scratch.iter().enumerate() {
                m.set(r, c, s.conj());
            }
        }
    }
    let out = if circuit.remap_is_identity() {
        m
    } else {
        let mut out = CMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                out.set(circuit.remap_index(r), circuit.remap_index(c), m.get(r, c));
            }
        }
        out
    };
    DensityMatrix::new(circuit.num_qubits, out)
}

/// Reduced density matrix of a pure state on the kept qubits (strictly
/// increasing indices). Accepts statevectors up to 8 qubits as long as the
/// reduced output fits the dense-matrix cap.
pub fn reduced_density_from_statevector(
    psi: &[Complex64],
    num_qubits: usize,
    keep: &[usize],
) -> Result<CMatrix> {
    if num_qubits == 0 || num_qubits > MAX_STATEVECTOR_QUBITS {
        return Err(Error::Capacity {
            dim: 1usize << num_qubits,
            max: 1usize << MAX_STATEVECTOR_QUBITS,
        });
    }
    if psi.len() != 1usize << num_qubits {
        return Err(Error::DimMismatch(format!(
            "statevector length {} is not 2^{}",
            psi.len(),
            num_qubits
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
    let dout = 1usize << keep.len();
    if dout > MAX_DIM {
        return Err(Error::Capacity {
            dim: dout,
            max: MAX_DIM,
        });
    }
    let rest: Vec<usize> = (0..num_qubits).filter(|q| !keep.contains(q)).collect();
    let dtr = 1usize << rest.len();
    let mut out = CMatrix::zeros(dout);
    for r in 0..dout {
        for c in 0..dout {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..dtr {
                let mut ri = 0usize;
                let mut ci = 0usize;
                for (t, &q) in keep.iter().enumerate() {
                    ri |= ((r >> t) & 1) << q;
                    ci |= ((c >> t) & 1) << q;
                }
                for (t, &q) in rest.iter().enumerate() {
                    let bit = ((b >> t) & 1) << q;
                    ri |= bit;
                    ci |= bit;
                }
                acc += psi[ri] * psi[ci].conj();
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

// --- template builders -------------------------------------------------------

/// exp(−i/2·(a·X_iX_j + b·Y_iY_j)) with two CNOTs.
fn core_gates(a: f64, b: f64, i: usize, j: usize) -> Vec<Gate> {
    vec![
        Gate::Rx(i, FRAC_PI_2),
        Gate::Rx(j, FRAC_PI_2),
        Gate::Cnot(i, j),
        Gate::Rx(i, a),
        Gate::Rz(j, b),
        Gate::Cnot(i, j),
        Gate::Rx(i, -FRAC_PI_2),
        Gate::Rx(j, -FRAC_PI_2),
    ]
}

/// exp(−i/2·(a·X_iY_j + b·Y_iX_j)): the XX+YY core conjugated by S on j.
fn core_prime_gates(a: f64, b: f64, i: usize, j: usize) -> Vec<Gate> {
    let mut gates = vec![Gate::Sdg(j)];
    gates.extend(core_gates(a, -b, i, j));
    gates.push(Gate::S(j));
    gates
}

/// exp(−i·t·(X_iY_j − Y_iX_j)): one exchange-coupling block, two CNOTs.
fn u2_dm_gates(t: f64, i: usize, j: usize) -> Vec<Gate> {
    core_prime_gates(2.0 * t, -2.0 * t, i, j)
}

pub fn core_circuit(a: f64, b: f64, i: usize, j: usize) -> Circuit {
    Circuit::with_gates(i.max(j) + 1, core_gates(a, b, i, j))
}

pub fn core_prime_circuit(a: f64, b: f64, i: usize, j: usize) -> Circuit {
    Circuit::with_gates(i.max(j) + 1, core_prime_gates(a, b, i, j))
}

/// Circuit for the two-qubit exchange propagator exp(−i·τ·(X_iY_j − Y_iX_j)).
pub fn u2_dm_circuit(tau: f64, i: usize, j: usize) -> Circuit {
    Circuit::with_gates(i.max(j) + 1, u2_dm_gates(tau, i, j))
}

/// Constants of the similarity transform that folds the three-qubit chain
/// propagator into a single two-qubit block:
/// U₃(τ) = K†·U₂^{(1,2)}(c·τ)·K with K = exp(−i/2·(α·X₀Z₁Y₂ + β·Y₀Z₁X₂)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartanConstants {
    pub alpha: f64,
    pub beta: f64,
    pub c: f64,
}

impl CartanConstants {
    /// Closed-form solution (−π/4, π/4, √2).
    pub fn analytic() -> Self {
        CartanConstants {
            alpha: -FRAC_PI_4,
            beta: FRAC_PI_4,
            c: SQRT_2,
        }
    }
}

fn pauli_mat(k: u8) -> CMatrix {
    let mut m = CMatrix::zeros(2);
    match k {
        0 => {
            m.set(0, 0, Complex64::new(1.0, 0.0));
            m.set(1, 1, Complex64::new(1.0, 0.0));
        }
        1 => {
            m.set(0, 1, Complex64::new(1.0, 0.0));
            m.set(1, 0, Complex64::new(1.0, 0.0));
        }
        2 => {
            m.set(0, 1, Complex64::new(0.0, -1.0));
            m.set(1, 0, Complex64::new(0.0, 1.0));
        }
        _ => {
            m.set(0, 0, Complex64::new(1.0, 0.0));
            m.set(1, 1, Complex64::new(-1.0, 0.0));
        }
    }
    m
}

/// Pauli string on 3 qubits, e.g. [1, 3, 2] for X₀Z₁Y₂ (little-endian kron).
fn pauli_string3(ks: [u8; 3]) -> CMatrix {
    let m0 = pauli_mat(ks[0]);
    let m1 = pauli_mat(ks[1]);
    let m2 = pauli_mat(ks[2]);
    kron(&m2, &kron(&m1, &m0).expect("dim 4")).expect("dim 8")
}

fn k_matrix(alpha: f64, beta: f64) -> CMatrix {
    let gen = pauli_string3([1, 3, 2])
        .scale(Complex64::new(alpha / 2.0, 0.0))
        .add(&pauli_string3([2, 3, 1]).scale(Complex64::new(beta / 2.0, 0.0)));
    func_herm(&gen, |lambda| Complex64::from_polar(1.0, -lambda)).expect("Hermitian generator")
}

/// Solves for the similarity constants by Gauss–Newton on the residual
/// c·K†·H₂^{(1,2)}·K − H₃ (Frobenius), starting from (−0.5, 0.5, √2).
///
/// The solve is deterministic; it fails with a calibration error if the
/// residual does not reach 1e-6.
pub fn solve_cartan() -> Result<CartanConstants> {
    let h3 = DMChainHamiltonian::new(3, 1.0)?.mat().clone();
    let h2 = DMChainHamiltonian::new(2, 1.0)?.mat().clone();
    let h2_embedded = kron(&h2, &CMatrix::identity(2))?; // acts on qubits 1, 2

    let residual = |p: &[f64; 3]| -> Vec<f64> {
        let k = k_matrix(p[0], p[1]);
        let m = k
            .dagger()
            .mul(&h2_embedded)
            .mul(&k)
            .scale(Complex64::new(p[2], 0.0))
            .sub(&h3);
        let mut r = Vec::with_capacity(128);
        for v in m.data() {
            r.push(v.re);
            r.push(v.im);
        }
        r
    };

    let mut p = [-0.5, 0.5, SQRT_2];
    let mut r = residual(&p);
    for _ in 0..100 {
        let norm_sq: f64 = r.iter().map(|v| v * v).sum();
        if norm_sq < 1e-22 {
            break;
        }
        // Forward-difference Jacobian, 3 columns.
        let h = 1e-7;
        let mut jac = vec![[0.0f64; 3]; r.len()];
        for col in 0..3 {
            let mut pp = p;
            pp[col] += h;
            let rp = residual(&pp);
            for (row, j) in jac.iter_mut().enumerate() {
                j[col] = (rp[row] - r[row]) / h;
            }
        }
        // Normal equations JᵀJ δ = −Jᵀr.
        let mut jtj = [[0.0f64; 3]; 3];
        let mut jtr = [0.0f64; 3];
        for (row, j) in jac.iter().enumerate() {
            for a in 0..3 {
                jtr[a] += j[a] * r[row];
                for b in 0..3 {
                    jtj[a][b] += j[a] * j[b];
                }
            }
        }
        let delta = solve3(&jtj, &[-jtr[0], -jtr[1], -jtr[2]]).ok_or_else(|| {
            Error::Calibration("similarity solve hit a singular normal system".into())
        })?;
        for a in 0..3 {
            p[a] += delta[a];
        }
        r = residual(&p);
        if delta.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-14 {
            break;
        }
    }
    let final_norm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    if final_norm > 1e-6 {
        return Err(Error::Calibration(format!(
            "similarity solve did not converge: residual {final_norm:.3e}"
        )));
    }
    Ok(CartanConstants {
        alpha: p[0],
        beta: p[1],
        c: p[2],
    })
}

#[allow(clippy::needless_range_loop)] // elimination mutates two rows of `m`
fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// K conjugated by SWAP(1,2): exp(−i/2·(α·X₀Y₁Z₂ + β·Y₀X₁Z₂)). The trailing
/// Z weight is dropped by an H/CNOT sandwich on qubit 2, leaving a two-qubit
/// core on (0, 1). Four CNOTs.
fn kmid_gates(k: &CartanConstants) -> Vec<Gate> {
    let mut gates = vec![Gate::H(2), Gate::Cnot(1, 2)];
    gates.extend(core_prime_gates(k.alpha, k.beta, 0, 1));
    gates.push(Gate::Cnot(1, 2));
    gates.push(Gate::H(2));
    gates
}

/// K as an explicitly SWAP-conjugated circuit (10 CNOTs).
pub fn k_circuit_swapped(k: &CartanConstants) -> Circuit {
    let mut gates = vec![Gate::Swap(1, 2)];
    gates.extend(kmid_gates(k));
    gates.push(Gate::Swap(1, 2));
    Circuit::with_gates(3, gates)
}

/// One Pauli-string exponential exp(−i·θ/2·P) via a CNOT ladder.
/// `ks[q]` ∈ {0: I, 1: X, 2: Y, 3: Z}.
fn ladder_gates(ks: [u8; 3], theta: f64) -> Vec<Gate> {
    let mut gates = Vec::new();
    let active: Vec<usize> = (0..3).filter(|&q| ks[q] != 0).collect();
    assert!(!active.is_empty(), "identity string has no ladder");
    for &q in &active {
        match ks[q] {
            1 => gates.push(Gate::H(q)),
            2 => {
                gates.push(Gate::Sdg(q));
                gates.push(Gate::H(q));
            }
            _ => {}
        }
    }
    for w in active.windows(2) {
        gates.push(Gate::Cnot(w[0], w[1]));
    }
    gates.push(Gate::Rz(*active.last().unwrap(), theta));
    for w in active.windows(2).rev() {
        gates.push(Gate::Cnot(w[0], w[1]));
    }
    for &q in &active {
        match ks[q] {
            1 => gates.push(Gate::H(q)),
            2 => {
                gates.push(Gate::H(q));
                gates.push(Gate::S(q));
            }
            _ => {}
        }
    }
    gates
}

/// K as a product of two commuting Pauli-string exponentials (8 CNOTs).
pub fn k_circuit_product(k: &CartanConstants) -> Circuit {
    let mut gates = ladder_gates([1, 3, 2], k.alpha);
    gates.extend(ladder_gates([2, 3, 1], k.beta));
    Circuit::with_gates(3, gates)
}

/// Three-qubit chain propagator U₃(τ) at 13 CNOTs.
///
/// Layout: SWAP(1,2), the folded K block, the two-qubit exchange block at
/// rescaled time, the folded K block reversed. The closing SWAP is elided
/// into the readout remap [0, 2, 1]; the exchange block runs at −c·τ because
/// conjugation by SWAP flips the block's sign.
pub fn u3_circuit_swapped(tau: f64, k: &CartanConstants) -> Circuit {
    let kmid = kmid_gates(k);
    let mut gates = vec![Gate::Swap(1, 2)];
    gates.extend(kmid.iter().copied());
    gates.extend(u2_dm_gates(-k.c * tau, 1, 2));
    gates.extend(dagger_gates(&kmid));
    Circuit {
        num_qubits: 3,
        gates,
        readout_remap: vec![0, 2, 1],
    }
}

/// Three-qubit chain propagator U₃(τ) with SWAP-free K blocks (18 CNOTs).
pub fn u3_circuit_product(tau: f64, k: &CartanConstants) -> Circuit {
    let kprod = k_circuit_product(k);
    let mut gates = kprod.gates.clone();
    gates.extend(u2_dm_gates(k.c * tau, 1, 2));
    gates.extend(dagger_gates(&kprod.gates));
    Circuit::with_gates(3, gates)
}

/// First-order Trotter approximation of U₃(τ): `steps` alternations of the
/// two pair blocks at τ/steps each, 4·steps CNOTs.
pub fn trotter_circuit(tau: f64, steps: usize) -> Result<Circuit> {
    if steps == 0 {
        return Err(Error::Contract("trotter needs at least one step".into()));
    }
    let dt = tau / steps as f64;
    let mut gates = Vec::with_capacity(steps * 24);
    for _ in 0..steps {
        gates.extend(u2_dm_gates(dt, 0, 1));
        gates.extend(u2_dm_gates(dt, 1, 2));
    }
    Ok(Circuit::with_gates(3, gates))
}

/// Six-qubit preparation ansatz: an RY layer on every wire, CNOTs from each
/// ancilla (3, 4, 5) onto its system partner (0, 1, 2), a second RY layer.
///
/// Tracing the ancillas yields independently mixed system qubits; the twelve
/// angles are the trainable parameters, in layer-major order.
pub fn variational_prep_circuit(params: &[f64]) -> Result<Circuit> {
    if params.len() != 12 {
        return Err(Error::Contract(format!(
            "the preparation ansatz takes 12 angles, got {}",
            params.len()
        )));
    }
    let mut gates = Vec::with_capacity(15);
    for (q, &p) in params[..6].iter().enumerate() {
        gates.push(Gate::Ry(q, p));
    }
    for q in 0..3 {
        gates.push(Gate::Cnot(q + 3, q));
    }
    for (q, &p) in params[6..12].iter().enumerate() {
        gates.push(Gate::Ry(q, p));
    }
    Ok(Circuit::with_gates(6, gates))
}

/// Correlation-imprinting stage: exchange blocks at the two coupling times,
/// far pair (1, 2) first, then (0, 1).
pub fn coupling_prep_circuit(tau_01: f64, tau_12: f64) -> Circuit {
    let mut gates = u2_dm_gates(tau_12, 1, 2);
    gates.extend(u2_dm_gates(tau_01, 0, 1));
    Circuit::with_gates(3, gates)
}

// --- layout ------------------------------------------------------------------

/// Undirected hardware connectivity; pairs are stored normalized.
#[derive(Clone, Debug)]
pub struct CouplingMap {
    pairs: Vec<(usize, usize)>,
}

impl CouplingMap {
    pub fn new(pairs: &[(usize, usize)]) -> Self {
        let mut norm: Vec<(usize, usize)> =
            pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        norm.sort_unstable();
        norm.dedup();
        CouplingMap { pairs: norm }
    }

    /// Nearest-neighbour chain 0–1–…–(n−1).
    pub fn linear(n: usize) -> Self {
        CouplingMap::new(
            &(0..n.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>(),
        )
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// A two-qubit gate acting outside the coupling map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayoutViolation {
    pub gate_index: usize,
    pub pair: (usize, usize),
}

/// Lists every two-qubit gate whose pair is absent from the coupling map.
pub fn check_layout(circuit: &Circuit, map: &CouplingMap) -> Vec<LayoutViolation> {
    let mut violations = Vec::new();
    for (k, g) in circuit.gates.iter().enumerate() {
        if let (a, Some(b)) = g.qubits() {
            if !map.contains(a, b) {
                violations.push(LayoutViolation {
                    gate_index: k,
                    pair: (a.min(b), a.max(b)),
                });
            }
        }
    }
    violations
}

// --- serialization -----------------------------------------------------------

/// Plain-text form of a circuit: a `qubits N` header, one gate per line as
/// `KIND q[,q2][,angle]`, and a `remap p0 p1 …` footer (always emitted).
pub fn dump(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\n", circuit.num_qubits);
    for g in &circuit.gates {
        let line = match *g {
            Gate::Rx(q, a) | Gate::Ry(q, a) | Gate::Rz(q, a) => {
                format!("{} {},{}", g.name(), q, a)
            }
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::X(q) => {
                format!("{} {}", g.name(), q)
            }
            Gate::Cnot(c, t) => format!("CNOT {c},{t}"),
            Gate::Swap(a, b) => format!("SWAP {a},{b}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("remap");
    for &p in &circuit.readout_remap {
        out.push_str(&format!(" {p}"));
    }
    out.push('\n');
    out
}

/// Frobenius distance between two unitaries after aligning global phase.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.dim();
    let mut z = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            z += a.get(i, j).conj() * b.get(i, j);
        }
    }
    let g = if z.norm() > 1e-300 {
        z / z.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.scale(g).dist_frobenius(b)
}
