//! Named experiment presets and the calibration pipeline that realizes them.
//!
//! A preset fixes target local temperatures, pair correlations and discords
//! for the three-qubit chain. Preparation happens in two stages: a product of
//! Gibbs qubits at *base* temperatures, then two exchange-coupling pulses
//! (pair (1,2) first, then (0,1)) whose durations imprint the correlations
//! while reshaping the local populations. [`tune_taus`] solves for base
//! temperatures and pulse durations jointly; [`fit_variational_angles`] finds
//! gate angles that realize the base product state on hardware;
//! [`verify_preset`] scores the result against the targets.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::densemat::{herm_eig, kron, partial_trace, CMatrix, EigDecomposition};
use crate::dynamics::DMChainHamiltonian;
use crate::error::{Error, Result};
use crate::qcircuit::{
    apply_density, apply_statevector, coupling_prep_circuit, reduced_density_from_statevector,
    variational_prep_circuit,
};
use crate::thermostate::{gibbs_populations, gqd, temperature, DensityMatrix, EnergyScale};

/// Qubit splitting used for the calibrated experiments, in peV
/// (a 1 kHz transition).
pub const CALIBRATION_EPSILON_PEV: f64 = 4.1357;

const TEMP_TOL: f64 = 0.1;
const ALPHA_TOL: f64 = 0.005;
const DISCORD_TOL: f64 = 0.005;

/// The four calibrated experiment configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseName {
    Classical,
    Reversal,
    PreferentialPumping,
    LocalEffects,
}

impl CaseName {
    pub const ALL: [CaseName; 4] = [
        CaseName::Classical,
        CaseName::Reversal,
        CaseName::PreferentialPumping,
        CaseName::LocalEffects,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseName::Classical => "classical",
            CaseName::Reversal => "reversal",
            CaseName::PreferentialPumping => "preferential_pumping",
            CaseName::LocalEffects => "local_effects",
        }
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(CaseName::Classical),
            "reversal" => Ok(CaseName::Reversal),
            "preferential_pumping" => Ok(CaseName::PreferentialPumping),
            "local_effects" => Ok(CaseName::LocalEffects),
            other => Err(Error::Contract(format!(
                "unknown case '{other}' (expected classical, reversal, \
                 preferential_pumping or local_effects)"
            ))),
        }
    }
}

/// Target readout for one configuration. `temps`, `alphas` and `discords`
/// are the published cell values (pairs ordered AB, BC, AC); `fit_*` are the
/// working targets handed to the least-squares stage, which may sit inside
/// the tolerance window rather than on the printed value.
#[derive(Clone, Debug)]
pub struct CasePreset {
    pub name: CaseName,
    pub temps: [f64; 3],
    pub alphas: [f64; 3],
    pub discords: [f64; 3],
    fit_temps: [f64; 3],
    fit_alphas: [f64; 3],
    free_tau_01: bool,
}

impl CasePreset {
    pub fn for_case(name: CaseName) -> CasePreset {
        match name {
            CaseName::Classical => CasePreset {
                name,
                temps: [9.8, 5.0, 2.0],
                alphas: [0.0, 0.0, 0.0],
                discords: [0.0, 0.0, 0.0],
                fit_temps: [9.8, 5.0, 2.0],
                fit_alphas: [0.0, 0.0, 0.0],
                free_tau_01: false,
            },
            // The BC and AC correlation cells are quoted slightly differently
            // in different reports of this configuration (−0.071/−0.076 and
            // −0.014/−0.012); aiming between them keeps both inside the
            // tolerance window.
            CaseName::Reversal => CasePreset {
                name,
                temps: [5.3, 4.5, 3.2],
                alphas: [-0.097, -0.071, -0.014],
                discords: [0.037, 0.021, 0.001],
                fit_temps: [5.3, 4.5, 3.2],
                fit_alphas: [-0.097, -0.0735, -0.013],
                free_tau_01: true,
            },
            CaseName::PreferentialPumping => CasePreset {
                name,
                temps: [4.9, 3.2, 4.9],
                alphas: [0.13, -0.025, 0.0],
                discords: [0.071, 0.002, 0.0],
                fit_temps: [4.9, 3.2, 4.9],
                fit_alphas: [0.13, -0.025, 0.0],
                free_tau_01: true,
            },
            // Published with the correlated pair in the AB column; physically
            // the single coupled pair is (B, C), so the working targets put
            // the correlation there and verification maps it back.
            CaseName::LocalEffects => CasePreset {
                name,
                temps: [9.9, 3.7, 2.6],
                alphas: [-0.089, 0.0, 0.0],
                discords: [-0.031, 0.0, 0.0],
                fit_temps: [9.9, 3.7, 2.6],
                fit_alphas: [0.0, -0.089, 0.0],
                free_tau_01: false,
            },
        }
    }

    /// Structural predicates that define the configuration, checked on an
    /// achieved readout. Returns a list of human-readable violations.
    pub fn constraint_violations(&self, r: &CaseReadout) -> Vec<String> {
        let mut v = Vec::new();
        let [ta, tb, tc] = r.temps;
        let [a_ab, a_bc, _] = r.alphas;
        let mut need_gradient = || {
            if !(ta > tb && tb > tc) {
                v.push(format!(
                    "temperatures are not strictly ordered hot→cold: {ta} / {tb} / {tc}"
                ));
            }
        };
        match self.name {
            CaseName::Classical => {
                need_gradient();
                if a_ab.abs() > 1e-6 || a_bc.abs() > 1e-6 {
                    v.push("classical preparation must carry no correlations".into());
                }
            }
            CaseName::Reversal => {
                need_gradient();
                if a_ab >= 0.0 || a_bc >= 0.0 {
                    v.push(format!(
                        "both adjacent correlations must be negative: {a_ab} / {a_bc}"
                    ));
                }
            }
            CaseName::PreferentialPumping => {
                if (ta - tc).abs() > TEMP_TOL {
                    v.push(format!("edge temperatures must agree: {ta} vs {tc}"));
                }
                let ratio = a_bc / a_ab;
                if !(ratio > -1.0 && ratio < 0.0) {
                    v.push(format!(
                        "correlation ratio must lie in (−1, 0), got {ratio}"
                    ));
                }
            }
            CaseName::LocalEffects => {
                need_gradient();
                if a_ab.abs() > 1e-6 {
                    v.push(format!("pair (A, B) must stay uncorrelated, got {a_ab}"));
                }
                if a_bc >= 0.0 {
                    v.push(format!(
                        "pair (B, C) correlation must be negative, got {a_bc}"
                    ));
                }
            }
        }
        v
    }
}

/// Solved preparation recipe: base Gibbs temperatures plus the two
/// exchange-pulse durations (pair (1,2) is pulsed first).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Preparation {
    pub base_kts: [f64; 3],
    pub tau_01: f64,
    pub tau_12: f64,
}

/// Measured summary of a three-qubit state: local temperatures, pair
/// correlations and pair discords, pairs ordered (0,1), (1,2), (0,2).
#[derive(Clone, Copy, Debug)]
pub struct CaseReadout {
    pub temps: [f64; 3],
    pub alphas: [f64; 3],
    pub discords: [f64; 3],
}

/// Spectral data for the two coupling pulses, diagonalized once per fit.
struct CouplingKernel {
    eig_01: EigDecomposition,
    eig_12: EigDecomposition,
}

impl CouplingKernel {
    fn build() -> Result<CouplingKernel> {
        let h_pair = DMChainHamiltonian::new(2, 1.0)?.mat().clone();
        let id2 = CMatrix::identity(2);
        let h_01 = kron(&id2, &h_pair)?;
        let h_12 = kron(&h_pair, &id2)?;
        Ok(CouplingKernel {
            eig_01: herm_eig(&h_01)?,
            eig_12: herm_eig(&h_12)?,
        })
    }

    fn propagator(eig: &EigDecomposition, tau: f64) -> CMatrix {
        let v = &eig.eigenvectors;
        let n = v.dim();
        let scaled = CMatrix::from_fn(n, |r, c| {
            v.get(r, c) * Complex64::from_polar(1.0, -eig.eigenvalues[c] * tau)
        });
        scaled.mul(&v.dagger())
    }

    /// Product Gibbs state at the base populations, pulsed on (1,2) then (0,1).
    fn prepare(&self, excited: [f64; 3], tau_01: f64, tau_12: f64) -> CMatrix {
        let dim = 8;
        let mut rho = CMatrix::zeros(dim);
        for b in 0..dim {
            let mut p = 1.0;
            for (q, &e) in excited.iter().enumerate() {
                p *= if (b >> q) & 1 == 1 { e } else { 1.0 - e };
            }
            rho.set(b, b, Complex64::new(p, 0.0));
        }
        let u12 = Self::propagator(&self.eig_12, tau_12);
        let u01 = Self::propagator(&self.eig_01, tau_01);
        let rho = u12.mul(&rho).mul(&u12.dagger());
        u01.mul(&rho).mul(&u01.dagger())
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let w = z.exp();
        w / (1.0 + w)
    }
}

/// Fast readout used inside the fit loop: raw signed temperatures from the
/// diagonal populations plus the three pair correlations.
fn fit_readout(rho: &CMatrix, scale: &EnergyScale) -> ([f64; 3], [f64; 3]) {
    let mut temps = [0.0f64; 3];
    for (q, t) in temps.iter_mut().enumerate() {
        let mut p1 = 0.0;
        for b in 0..8 {
            if (b >> q) & 1 == 1 {
                p1 += rho.get(b, b).re;
            }
        }
        let p0 = 1.0 - p1;
        *t = scale.epsilon() / (p0 / p1).ln();
    }
    let alpha = |i: usize, j: usize| {
        partial_trace(rho, 3, &[i, j])
            .expect("valid pair reduction")
            .get(2, 1)
            .re
    };
    (temps, [alpha(0, 1), alpha(1, 2), alpha(0, 2)])
}

/// Full readout of a prepared state, including pair discords.
pub fn readout(rho: &DensityMatrix, scale: &EnergyScale) -> Result<CaseReadout> {
    if rho.num_qubits() != 3 {
        return Err(Error::DimMismatch(format!(
            "case readout is defined for 3 qubits, got {}",
            rho.num_qubits()
        )));
    }
    let mut temps = [0.0f64; 3];
    for (q, t) in temps.iter_mut().enumerate() {
        *t = temperature(&rho.reduce(&[q])?, scale)?;
    }
    let mut alphas = [0.0f64; 3];
    let mut discords = [0.0f64; 3];
    for (k, &(i, j)) in [(0usize, 1usize), (1, 2), (0, 2)].iter().enumerate() {
        let pair = rho.reduce(&[i, j])?;
        alphas[k] = pair.mat().get(2, 1).re;
        discords[k] = gqd(&pair)?;
    }
    Ok(CaseReadout {
        temps,
        alphas,
        discords,
    })
}

/// Exact initial state for a solved preparation.
pub fn preset_initial_state(prep: &Preparation, scale: &EnergyScale) -> Result<DensityMatrix> {
    let kernel = CouplingKernel::build()?;
    let excited = [
        gibbs_populations(prep.base_kts[0], scale).1,
        gibbs_populations(prep.base_kts[1], scale).1,
        gibbs_populations(prep.base_kts[2], scale).1,
    ];
    let rho = kernel.prepare(excited, prep.tau_01, prep.tau_12);
    DensityMatrix::new(3, rho)
}

/// Outcome of a least-squares stage.
#[derive(Clone, Debug)]
pub struct FitReport {
    /// Final parameter vector (population logits, then free pulse durations).
    pub params: Vec<f64>,
    pub final_loss: f64,
    pub iterations: usize,
    /// True when every fitted cell landed inside its tolerance window.
    pub converged: bool,
    pub achieved: CaseReadout,
}

/// Jointly solves base temperatures and pulse durations for a preset.
///
/// Parameters are the three base-population logits (which admit inverted,
/// i.e. negative-temperature, bases) plus the free pulse durations; the
/// residuals are the temperature and correlation misses scaled by their
/// tolerances. A Levenberg–Marquardt descent runs from a grid of pulse
/// starts and the best basin wins; ties are broken toward the earlier start
/// so the solve is deterministic.
pub fn tune_taus(preset: &CasePreset, scale: &EnergyScale) -> Result<(Preparation, FitReport)> {
    let kernel = CouplingKernel::build()?;
    let eps = scale.epsilon();

    // Base-population logits reproducing given temperatures exactly.
    let logit_of_temp = |kt: f64| -eps / kt;

    if preset.name == CaseName::Classical {
        let prep = Preparation {
            base_kts: preset.fit_temps,
            tau_01: 0.0,
            tau_12: 0.0,
        };
        let rho = preset_initial_state(&prep, scale)?;
        let achieved = readout(&rho, scale)?;
        let params = preset.fit_temps.map(logit_of_temp).to_vec();
        return Ok((
            prep,
            FitReport {
                params,
                final_loss: 0.0,
                iterations: 0,
                converged: true,
                achieved,
            },
        ));
    }

    let nfree = if preset.free_tau_01 { 5 } else { 4 };
    let unpack = |p: &[f64]| -> ([f64; 3], f64, f64) {
        let excited = [sigmoid(p[0]), sigmoid(p[1]), sigmoid(p[2])];
        if preset.free_tau_01 {
            (excited, p[3], p[4])
        } else {
            (excited, 0.0, p[3])
        }
    };
    let residuals = |p: &[f64]| -> Vec<f64> {
        let (excited, t01, t12) = unpack(p);
        let rho = kernel.prepare(excited, t01, t12);
        let (temps, alphas) = fit_readout(&rho, scale);
        let mut r = Vec::with_capacity(6);
        for (&t, &target) in temps.iter().zip(&preset.fit_temps) {
            r.push(if t.is_finite() {
                (t - target) / TEMP_TOL
            } else {
                1e6
            });
        }
        for (&a, &target) in alphas.iter().zip(&preset.fit_alphas) {
            r.push((a - target) / ALPHA_TOL);
        }
        r
    };

    let base_start: Vec<f64> = preset.fit_temps.iter().map(|&t| logit_of_temp(t)).collect();
    let grid = [
        -1.3, -1.0, -0.75, -0.5, -0.3, -0.15, 0.15, 0.3, 0.5, 0.75, 1.0, 1.3,
    ];
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if preset.free_tau_01 {
        for &t01 in &grid {
            for &t12 in &grid {
                let mut s = base_start.clone();
                s.push(t01);
                s.push(t12);
                starts.push(s);
            }
        }
    } else {
        for &t12 in &grid {
            let mut s = base_start.clone();
            s.push(t12);
            starts.push(s);
        }
    }

    let mut best: Option<(f64, Vec<f64>, usize)> = None;
    for start in starts {
        let (params, loss, iters) = lm_minimize(&residuals, start, nfree, 200);
        let improved = match &best {
            None => true,
            Some((b, _, _)) => loss < b - 1e-12,
        };
        if improved {
            best = Some((loss, params, iters));
        }
    }
    let (final_loss, params, iterations) =
        best.ok_or_else(|| Error::Calibration("no fit start produced a result".into()))?;

    let (excited, tau_01, tau_12) = unpack(&params);
    let base_kts = [
        temp_of_population(excited[0], eps),
        temp_of_population(excited[1], eps),
        temp_of_population(excited[2], eps),
    ];
    let prep = Preparation {
        base_kts,
        tau_01,
        tau_12,
    };
    let rho = preset_initial_state(&prep, scale)?;
    let achieved = readout(&rho, scale)?;
    let converged = (0..3).all(|q| (achieved.temps[q] - preset.fit_temps[q]).abs() <= TEMP_TOL)
        && (0..3).all(|k| (achieved.alphas[k] - preset.fit_alphas[k]).abs() <= ALPHA_TOL);
    Ok((
        prep,
        FitReport {
            params,
            final_loss,
            iterations,
            converged,
            achieved,
        },
    ))
}

fn temp_of_population(p1: f64, eps: f64) -> f64 {
    let p0 = 1.0 - p1;
    if p1 <= 0.0 {
        return 0.0;
    }
    if (p0 - p1).abs() < 1e-15 {
        return f64::INFINITY;
    }
    eps / (p0 / p1).ln()
}

/// Hand-rolled Levenberg–Marquardt with forward-difference Jacobian.
/// Returns (params, loss, iterations).
fn lm_minimize(
    residuals: &dyn Fn(&[f64]) -> Vec<f64>,
    start: Vec<f64>,
    nparams: usize,
    max_iters: usize,
) -> (Vec<f64>, f64, usize) {
    let mut p = start;
    let mut r = residuals(&p);
    let mut loss = r.iter().map(|v| v * v).sum::<f64>();
    let mut lambda = 1e-3;
    let mut iters = 0;
    while iters < max_iters && loss > 1e-18 {
        iters += 1;
        let h = 1e-7;
        let mut jac = vec![vec![0.0f64; nparams]; r.len()];
        for col in 0..nparams {
            let mut pp = p.clone();
            pp[col] += h;
            let rp = residuals(&pp);
            for (row, jr) in jac.iter_mut().enumerate() {
                jr[col] = (rp[row] - r[row]) / h;
            }
        }
        let mut jtj = vec![vec![0.0f64; nparams]; nparams];
        let mut jtr = vec![0.0f64; nparams];
        for (row, jr) in jac.iter().enumerate() {
            for a in 0..nparams {
                jtr[a] += jr[a] * r[row];
                for b in 0..nparams {
                    jtj[a][b] += jr[a] * jr[b];
                }
            }
        }
        let mut accepted = false;
        for _ in 0..25 {
            let mut system = jtj.clone();
            for (a, row) in system.iter_mut().enumerate() {
                row[a] += lambda;
            }
            let rhs: Vec<f64> = jtr.iter().map(|v| -v).collect();
            let Some(delta) = solve_dense(&system, &rhs) else {
                lambda *= 3.0;
                continue;
            };
            let trial: Vec<f64> = p.iter().zip(&delta).map(|(a, d)| a + d).collect();
            let rt = residuals(&trial);
            let lt = rt.iter().map(|v| v * v).sum::<f64>();
            if lt < loss {
                let step: f64 = delta.iter().map(|v| v * v).sum::<f64>().sqrt();
                p = trial;
                r = rt;
                loss = lt;
                lambda = (lambda * 0.3).max(1e-12);
                accepted = true;
                if step < 1e-12 {
                    return (p, loss, iters);
                }
                break;
            }
            lambda *= 3.0;
        }
        if !accepted {
            break;
        }
    }
    (p, loss, iters)
}

/// Gaussian elimination with partial pivoting for small dense systems.
#[allow(clippy::needless_range_loop)] // elimination mutates two rows of `m`
fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..=n {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Outcome of the gate-angle fit for the base product state.
#[derive(Clone, Debug)]
pub struct VariationalFit {
    pub angles: [f64; 12],
    pub final_loss: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Fits the twelve ansatz angles so that tracing the ancillas of the
/// six-qubit preparation circuit leaves the product Gibbs state at the given
/// base temperatures.
///
/// The loss is the entrywise L1 distance between the reduced system state and
/// the target. Plain gradient descent (central differences, step 0.1 with
/// halving backtracking) starts from the closed-form warm start
/// θ_ancilla = 2·asin(√p₁), which already realizes the target exactly; the
/// descent is retained so off-warm-start calls still converge.
pub fn fit_variational_angles(base_kts: &[f64; 3], scale: &EnergyScale) -> Result<VariationalFit> {
    let mut target = CMatrix::zeros(8);
    let pops: Vec<(f64, f64)> = base_kts
        .iter()
        .map(|&kt| gibbs_populations(kt, scale))
        .collect();
    for b in 0..8 {
        let mut p = 1.0;
        for (q, &(p0, p1)) in pops.iter().enumerate() {
            p *= if (b >> q) & 1 == 1 { p1 } else { p0 };
        }
        target.set(b, b, Complex64::new(p, 0.0));
    }

    let loss_of = |angles: &[f64]| -> Result<f64> {
        let circuit = variational_prep_circuit(angles)?;
        let mut zero = vec![Complex64::new(0.0, 0.0); 64];
        zero[0] = Complex64::new(1.0, 0.0);
        let psi = apply_statevector(&circuit, &zero)?;
        let sys = reduced_density_from_statevector(&psi, 6, &[0, 1, 2])?;
        let mut l = 0.0;
        for r in 0..8 {
            for c in 0..8 {
                l += (sys.get(r, c) - target.get(r, c)).norm();
            }
        }
        Ok(l)
    };

    let mut angles = [0.0f64; 12];
    for q in 0..3 {
        angles[3 + q] = 2.0 * pops[q].1.sqrt().asin();
    }
    let mut loss = loss_of(&angles)?;
    let mut iterations = 0;
    while loss >= 1e-6 && iterations < 5000 {
        iterations += 1;
        let h = 1e-6;
        let mut grad = [0.0f64; 12];
        for k in 0..12 {
            let mut up = angles;
            up[k] += h;
            let mut dn = angles;
            dn[k] -= h;
            grad[k] = (loss_of(&up)? - loss_of(&dn)?) / (2.0 * h);
        }
        let mut lr = 0.1;
        let mut stepped = false;
        while lr > 1e-9 {
            let mut trial = angles;
            for k in 0..12 {
                trial[k] -= lr * grad[k];
            }
            let lt = loss_of(&trial)?;
            if lt < loss {
                angles = trial;
                loss = lt;
                stepped = true;
                break;
            }
            lr /= 2.0;
        }
        if !stepped {
            break;
        }
    }
    Ok(VariationalFit {
        angles,
        final_loss: loss,
        iterations,
        converged: loss < 1e-6,
    })
}

/// Initial state realized through the gate pipeline: the six-qubit
/// preparation circuit (ancillas traced out) followed by the two
/// exchange-coupling pulses as circuits.
pub fn circuit_initial_state(prep: &Preparation, scale: &EnergyScale) -> Result<DensityMatrix> {
    let var = fit_variational_angles(&prep.base_kts, scale)?;
    if !var.converged {
        return Err(Error::Calibration(format!(
            "gate-angle fit stalled at loss {:.3e}",
            var.final_loss
        )));
    }
    let circuit = variational_prep_circuit(&var.angles)?;
    let mut zero = vec![Complex64::new(0.0, 0.0); 64];
    zero[0] = Complex64::new(1.0, 0.0);
    let psi = apply_statevector(&circuit, &zero)?;
    let sys = reduced_density_from_statevector(&psi, 6, &[0, 1, 2])?;
    let base = DensityMatrix::new(3, sys)?;
    apply_density(&coupling_prep_circuit(prep.tau_01, prep.tau_12), &base)
}

/// One scored cell of a verification table.
#[derive(Clone, Debug)]
pub struct CellCheck {
    pub column: String,
    pub target: f64,
    pub achieved: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Verification outcome: per-cell scores against the published values plus
/// any structural-constraint violations.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub cells: Vec<CellCheck>,
    pub constraint_violations: Vec<String>,
    pub all_pass: bool,
}

/// Scores a solved preparation against the preset's published cells.
///
/// Temperatures are compared within ±0.1, correlations and discords within
/// ±0.005 (discords by magnitude — the published table carries one sign
/// typo). For the local-effects row the published table lists the coupled
/// pair under the AB columns although the pulse acts on (B, C); achieved
/// pair values are mapped onto the printed layout before comparison.
pub fn verify_preset(
    preset: &CasePreset,
    prep: &Preparation,
    scale: &EnergyScale,
) -> Result<VerifyReport> {
    let rho = preset_initial_state(prep, scale)?;
    let achieved = readout(&rho, scale)?;

    let (mut cmp_alphas, mut cmp_discords) = (achieved.alphas, achieved.discords);
    if preset.name == CaseName::LocalEffects {
        cmp_alphas.swap(0, 1);
        cmp_discords.swap(0, 1);
    }

    let mut cells = Vec::with_capacity(9);
    let temp_cols = ["T_A", "T_B", "T_C"];
    for (q, col) in temp_cols.iter().enumerate() {
        let diff = (achieved.temps[q] - preset.temps[q]).abs();
        cells.push(CellCheck {
            column: (*col).into(),
            target: preset.temps[q],
            achieved: achieved.temps[q],
            tol: TEMP_TOL,
            pass: diff <= TEMP_TOL,
        });
    }
    let alpha_cols = ["alpha_AB", "alpha_BC", "alpha_AC"];
    for k in 0..3 {
        let diff = (cmp_alphas[k] - preset.alphas[k]).abs();
        cells.push(CellCheck {
            column: alpha_cols[k].into(),
            target: preset.alphas[k],
            achieved: cmp_alphas[k],
            tol: ALPHA_TOL,
            pass: diff <= ALPHA_TOL,
        });
    }
    let discord_cols = ["D_AB", "D_BC", "D_AC"];
    for k in 0..3 {
        let diff = (cmp_discords[k].abs() - preset.discords[k].abs()).abs();
        cells.push(CellCheck {
            column: discord_cols[k].into(),
            target: preset.discords[k],
            achieved: cmp_discords[k],
            tol: DISCORD_TOL,
            pass: diff <= DISCORD_TOL,
        });
    }

    let constraint_violations = preset.constraint_violations(&achieved);
    let all_pass = cells.iter().all(|c| c.pass) && constraint_violations.is_empty();
    Ok(VerifyReport {
        cells,
        constraint_violations,
        all_pass,
    })
}
