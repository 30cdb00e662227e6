use num_complex::Complex64;

use spinchain_core::densemat::{herm_eig, CMatrix};
use spinchain_core::dynamics::{
    clausius_check, nonadjacent_growth, qubit_energies, sweep, DMChainHamiltonian,
};
use spinchain_core::thermostate::{
    alpha_max, chain_state, gibbs_populations, pair_state, ChainSpec, EnergyScale,
};
use spinchain_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn scale() -> EnergyScale {
    EnergyScale::default()
}

#[test]
fn hamiltonian_matrix_has_the_exchange_structure() {
    let h = DMChainHamiltonian::new(2, 0.7).unwrap();
    let m = h.mat();
    // Only the |01⟩/|10⟩ block is populated: ±2i·coupling.
    assert!((m.get(2, 1) - c(0.0, 1.4)).norm() < 1e-15);
    assert!((m.get(1, 2) - c(0.0, -1.4)).norm() < 1e-15);
    for (r, col) in [
        (0, 0),
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 1),
        (2, 2),
        (3, 3),
        (1, 3),
        (2, 3),
    ] {
        assert!(
            m.get(r, col).norm() < 1e-15,
            "entry ({r},{col}) should vanish"
        );
    }
    assert!(m.is_hermitian(1e-14));
}

#[test]
fn hamiltonian_conserves_total_excitation() {
    // [H, N] = 0 with N = Σ_q |1⟩⟨1|_q: H never couples different sectors.
    let h = DMChainHamiltonian::new(3, 1.3).unwrap();
    let dim = 8;
    let mut n_op = CMatrix::zeros(dim);
    for b in 0..dim {
        n_op.set(b, b, c(b.count_ones() as f64, 0.0));
    }
    let comm = h.mat().mul(&n_op).sub(&n_op.mul(h.mat()));
    assert!(comm.frobenius_norm() < 1e-14);
}

#[test]
fn three_qubit_spectrum_matches_sector_analysis() {
    // Each single-excitation sector is the 3×3 hopping matrix
    // 2c·[[0,−i,0],[i,0,−i],[0,i,0]] with eigenvalues {−2√2c, 0, 2√2c};
    // the two-excitation sector mirrors it and the empty/full sectors are 0.
    let coupling = 0.9;
    let h = DMChainHamiltonian::new(3, coupling).unwrap();
    let eig = herm_eig(h.mat()).unwrap();
    let e = 2.0 * 2.0f64.sqrt() * coupling;
    let expect = [-e, -e, 0.0, 0.0, 0.0, 0.0, e, e];
    for (got, want) in eig.eigenvalues.iter().zip(expect) {
        assert!((got - want).abs() < 1e-12, "spectrum {:?}", eig.eigenvalues);
    }
}

#[test]
fn hamiltonian_constructor_validates() {
    assert!(matches!(
        DMChainHamiltonian::new(1, 1.0),
        Err(Error::Contract(_))
    ));
    assert!(matches!(
        DMChainHamiltonian::new(7, 1.0),
        Err(Error::Capacity { .. })
    ));
    assert!(matches!(
        DMChainHamiltonian::new(3, f64::NAN),
        Err(Error::Contract(_))
    ));
}

#[test]
fn propagator_is_a_one_parameter_group() {
    let h = DMChainHamiltonian::new(3, 1.0).unwrap();
    let u0 = h.propagator(0.0).unwrap();
    assert!(u0.dist_frobenius(&CMatrix::identity(8)) < 1e-13);
    let (t1, t2) = (0.37, 0.85);
    let composed = h.propagator(t1).unwrap().mul(&h.propagator(t2).unwrap());
    let direct = h.propagator(t1 + t2).unwrap();
    assert!(composed.dist_frobenius(&direct) < 1e-12);
    let round = h.propagator(t1).unwrap().mul(&h.propagator(-t1).unwrap());
    assert!(round.dist_frobenius(&CMatrix::identity(8)) < 1e-13);
}

#[test]
fn evolve_checks_dimensions() {
    let s = scale();
    let h = DMChainHamiltonian::new(3, 1.0).unwrap();
    let pair = pair_state(2.0, 1.0, c(0.0, 0.0), &s).unwrap();
    assert!(matches!(h.evolve(&pair, 0.3), Err(Error::DimMismatch(_))));
}

/// Closed-form pair dynamics: the |01⟩/|10⟩ block of the pair state rotates
/// by R(2cτ), everything else is frozen. Returns (excited populations,
/// correlation) at time τ.
fn pair_closed_form(
    kt_i: f64,
    kt_j: f64,
    alpha: f64,
    coupling: f64,
    tau: f64,
    s: &EnergyScale,
) -> ((f64, f64), f64) {
    let (p0, p1) = gibbs_populations(kt_i, s);
    let (q0, q1) = gibbs_populations(kt_j, s);
    let d1 = p1 * q0; // qubit i excited
    let d2 = p0 * q1; // qubit j excited
    let th = 2.0 * coupling * tau;
    let (co, si) = (th.cos(), th.sin());
    let d1t = co * co * d1 + si * si * d2 - 2.0 * si * co * alpha;
    let d2t = si * si * d1 + co * co * d2 + 2.0 * si * co * alpha;
    let alpha_t = si * co * (d1 - d2) + (co * co - si * si) * alpha;
    // Excited populations: p₁' = d1' + p1·q1, q₁' = d2' + p1·q1.
    ((d1t + p1 * q1, d2t + p1 * q1), alpha_t)
}

#[test]
fn pair_evolution_matches_rotation_closed_form() {
    let s = scale();
    let (kt_i, kt_j, alpha, coupling) = (2.0, 1.0, -0.15, 1.0);
    let h = DMChainHamiltonian::new(2, coupling).unwrap();
    let rho0 = pair_state(kt_i, kt_j, c(alpha, 0.0), &s).unwrap();
    for tau in [0.0, 0.2, 0.7, 1.9, 3.1] {
        let rho = h.evolve(&rho0, tau).unwrap();
        let ((pi, pj), a) = pair_closed_form(kt_i, kt_j, alpha, coupling, tau, &s);
        assert!((rho.mat().get(1, 1).re + rho.mat().get(3, 3).re - pi).abs() < 1e-12);
        assert!((rho.mat().get(2, 2).re + rho.mat().get(3, 3).re - pj).abs() < 1e-12);
        assert!((rho.mat().get(2, 1).re - a).abs() < 1e-12);
        assert!(rho.mat().get(2, 1).im.abs() < 1e-12);
    }
}

#[test]
fn sweep_heats_match_closed_form_and_energy_is_conserved() {
    let s = scale();
    let (kt_i, kt_j, alpha) = (2.0, 1.0, -0.15);
    let h = DMChainHamiltonian::new(2, 1.0).unwrap();
    let rho0 = pair_state(kt_i, kt_j, c(alpha, 0.0), &s).unwrap();
    let taus: Vec<f64> = (0..40).map(|k| k as f64 * 0.08).collect();
    let traj = sweep(&rho0, &h, &taus, &s).unwrap();

    let (p0, p1) = (gibbs_populations(kt_i, &s), gibbs_populations(kt_j, &s));
    let u0 = [p0.1 * s.epsilon(), p1.1 * s.epsilon()];
    for (t, &tau) in taus.iter().enumerate() {
        let ((pi, pj), a) = pair_closed_form(kt_i, kt_j, alpha, 1.0, tau, &s);
        assert!((traj.heats[t][0] - (pi * s.epsilon() - u0[0])).abs() < 1e-11);
        assert!((traj.heats[t][1] - (pj * s.epsilon() - u0[1])).abs() < 1e-11);
        assert!((traj.alphas[t][0].re - a).abs() < 1e-11);
        // Exchange coupling conserves total energy.
        let total: f64 = traj.energies[t].iter().sum();
        assert!((total - (u0[0] + u0[1])).abs() < 1e-11);
        // Heat bookkeeping: Q = U − U(0).
        for q in 0..2 {
            assert!(
                (traj.heats[t][q] - (traj.energies[t][q] - traj.initial_energies[q])).abs() < 1e-13
            );
        }
    }
}

#[test]
fn correlated_pair_reverses_heat_but_respects_corrected_clausius() {
    // Hot qubit at kT = 2, cold at kT = 1, correlation at 90% of the
    // admissible bound: heat flows cold → hot over part of the cycle, yet
    // Q_cold·(β_cold − β_hot) − ΔI stays non-negative throughout.
    let s = scale();
    let bound = alpha_max(2.0, 1.0, &s);
    let rho0 = pair_state(2.0, 1.0, c(-0.9 * bound, 0.0), &s).unwrap();
    let h = DMChainHamiltonian::new(2, 1.0).unwrap();
    let taus: Vec<f64> = (0..101)
        .map(|k| k as f64 * std::f64::consts::PI / 100.0)
        .collect();
    let traj = sweep(&rho0, &h, &taus, &s).unwrap();

    let min_q_cold = traj
        .heats
        .iter()
        .map(|h| h[1])
        .fold(f64::INFINITY, f64::min);
    assert!(
        min_q_cold < -0.1,
        "expected clear reversal, got min Q_cold = {min_q_cold}"
    );
    let mi0 = traj.initial_mutual_infos[0];
    let min_di = traj
        .mutual_infos
        .iter()
        .map(|m| m[0] - mi0)
        .fold(f64::INFINITY, f64::min);
    assert!(
        min_di < -0.1,
        "correlations must be consumed, min ΔI = {min_di}"
    );
    let balance = clausius_check(&traj, (0, 1)).unwrap();
    let min_balance = balance.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(
        min_balance > -1e-10,
        "corrected balance went negative: {min_balance}"
    );
}

#[test]
fn uncorrelated_pair_never_reverses() {
    let s = scale();
    let rho0 = pair_state(2.0, 1.0, c(0.0, 0.0), &s).unwrap();
    let h = DMChainHamiltonian::new(2, 1.0).unwrap();
    let taus: Vec<f64> = (0..101)
        .map(|k| k as f64 * std::f64::consts::PI / 100.0)
        .collect();
    let traj = sweep(&rho0, &h, &taus, &s).unwrap();
    let min_q_cold = traj
        .heats
        .iter()
        .map(|h| h[1])
        .fold(f64::INFINITY, f64::min);
    assert!(
        min_q_cold > -1e-12,
        "uncorrelated pair leaked heat: {min_q_cold}"
    );
    let balance = clausius_check(&traj, (0, 1)).unwrap();
    assert!(balance.iter().all(|&b| b > -1e-10));
}

#[test]
fn clausius_check_requires_a_known_pair() {
    let s = scale();
    let rho0 = pair_state(2.0, 1.0, c(0.0, 0.0), &s).unwrap();
    let h = DMChainHamiltonian::new(2, 1.0).unwrap();
    let traj = sweep(&rho0, &h, &[0.1], &s).unwrap();
    assert!(matches!(
        clausius_check(&traj, (1, 0)),
        Err(Error::Index(_))
    ));
}

#[test]
fn sweep_row_shapes_and_pair_order() {
    let s = scale();
    let spec = ChainSpec::new(vec![5.3, 4.5, 3.2], vec![c(-0.05, 0.0), c(-0.04, 0.0)]).unwrap();
    let rho0 = chain_state(&spec, &s).unwrap();
    let h = DMChainHamiltonian::new(3, 1.0).unwrap();
    let traj = sweep(&rho0, &h, &[0.0, 0.3], &s).unwrap();
    assert_eq!(traj.pairs, vec![(0, 1), (0, 2), (1, 2)]);
    assert_eq!(traj.energies.len(), 2);
    assert_eq!(traj.energies[0].len(), 3);
    assert_eq!(traj.mutual_infos[0].len(), 3);
    assert_eq!(traj.gqds[0].len(), 3);
    // The τ = 0 row reproduces the initial readout.
    for q in 0..3 {
        assert!(traj.heats[0][q].abs() < 1e-12);
        assert!((traj.temperatures[0][q] - traj.initial_temperatures[q]).abs() < 1e-10);
    }
}

#[test]
fn first_order_heat_direction_follows_correlation_sign() {
    // dU_A/dτ at τ = 0⁺ is −4c·Re(α_AB)·ε: negative correlation pushes
    // energy INTO the first qubit no matter the temperature gradient.
    let s = scale();
    let h = DMChainHamiltonian::new(3, 1.0).unwrap();
    let dt = 1e-6;

    // Hot-to-cold gradient with negative correlations: A (hottest) heats up.
    let spec = ChainSpec::new(vec![5.3, 4.5, 3.2], vec![c(-0.097, 0.0), c(-0.071, 0.0)]).unwrap();
    let rho0 = chain_state(&spec, &s).unwrap();
    let u0 = qubit_energies(&rho0, &s).unwrap();
    let u1 = qubit_energies(&h.evolve(&rho0, dt).unwrap(), &s).unwrap();
    let rate_a = (u1[0] - u0[0]) / dt;
    assert!(
        (rate_a - 4.0 * 0.097 * s.epsilon()).abs() < 1e-3,
        "dU_A/dτ = {rate_a}"
    );

    // Same gradient, no correlations: no first-order flow at all.
    let spec0 = ChainSpec::new(vec![5.3, 4.5, 3.2], vec![c(0.0, 0.0); 2]).unwrap();
    let rho0 = chain_state(&spec0, &s).unwrap();
    let u0 = qubit_energies(&rho0, &s).unwrap();
    let u1 = qubit_energies(&h.evolve(&rho0, dt).unwrap(), &s).unwrap();
    assert!(((u1[0] - u0[0]) / dt).abs() < 1e-3);
}

#[test]
fn evolution_grows_nonadjacent_correlation_without_stray_coherence() {
    let s = scale();
    let spec = ChainSpec::new(vec![5.3, 4.5, 3.2], vec![c(-0.097, 0.0), c(-0.071, 0.0)]).unwrap();
    let rho0 = chain_state(&spec, &s).unwrap();
    let h = DMChainHamiltonian::new(3, 1.0).unwrap();
    let taus: Vec<f64> = (0..21).map(|k| k as f64 * 0.05).collect();
    let growth = nonadjacent_growth(&rho0, &h, &taus).unwrap();
    // Starts at zero, becomes decisively nonzero.
    assert!(growth[0].0 < 1e-13);
    let peak = growth.iter().map(|g| g.0).fold(0.0f64, f64::max);
    assert!(peak > 1e-3, "non-adjacent correlation never grew: {peak}");
    // Exchange dynamics creates no coherence outside the hopping pattern.
    for (k, &(_, stray)) in growth.iter().enumerate() {
        assert!(stray < 1e-12, "stray coherence {stray} at row {k}");
    }
}
