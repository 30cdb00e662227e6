use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinchain_core::dynamics::DMChainHamiltonian;
use spinchain_core::qcircuit::{
    check_layout, cnot_count, k_circuit_product, k_circuit_swapped, phase_aligned_distance,
    solve_cartan, trotter_circuit, u2_dm_circuit, u3_circuit_product, u3_circuit_swapped,
    unitary_of, CartanConstants, Circuit, CouplingMap,
};

use crate::Failure;

const EQUIV_TOL: f64 = 1e-9;

struct Report {
    all_ok: bool,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "ok  " } else { "FAIL" });
        self.all_ok &= ok;
    }
}

pub fn execute() -> Result<i32, Failure> {
    let mut report = Report { all_ok: true };
    let k = CartanConstants::analytic();

    let counts: [(&str, Circuit, usize); 5] = [
        ("cnot-count u2", u2_dm_circuit(0.5, 0, 1), 2),
        ("cnot-count k-product", k_circuit_product(&k), 8),
        ("cnot-count k-swapped", k_circuit_swapped(&k), 10),
        ("cnot-count product18", u3_circuit_product(0.5, &k), 18),
        ("cnot-count swapped13", u3_circuit_swapped(0.5, &k), 13),
    ];
    for (name, circuit, expect) in &counts {
        let got = cnot_count(circuit);
        report.check(name, got == *expect, format!("{got} (expect {expect})"));
    }

    match solve_cartan() {
        Ok(solved) => {
            let miss = (solved.alpha - k.alpha)
                .abs()
                .max((solved.beta - k.beta).abs())
                .max((solved.c - k.c).abs());
            report.check(
                "similarity solver",
                miss < 1e-9,
                format!("max deviation from closed form {miss:.3e}"),
            );
        }
        Err(e) => report.check("similarity solver", false, e.to_string()),
    }

    let exact = DMChainHamiltonian::new(3, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst_swapped = 0.0f64;
    let mut worst_product = 0.0f64;
    for _ in 0..20 {
        let tau = rng.gen::<f64>() * 2.0 * PI - PI;
        let target = exact.propagator(tau)?;
        let d13 = phase_aligned_distance(&unitary_of(&u3_circuit_swapped(tau, &k))?, &target);
        let d18 = phase_aligned_distance(&unitary_of(&u3_circuit_product(tau, &k))?, &target);
        worst_swapped = worst_swapped.max(d13);
        worst_product = worst_product.max(d18);
    }
    report.check(
        "equivalence swapped13",
        worst_swapped < EQUIV_TOL,
        format!("max residual {worst_swapped:.3e} over 20 random τ"),
    );
    report.check(
        "equivalence product18",
        worst_product < EQUIV_TOL,
        format!("max residual {worst_product:.3e} over 20 random τ"),
    );

    let map = CouplingMap::linear(3);
    for (name, circuit) in [
        ("layout swapped13", u3_circuit_swapped(0.7, &k)),
        ("layout product18", u3_circuit_product(0.7, &k)),
        ("layout trotter", trotter_circuit(0.7, 4)?),
    ] {
        let violations = check_layout(&circuit, &map);
        report.check(
            name,
            violations.is_empty(),
            format!("{} off-map two-qubit gates", violations.len()),
        );
    }

    let tau = 1.0;
    let target = exact.propagator(tau)?;
    let mut errors = Vec::new();
    for steps in [1usize, 2, 4, 8, 16] {
        let u = unitary_of(&trotter_circuit(tau, steps)?)?;
        errors.push(phase_aligned_distance(&u, &target));
    }
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[1] / w[0]).collect();
    let halving = ratios.iter().all(|r| (0.4..=0.6).contains(r));
    report.check(
        "trotter halving",
        halving,
        format!(
            "error ratios per step doubling: {}",
            ratios
                .iter()
                .map(|r| format!("{r:.3}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );

    println!(
        "verify-circuits: {}",
        if report.all_ok { "PASS" } else { "FAIL" }
    );
    Ok(if report.all_ok { 0 } else { 1 })
}
