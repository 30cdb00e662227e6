//! CSV rendering for trajectory sweeps. Values carry 17 significant digits
//! (`{:.16e}`) so a written trajectory round-trips bit-exactly; infinities
//! print as `inf`.

use spinchain_core::dynamics::Trajectory;

pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn qubit_label(n: usize, q: usize) -> String {
    if n == 3 {
        ["A", "B", "C"][q].to_string()
    } else {
        q.to_string()
    }
}

/// Pair columns in presentation order. Three qubits use the published
/// AB, BC, AC layout; other sizes list pairs lexicographically.
fn pair_order(traj: &Trajectory) -> Vec<usize> {
    if traj.pairs == [(0, 1), (0, 2), (1, 2)] {
        vec![0, 2, 1]
    } else {
        (0..traj.pairs.len()).collect()
    }
}

fn pair_label(n: usize, pair: (usize, usize)) -> String {
    if n == 3 {
        let names = ["A", "B", "C"];
        format!("{}{}", names[pair.0], names[pair.1])
    } else {
        format!("{}_{}", pair.0, pair.1)
    }
}

pub fn render(traj: &Trajectory) -> String {
    let n = traj.initial_energies.len();
    let order = pair_order(traj);

    let mut header = vec!["tau".to_string()];
    for prefix in ["U", "Q", "kT"] {
        for q in 0..n {
            header.push(format!("{prefix}_{}", qubit_label(n, q)));
        }
    }
    for prefix in ["I", "D", "alpha"] {
        for &k in &order {
            header.push(format!("{prefix}_{}", pair_label(n, traj.pairs[k])));
        }
    }

    let mut out = header.join(",");
    out.push('\n');
    for (t, &tau) in traj.taus.iter().enumerate() {
        let mut row = vec![fmt(tau)];
        row.extend(traj.energies[t].iter().map(|&v| fmt(v)));
        row.extend(traj.heats[t].iter().map(|&v| fmt(v)));
        row.extend(traj.temperatures[t].iter().map(|&v| fmt(v)));
        row.extend(order.iter().map(|&k| fmt(traj.mutual_infos[t][k])));
        row.extend(order.iter().map(|&k| fmt(traj.gqds[t][k])));
        row.extend(order.iter().map(|&k| fmt(traj.alphas[t][k].re)));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// First-step heat rates (dU/dτ between the first two grid rows), one entry
/// per qubit.
pub fn first_step_rates(traj: &Trajectory) -> Vec<f64> {
    let dt = traj.taus[1] - traj.taus[0];
    traj.energies[1]
        .iter()
        .zip(&traj.energies[0])
        .map(|(u1, u0)| (u1 - u0) / dt)
        .collect()
}

pub fn summary(description: &str, traj: &Trajectory) -> String {
    let n = traj.initial_energies.len();
    let mut out = format!("{description}\n");
    out.push_str("initial temperatures:");
    for q in 0..n {
        out.push_str(&format!(
            " kT_{} = {:.4}",
            qubit_label(n, q),
            traj.initial_temperatures[q]
        ));
    }
    out.push('\n');

    let rates = first_step_rates(traj);
    out.push_str(&format!(
        "first-step heat rates over τ ∈ [{:.4}, {:.4}]:\n",
        traj.taus[0], traj.taus[1]
    ));
    for (q, &rate) in rates.iter().enumerate() {
        let verdict = if rate > 1e-12 {
            "absorbing"
        } else if rate < -1e-12 {
            "releasing"
        } else {
            "steady"
        };
        out.push_str(&format!(
            "  qubit {}: dU/dτ = {:+.6e} ({verdict})\n",
            qubit_label(n, q),
            rate
        ));
    }
    if n == 3 {
        let direction = if rates[0] < 0.0 && rates[2] > 0.0 {
            "A→B→C"
        } else if rates[0] > 0.0 && rates[2] < 0.0 {
            "C→B→A"
        } else {
            "mixed"
        };
        out.push_str(&format!("direction: {direction}\n"));
    }
    out
}
