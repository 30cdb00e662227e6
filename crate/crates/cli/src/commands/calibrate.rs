use std::str::FromStr;

use spinchain_core::calibrate::{
    fit_variational_angles, tune_taus, verify_preset, CaseName, CasePreset, CALIBRATION_EPSILON_PEV,
};
use spinchain_core::thermostate::EnergyScale;

use crate::calibfile::{self, CalibRecord};
use crate::Failure;

pub fn execute(case: &str, epsilon: Option<f64>) -> Result<i32, Failure> {
    let case = CaseName::from_str(case).map_err(|e| Failure::usage(e.to_string()))?;
    let epsilon = epsilon.unwrap_or(CALIBRATION_EPSILON_PEV);
    let scale = EnergyScale::new(epsilon).map_err(|e| Failure::usage(e.to_string()))?;

    let preset = CasePreset::for_case(case);
    let (prep, report) = tune_taus(&preset, &scale)?;
    let var = fit_variational_angles(&prep.base_kts, &scale)?;
    let verify = verify_preset(&preset, &prep, &scale)?;

    // Persist the best recipe even when it missed, so a rerun can inspect it.
    let path = calibfile::save(&CalibRecord {
        case,
        epsilon,
        prep,
        angles: var.angles,
    })?;

    println!("case {case} (epsilon = {epsilon})");
    println!(
        "preparation: base kT = ({:.6}, {:.6}, {:.6}), tau_01 = {:+.6}, tau_12 = {:+.6}",
        prep.base_kts[0], prep.base_kts[1], prep.base_kts[2], prep.tau_01, prep.tau_12
    );
    println!(
        "fit: loss {:.3e} after {} iterations; gate angles at loss {:.3e}",
        report.final_loss, report.iterations, var.final_loss
    );
    println!(
        "{:<10} {:>12} {:>12} {:>7} status",
        "column", "target", "achieved", "tol"
    );
    for cell in &verify.cells {
        println!(
            "{:<10} {:>12.4} {:>12.4} {:>7.3} {}",
            cell.column,
            cell.target,
            cell.achieved,
            cell.tol,
            if cell.pass { "pass" } else { "MISS" }
        );
    }
    if verify.constraint_violations.is_empty() {
        println!("constraints: ok");
    } else {
        for v in &verify.constraint_violations {
            println!("constraint violated: {v}");
        }
    }
    println!("saved {}", path.display());

    let passed = report.converged && var.converged && verify.all_pass;
    println!("result: {}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed { 0 } else { 3 })
}
