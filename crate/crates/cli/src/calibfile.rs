//! Calibration persistence: one `<case>.calib` file per preset under
//! `$SPINCHAIN_CALIB_DIR` (default `.spinchain-calib/`), flat `key = value`
//! lines with 17-digit floats.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use spinchain_core::calibrate::{CaseName, Preparation};

use crate::csvout::fmt;
use crate::Failure;

pub struct CalibRecord {
    pub case: CaseName,
    pub epsilon: f64,
    pub prep: Preparation,
    pub angles: [f64; 12],
}

pub fn calib_dir() -> PathBuf {
    env::var_os("SPINCHAIN_CALIB_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".spinchain-calib"))
}

pub fn path_for(case: CaseName) -> PathBuf {
    calib_dir().join(format!("{case}.calib"))
}

pub fn save(record: &CalibRecord) -> Result<PathBuf, Failure> {
    let dir = calib_dir();
    fs::create_dir_all(&dir)?;
    let mut text = format!("case = {}\n", record.case);
    text.push_str(&format!("epsilon = {}\n", fmt(record.epsilon)));
    for (q, kt) in record.prep.base_kts.iter().enumerate() {
        text.push_str(&format!("base_kt_{q} = {}\n", fmt(*kt)));
    }
    text.push_str(&format!("tau_01 = {}\n", fmt(record.prep.tau_01)));
    text.push_str(&format!("tau_12 = {}\n", fmt(record.prep.tau_12)));
    for (k, a) in record.angles.iter().enumerate() {
        text.push_str(&format!("angle_{k} = {}\n", fmt(*a)));
    }
    let path = path_for(record.case);
    fs::write(&path, text)?;
    Ok(path)
}

fn corrupt(path: &Path, what: &str) -> Failure {
    Failure {
        code: 3,
        message: format!(
            "calibration file {} is unreadable ({what}); re-run `spinchain calibrate`",
            path.display()
        ),
    }
}

/// Loads a persisted calibration, `Ok(None)` when none exists.
pub fn load(case: CaseName) -> Result<Option<CalibRecord>, Failure> {
    let path = path_for(case);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut epsilon = None;
    let mut base = [None::<f64>; 3];
    let mut tau_01 = None;
    let mut tau_12 = None;
    let mut angles = [None::<f64>; 12];
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| corrupt(&path, "expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "case" {
            let listed = CaseName::from_str(value).map_err(|_| corrupt(&path, "unknown case"))?;
            if listed != case {
                return Err(corrupt(&path, "case name does not match the file"));
            }
            continue;
        }
        let num: f64 = value
            .parse()
            .map_err(|_| corrupt(&path, "unparseable number"))?;
        if key == "epsilon" {
            epsilon = Some(num);
        } else if key == "tau_01" {
            tau_01 = Some(num);
        } else if key == "tau_12" {
            tau_12 = Some(num);
        } else if let Some(q) = key.strip_prefix("base_kt_") {
            let q: usize = q.parse().map_err(|_| corrupt(&path, "bad base index"))?;
            if q >= 3 {
                return Err(corrupt(&path, "base index out of range"));
            }
            base[q] = Some(num);
        } else if let Some(k) = key.strip_prefix("angle_") {
            let k: usize = k.parse().map_err(|_| corrupt(&path, "bad angle index"))?;
            if k >= 12 {
                return Err(corrupt(&path, "angle index out of range"));
            }
            angles[k] = Some(num);
        } else {
            return Err(corrupt(&path, &format!("unknown key '{key}'")));
        }
    }
    let missing = || corrupt(&path, "missing fields");
    let mut base_kts = [0.0f64; 3];
    for (q, b) in base.iter().enumerate() {
        base_kts[q] = b.ok_or_else(missing)?;
    }
    let mut angle_values = [0.0f64; 12];
    for (k, a) in angles.iter().enumerate() {
        angle_values[k] = a.ok_or_else(missing)?;
    }
    Ok(Some(CalibRecord {
        case,
        epsilon: epsilon.ok_or_else(missing)?,
        prep: Preparation {
            base_kts,
            tau_01: tau_01.ok_or_else(missing)?,
            tau_12: tau_12.ok_or_else(missing)?,
        },
        angles: angle_values,
    }))
}
