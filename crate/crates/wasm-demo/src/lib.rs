//! Browser bindings: residual curves, the parameter solver and profile trajectories.

use wasm_bindgen::prelude::*;

use cbih_lab::ode::integrate;
use cbih_lab::sphere::{scan, solve_cbih, IsoparametricFamily, DEFAULT_SOLVE_TOL};

const MAX_SAMPLES: usize = 20_000;

fn family(degree: u32, m1: u32, m2: u32) -> Result<IsoparametricFamily, String> {
    let m2 = match degree {
        3 | 6 => m1,
        _ => m2,
    };
    IsoparametricFamily::new(degree, m1, m2).map_err(|e| format!("{}: {e}", e.code()))
}

/// Flat [s0, r0, s1, r1, ...] with the residual passed through asinh for plotting.
pub fn residual_points(degree: u32, m1: u32, m2: u32, samples: usize) -> Result<Vec<f64>, String> {
    let fam = family(degree, m1, m2)?;
    let pts = scan(&fam, samples.clamp(2, MAX_SAMPLES)).map_err(|e| format!("{}: {e}", e.code()))?;
    Ok(pts.into_iter().flat_map(|(s, r)| [s, r.asinh()]).collect())
}

pub fn solve_json(degree: u32, m1: u32, m2: u32) -> Result<String, String> {
    let fam = family(degree, m1, m2)?;
    let rep = solve_cbih(&fam, DEFAULT_SOLVE_TOL).map_err(|e| format!("{}: {e}", e.code()))?;
    serde_json::to_string(&rep).map_err(|e| e.to_string())
}

/// Flat [s, h1, H, prime_residual, ...] sampled every `stride` steps.
pub fn trajectory_points(c: f64, s_max: f64, step: f64, stride: usize) -> Result<Vec<f64>, String> {
    if s_max / step > 2e6 {
        return Err("too many steps for the browser demo".into());
    }
    let traj = integrate(c, s_max, step).map_err(|e| format!("{}: {e}", e.code()))?;
    let mut out = Vec::new();
    for smp in traj.samples.iter().step_by(stride.max(1)) {
        let st = &smp.state;
        let h = st.mean_curvature().map_err(|e| e.to_string())?;
        out.extend([st.s, st.h1, h, smp.prime_residual]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn residual_curve(degree: u32, m1: u32, m2: u32, samples: usize) -> Result<Vec<f64>, JsValue> {
    residual_points(degree, m1, m2, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_family(degree: u32, m1: u32, m2: u32) -> Result<String, JsValue> {
    solve_json(degree, m1, m2).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ode_trajectory(c: f64, s_max: f64, step: f64, stride: usize) -> Result<Vec<f64>, JsValue> {
    trajectory_points(c, s_max, step, stride).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_is_flat_pairs() {
        let v = residual_points(4, 1, 2, 100).unwrap();
        assert_eq!(v.len(), 200);
        assert!(v
            .chunks(2)
            .all(|p| p[0] > 0.0 && p[0] < std::f64::consts::FRAC_PI_4 && p[1].is_finite()));
        let flips = v
            .chunks(2)
            .collect::<Vec<_>>()
            .windows(2)
            .filter(|w| w[0][1].signum() != w[1][1].signum())
            .count();
        assert_eq!(flips, 1);
    }

    #[test]
    fn solve_reports_json() {
        let v: serde_json::Value = serde_json::from_str(&solve_json(6, 2, 0).unwrap()).unwrap();
        assert_eq!(v["s_star"].as_array().unwrap().len(), 1);
        assert!(solve_json(5, 1, 1).unwrap_err().starts_with("DOMAIN_ERROR"));
    }

    #[test]
    fn trajectory_rows() {
        let v = trajectory_points(-0.1, 2.0, 1e-3, 10).unwrap();
        assert_eq!(v.len(), 4 * 201);
        assert!(v.chunks(4).all(|r| r[3].abs() < 1e-8));
        assert!(trajectory_points(-0.3, 1.0, 1e-3, 1)
            .unwrap_err()
            .starts_with("DOMAIN_ERROR"));
    }
}
