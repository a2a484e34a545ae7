//! Browser bindings: Airy curve, particle trajectories and the exchange
//! symmetry of the deformed eigenfunctions. All results are flat `f64`
//! arrays so they cross into JavaScript as `Float64Array`s.

use selfdual::dynamics::{integrate, preset, Controls};
use selfdual::numerics::{airy_ai, eval_function, AiryMethod, NumFn};
use wasm_bindgen::prelude::*;

fn js(e: selfdual::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Rows `[t, Ai, Ai', method]` with method 0 series, 1 Taylor, 2/3 asymptotic.
pub fn airy_rows(lo: f64, hi: f64, count: usize) -> selfdual::Result<Vec<f64>> {
    let mut out = Vec::with_capacity(4 * count);
    for k in 0..count {
        let t = if count < 2 { lo } else { lo + (hi - lo) * k as f64 / (count - 1) as f64 };
        let v = airy_ai(t)?;
        let m = match v.method {
            AiryMethod::Series => 0.0,
            AiryMethod::TaylorPos => 1.0,
            AiryMethod::AsymptoticPos => 2.0,
            AiryMethod::AsymptoticNeg => 3.0,
        };
        out.extend([t, v.ai, v.ai_prime, m]);
    }
    Ok(out)
}

/// Rows `[t, x_1..x_n, xbar_1..xbar_n, relative energy drift, rank defect]`
/// for the shipped preset. Stops early on a collision.
pub fn trajectory_rows(n: usize, t_end: f64, sample_dt: f64) -> selfdual::Result<Vec<f64>> {
    let s0 = preset(n, if n == 1 { "free" } else { "spread" })?;
    let controls = Controls { sample_dt, ..Controls::default() };
    let traj = integrate(&s0, t_end, &controls);
    let mut out = Vec::new();
    let e0 = traj.samples.first().map_or(0.0, |s| s.energy);
    for s in &traj.samples {
        out.push(s.state.t);
        out.extend(&s.state.x);
        out.extend(&s.xbar);
        out.push((s.energy - e0).abs() / e0.abs().max(1.0));
        out.push(s.rank_defect);
    }
    Ok(out)
}

/// Two-particle slice `x = (s, x2)` at fixed `z`: rows `[s, f(x, z), f(z, x)]`,
/// `NaN` where `f` has a pole.
pub fn symmetry_rows(func: &str, x2: f64, z: [f64; 2], lo: f64, hi: f64, count: usize) -> selfdual::Result<Vec<f64>> {
    let f = NumFn::parse(func)?;
    let mut out = Vec::with_capacity(3 * count);
    for k in 0..count {
        let s = if count < 2 { lo } else { lo + (hi - lo) * k as f64 / (count - 1) as f64 };
        let x = [s, x2];
        let a = eval_function(f, 2, &x, &z).unwrap_or(f64::NAN);
        let b = eval_function(f, 2, &z, &x).unwrap_or(f64::NAN);
        out.extend([s, a, b]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn airy_curve(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, JsError> {
    airy_rows(lo, hi, count).map_err(js)
}

#[wasm_bindgen]
pub fn trajectory(n: usize, t_end: f64, sample_dt: f64) -> Result<Vec<f64>, JsError> {
    trajectory_rows(n, t_end, sample_dt).map_err(js)
}

#[wasm_bindgen]
pub fn symmetry_slice(func: &str, x2: f64, z1: f64, z2: f64, lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, JsError> {
    symmetry_rows(func, x2, [z1, z2], lo, hi, count).map_err(js)
}
