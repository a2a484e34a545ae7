//! Double-precision Airy function `Ai` and its derivative.

use serde::Serialize;

use crate::error::{Error, Result};

/// `Ai(0)`
pub const AI0: f64 = 0.355_028_053_887_817_239_3;
/// `-Ai'(0)`
pub const AIP0_NEG: f64 = 0.258_819_403_792_806_798_4;

/// Series below, asymptotic expansions above.
pub const SPLIT: f64 = 6.0;

/// On `(TAYLOR_FROM, SPLIT]` the series cancels badly; a Taylor expansion
/// about [`TAYLOR_ANCHOR`] is used instead.
pub const TAYLOR_FROM: f64 = 2.0;
pub const TAYLOR_ANCHOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AiryMethod {
    Series,
    TaylorPos,
    AsymptoticPos,
    AsymptoticNeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryValue {
    pub t: f64,
    pub ai: f64,
    pub ai_prime: f64,
    pub method: AiryMethod,
}

/// Compensated (Neumaier) running sum.
#[derive(Default, Clone, Copy)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

pub fn airy_ai(t: f64) -> Result<AiryValue> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("Airy argument {t}")));
    }
    Ok(if t > SPLIT {
        airy_asymptotic_pos(t)
    } else if t < -SPLIT {
        airy_asymptotic_neg(t)
    } else if t > TAYLOR_FROM {
        airy_taylor_pos(t)
    } else {
        airy_series(t)
    })
}

/// Maclaurin series `Ai = c1 f - c2 g` with the two hypergeometric branches.
pub fn airy_series(t: f64) -> AiryValue {
    let t3 = t * t * t;
    let (mut f, mut g, mut fp, mut gp) = (Sum::default(), Sum::default(), Sum::default(), Sum::default());
    // f = sum a_k, g = sum b_k, f' = sum p_k, g' = sum q_k
    let (mut a, mut b, mut p, mut q) = (1.0, t, t * t / 2.0, 1.0);
    f.add(a);
    g.add(b);
    fp.add(p);
    gp.add(q);
    let mut k = 0.0;
    loop {
        a *= t3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
        b *= t3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
        q *= t3 / ((3.0 * k + 1.0) * (3.0 * k + 3.0));
        f.add(a);
        g.add(b);
        gp.add(q);
        k += 1.0;
        p *= t3 / (3.0 * k * (3.0 * k + 2.0));
        fp.add(p);
        if a.abs().max(b.abs()).max(p.abs()).max(q.abs()) < 1e-18 {
            break;
        }
    }
    AiryValue {
        t,
        ai: AI0 * f.value() - AIP0_NEG * g.value(),
        ai_prime: AI0 * fp.value() - AIP0_NEG * gp.value(),
        method: AiryMethod::Series,
    }
}

/// `u_k` and `v_k` of the large-argument expansions.
fn uv(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    for k in 1..count {
        let kf = k as f64;
        let prev = u[k - 1];
        u.push(prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf));
    }
    let v = u.iter().enumerate().map(|(k, uk)| -(6.0 * k as f64 + 1.0) / (6.0 * k as f64 - 1.0) * uk).collect();
    (u, v)
}

/// Sums `sign(k) c_k / zeta^k` up to (excluding) the smallest term.
fn truncated(coeffs: impl Iterator<Item = f64>) -> f64 {
    let mut s = Sum::default();
    let mut last = f64::INFINITY;
    for term in coeffs {
        if term.abs() >= last {
            break;
        }
        s.add(term);
        last = term.abs();
    }
    s.value()
}

/// Expansion about [`TAYLOR_ANCHOR`] from `Ai^(k+2) = t Ai^(k) + k Ai^(k-1)`.
/// Leftward the terms share one sign, so nothing cancels.
pub fn airy_taylor_pos(t: f64) -> AiryValue {
    let a = airy_asymptotic_pos(TAYLOR_ANCHOR);
    let dt = t - TAYLOR_ANCHOR;
    // d[k] = Ai^(k)(anchor) dt^k / k!
    let mut d = vec![a.ai, a.ai_prime * dt];
    let (mut ai, mut aip) = (Sum::default(), Sum::default());
    ai.add(d[0]);
    ai.add(d[1]);
    aip.add(d[1] / dt);
    for k in 0..400usize {
        let prev = if k == 0 { 0.0 } else { d[k - 1] * dt };
        let next = (TAYLOR_ANCHOR * d[k] + prev) * dt * dt / ((k + 1) * (k + 2)) as f64;
        d.push(next);
        ai.add(next);
        aip.add(next * (k + 2) as f64 / dt);
        if k > 40 && next.abs() < 1e-18 * ai.value().abs() && d[k + 1].abs() < 1e-18 * ai.value().abs() {
            break;
        }
    }
    AiryValue { t, ai: ai.value(), ai_prime: aip.value(), method: AiryMethod::TaylorPos }
}

pub fn airy_asymptotic_pos(t: f64) -> AiryValue {
    let zeta = 2.0 / 3.0 * t.powf(1.5);
    let (u, v) = uv(80);
    let alt = |c: &[f64]| truncated(c.iter().enumerate().map(|(k, ck)| (-1f64).powi(k as i32) * ck / zeta.powi(k as i32)));
    let e = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    let q = t.powf(0.25);
    AiryValue { t, ai: e / q * alt(&u), ai_prime: -e * q * alt(&v), method: AiryMethod::AsymptoticPos }
}

pub fn airy_asymptotic_neg(t: f64) -> AiryValue {
    let tau = -t;
    let zeta = 2.0 / 3.0 * tau.powf(1.5);
    let (u, v) = uv(80);
    let even = |c: &[f64]| {
        truncated((0..c.len() / 2).map(|k| (-1f64).powi(k as i32) * c[2 * k] / zeta.powi(2 * k as i32)))
    };
    let odd = |c: &[f64]| {
        truncated((0..c.len() / 2 - 1).map(|k| (-1f64).powi(k as i32) * c[2 * k + 1] / zeta.powi(2 * k as i32 + 1)))
    };
    let theta = zeta - std::f64::consts::FRAC_PI_4;
    let (s, c) = theta.sin_cos();
    let sp = std::f64::consts::PI.sqrt();
    let q = tau.powf(0.25);
    AiryValue {
        t,
        ai: (c * even(&u) + s * odd(&u)) / (sp * q),
        ai_prime: q / sp * (s * even(&v) - c * odd(&v)),
        method: AiryMethod::AsymptoticNeg,
    }
}
