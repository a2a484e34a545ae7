//! Randomized finite-difference cross-checks of eigenvalue identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eval::{eval_function, kappa_f64, NumFn};
use super::fd::fd_apply;
use super::airy_ai;
use crate::algebra::RatFn;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};

pub const RELATIVE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Serialize)]
pub struct NumericResidual {
    pub op: String,
    #[serde(rename = "fn")]
    pub func: String,
    pub x: Vec<f64>,
    pub z: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub relative_error: f64,
}

pub fn relative_error(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(RELATIVE_FLOOR)
}

/// Rejection sampler on a box in `(x, z)`.
#[derive(Debug, Clone)]
pub struct SafeSampler {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    /// minimum `|x_i - x_j|` and `|z_i - z_j|`
    pub min_gap: f64,
    /// minimum `|Ai|` at every kernel argument
    pub ai_floor: f64,
    /// minimum `|eigenvalue|`, keeping both sides of the check away from zero
    pub eig_floor: f64,
}

impl SafeSampler {
    pub fn new(n: usize) -> SafeSampler {
        SafeSampler { n, lo: -1.0, hi: 1.0, min_gap: 0.3, ai_floor: 1e-2, eig_floor: 0.1 }
    }

    fn gaps_ok(&self, v: &[f64]) -> bool {
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| (v[i] - v[j]).abs() >= self.min_gap))
    }

    /// Whether `(x, z)` is admissible, ignoring the eigenvalue.
    pub fn admissible(&self, x: &[f64], z: &[f64]) -> Result<bool> {
        if !self.gaps_ok(x) || !self.gaps_ok(z) {
            return Ok(false);
        }
        let s: f64 = x.iter().chain(z).sum();
        let mut args = vec![kappa_f64(self.n) * s];
        args.extend(x.iter().zip(z).map(|(a, b)| a + b));
        for t in args {
            if airy_ai(t)?.ai.abs() < self.ai_floor {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Result<(Vec<f64>, Vec<f64>)> {
        for _ in 0..100_000 {
            let x: Vec<f64> = (0..self.n).map(|_| rng.gen_range(self.lo..self.hi)).collect();
            let z: Vec<f64> = (0..self.n).map(|_| rng.gen_range(self.lo..self.hi)).collect();
            if self.admissible(&x, &z)? {
                return Ok((x, z));
            }
        }
        Err(Error::Domain(format!("no admissible point in [{}, {}]^{}", self.lo, self.hi, 2 * self.n)))
    }
}

/// One check of `D[f] = eig(z) f` at `(x, z)`.
pub fn fd_check(op: &str, d: &DiffOp, f: NumFn, eig: &RatFn, x: &[f64], z: &[f64], h: f64) -> Result<NumericResidual> {
    let n = d.n();
    let g = |p: &[f64]| eval_function(f, n, p, z);
    let lhs = fd_apply(d, &g, x, h)?;
    let rhs = eig.eval_f64(z)? * g(x)?;
    Ok(NumericResidual {
        op: op.to_string(),
        func: f.id().to_string(),
        x: x.to_vec(),
        z: z.to_vec(),
        lhs,
        rhs,
        relative_error: relative_error(lhs, rhs),
    })
}

/// `count` checks at sampled points; `eig` is over `z1..zn`.
pub fn fd_batch(
    op: &str,
    d: &DiffOp,
    f: NumFn,
    eig: &RatFn,
    sampler: &SafeSampler,
    count: usize,
    seed: u64,
    h: f64,
) -> Result<Vec<NumericResidual>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (x, z) = sampler.sample(&mut rng)?;
        if eig.eval_f64(&z)?.abs() < sampler.eig_floor {
            continue;
        }
        out.push(fd_check(op, d, f, eig, &x, &z, h)?);
    }
    Ok(out)
}

pub fn residual_csv(rows: &[NumericResidual]) -> String {
    let n = rows.first().map_or(0, |r| r.x.len());
    let mut head = vec!["op".to_string(), "fn".to_string()];
    head.extend((1..=n).map(|i| format!("x{i}")));
    head.extend((1..=n).map(|i| format!("z{i}")));
    head.extend(["lhs", "rhs", "relative_error"].map(String::from));
    let mut s = head.join(",");
    s.push('\n');
    for r in rows {
        let mut cells = vec![r.op.clone(), r.func.clone()];
        cells.extend(r.x.iter().chain(&r.z).chain([&r.lhs, &r.rhs, &r.relative_error]).map(|v| format!("{v:?}")));
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
