//! The classical particle system with Hamiltonian
//! `sum (y_i^2 - x_i) - sum_{i<j} 4 / (x_i - x_j)^2`, its matrix form and the
//! self-duality involution.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diagonal shift `c` making `[X, Z] + c I` rank one for the matrices of
/// [`cm_matrices`]: every entry of the commutator off the diagonal is `sqrt 2`.
pub const RANK_SHIFT: f64 = std::f64::consts::SQRT_2;
pub const RANK_TOL: f64 = 1e-8;
pub const DEGENERACY_GAP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(default)]
    pub t: f64,
}

impl ParticleState {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<ParticleState> {
        if x.len() != y.len() || x.is_empty() {
            return Err(Error::Dimension(format!("{} positions, {} momenta", x.len(), y.len())));
        }
        Ok(ParticleState { x, y, t: 0.0 })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Closest pair `(i, j, |x_i - x_j|)`, 1-based.
    pub fn min_gap(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let g = (self.x[i] - self.x[j]).abs();
                if best.is_none_or(|b| g < b.2) {
                    best = Some((i + 1, j + 1, g));
                }
            }
        }
        best
    }

    fn check_distinct(&self, threshold: f64) -> Result<()> {
        match self.min_gap() {
            Some((i, j, gap)) if !(gap >= threshold) => Err(Error::Collision { i, j, t: self.t, gap }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMPair {
    pub x: DMatrix<f64>,
    pub z: DMatrix<f64>,
}

/// `X = diag(x)`, `Z_ii = y_i`, `Z_ij = sqrt 2 / (x_i - x_j)`.
pub fn cm_matrices(s: &ParticleState) -> Result<CMPair> {
    s.check_distinct(f64::MIN_POSITIVE)?;
    let n = s.n();
    let x = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(s.x.clone()));
    let z = DMatrix::from_fn(n, n, |i, j| if i == j { s.y[i] } else { RANK_SHIFT / (s.x[i] - s.x[j]) });
    Ok(CMPair { x, z })
}

pub fn hamiltonian(s: &ParticleState) -> Result<f64> {
    s.check_distinct(f64::MIN_POSITIVE)?;
    let n = s.n();
    let mut h: f64 = s.y.iter().zip(&s.x).map(|(y, x)| y * y - x).sum();
    for i in 0..n {
        for j in i + 1..n {
            let d = s.x[i] - s.x[j];
            h -= 4.0 / (d * d);
        }
    }
    Ok(h)
}

/// `(dx/dt, dy/dt) = (dH/dy, -dH/dx)`.
pub fn equations_of_motion(s: &ParticleState) -> Result<(Vec<f64>, Vec<f64>)> {
    s.check_distinct(f64::MIN_POSITIVE)?;
    Ok(rhs(&s.x, &s.y))
}

fn rhs(x: &[f64], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let dx = y.iter().map(|v| 2.0 * v).collect();
    let mut dy = vec![1.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = x[i] - x[j];
            let f = 8.0 / (d * d * d);
            dy[i] -= f;
            dy[j] += f;
        }
    }
    (dx, dy)
}

/// `tr((Z^2 - X)^j)` for `j = 1..n`.
pub fn integrals_of_motion(s: &ParticleState) -> Result<Vec<f64>> {
    let p = cm_matrices(s)?;
    let m = &p.z * &p.z - &p.x;
    let mut pow = m.clone();
    let mut out = Vec::with_capacity(s.n());
    for _ in 0..s.n() {
        out.push(pow.trace());
        pow = &pow * &m;
    }
    Ok(out)
}

/// `sigma_2 / sigma_1` of `[X, Z] + shift I`; zero for `1 x 1`.
pub fn rank_defect(p: &CMPair, shift: f64) -> f64 {
    let n = p.x.nrows();
    let c = &p.x * &p.z - &p.z * &p.x + DMatrix::identity(n, n) * shift;
    let mut sv: Vec<f64> = c.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    match sv.as_slice() {
        [s1, s2, ..] if *s1 > 0.0 => s2 / s1,
        [_, _, ..] => f64::INFINITY,
        _ => 0.0,
    }
}

/// `(X, Z) -> ((Z^T)^2 - X^T, Z^T)`.
pub fn involution(p: &CMPair) -> Result<CMPair> {
    if p.x.shape() != p.z.shape() || !p.x.is_square() {
        return Err(Error::Dimension(format!("matrices {:?} and {:?}", p.x.shape(), p.z.shape())));
    }
    let defect = rank_defect(p, RANK_SHIFT);
    if !(defect <= RANK_TOL) {
        return Err(Error::RankOneViolation { defect });
    }
    let zt = p.z.transpose();
    Ok(CMPair { x: &zt * &zt - p.x.transpose(), z: zt })
}

/// Sorted eigenvalues of `(Z^T)^2 - X^T` and the diagonal of `Z^T` in the
/// matching eigenbasis.
pub fn dual_coordinates(p: &CMPair) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = p.x.nrows();
    let zt = p.z.transpose();
    let xbar = &zt * &zt - p.x.transpose();
    let scale = xbar.amax().max(1.0);
    let mut eig: Vec<f64> = Vec::with_capacity(n);
    for c in xbar.complex_eigenvalues().iter() {
        if c.im.abs() > 1e-9 * scale {
            return Err(Error::Domain(format!("complex dual position {c}")));
        }
        eig.push(c.re);
    }
    eig.sort_by(f64::total_cmp);
    if let Some(gap) = eig.windows(2).map(|w| w[1] - w[0]).min_by(f64::total_cmp) {
        if gap < DEGENERACY_GAP * scale {
            return Err(Error::Degenerate { gap });
        }
    }
    let mut v = DMatrix::zeros(n, n);
    for (k, &lam) in eig.iter().enumerate() {
        let shifted = &xbar - DMatrix::identity(n, n) * lam;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.ok_or_else(|| Error::Domain("eigenvector decomposition failed".into()))?;
        let smallest = svd.singular_values.imin();
        let mut col = vt.row(smallest).transpose();
        if let Some(first) = col.iter().find(|c| c.abs() > 1e-12) {
            if *first < 0.0 {
                col = -col;
            }
        }
        v.set_column(k, &col);
    }
    let vinv = v.clone().try_inverse().ok_or(Error::Degenerate { gap: 0.0 })?;
    let d = vinv * zt * v;
    Ok((eig, d.diagonal().iter().copied().collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Controls {
    pub rtol: f64,
    pub atol: f64,
    pub collision_threshold: f64,
    pub sample_dt: f64,
    pub max_steps: usize,
}

impl Default for Controls {
    fn default() -> Self {
        Controls { rtol: 1e-10, atol: 1e-10, collision_threshold: 1e-3, sample_dt: 0.05, max_steps: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub state: ParticleState,
    pub energy: f64,
    pub integrals: Vec<f64>,
    pub rank_defect: f64,
    pub xbar: Vec<f64>,
    pub ybar: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// Why integration stopped before `t_end`.
    #[serde(skip)]
    pub stop: Option<Error>,
    pub steps: usize,
    pub rejected: usize,
}

pub fn diagnose(s: &ParticleState) -> Result<Sample> {
    let p = cm_matrices(s)?;
    let (xbar, ybar) = dual_coordinates(&p)?;
    Ok(Sample {
        state: s.clone(),
        energy: hamiltonian(s)?,
        integrals: integrals_of_motion(s)?,
        rank_defect: rank_defect(&p, RANK_SHIFT),
        xbar,
        ybar,
    })
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus the embedded fourth-order weights.
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

fn field(u: &[f64]) -> Vec<f64> {
    let n = u.len() / 2;
    let (dx, dy) = rhs(&u[..n], &u[n..]);
    dx.into_iter().chain(dy).collect()
}

/// One Dormand-Prince step: the fifth-order solution and the error estimate.
fn dp_step(u: &[f64], k1: &[f64], h: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let m = u.len();
    let mut k: Vec<Vec<f64>> = vec![k1.to_vec()];
    for s in 1..7 {
        let stage: Vec<f64> = (0..m).map(|i| u[i] + h * (0..s).map(|r| A[s][r] * k[r][i]).sum::<f64>()).collect();
        k.push(field(&stage));
    }
    let next: Vec<f64> = (0..m).map(|i| u[i] + h * (0..6).map(|r| A[6][r] * k[r][i]).sum::<f64>()).collect();
    let err = (0..m).map(|i| h * (0..7).map(|r| E[r] * k[r][i]).sum::<f64>()).collect();
    let k7 = k.pop().expect("seven stages");
    (next, err, k7)
}

/// Adaptive integration on `[s0.t, t_end]`, sampling every `sample_dt`.
/// Collisions and step underflow end the run early with `stop` set.
pub fn integrate(s0: &ParticleState, t_end: f64, controls: &Controls) -> Trajectory {
    let mut traj = Trajectory { samples: Vec::new(), stop: None, steps: 0, rejected: 0 };
    if let Err(e) = s0.check_distinct(controls.collision_threshold) {
        traj.stop = Some(e);
        return traj;
    }
    match diagnose(s0) {
        Ok(d) => traj.samples.push(d),
        Err(e) => {
            traj.stop = Some(e);
            return traj;
        }
    }
    let n = s0.n();
    let mut u: Vec<f64> = s0.x.iter().chain(&s0.y).copied().collect();
    let mut t = s0.t;
    let mut k1 = field(&u);
    let mut h = controls.sample_dt.min(t_end - t).max(0.0) * 0.1;
    let mut sample_index = 1usize;
    while t < t_end {
        if traj.steps + traj.rejected >= controls.max_steps {
            traj.stop = Some(Error::StepUnderflow { t });
            return traj;
        }
        let target = (s0.t + sample_index as f64 * controls.sample_dt).min(t_end);
        let hit = h >= target - t;
        let step = if hit { target - t } else { h };
        if step <= 1e-14 * t.abs().max(1.0) {
            traj.stop = Some(Error::StepUnderflow { t });
            return traj;
        }
        let (next, err, k7) = dp_step(&u, &k1, step);
        let norm = (0..u.len())
            .map(|i| err[i].abs() / (controls.atol + controls.rtol * u[i].abs().max(next[i].abs())))
            .fold(0.0, f64::max);
        if !norm.is_finite() || norm > 1.0 {
            traj.rejected += 1;
            let factor = if norm.is_finite() { (0.9 * norm.powf(-0.2)).max(0.2) } else { 0.2 };
            h = step * factor;
            continue;
        }
        traj.steps += 1;
        t = if hit { target } else { t + step };
        u = next;
        k1 = k7;
        let grow = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).min(5.0) };
        h = step * grow;
        let state = ParticleState { x: u[..n].to_vec(), y: u[n..].to_vec(), t };
        if let Err(e) = state.check_distinct(controls.collision_threshold) {
            traj.stop = Some(e);
            return traj;
        }
        if hit {
            sample_index += 1;
            match diagnose(&state) {
                Ok(d) => traj.samples.push(d),
                Err(e) => {
                    traj.stop = Some(e);
                    return traj;
                }
            }
        }
    }
    traj
}

pub fn trajectory_csv_header(n: usize) -> String {
    let mut cols = vec!["t".to_string()];
    cols.extend((1..=n).map(|i| format!("x{i}")));
    cols.extend((1..=n).map(|i| format!("y{i}")));
    cols.push("H".into());
    cols.extend((1..=n).map(|i| format!("I{i}")));
    cols.push("rank_defect".into());
    cols.extend((1..=n).map(|i| format!("xbar{i}")));
    cols.extend((1..=n).map(|i| format!("ybar{i}")));
    cols.join(",")
}

pub fn trajectory_csv(n: usize, traj: &Trajectory) -> String {
    let mut out = trajectory_csv_header(n);
    out.push('\n');
    for s in &traj.samples {
        let vals = std::iter::once(&s.state.t)
            .chain(&s.state.x)
            .chain(&s.state.y)
            .chain(std::iter::once(&s.energy))
            .chain(&s.integrals)
            .chain(std::iter::once(&s.rank_defect))
            .chain(&s.xbar)
            .chain(&s.ybar);
        out.push_str(&vals.map(|v| format!("{v:?}")).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftSummary {
    pub samples: usize,
    pub t_final: f64,
    /// `max |H(t) - H(0)| / max(|H(0)|, 1)`
    pub energy_drift: f64,
    pub integral_drift: Vec<f64>,
    pub max_rank_defect: f64,
    pub xbar_drift: f64,
    /// per component, max residual of the least-squares line over `max(|ybar|, 1)`
    pub ybar_fit_residual: Vec<f64>,
    pub ybar_slope: Vec<f64>,
}

fn drift(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let mut it = values.clone();
    let Some(v0) = it.next() else { return 0.0 };
    let scale = v0.abs().max(1.0);
    values.map(|v| (v - v0).abs() / scale).fold(0.0, f64::max)
}

/// Least-squares line through `(t, v)`: `(slope, max relative residual)`.
pub fn affine_fit(t: &[f64], v: &[f64]) -> (f64, f64) {
    let m = t.len() as f64;
    if t.len() < 2 {
        return (0.0, 0.0);
    }
    let tm = t.iter().sum::<f64>() / m;
    let vm = v.iter().sum::<f64>() / m;
    let stt: f64 = t.iter().map(|a| (a - tm) * (a - tm)).sum();
    let stv: f64 = t.iter().zip(v).map(|(a, b)| (a - tm) * (b - vm)).sum();
    let slope = stv / stt;
    let scale = v.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let res = t.iter().zip(v).map(|(a, b)| (vm + slope * (a - tm) - b).abs()).fold(0.0, f64::max);
    (slope, res / scale)
}

pub fn summarize(traj: &Trajectory) -> DriftSummary {
    let s = &traj.samples;
    let n = s.first().map_or(0, |x| x.state.n());
    let ts: Vec<f64> = s.iter().map(|x| x.state.t).collect();
    let mut fit_res = Vec::new();
    let mut slopes = Vec::new();
    for k in 0..n {
        let v: Vec<f64> = s.iter().map(|x| x.ybar[k]).collect();
        let (sl, r) = affine_fit(&ts, &v);
        slopes.push(sl);
        fit_res.push(r);
    }
    DriftSummary {
        samples: s.len(),
        t_final: ts.last().copied().unwrap_or(0.0),
        energy_drift: drift(s.iter().map(|x| x.energy)),
        integral_drift: (0..n).map(|j| drift(s.iter().map(|x| x.integrals[j]))).collect(),
        max_rank_defect: s.iter().map(|x| x.rank_defect).fold(0.0, f64::max),
        xbar_drift: (0..n).map(|k| drift(s.iter().map(|x| x.xbar[k]))).fold(0.0, f64::max),
        ybar_fit_residual: fit_res,
        ybar_slope: slopes,
    }
}

pub fn preset_names(n: usize) -> &'static [&'static str] {
    match n {
        1 => &["free"],
        2 | 3 => &["spread"],
        _ => &[],
    }
}

pub fn preset(n: usize, name: &str) -> Result<ParticleState> {
    let (x, y) = match (n, name) {
        (1, "free") => (vec![0.0], vec![0.0]),
        (2, "spread") => (vec![-1.0, 5.0], vec![-0.2, 0.3]),
        (3, "spread") => (vec![-2.0, 4.0, 10.0], vec![-0.3, 0.05, 0.4]),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no preset {name:?} for n = {n}; available: {:?}",
                preset_names(n)
            )))
        }
    };
    ParticleState::new(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_values() {
        assert_eq!(hamiltonian(&ParticleState::new(vec![2.0], vec![3.0]).unwrap()).unwrap(), 7.0);
        let s = ParticleState::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(hamiltonian(&s).unwrap(), -5.0);
        let p = cm_matrices(&s).unwrap();
        assert!(rank_defect(&p, RANK_SHIFT) < 1e-12);
        assert!(rank_defect(&p, 1.0) > 0.1);
        assert!((integrals_of_motion(&s).unwrap()[0] + 5.0).abs() < 1e-14);
    }

    #[test]
    fn free_particle_closed_form() {
        let traj = integrate(&preset(1, "free").unwrap(), 2.0, &Controls::default());
        assert!(traj.stop.is_none());
        let last = traj.samples.last().unwrap();
        assert_eq!(last.state.t, 2.0);
        assert!((last.state.x[0] - 4.0).abs() < 1e-12);
        assert!((last.state.y[0] - 2.0).abs() < 1e-12);
        assert!((last.ybar[0] - 2.0).abs() < 1e-12);
        assert!((last.xbar[0] - 0.0).abs() < 1e-12);
    }

    #[test]
    fn collision_at_start() {
        let s = ParticleState::new(vec![1.0, 1.0], vec![0.0, 0.0]).unwrap();
        let traj = integrate(&s, 1.0, &Controls::default());
        assert!(matches!(traj.stop, Some(Error::Collision { i: 1, j: 2, t, .. }) if t == 0.0));
        assert!(traj.samples.is_empty());
        assert!(cm_matrices(&s).is_err());
    }

    #[test]
    fn spread_preset_conserves() {
        let traj = integrate(&preset(3, "spread").unwrap(), 5.0, &Controls::default());
        assert!(traj.stop.is_none(), "{:?}", traj.stop);
        let s = summarize(&traj);
        assert!(s.energy_drift < 1e-7, "{s:?}");
        assert!(s.integral_drift.iter().all(|d| *d < 1e-7), "{s:?}");
        assert!(s.max_rank_defect < 1e-7);
        assert!(s.xbar_drift < 1e-6, "{s:?}");
        assert!(s.ybar_fit_residual.iter().all(|r| *r < 1e-4), "{s:?}");
    }

    #[test]
    fn involution_twice() {
        let s = preset(3, "spread").unwrap();
        let p = cm_matrices(&s).unwrap();
        let q = involution(&involution(&p).unwrap()).unwrap();
        assert!((q.x - &p.x).amax() < 1e-12 && (q.z - &p.z).amax() < 1e-12);
        let bad = CMPair { x: DMatrix::identity(2, 2), z: DMatrix::identity(2, 2) };
        assert!(matches!(involution(&bad), Err(Error::RankOneViolation { .. })));
    }

    #[test]
    fn csv_header() {
        assert_eq!(trajectory_csv_header(2), "t,x1,x2,y1,y2,H,I1,I2,rank_defect,xbar1,xbar2,ybar1,ybar2");
    }
}
