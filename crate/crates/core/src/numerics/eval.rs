//! Point values of the eigenfunctions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::airy_ai;
use crate::algebra::RatFn;
use crate::eigenring::{bispectral_symbol, tilde_function, Base, RiccatiFun};
use crate::error::{Error, Result};
use crate::intertwiner::intertwiner_for;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumFn {
    Psi,
    Sigma,
    PsiTilde,
    SigmaTilde,
}

impl NumFn {
    pub fn id(self) -> &'static str {
        match self {
            NumFn::Psi => "psi",
            NumFn::Sigma => "sigma",
            NumFn::PsiTilde => "psi_tilde",
            NumFn::SigmaTilde => "sigma_tilde",
        }
    }

    pub fn parse(s: &str) -> Result<NumFn> {
        match s {
            "psi" => Ok(NumFn::Psi),
            "sigma" => Ok(NumFn::Sigma),
            "psi_tilde" => Ok(NumFn::PsiTilde),
            "sigma_tilde" => Ok(NumFn::SigmaTilde),
            _ => Err(Error::InvalidArgument(format!("unknown function {s:?}"))),
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, NumFn::PsiTilde | NumFn::SigmaTilde)
    }
}

pub fn kappa_f64(n: usize) -> f64 {
    (n as f64).powf(-1.0 / 3.0)
}

/// `exp((1/n) sum_{i<j} (x_i - x_j)(z_i - z_j)) Ai(kappa sum (x_i + z_i))`
pub fn psi_value(x: &[f64], z: &[f64]) -> Result<f64> {
    let n = x.len();
    let mut expo = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            expo += (x[i] - x[j]) * (z[i] - z[j]);
        }
    }
    let s: f64 = x.iter().chain(z).sum();
    Ok((expo / n as f64).exp() * airy_ai(kappa_f64(n) * s)?.ai)
}

pub fn sigma_value(x: &[f64], z: &[f64]) -> Result<f64> {
    x.iter().zip(z).try_fold(1.0, |acc, (a, b)| Ok(acc * airy_ai(a + b)?.ai))
}

enum Prepared {
    Symbol(RatFn),
    Ring(RiccatiFun),
}

fn prepared(f: NumFn, n: usize) -> Result<Arc<Prepared>> {
    static CACHE: OnceLock<Mutex<HashMap<(NumFn, usize), Arc<Prepared>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(f, n)) {
        return Ok(p.clone());
    }
    let p = Arc::new(match f {
        NumFn::PsiTilde => Prepared::Symbol(bispectral_symbol(&intertwiner_for(n)?)?),
        NumFn::SigmaTilde => Prepared::Ring(tilde_function(Base::Sigma, n)?),
        _ => unreachable!("plain functions need no preparation"),
    });
    cache.lock().unwrap().insert((f, n), p.clone());
    Ok(p)
}

fn check_distinct(name: &str, v: &[f64]) -> Result<()> {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return Err(Error::Pole { factor: format!("{name}{} - {name}{}", i + 1, j + 1) });
            }
        }
    }
    Ok(())
}

/// `psi_tilde` is the bispectral symbol times `psi`; `sigma_tilde` is the
/// ring expansion of the intertwiner applied to `sigma`.
pub fn eval_function(f: NumFn, n: usize, x: &[f64], z: &[f64]) -> Result<f64> {
    if n == 0 || x.len() != n || z.len() != n {
        return Err(Error::Dimension(format!("point of length {}/{} for n = {n}", x.len(), z.len())));
    }
    if f.is_tilde() {
        check_distinct("x", x)?;
        check_distinct("z", z)?;
    }
    match f {
        NumFn::Psi => psi_value(x, z),
        NumFn::Sigma => sigma_value(x, z),
        NumFn::PsiTilde | NumFn::SigmaTilde => match &*prepared(f, n)? {
            Prepared::Symbol(s) => {
                let point: Vec<f64> = x.iter().chain(z).copied().collect();
                Ok(s.eval_f64(&point)? * psi_value(x, z)?)
            }
            Prepared::Ring(r) => r.eval_f64(x, z),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_psi_is_airy() {
        let v = eval_function(NumFn::Psi, 1, &[0.3], &[-0.1]).unwrap();
        assert_eq!(v, airy_ai(0.2).unwrap().ai);
    }

    #[test]
    fn tilde_poles_name_the_pair() {
        let e = eval_function(NumFn::PsiTilde, 3, &[0.1, 0.5, 0.1], &[1.0, 2.0, 3.0]).unwrap_err();
        assert_eq!(e, Error::Pole { factor: "x1 - x3".into() });
        assert!(eval_function(NumFn::PsiTilde, 1, &[0.1], &[0.2]).is_err());
    }

    #[test]
    fn psi_tilde_routes_agree() {
        let ring = tilde_function(Base::Psi, 2).unwrap();
        let (x, z) = ([0.3, -0.8], [-1.1, 0.4]);
        let a = eval_function(NumFn::PsiTilde, 2, &x, &z).unwrap();
        let b = ring.eval_f64(&x, &z).unwrap();
        assert!((a - b).abs() <= 1e-13 * a.abs());
    }
}
