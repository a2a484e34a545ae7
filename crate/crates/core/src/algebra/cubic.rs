//! The cubic extension `F(kappa)` with `kappa^3 = 1/n` over rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::mpoly::Vars;
use super::ratfn::{swap_xz, RatFn};
use super::rat::{ratio, Rat};
use crate::error::{Error, Result};

/// `a0 + a1*kappa + a2*kappa^2` with `kappa^3 = 1/n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CubicExt {
    n: u32,
    c: [RatFn; 3],
}

impl CubicExt {
    pub fn new(n: u32, c: [RatFn; 3]) -> Result<CubicExt> {
        if n == 0 {
            return Err(Error::InvalidArgument("cubic extension needs n >= 1".into()));
        }
        c[0].check_same_vars(&c[1])?;
        c[0].check_same_vars(&c[2])?;
        Ok(CubicExt { n, c })
    }

    pub fn from_base(n: u32, a: RatFn) -> CubicExt {
        let z = RatFn::zero(a.vars());
        CubicExt { n, c: [a, z.clone(), z] }
    }

    pub fn zero(n: u32, vars: &Vars) -> CubicExt {
        CubicExt::from_base(n, RatFn::zero(vars))
    }

    pub fn one(n: u32, vars: &Vars) -> CubicExt {
        CubicExt::from_base(n, RatFn::one(vars))
    }

    pub fn kappa(n: u32, vars: &Vars) -> CubicExt {
        let z = RatFn::zero(vars);
        CubicExt { n, c: [z.clone(), RatFn::one(vars), z] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn components(&self) -> &[RatFn; 3] {
        &self.c
    }

    pub fn vars(&self) -> &Vars {
        self.c[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RatFn::is_zero)
    }

    /// Base-field value when the kappa components vanish.
    pub fn as_base(&self) -> Option<&RatFn> {
        (self.c[1].is_zero() && self.c[2].is_zero()).then_some(&self.c[0])
    }

    fn check(&self, other: &CubicExt) {
        assert_eq!(self.n, other.n, "cubic extensions over different n");
    }

    pub fn scale_base(&self, a: &RatFn) -> CubicExt {
        CubicExt { n: self.n, c: [&self.c[0] * a, &self.c[1] * a, &self.c[2] * a] }
    }

    pub fn scale(&self, r: &Rat) -> CubicExt {
        CubicExt { n: self.n, c: [self.c[0].scale(r), self.c[1].scale(r), self.c[2].scale(r)] }
    }

    /// Componentwise derivative; kappa is a constant.
    pub fn derivative(&self, i: usize) -> CubicExt {
        CubicExt { n: self.n, c: [self.c[0].derivative(i), self.c[1].derivative(i), self.c[2].derivative(i)] }
    }

    pub fn swap_xz(&self) -> Result<CubicExt> {
        Ok(CubicExt { n: self.n, c: [swap_xz(&self.c[0])?, swap_xz(&self.c[1])?, swap_xz(&self.c[2])?] })
    }

    pub fn extend_to(&self, vars: &Vars) -> Result<CubicExt> {
        Ok(CubicExt { n: self.n, c: [self.c[0].extend_to(vars)?, self.c[1].extend_to(vars)?, self.c[2].extend_to(vars)?] })
    }

    /// Numeric value with `kappa = n^(-1/3)`.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        let k = (self.n as f64).powf(-1.0 / 3.0);
        Ok(self.c[0].eval_f64(point)? + k * self.c[1].eval_f64(point)? + k * k * self.c[2].eval_f64(point)?)
    }
}

impl Add for &CubicExt {
    type Output = CubicExt;
    fn add(self, rhs: &CubicExt) -> CubicExt {
        self.check(rhs);
        CubicExt { n: self.n, c: [&self.c[0] + &rhs.c[0], &self.c[1] + &rhs.c[1], &self.c[2] + &rhs.c[2]] }
    }
}

impl Sub for &CubicExt {
    type Output = CubicExt;
    fn sub(self, rhs: &CubicExt) -> CubicExt {
        self.check(rhs);
        CubicExt { n: self.n, c: [&self.c[0] - &rhs.c[0], &self.c[1] - &rhs.c[1], &self.c[2] - &rhs.c[2]] }
    }
}

impl Neg for &CubicExt {
    type Output = CubicExt;
    fn neg(self) -> CubicExt {
        CubicExt { n: self.n, c: [-&self.c[0], -&self.c[1], -&self.c[2]] }
    }
}

impl Mul for &CubicExt {
    type Output = CubicExt;
    fn mul(self, rhs: &CubicExt) -> CubicExt {
        self.check(rhs);
        let [a0, a1, a2] = &self.c;
        let [b0, b1, b2] = &rhs.c;
        let inv_n = ratio(1, self.n as i64);
        let prod = |a: &RatFn, b: &RatFn| if a.is_zero() || b.is_zero() { RatFn::zero(a.vars()) } else { a * b };
        // kappa^3 = 1/n, kappa^4 = kappa/n
        let c0 = &prod(a0, b0) + &(&prod(a1, b2) + &prod(a2, b1)).scale(&inv_n);
        let c1 = &(&prod(a0, b1) + &prod(a1, b0)) + &prod(a2, b2).scale(&inv_n);
        let c2 = &(&prod(a0, b2) + &prod(a1, b1)) + &prod(a2, b0);
        CubicExt { n: self.n, c: [c0, c1, c2] }
    }
}

impl fmt::Display for CubicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})*k"),
                _ => format!("({c})*k^2"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for CubicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubicExt[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn kappa_cubed_is_one_over_n() {
        for n in 1..=4 {
            let v = Vars::xz(1);
            let k = CubicExt::kappa(n, &v);
            let k3 = &(&k * &k) * &k;
            assert_eq!(k3, CubicExt::from_base(n, RatFn::constant(&v, ratio(1, n as i64))));
        }
    }

    #[test]
    fn numeric_value() {
        let v = Vars::xz(1);
        let k = CubicExt::kappa(2, &v);
        let val = (&k * &k).eval_f64(&[0.0, 0.0]).unwrap();
        assert!((val - 2f64.powf(-2.0 / 3.0)).abs() < 1e-15);
        let c = CubicExt::from_base(2, RatFn::constant(&v, rat(3)));
        assert_eq!(c.eval_f64(&[1.0, 1.0]).unwrap(), 3.0);
    }
}
