//! Normalized multivariate rational functions.
//!
//! Canonical form: `gcd(num, den) = 1` and `den` has coprime integer
//! coefficients with a positive leading coefficient. Structural equality is
//! therefore equality of functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{MPoly, Vars};
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

/// Builds the canonical representative of `num / den`.
pub fn ratfn_normalize(num: MPoly, den: MPoly) -> Result<RatFn> {
    num.check_same_vars(&den)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RatFn::zero(num.vars()));
    }
    if let Some(c) = den.as_constant() {
        let vars = num.vars().clone();
        return Ok(RatFn { num: num.scale(&c.recip()), den: MPoly::one(&vars) });
    }
    let (num, den) = if num.is_constant() {
        (num, den)
    } else {
        let g = gcd(&num, &den);
        if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        }
    };
    Ok(RatFn::finish(num, den))
}

impl RatFn {
    /// Fixes the scalar normalization of an already coprime pair.
    fn finish(num: MPoly, den: MPoly) -> RatFn {
        if let Some(c) = den.as_constant() {
            let vars = num.vars().clone();
            return RatFn { num: num.scale(&c.recip()), den: MPoly::one(&vars) };
        }
        let (c, den) = den.primitive();
        RatFn { num: num.scale(&c.recip()), den }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<RatFn> {
        ratfn_normalize(num, den)
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        let vars = p.vars().clone();
        RatFn { num: p, den: MPoly::one(&vars) }
    }

    pub fn zero(vars: &Vars) -> RatFn {
        RatFn { num: MPoly::zero(vars), den: MPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> RatFn {
        RatFn::constant(vars, rat(1))
    }

    pub fn constant(vars: &Vars, c: Rat) -> RatFn {
        RatFn { num: MPoly::constant(vars, c), den: MPoly::one(vars) }
    }

    pub fn var(vars: &Vars, i: usize) -> RatFn {
        RatFn::from_poly(MPoly::var(vars, i))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn check_same_vars(&self, other: &RatFn) -> Result<()> {
        self.num.check_same_vars(&other.num)
    }

    pub fn try_add(&self, other: &RatFn) -> Result<RatFn> {
        self.check_same_vars(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return ratfn_normalize(&self.num + &other.num, self.den.clone());
        }
        if self.den.is_one() {
            return Ok(RatFn::finish(&(&self.num * &other.den) + &other.num, other.den.clone()));
        }
        if other.den.is_one() {
            return Ok(RatFn::finish(&self.num + &(&other.num * &self.den), self.den.clone()));
        }
        let g = gcd(&self.den, &other.den);
        let (sd, od) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.exact_div(&g).expect("gcd divides"), other.den.exact_div(&g).expect("gcd divides"))
        };
        let num = &(&self.num * &od) + &(&other.num * &sd);
        let den = &sd * &other.den;
        if g.is_one() {
            // coprime denominators: the sum is already reduced
            Ok(RatFn::finish(num, den))
        } else {
            ratfn_normalize(num, den)
        }
    }

    pub fn try_mul(&self, other: &RatFn) -> Result<RatFn> {
        self.check_same_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFn::zero(self.vars()));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(RatFn::from_poly(&self.num * &other.num));
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let div = |p: &MPoly, g: &MPoly| if g.is_one() { p.clone() } else { p.exact_div(g).expect("gcd divides") };
        let num = &div(&self.num, &g1) * &div(&other.num, &g2);
        let den = &div(&self.den, &g2) * &div(&other.den, &g1);
        Ok(RatFn::finish(num, den))
    }

    pub fn recip(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::finish(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &RatFn) -> Result<RatFn> {
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.vars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFn {
        self * &RatFn::from_poly(p.clone())
    }

    pub fn pow(&self, k: u32) -> RatFn {
        // coprime stays coprime under powers
        RatFn::finish(self.num.pow(k), self.den.pow(k))
    }

    pub fn derivative(&self, i: usize) -> RatFn {
        if self.den.is_one() {
            return RatFn::from_poly(self.num.derivative(i));
        }
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return ratfn_normalize(self.num.derivative(i), self.den.clone()).expect("nonzero den");
        }
        // (n/d)' = (n' d - n d') / d^2 ; cancel g = gcd(d, d') first
        let g = gcd(&self.den, &dd);
        let d_over_g = self.den.exact_div(&g).expect("gcd divides");
        let dd_over_g = dd.exact_div(&g).expect("gcd divides");
        let num = &(&self.num.derivative(i) * &d_over_g) - &(&self.num * &dd_over_g);
        let den = &self.den * &d_over_g;
        ratfn_normalize(num, den).expect("nonzero den")
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Pole { factor: pole_factor(&self.den, point) });
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        let d = self.den.eval_f64(point);
        if d == 0.0 || !d.is_finite() {
            let factor = match point.iter().map(|&x| super::rat::from_f64(x)).collect::<Result<Vec<_>>>() {
                Ok(p) => pole_factor(&self.den, &p),
                Err(_) => self.den.to_string(),
            };
            return Err(Error::Pole { factor });
        }
        Ok(self.num.eval_f64(point) / d)
    }

    pub fn extend_to(&self, target: &Vars) -> Result<RatFn> {
        Ok(RatFn { num: self.num.extend_to(target)?, den: self.den.extend_to(target)? })
    }

    pub fn restrict_to(&self, target: &Vars) -> Result<RatFn> {
        Ok(RatFn { num: self.num.restrict_to(target)?, den: self.den.restrict_to(target)? })
    }

    pub fn map_vars(&self, target: &Vars, images: &[MPoly]) -> Result<RatFn> {
        ratfn_normalize(self.num.map_vars(target, images), self.den.map_vars(target, images))
    }

    pub fn permute_vars(&self, perm: &[usize]) -> RatFn {
        RatFn::finish(self.num.permute_vars(perm), self.den.permute_vars(perm))
    }

    pub fn rename(&self, vars: &Vars) -> RatFn {
        RatFn { num: self.num.rename(vars), den: self.den.rename(vars) }
    }

    /// True when no variable with index in `idx` occurs.
    pub fn free_of(&self, idx: impl Fn(usize) -> bool) -> bool {
        let un = self.num.used_vars();
        let ud = self.den.used_vars();
        (0..un.len()).filter(|&i| idx(i)).all(|i| !un[i] && !ud[i])
    }
}

/// Sum of many terms; terms sharing a denominator are added as numerators
/// first, so only distinct denominators pay for a gcd.
pub fn ratfn_sum(vars: &Vars, terms: impl IntoIterator<Item = RatFn>) -> RatFn {
    let mut groups: Vec<(MPoly, MPoly)> = Vec::new();
    for t in terms {
        if t.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|(d, _)| *d == t.den) {
            Some((_, num)) => *num = &*num + &t.num,
            None => groups.push((t.den, t.num)),
        }
    }
    let mut acc = RatFn::zero(vars);
    for (den, num) in groups {
        if !num.is_zero() {
            acc = &acc + &ratfn_normalize(num, den).expect("nonzero denominator");
        }
    }
    acc
}

/// Evaluates at a named point; every variable must be bound.
pub fn ratfn_eval(f: &RatFn, point: &BTreeMap<String, Rat>) -> Result<Rat> {
    let values = f
        .vars()
        .names()
        .iter()
        .map(|v| point.get(v).cloned().ok_or_else(|| Error::InvalidArgument(format!("unbound variable {v}"))))
        .collect::<Result<Vec<_>>>()?;
    f.eval(&values)
}

/// Names a vanishing factor of `den` at `point`: the first simple
/// difference or coordinate that divides `den` and vanishes there.
fn pole_factor(den: &MPoly, point: &[Rat]) -> String {
    let vars = den.vars();
    let n = vars.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            candidates.push(&MPoly::var(vars, i) - &MPoly::var(vars, j));
        }
    }
    for i in 0..n {
        candidates.push(MPoly::var(vars, i));
    }
    for c in candidates {
        if c.eval(point).is_ok_and(|v| v.is_zero()) && den.exact_div(&c).is_some() {
            return c.to_string();
        }
    }
    den.to_string()
}

/// Permutation exchanging `x_i` and `z_i`, if `vars` is exactly `x1..xn, z1..zn`.
pub fn xz_swap_perm(vars: &Vars) -> Result<Vec<usize>> {
    let len = vars.len();
    if len % 2 != 0 || *vars != Vars::xz(len / 2) {
        return Err(Error::NotPaired(vars.to_vec()));
    }
    let n = len / 2;
    Ok((0..len).map(|i| if i < n { i + n } else { i - n }).collect())
}

/// Renames every `x_i` to `z_i` and back.
pub fn swap_xz(f: &RatFn) -> Result<RatFn> {
    let perm = xz_swap_perm(f.vars())?;
    Ok(f.permute_vars(&perm))
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.try_add(rhs).expect("aligned variables")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self.try_add(&-rhs).expect("aligned variables")
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        self.try_mul(rhs).expect("aligned variables")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 && self.num.as_constant().is_some() {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl RatFn {
    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}
