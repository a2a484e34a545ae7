//! Sparse multivariate polynomials over `Rat`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order. The variable list doubles as the variable order:
//! the last variable is the most significant, so with `x1..xn, z1..zn`
//! we get `x1 < … < xn < z1 < … < zn`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{format_rat, rat, Rat};
use crate::error::{Error, Result};

/// Exponent vector. Also used as a derivative multi-index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn with(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }

    /// All multi-indices of length `len` with total degree `<= max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(len: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; len];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == cur.len() {
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_degree, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Multi-indices `gamma <= self` componentwise.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered, shared list of variable names.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// `x1..xn`.
    pub fn x(n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("x{i}")))
    }

    /// `x1..xn, z1..zn`.
    pub fn xz(n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("z{i}"))))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn to_vec(&self) -> Vec<String> {
        self.0.to_vec()
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

fn add_term(terms: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, rat(1))
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        add_term(&mut p.terms, Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::term(vars, Monomial::unit(vars.len(), i), rat(1))
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name}")))?;
        Ok(Self::var(vars, i))
    }

    pub fn term(vars: &Vars, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        add_term(&mut p.terms, m, c);
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            if m.len() != vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} for {} variables",
                    m.len(),
                    vars.len()
                )));
            }
            add_term(&mut p.terms, m, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn used_vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn check_same_vars(&self, other: &MPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() })
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    fn add_impl(&self, other: &MPoly, sign: bool) -> MPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), if sign { c.clone() } else { -c });
        }
        MPoly { vars: self.vars.clone(), terms }
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.vars);
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn arith(&self, other: &MPoly, kind: ArithKind) -> Result<MPoly> {
        self.check_same_vars(other)?;
        Ok(match kind {
            ArithKind::Add => self.add_impl(other, true),
            ArithKind::Sub => self.add_impl(other, false),
            ArithKind::Mul => self.mul_impl(other),
        })
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                add_term(&mut terms, m.with(i, e - 1), c * rat(e as i64));
            }
        }
        MPoly { vars: self.vars.clone(), terms }
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(super::rat::to_f64(c), |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Coefficients with respect to variable `i`: `result[k]` multiplies `v^k`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(&self.vars); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            out[k].terms.insert(m.with(i, 0), c.clone());
        }
        out
    }

    pub fn lead_coeff_in(&self, i: usize) -> MPoly {
        let d = self.degree_in(i);
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[i] == d {
                out.terms.insert(m.with(i, 0), c.clone());
            }
        }
        out
    }

    pub fn mul_var_pow(&self, i: usize, k: u32) -> MPoly {
        if k == 0 {
            return self.clone();
        }
        let mut m = Monomial::one(self.vars.len());
        m.0[i] = k;
        self.mul_monomial(&m, &rat(1))
    }

    /// Splits `self = content * primitive` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Rat, MPoly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let mut num_gcd = num_bigint::BigInt::zero();
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Multivariate division by leading terms: `self = q * divisor + r`.
    pub fn div_rem(&self, divisor: &MPoly) -> (MPoly, MPoly) {
        let (lm, lc) = divisor.leading().expect("division by zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = MPoly::zero(&self.vars);
        let mut r = MPoly::zero(&self.vars);
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(t) => {
                    let f = &c / &lc;
                    p = &p - &divisor.mul_monomial(&t, &f);
                    add_term(&mut q.terms, t, f);
                }
                None => {
                    p.terms.remove(&m);
                    add_term(&mut r.terms, m, c);
                }
            }
        }
        (q, r)
    }

    /// Quotient if `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &MPoly) -> Option<MPoly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().expect("nonzero");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = MPoly::zero(&self.vars);
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = m.div(&lm)?;
            let f = &c / &lc;
            p = &p - &divisor.mul_monomial(&t, &f);
            add_term(&mut q.terms, t, f);
        }
        Some(q)
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all over `target`).
    pub fn map_vars(&self, target: &Vars, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.vars.len());
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        let mut acc = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial over a variable list containing all of its variables.
    pub fn extend_to(&self, target: &Vars) -> Result<MPoly> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let idx: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|v| {
                target.index_of(v).ok_or_else(|| Error::VarMismatch {
                    left: self.vars.to_vec(),
                    right: target.to_vec(),
                })
            })
            .collect::<Result<_>>()?;
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (k, &j) in idx.iter().enumerate() {
                e[j] = m.0[k];
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur; errors if a dropped one is used.
    pub fn restrict_to(&self, target: &Vars) -> Result<MPoly> {
        let mut out = MPoly::zero(target);
        let idx: Vec<Option<usize>> = self.vars.names().iter().map(|v| target.index_of(v)).collect();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (k, j) in idx.iter().enumerate() {
                match j {
                    Some(j) => e[*j] = m.0[k],
                    None if m.0[k] > 0 => {
                        return Err(Error::VarMismatch { left: self.vars.to_vec(), right: target.to_vec() })
                    }
                    None => {}
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Moves the exponent of variable `i` to position `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; m.len()];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.0[i];
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Same exponents, different names (lengths must agree).
    pub fn rename(&self, vars: &Vars) -> MPoly {
        assert_eq!(vars.len(), self.vars.len());
        MPoly { vars: vars.clone(), terms: self.terms.clone() }
    }
}

pub fn mpoly_arith(a: &MPoly, b: &MPoly, kind: ArithKind) -> Result<MPoly> {
    a.arith(b, kind)
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.arith(rhs, ArithKind::Add).expect("aligned variables")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.arith(rhs, ArithKind::Sub).expect("aligned variables")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.arith(rhs, ArithKind::Mul).expect("aligned variables")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // display order: by degree, then earlier variables first
        let mut shown: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        shown.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0 .0.cmp(&a.0 .0)));
        for (k, (m, c)) in shown.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(if a.denom().is_one() { a.numer().to_string() } else { format_rat(&a) });
            }
            for (name, &e) in self.vars.names().iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::ratio;

    fn x(vars: &Vars, i: usize) -> MPoly {
        MPoly::var(vars, i)
    }

    #[test]
    fn difference_of_squares() {
        let v = Vars::x(2);
        let p = &(&x(&v, 0) + &x(&v, 1)) * &(&x(&v, 0) - &x(&v, 1));
        let expect = &x(&v, 0).pow(2) - &x(&v, 1).pow(2);
        assert_eq!(p, expect);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn zero_absorbs() {
        let v = Vars::x(2);
        let p = &x(&v, 0).pow(3) + &MPoly::constant(&v, ratio(5, 2));
        assert!((&p * &MPoly::zero(&v)).is_zero());
    }

    #[test]
    fn cube_matches_naive_expansion() {
        // naive oracle: (a - b)^3 = sum_k C(3,k) a^k (-b)^(3-k)
        let v = Vars::x(2);
        let d = &x(&v, 0) - &x(&v, 1);
        let p = &(&d * &d) * &d;
        let mut naive = MPoly::zero(&v);
        for k in 0..=3u32 {
            let c = rat(crate::algebra::rat::binomial(3, k) as i64) * rat(if (3 - k) % 2 == 0 { 1 } else { -1 });
            naive = &naive + &MPoly::term(&v, Monomial::new(vec![k, 3 - k]), c);
        }
        assert_eq!(p, naive);
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn mismatched_vars_error() {
        let a = MPoly::var(&Vars::x(2), 0);
        let b = MPoly::var(&Vars::xz(1), 0);
        assert!(matches!(mpoly_arith(&a, &b, ArithKind::Add), Err(Error::VarMismatch { .. })));
    }

    #[test]
    fn grlex_order_puts_later_vars_higher() {
        let a = Monomial::new(vec![1, 0]);
        let b = Monomial::new(vec![0, 1]);
        assert!(a < b);
        assert!(Monomial::new(vec![2, 0]) > Monomial::new(vec![0, 1]));
        let all = Monomial::all_up_to(2, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn division_and_exactness() {
        let v = Vars::x(2);
        let a = &x(&v, 0).pow(2) - &x(&v, 1).pow(2);
        let b = &x(&v, 0) - &x(&v, 1);
        assert_eq!(a.exact_div(&b).unwrap(), &x(&v, 0) + &x(&v, 1));
        let c = &x(&v, 0) + &MPoly::one(&v);
        assert!(a.exact_div(&c).is_none());
        let (q, r) = a.div_rem(&c);
        assert_eq!(&(&q * &c) + &r, a);
    }

    #[test]
    fn primitive_part() {
        let v = Vars::x(1);
        let p = &x(&v, 0).scale(&ratio(-4, 3)) + &MPoly::constant(&v, ratio(2, 9));
        let (c, pp) = p.primitive();
        assert_eq!(pp.scale(&c), p);
        assert!(pp.leading().unwrap().1 > &Rat::zero());
        assert_eq!(c, ratio(-2, 9));
    }

    #[test]
    fn display() {
        let v = Vars::x(2);
        let p = &(&x(&v, 0).pow(2) - &x(&v, 1).scale(&rat(2))) + &MPoly::constant(&v, ratio(1, 2));
        assert_eq!(p.to_string(), "x1^2 - 2*x2 + 1/2");
    }
}
