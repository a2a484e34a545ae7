//! Rational functions whose denominators are products of fixed linear forms,
//! kept unreduced as `num / prod l^e`.
//!
//! This is the working ring of the ansatz solver: no gcds, derivatives raise
//! exponents by one, and equality with zero is a numerator test.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::algebra::{MPoly, RatFn, Vars};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Loc {
    pub num: MPoly,
    pub exps: Vec<u32>,
}

impl Loc {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// The forms `x_i - x_j` (i < j) for `n >= 2`, or `x_1` when `n = 1`.
pub struct LocalRing {
    vars: Vars,
    forms: Vec<MPoly>,
    /// `grads[f][k]` is the constant `d_k` of form `f`.
    grads: Vec<Vec<i64>>,
    lift_cache: RefCell<HashMap<Vec<u32>, MPoly>>,
}

impl LocalRing {
    pub fn new(n: usize) -> LocalRing {
        let vars = Vars::x(n);
        let mut forms = Vec::new();
        let mut grads = Vec::new();
        if n == 1 {
            forms.push(MPoly::var(&vars, 0));
            grads.push(vec![1]);
        }
        for i in 0..n {
            for j in i + 1..n {
                forms.push(&MPoly::var(&vars, i) - &MPoly::var(&vars, j));
                let mut g = vec![0; n];
                g[i] = 1;
                g[j] = -1;
                grads.push(g);
            }
        }
        LocalRing { vars, forms, grads, lift_cache: RefCell::new(HashMap::new()) }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn forms(&self) -> &[MPoly] {
        &self.forms
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    /// `prod l^e`, cached.
    pub fn product(&self, exps: &[u32]) -> MPoly {
        if let Some(p) = self.lift_cache.borrow().get(exps) {
            return p.clone();
        }
        let mut p = MPoly::one(&self.vars);
        for (f, &e) in self.forms.iter().zip(exps) {
            if e > 0 {
                p = &p * &f.pow(e);
            }
        }
        self.lift_cache.borrow_mut().insert(exps.to_vec(), p.clone());
        p
    }

    pub fn from_poly(&self, p: MPoly) -> Loc {
        Loc { num: p, exps: vec![0; self.forms.len()] }
    }

    /// Factors the denominator over the linear forms.
    pub fn from_ratfn(&self, f: &RatFn) -> Result<Loc> {
        f.check_same_vars(&RatFn::zero(&self.vars))?;
        let mut den = f.den().clone();
        let mut exps = vec![0; self.forms.len()];
        for (k, form) in self.forms.iter().enumerate() {
            while let Some(q) = den.exact_div(form) {
                den = q;
                exps[k] += 1;
            }
        }
        match den.as_constant() {
            Some(c) => Ok(Loc { num: f.num().scale(&c.recip()), exps }),
            None => Err(Error::UnsupportedDenominator(format!("{} has factor {den}", f.den()))),
        }
    }

    pub fn to_ratfn(&self, a: &Loc) -> RatFn {
        RatFn::new(a.num.clone(), self.product(&a.exps)).expect("forms are nonzero")
    }

    pub fn mul(&self, a: &Loc, b: &Loc) -> Loc {
        Loc { num: &a.num * &b.num, exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect() }
    }

    /// `d_k (num / prod l^e)`, raising the exponent of every form that
    /// depends on `x_k` and appears in the denominator.
    pub fn derivative(&self, a: &Loc, k: usize) -> Loc {
        let hit: Vec<usize> = (0..self.forms.len()).filter(|&f| a.exps[f] > 0 && self.grads[f][k] != 0).collect();
        if hit.is_empty() {
            return Loc { num: a.num.derivative(k), exps: a.exps.clone() };
        }
        let mut bump = vec![0; self.forms.len()];
        for &f in &hit {
            bump[f] = 1;
        }
        let mut num = &a.num.derivative(k) * &self.product(&bump);
        for &f in &hit {
            let mut others = bump.clone();
            others[f] = 0;
            let c = crate::algebra::rat(a.exps[f] as i64 * self.grads[f][k]);
            num = &num - &(&a.num * &self.product(&others)).scale(&c);
        }
        Loc { num, exps: a.exps.iter().zip(&bump).map(|(e, b)| e + b).collect() }
    }

    /// Numerator of `a` over `prod l^target`; `target >= a.exps`.
    pub fn lift(&self, a: &Loc, target: &[u32]) -> MPoly {
        let diff: Vec<u32> = target.iter().zip(&a.exps).map(|(t, e)| t - e).collect();
        if diff.iter().all(|&d| d == 0) {
            a.num.clone()
        } else {
            &a.num * &self.product(&diff)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn derivative_matches_ratfn() {
        let ring = LocalRing::new(3);
        let v = ring.vars().clone();
        let num = &(&MPoly::var(&v, 0) * &MPoly::var(&v, 2)) + &MPoly::constant(&v, rat(3));
        let a = Loc { num, exps: vec![2, 0, 1] };
        for k in 0..3 {
            let got = ring.to_ratfn(&ring.derivative(&a, k));
            assert_eq!(got, ring.to_ratfn(&a).derivative(k));
        }
    }

    #[test]
    fn factor_denominators() {
        let ring = LocalRing::new(2);
        let v = ring.vars().clone();
        let d = &MPoly::var(&v, 0) - &MPoly::var(&v, 1);
        let f = RatFn::new(MPoly::constant(&v, rat(4)), d.pow(2)).unwrap();
        let a = ring.from_ratfn(&f).unwrap();
        assert_eq!(a.exps, vec![2]);
        assert_eq!(ring.to_ratfn(&a), f);
        let bad = RatFn::new(MPoly::one(&v), MPoly::var(&v, 0)).unwrap();
        assert!(matches!(ring.from_ratfn(&bad), Err(Error::UnsupportedDenominator(_))));
    }
}
