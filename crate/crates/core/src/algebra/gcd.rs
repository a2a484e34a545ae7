//! Multivariate gcd over Q.
//!
//! Content extraction with respect to a main variable, then a primitive
//! pseudo-remainder sequence in that variable. Coefficient polynomials are
//! handled recursively. Fine for the small degrees that occur here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Monomial};
use super::rat::{rat, Rat};

/// Gcd normalized to coprime integer coefficients and a positive leading
/// coefficient. `gcd(0, 0) = 0`; coprime inputs give `1`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.vars());
    }
    let (_, a) = a.primitive();
    let (_, b) = b.primitive();
    gcd_primitive(&a, &b)
}

fn gcd_primitive(a: &MPoly, b: &MPoly) -> MPoly {
    if a == b {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.vars());
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    let (big, small) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    if big.exact_div(small).is_some() {
        return small.clone();
    }

    let ua = a.used_vars();
    let ub = b.used_vars();
    for v in 0..ua.len() {
        if ua[v] && !ub[v] {
            return gcd(&content_in(a, v), b);
        }
        if ub[v] && !ua[v] {
            return gcd(a, &content_in(b, v));
        }
    }

    // main variable: the shared one of least degree keeps the PRS short
    let v = (0..ua.len())
        .filter(|&v| ua[v])
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomials use some variable");

    if coprime_in(a, b, v) {
        return gcd(&content_in(a, v), &content_in(b, v));
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g.primitive().1;
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    (&c * &g).primitive().1
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
pub fn content_in(p: &MPoly, v: usize) -> MPoly {
    let mut acc = MPoly::zero(p.vars());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return MPoly::one(p.vars());
        }
    }
    acc
}

fn primitive_part_in(p: &MPoly, v: usize) -> MPoly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").primitive().1
}

fn primitive_prs(a: MPoly, b: MPoly, v: usize) -> MPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    if g.degree_in(v) == 0 {
        return MPoly::one(f.vars());
    }
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return g.primitive().1;
        }
        if r.degree_in(v) == 0 {
            return MPoly::one(f.vars());
        }
        f = g;
        g = primitive_part_in(&r, v);
    }
}

/// Sufficient test for `deg_v gcd(a, b) = 0`: specialize every other
/// variable at a point where both leading coefficients survive and take the
/// univariate gcd. Specialization can only raise the gcd degree.
fn coprime_in(a: &MPoly, b: &MPoly, v: usize) -> bool {
    const POINTS: [i64; 8] = [3, -7, 11, 5, -13, 17, -2, 19];
    let nv = a.vars().len();
    for attempt in 0..3 {
        let point: Vec<Rat> =
            (0..nv).map(|i| rat(POINTS[(i + 3 * attempt) % POINTS.len()] + attempt as i64)).collect();
        let (Some(ua), Some(ub)) = (specialize(a, v, &point), specialize(b, v, &point)) else { continue };
        return univariate_gcd_degree(ua, ub) == 0;
    }
    false
}

/// Dense coefficients in `v` after substituting `point` elsewhere; `None`
/// when the leading coefficient vanishes.
fn specialize(p: &MPoly, v: usize, point: &[Rat]) -> Option<Vec<Rat>> {
    let d = p.degree_in(v) as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (m, k) in p.terms() {
        let mut t = k.clone();
        for (i, &e) in m.exps().iter().enumerate() {
            if i != v && e > 0 {
                t *= num_traits::pow(point[i].clone(), e as usize);
            }
        }
        c[m.exps()[v] as usize] += t;
    }
    (!c[d].is_zero()).then_some(c)
}

fn univariate_gcd_degree(mut f: Vec<Rat>, mut g: Vec<Rat>) -> usize {
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        while g.last().is_some_and(Zero::is_zero) {
            g.pop();
        }
        if g.is_empty() {
            return f.len().saturating_sub(1);
        }
        if g.len() == 1 {
            return 0;
        }
        let lg = g.last().unwrap().clone();
        while f.len() >= g.len() {
            let q = f.last().unwrap() / &lg;
            let shift = f.len() - g.len();
            for (i, c) in g.iter().enumerate() {
                f[shift + i] -= &q * c;
            }
            f.pop();
            while f.last().is_some_and(Zero::is_zero) {
                f.pop();
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
}

/// Heuristic gcd of integer polynomials: evaluate one variable at a large
/// integer, recurse, and read the answer back from the balanced base-`xi`
/// digits. Accepted only when it divides both inputs; `None` means give up.
fn heuristic_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let vars = a.vars();
    let (ua, ub) = (a.used_vars(), b.used_vars());
    let Some(v) = (0..vars.len()).rev().find(|&i| ua[i] || ub[i]) else {
        let (x, y) = (a.as_constant()?, b.as_constant()?);
        return Some(MPoly::constant(vars, Rat::from_integer(x.numer().gcd(y.numer()))));
    };
    let (ca, pa) = int_content(a)?;
    let (cb, pb) = int_content(b)?;
    let content = Rat::from_integer(ca.gcd(&cb));
    let height = |p: &MPoly| p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default();
    let mut xi: BigInt = 2 * height(&pa).min(height(&pb)) + 29;
    let deg = pa.degree_in(v).max(pb.degree_in(v)) as u64 + 1;
    for _ in 0..6 {
        if xi.bits() * deg > 20_000 {
            return None;
        }
        let (ea, eb) = (eval_at(&pa, v, &xi), eval_at(&pb, v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let gamma = heuristic_gcd(&ea, &eb)?;
            let g = balanced_digits(&gamma, v, &xi);
            if !g.is_zero() {
                let g = g.primitive().1;
                if pa.exact_div(&g).is_some() && pb.exact_div(&g).is_some() {
                    return Some(g.scale(&content));
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Integer content and primitive part of a polynomial with integer coefficients.
fn int_content(p: &MPoly) -> Option<(BigInt, MPoly)> {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        if !c.is_integer() {
            return None;
        }
        g = g.gcd(c.numer());
    }
    if g.is_zero() {
        return Some((g, p.clone()));
    }
    Some((g.clone(), p.scale(&Rat::from_integer(g).recip())))
}

fn eval_at(p: &MPoly, v: usize, xi: &BigInt) -> MPoly {
    let mut powers = vec![BigInt::one()];
    let mut terms: Vec<(Monomial, Rat)> = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let e = m.exps()[v] as usize;
        while powers.len() <= e {
            let next = powers.last().unwrap() * xi;
            powers.push(next);
        }
        terms.push((m.with(v, 0), c * Rat::from_integer(powers[e].clone())));
    }
    MPoly::from_terms(p.vars(), terms).expect("same variables")
}

fn balanced_digits(gamma: &MPoly, v: usize, xi: &BigInt) -> MPoly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in gamma.terms() {
        let mut c = c.numer().clone();
        let mut i = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((m.with(v, i), Rat::from_integer(d.clone())));
            }
            c = (c - d) / xi;
            i += 1;
        }
    }
    MPoly::from_terms(gamma.vars(), terms).expect("same variables")
}

/// `lc(g)^k * f mod g` in variable `v`.
pub fn pseudo_rem(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let dg = g.degree_in(v);
    let lg = g.lead_coeff_in(v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.lead_coeff_in(v);
        r = &(&lg * &r) - &(&lr * g).mul_var_pow(v, dr - dg);
    }
    r
}

fn monomial_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.vars().len();
    let mut e = vec![u32::MAX; n];
    for (m, _) in a.terms().chain(b.terms()) {
        for (k, &x) in m.exps().iter().enumerate() {
            e[k] = e[k].min(x);
        }
    }
    MPoly::term(a.vars(), Monomial::new(e), rat(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::Vars;
    use crate::algebra::rat::ratio;

    fn v(vars: &Vars, i: usize) -> MPoly {
        MPoly::var(vars, i)
    }

    #[test]
    fn common_linear_factor() {
        let vars = Vars::x(3);
        let d = &v(&vars, 0) - &v(&vars, 1);
        let e = &v(&vars, 1) - &v(&vars, 2);
        let a = &(&d * &d) * &(&v(&vars, 2) + &MPoly::one(&vars));
        let b = &(&d * &e).scale(&ratio(3, 2)) * &v(&vars, 0);
        let g = gcd(&a, &b);
        // d has leading term -x2 under grlex (x2 > x1), so the normalized gcd is -d
        assert_eq!(g, d.primitive().1);
    }

    #[test]
    fn coprime_inputs() {
        let vars = Vars::x(2);
        let a = &v(&vars, 0).pow(2) + &MPoly::one(&vars);
        let b = &v(&vars, 0) - &v(&vars, 1);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_case() {
        let vars = Vars::x(2);
        let a = v(&vars, 0).pow(2).scale(&rat(4));
        let b = &v(&vars, 0).pow(3) + &(&v(&vars, 0) * &v(&vars, 1));
        assert_eq!(gcd(&a, &b), v(&vars, 0));
    }

    #[test]
    fn multivariate_nontrivial() {
        let vars = Vars::xz(2);
        // g = x1*z2 - x2*z1 + 1
        let g = &(&(&v(&vars, 0) * &v(&vars, 3)) - &(&v(&vars, 1) * &v(&vars, 2))) + &MPoly::one(&vars);
        let p = &(&v(&vars, 0) + &v(&vars, 2)).pow(2) - &MPoly::constant(&vars, rat(3));
        let q = &(&v(&vars, 1) * &v(&vars, 3)) + &v(&vars, 0);
        let a = &g * &p;
        let b = &g * &q;
        assert_eq!(gcd(&a, &b), g.primitive().1);
    }
}
