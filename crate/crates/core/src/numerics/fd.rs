//! Finite-difference application of differential operators.

use std::collections::HashMap;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;

/// Second-order central stencil for `d^a/dt^a` as `(offset, weight)` with
/// weights to be divided by `h^a`.
fn stencil(a: u32) -> Result<&'static [(i32, f64)]> {
    Ok(match a {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => return Err(Error::InvalidArgument(format!("no stencil for derivative order {a}"))),
    })
}

fn apply_once(d: &DiffOp, f: &dyn Fn(&[f64]) -> Result<f64>, x: &[f64], h: f64) -> Result<f64> {
    let n = x.len();
    let mut values: HashMap<Vec<i32>, f64> = HashMap::new();
    let mut total = 0.0;
    for (alpha, c) in d.terms() {
        let coeff = c.eval_f64(x)?;
        let mut stencils = Vec::with_capacity(n);
        let mut scale = 1.0;
        for &a in alpha.exps() {
            stencils.push(stencil(a)?);
            scale *= h.powi(a as i32);
        }
        // tensor product over coordinates
        let mut acc = 0.0;
        let mut idx = vec![0usize; n];
        'outer: loop {
            let mut w = 1.0;
            let mut offs = Vec::with_capacity(n);
            for k in 0..n {
                let (o, wk) = stencils[k][idx[k]];
                w *= wk;
                offs.push(o);
            }
            let v = match values.get(&offs) {
                Some(&v) => v,
                None => {
                    let p: Vec<f64> = x.iter().zip(&offs).map(|(xi, &o)| xi + o as f64 * h).collect();
                    let v = f(&p)?;
                    values.insert(offs, v);
                    v
                }
            };
            acc += w * v;
            for k in 0..n {
                idx[k] += 1;
                if idx[k] < stencils[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        total += coeff * acc / scale;
    }
    Ok(total)
}

/// `D[f](x)` with Richardson extrapolation over steps `h` and `h/2`.
pub fn fd_apply(d: &DiffOp, f: &dyn Fn(&[f64]) -> Result<f64>, x: &[f64], h: f64) -> Result<f64> {
    if x.len() != d.n() {
        return Err(Error::Dimension(format!("point of length {} for n = {}", x.len(), d.n())));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step {h}")));
    }
    let coarse = apply_once(d, f, x, h)?;
    let fine = apply_once(d, f, x, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `|Ai''(t) - t Ai(t)|` with `Ai''` differenced from `Ai'`.
pub fn airy_ode_residual(t: f64) -> Result<f64> {
    let h = 1e-3;
    let d = |h: f64| -> Result<f64> {
        Ok((super::airy_ai(t + h)?.ai_prime - super::airy_ai(t - h)?.ai_prime) / (2.0 * h))
    };
    let second = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
    Ok((second - t * super::airy_ai(t)?.ai).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, RatFn, Vars};
    use crate::diffop::{make_standard, Standard};
    use crate::numerics::airy_ai;

    #[test]
    fn airy_operator_on_kernel() {
        let d = make_standard(1, Standard::AirySum).unwrap();
        let z = -0.1;
        let f = |p: &[f64]| Ok(airy_ai(p[0] + z)?.ai);
        let got = fd_apply(&d, &f, &[0.3], DEFAULT_STEP).unwrap();
        let want = z * airy_ai(0.2).unwrap().ai;
        assert!((got - want).abs() < 1e-6 * want.abs());
    }

    #[test]
    fn polynomial_derivatives_exact() {
        let v = Vars::x(2);
        let d = DiffOp::from_terms(
            2,
            [(Monomial::new(vec![2, 1]), RatFn::one(&v)), (Monomial::new(vec![0, 3]), RatFn::var(&v, 0))],
        )
        .unwrap();
        let f = |p: &[f64]| Ok(p[0].powi(3) * p[1].powi(2) + p[1].powi(4));
        let (a, b) = (0.7, -1.3);
        let want = 12.0 * a * b + a * 24.0 * b;
        let got = fd_apply(&d, &f, &[a, b], 0.05).unwrap();
        assert!((got - want).abs() < 1e-9, "{got} {want}");
    }

    #[test]
    fn coefficient_pole() {
        let d = make_standard(2, Standard::Deformed).unwrap();
        let f = |_: &[f64]| Ok(1.0);
        assert!(matches!(fd_apply(&d, &f, &[1.0, 1.0], DEFAULT_STEP), Err(Error::Pole { .. })));
    }

    #[test]
    fn ode_residual_small() {
        for t in [-9.5, -3.0, 0.0, 1.7, 5.9, 6.1, 9.0] {
            assert!(airy_ode_residual(t).unwrap() < 1e-9, "{t}");
        }
    }
}
