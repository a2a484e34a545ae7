//! Reference values computed outside this crate: mpmath at 40 digits, and a
//! sympy check that the written-out `D_3` satisfies the intertwining relation.
//! `tests/oracle/generate.py` regenerates them.

use selfdual::algebra::{rat, Rat};
use selfdual::diffop::{make_standard, Standard};
use selfdual::eigenring::derive_pn;
use selfdual::intertwiner::{intertwiner_for, known_intertwiner};
use selfdual::numerics::{eval_function, fd_apply, psi_value, sigma_value, NumFn};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn psi_eigenvalue_matches_high_precision_values() {
    let cases: [(usize, &[f64], &[f64], f64); 4] = [
        (2, &[0.3, -0.7], &[0.25, -1.5], 0.28125),
        (2, &[-1.2, 0.9], &[0.6, 0.1], 0.82499999999999996947),
        (3, &[0.2, -0.5, 0.9], &[-0.4, 0.7, 0.1], 1.0066666666666665786),
        (3, &[-1.0, 0.35, 0.6], &[0.8, -0.9, 0.15], 1.5216666666666667921),
    ];
    for (n, x, z, want) in cases {
        let pn = derive_pn(n).unwrap().eval_f64(z).unwrap();
        assert!(close(pn, want, 1e-14), "n={n}: exact {pn} vs {want}");
        let h = make_standard(n, Standard::AirySum).unwrap();
        let f = |p: &[f64]| psi_value(p, z);
        let numeric = fd_apply(&h, &f, x, 1e-3).unwrap() / psi_value(x, z).unwrap();
        assert!(close(numeric, want, 1e-6), "n={n}: fd {numeric} vs {want}");
    }
}

#[test]
fn two_particle_tilde_functions_match_high_precision_values() {
    // (x, z, D2[sigma](x, z), D2[sigma](z, x), H~ D2[sigma] / D2[sigma], D2[psi] / psi)
    let cases: [([f64; 2], [f64; 2], f64, f64, f64, f64); 2] = [
        ([-1.3, -1.9], [-1.1, -1.7], -0.30239937039885469333, -0.30239937039885469333, -2.8, -2.7333333333333342067),
        ([0.4, -0.35], [0.2, 0.9], -0.12441549376278887168, 0.1312313910591014254, 1.1, -3.3666666666666666778),
    ];
    for (x, z, st, st_swap, eig, psi_ratio) in cases {
        let z12 = z[0] - z[1];
        let a = eval_function(NumFn::SigmaTilde, 2, &x, &z).unwrap() * z12;
        let b = eval_function(NumFn::SigmaTilde, 2, &z, &x).unwrap() * (x[0] - x[1]);
        assert!(close(a, st, 1e-13), "{a} vs {st}");
        assert!(close(b, st_swap, 1e-13), "{b} vs {st_swap}");
        let p = eval_function(NumFn::PsiTilde, 2, &x, &z).unwrap() * z12 / psi_value(&x, &z).unwrap();
        assert!(close(p, psi_ratio, 1e-13), "{p} vs {psi_ratio}");

        let d = known_intertwiner(2).unwrap();
        let ht = make_standard(2, Standard::Deformed).unwrap();
        let sigma_t = |p: &[f64]| {
            let s = |q: &[f64]| sigma_value(q, &z);
            fd_apply(&d, &s, p, 1e-3)
        };
        let direct = sigma_t(&x).unwrap();
        assert!(close(direct, st, 1e-8), "{direct} vs {st}");
        let ratio = fd_apply(&ht, &sigma_t, &x, 2e-2).unwrap() / direct;
        assert!(close(ratio, eig, 1e-4), "{ratio} vs {eig}");
    }
}

fn q(a: i64, b: i64) -> Rat {
    Rat::new(a.into(), b.into())
}

/// Coefficients of `D_3` at `x`, written out by hand from the symbolic
/// solution. `den` is `-(x1 - x2)(x1 - x3)(x2 - x3)`.
fn d3_coefficient(alpha: [u32; 3], x: &[Rat; 3]) -> Rat {
    let [a, b, c] = x.clone();
    let den = -(&a - &b) * (&a - &c) * (&b - &c);
    let two = rat(2);
    let lin = |p: i64, r: i64, s: i64| (rat(p) * &a + rat(r) * &b + rat(s) * &c) / &den;
    let quad = |aa: i64, ab: i64, ac: i64, bb: i64, bc: i64, cc: i64| {
        (rat(aa) * &a * &a + rat(ab) * &a * &b + rat(ac) * &a * &c + rat(bb) * &b * &b + rat(bc) * &b * &c + rat(cc) * &c * &c)
            / &den
    };
    match alpha {
        [0, 0, 0] => rat(12) / &den,
        [1, 0, 0] => lin(-8, 4, 4),
        [0, 1, 0] => lin(4, -8, 4),
        [0, 0, 1] => lin(4, 4, -8),
        [2, 0, 0] => &two / (&c - &b),
        [0, 2, 0] => -&two / (&c - &a),
        [0, 0, 2] => &two / (&b - &a),
        [1, 1, 0] => quad(-2, 6, -2, -2, -2, 2),
        [1, 0, 1] => quad(-2, -2, 6, 2, -2, -2),
        [0, 1, 1] => quad(2, -2, -2, -2, 6, -2),
        [2, 1, 0] | [0, 2, 1] | [1, 0, 2] => rat(1),
        [1, 2, 0] | [2, 0, 1] | [0, 1, 2] => rat(-1),
        _ => rat(0),
    }
}

#[test]
fn three_particle_intertwiner_matches_closed_form() {
    let d = intertwiner_for(3).unwrap();
    let mut alphas = Vec::new();
    for i in 0..=3u32 {
        for j in 0..=3 - i {
            for k in 0..=3 - i - j {
                alphas.push([i, j, k]);
            }
        }
    }
    for x in [[q(1, 2), q(-1, 3), rat(2)], [rat(3), q(5, 7), q(-2, 9)]] {
        for alpha in &alphas {
            let got = d.coeff(&selfdual::algebra::Monomial::new(alpha.to_vec())).eval(&x).unwrap();
            assert_eq!(got, d3_coefficient(*alpha, &x), "alpha {alpha:?} at {x:?}");
        }
    }
    assert_eq!(d.num_terms(), 16);
}

#[test]
fn three_particle_coefficients_at_reference_point() {
    // sympy, x = (1/2, -1/3, 2)
    let x = [q(1, 2), q(-1, 3), rat(2)];
    let want: [([u32; 3], Rat); 10] = [
        ([0, 0, 0], q(-144, 35)),
        ([1, 0, 0], q(-32, 35)),
        ([0, 1, 0], q(-152, 35)),
        ([0, 0, 1], q(184, 35)),
        ([2, 0, 0], q(6, 7)),
        ([0, 2, 0], q(-4, 3)),
        ([0, 0, 2], q(-12, 5)),
        ([1, 1, 0], q(-202, 105)),
        ([1, 0, 1], q(22, 105)),
        ([0, 1, 1], q(482, 105)),
    ];
    let d = intertwiner_for(3).unwrap();
    for (alpha, v) in want {
        assert_eq!(d3_coefficient(alpha, &x), v, "{alpha:?}");
        let got = d.coeff(&selfdual::algebra::Monomial::new(alpha.to_vec())).eval(&x).unwrap();
        assert_eq!(got, v, "{alpha:?}");
    }
}
