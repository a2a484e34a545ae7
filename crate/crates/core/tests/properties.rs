use nalgebra::DMatrix;
use proptest::prelude::*;

use selfdual::algebra::{rat, swap_xz, MPoly, Monomial, RatFn, Vars};
use selfdual::diffop::DiffOp;
use selfdual::dynamics::{
    cm_matrices, equations_of_motion, hamiltonian, integrals_of_motion, involution, rank_defect, CMPair,
    ParticleState, RANK_SHIFT,
};
use selfdual::eigenring::{apply_op, make_function, Base};
use selfdual::numerics::fd_apply;

fn poly(vars: &Vars, terms: &[(Vec<u32>, i64)]) -> MPoly {
    MPoly::from_terms(vars, terms.iter().map(|(e, c)| (Monomial::new(e.clone()), rat(*c)))).unwrap()
}

fn arb_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 0..4)
}

/// A polynomial with nonzero constant term, so `den` never vanishes identically.
fn arb_den(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    (arb_poly(nvars, 1), 1i64..=3).prop_map(move |(mut t, c)| {
        t.retain(|(e, _)| e.iter().any(|&k| k > 0));
        t.push((vec![0; nvars], c));
        t
    })
}

fn arb_ratfn(nvars: usize) -> impl Strategy<Value = (Vec<(Vec<u32>, i64)>, Vec<(Vec<u32>, i64)>)> {
    (arb_poly(nvars, 2), arb_den(nvars))
}

fn ratfn(vars: &Vars, (n, d): &(Vec<(Vec<u32>, i64)>, Vec<(Vec<u32>, i64)>)) -> RatFn {
    RatFn::new(poly(vars, n), poly(vars, d)).unwrap()
}

/// Order <= 2 operators in two variables with polynomial coefficients.
fn arb_op() -> impl Strategy<Value = Vec<(Vec<u32>, Vec<(Vec<u32>, i64)>)>> {
    prop::collection::vec((prop::collection::vec(0..=1u32, 2), arb_poly(2, 1)), 0..3)
}

fn op(terms: &[(Vec<u32>, Vec<(Vec<u32>, i64)>)]) -> DiffOp {
    let v = Vars::x(2);
    DiffOp::from_terms(2, terms.iter().map(|(a, c)| (Monomial::new(a.clone()), RatFn::from_poly(poly(&v, c))))).unwrap()
}

fn arb_state(n: usize) -> impl Strategy<Value = ParticleState> {
    (prop::collection::vec(-3.0f64..3.0, n), prop::collection::vec(-1.0f64..1.0, n))
        .prop_filter("separated", |(x, _)| {
            (0..x.len()).all(|i| (i + 1..x.len()).all(|j| (x[i] - x[j]).abs() > 0.4))
        })
        .prop_map(|(x, y)| ParticleState::new(x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfn_field_laws(a in arb_ratfn(2), b in arb_ratfn(2), c in arb_ratfn(2)) {
        let v = Vars::x(2);
        let (a, b, c) = (ratfn(&v, &a), ratfn(&v, &b), ratfn(&v, &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(a.try_div(&b).unwrap().try_mul(&b).unwrap(), a.clone());
        }
        let lhs = (&a * &b).derivative(0);
        prop_assert_eq!(lhs, &(&a.derivative(0) * &b) + &(&a * &b.derivative(0)));
    }

    #[test]
    fn ratfn_evaluation_is_a_homomorphism(a in arb_ratfn(2), b in arb_ratfn(2), p in (-5i64..5, 1i64..4)) {
        let v = Vars::x(2);
        let (a, b) = (ratfn(&v, &a), ratfn(&v, &b));
        let point = [rat(p.0), selfdual::algebra::ratio(1, p.1 + 7)];
        if let (Ok(ea), Ok(eb)) = (a.eval(&point), b.eval(&point)) {
            prop_assert_eq!((&a * &b).eval(&point).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&point).unwrap(), ea + eb);
        }
    }

    #[test]
    fn swap_is_an_involution(a in arb_ratfn(4)) {
        let f = ratfn(&Vars::xz(2), &a);
        prop_assert_eq!(swap_xz(&swap_xz(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn composition_is_associative(a in arb_op(), b in arb_op(), c in arb_op()) {
        let (a, b, c) = (op(&a), op(&b), op(&c));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_jacobi_identity(a in arb_op(), b in arb_op(), c in arb_op()) {
        let (a, b, c) = (op(&a), op(&b), op(&c));
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(t1.try_add(&t2).unwrap().try_add(&t3).unwrap().is_zero());
    }

    #[test]
    fn operator_application_is_linear(a in arb_op(), b in arb_op()) {
        let (a, b) = (op(&a), op(&b));
        let f = make_function(Base::Sigma, 2).unwrap();
        let sum = apply_op(&a.try_add(&b).unwrap(), &f).unwrap();
        prop_assert_eq!(sum, apply_op(&a, &f).unwrap().try_add(&apply_op(&b, &f).unwrap()).unwrap());
    }

    #[test]
    fn hamiltonian_is_trace_of_lax_matrix(s in (2usize..=5).prop_flat_map(arb_state)) {
        let p = cm_matrices(&s).unwrap();
        let tr = (&p.z * &p.z - &p.x).trace();
        let h = hamiltonian(&s).unwrap();
        prop_assert!((h - tr).abs() <= 1e-12 * h.abs().max(1.0), "{h} vs {tr}");
        prop_assert!((integrals_of_motion(&s).unwrap()[0] - h).abs() <= 1e-12 * h.abs().max(1.0));
        prop_assert!(rank_defect(&p, RANK_SHIFT) < 1e-12);
    }

    #[test]
    fn equations_of_motion_match_gradient(s in (1usize..=4).prop_flat_map(arb_state)) {
        let (dx, dy) = equations_of_motion(&s).unwrap();
        let h = 1e-5;
        for k in 0..s.n() {
            let shifted = |dxk: f64, dyk: f64| {
                let mut t = s.clone();
                t.x[k] += dxk;
                t.y[k] += dyk;
                hamiltonian(&t).unwrap()
            };
            let dh_dy = (shifted(0.0, h) - shifted(0.0, -h)) / (2.0 * h);
            let dh_dx = (shifted(h, 0.0) - shifted(-h, 0.0)) / (2.0 * h);
            prop_assert!((dx[k] - dh_dy).abs() < 1e-6, "{} vs {dh_dy}", dx[k]);
            prop_assert!((dy[k] + dh_dx).abs() < 1e-6 * dh_dx.abs().max(1.0), "{} vs {}", dy[k], -dh_dx);
        }
    }

    #[test]
    fn involution_round_trip(
        s in (2usize..=4).prop_flat_map(arb_state),
        g in prop::collection::vec(-0.4f64..0.4, 16),
    ) {
        let n = s.n();
        let p = cm_matrices(&s).unwrap();
        let g = DMatrix::from_fn(n, n, |i, j| g[i * 4 + j] + if i == j { 2.0 } else { 0.0 });
        let gi = g.clone().try_inverse().unwrap();
        let p = CMPair { x: &g * &p.x * &gi, z: &g * &p.z * &gi };
        let back = involution(&involution(&p).unwrap()).unwrap();
        let scale = p.x.amax().max(p.z.amax()).max(1.0);
        prop_assert!((&back.x - &p.x).amax() < 1e-12 * scale);
        prop_assert!((&back.z - &p.z).amax() < 1e-12 * scale);
    }

    #[test]
    fn fd_apply_differentiates_cubics(c in prop::collection::vec(-3i64..=3, 4), x in (-2.0f64..2.0, -2.0f64..2.0)) {
        // d1^2 d2 + d2 applied to c0 x1^3 + c1 x1^2 x2 + c2 x1 x2^2 + c3 x2^3
        let v = Vars::x(2);
        let d = DiffOp::from_terms(2, [
            (Monomial::new(vec![2, 1]), RatFn::one(&v)),
            (Monomial::new(vec![0, 1]), RatFn::one(&v)),
        ]).unwrap();
        let f = |p: &[f64]| -> selfdual::Result<f64> {
            Ok(c[0] as f64 * p[0].powi(3) + c[1] as f64 * p[0] * p[0] * p[1] + c[2] as f64 * p[0] * p[1] * p[1] + c[3] as f64 * p[1].powi(3))
        };
        let (a, b) = x;
        let want = 2.0 * c[1] as f64 + c[1] as f64 * a * a + 2.0 * c[2] as f64 * a * b + 3.0 * c[3] as f64 * b * b;
        let got = fd_apply(&d, &f, &[a, b], 0.05).unwrap();
        prop_assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
}
