use selfdual_web::{airy_rows, symmetry_rows, trajectory_rows};

#[test]
fn airy_rows_cover_all_methods() {
    let rows = airy_rows(-8.0, 8.0, 17).unwrap();
    assert_eq!(rows.len(), 68);
    let methods: Vec<f64> = rows.chunks(4).map(|r| r[3]).collect();
    assert_eq!(methods.first(), Some(&3.0));
    assert_eq!(methods.last(), Some(&2.0));
    assert!(methods.contains(&0.0) && methods.contains(&1.0));
    let at_zero = rows.chunks(4).find(|r| r[0] == 0.0).unwrap();
    assert!((at_zero[1] - 0.3550280538878172).abs() < 1e-15);
}

#[test]
fn trajectory_rows_layout() {
    let rows = trajectory_rows(3, 1.0, 0.25).unwrap();
    let width = 1 + 3 + 3 + 2;
    assert_eq!(rows.len(), 5 * width);
    for r in rows.chunks(width) {
        assert!(r[7] < 1e-9 && r[8] < 1e-9);
    }
    assert_eq!(rows[(4) * width], 1.0);
    assert!(trajectory_rows(4, 1.0, 0.25).is_err());
}

#[test]
fn psi_tilde_is_symmetric_and_sigma_tilde_is_not() {
    let psi = symmetry_rows("psi_tilde", -0.4, [0.3, -0.9], -1.0, 1.0, 21).unwrap();
    let sigma = symmetry_rows("sigma_tilde", -0.4, [0.3, -0.9], -1.0, 1.0, 21).unwrap();
    let mut asym: f64 = 0.0;
    for (p, s) in psi.chunks(3).zip(sigma.chunks(3)) {
        if p[0] == -0.4 {
            assert!(p[1].is_nan() && s[1].is_nan());
            continue;
        }
        assert!((p[1] - p[2]).abs() <= 1e-12 * p[1].abs().max(1e-3), "{p:?}");
        asym = asym.max((s[1] - s[2]).abs() / s[1].abs().max(s[2].abs()));
    }
    assert!(asym > 1e-2);
    assert!(symmetry_rows("phi", 0.0, [0.0, 1.0], 0.0, 1.0, 3).is_err());
}
