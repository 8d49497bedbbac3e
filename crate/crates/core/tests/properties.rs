use std::f64::consts::{PI, SQRT_2};

use gabor_zak::frame::{analyze, equivalence_transport, frame_objective, GaborSystem};
use gabor_zak::lattice::{integer_coset_representatives, iwasawa_factor, Matrix2x2, PointSet};
use gabor_zak::special_fn::{hermite, hermite_all, jacobi_defect, log_derivative_defect, HermiteIndex};
use gabor_zak::tf_operators::{
    apply_chain, apply_frft, intertwining_defect, FrftMethod, Grid, OperatorChain, SampledFunction, TfPoint, UnitaryOp,
};
use gabor_zak::zak::{unit_phase, zak_surface, ZakEvaluator};
use gabor_zak::{Truncation, Window};
use num_complex::Complex64;
use proptest::prelude::*;

/// `h_n(t)` from the coefficients of the Hermite polynomial `H_n`,
/// `h_n(t) = (2 pi)^{1/4} (2^n n! sqrt(pi))^{-1/2} H_n(sqrt(2 pi) t) e^{-pi t^2}`.
fn hermite_from_polynomial(n: usize, t: f64) -> f64 {
    // H_{k+1} = 2x H_k - 2k H_{k-1}
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 2.0];
    if n == 0 {
        cur = prev.clone();
    } else {
        for k in 1..n {
            let mut next = vec![0.0; k + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= 2.0 * k as f64 * c;
            }
            prev = cur;
            cur = next;
        }
    }
    let x = (2.0 * PI).sqrt() * t;
    let poly = cur.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let log_norm = 0.25 * (2.0 * PI).ln()
        - 0.5 * (n as f64 * 2f64.ln() + (1..=n).map(|k| (k as f64).ln()).sum::<f64>() + 0.5 * PI.ln());
    log_norm.exp() * poly * (-PI * t * t).exp()
}

#[test]
fn hermite_matches_polynomial_oracle() {
    for n in 0..=14 {
        for i in -60..=60 {
            let t = i as f64 * 0.05;
            let oracle = hermite_from_polynomial(n, t);
            let v = hermite(HermiteIndex(n), t);
            assert!((v - oracle).abs() <= 1e-10, "n={n} t={t}: {v} vs {oracle}");
        }
    }
}

#[test]
fn hermite_orthonormality() {
    let step = 1.0 / 64.0;
    let rows: Vec<Vec<f64>> = (-640..=640).map(|i| hermite_all(15, i as f64 * step)).collect();
    for m in 0..=15 {
        for n in 0..=15 {
            let g: f64 = rows.iter().map(|r| r[m] * r[n]).sum::<f64>() * step;
            let expect = if m == n { 1.0 } else { 0.0 };
            assert!((g - expect).abs() < 1e-12, "<h{m}, h{n}> = {g}");
        }
    }
}

fn shifted_gaussian() -> SampledFunction {
    Window::hermite(1)
        .then(UnitaryOp::Chirp { q: 0.3 })
        .shifted(TfPoint::new(0.9, -0.6))
        .sample(Grid::default())
        .unwrap()
}

#[test]
fn frft_methods_agree_and_preserve_norm() {
    let f = shifted_gaussian();
    for r in [0.35, 1.0, 1.9, -0.8, 2.9] {
        let q = apply_frft(r, &f, FrftMethod::Quadrature).unwrap();
        let h = apply_frft(r, &f, FrftMethod::HermiteEigen { terms: 96 }).unwrap();
        assert!(q.relative_distance(&h) < 1e-9, "r={r}");
        assert!((q.norm() - f.norm()).abs() < 1e-10);
    }
}

#[test]
fn transport_keeps_frame_bounds() {
    let chains = [
        vec![UnitaryOp::Frft { r: 0.4 }],
        vec![UnitaryOp::Chirp { q: 0.7 }, UnitaryOp::Dilation { a: 1.3 }],
        vec![UnitaryOp::Dilation { a: 0.8 }, UnitaryOp::Frft { r: -1.2 }],
        vec![UnitaryOp::Frft { r: 2.0 }, UnitaryOp::Chirp { q: -0.5 }],
        vec![UnitaryOp::Fourier, UnitaryOp::Chirp { q: 1.1 }],
        vec![UnitaryOp::Chirp { q: -1.4 }, UnitaryOp::Frft { r: 0.9 }, UnitaryOp::Dilation { a: 1.7 }],
        vec![UnitaryOp::Dilation { a: 2.2 }, UnitaryOp::Chirp { q: 0.2 }],
        vec![UnitaryOp::Frft { r: -0.3 }, UnitaryOp::Dilation { a: 0.6 }, UnitaryOp::Chirp { q: 0.9 }],
        vec![UnitaryOp::Chirp { q: 2.0 }],
        vec![UnitaryOp::Frft { r: 1.4 }, UnitaryOp::Dilation { a: 1.1 }, UnitaryOp::Frft { r: 0.2 }],
    ];
    for n in [0, 2] {
        let sys = GaborSystem::single(Window::hermite(n), PointSet::integer());
        let before = analyze(&sys, 64).unwrap();
        for ops in &chains {
            let chain = OperatorChain::new(ops.clone()).unwrap();
            let after = analyze(&equivalence_transport(&sys, &chain).unwrap(), 64).unwrap();
            assert!((before.a_est - after.a_est).abs() <= 2e-6, "{ops:?}");
            assert!((before.b_est - after.b_est).abs() <= 2e-6, "{ops:?}");
            assert_eq!(before.verdict, after.verdict, "{ops:?}");
        }
    }
}

#[test]
fn objective_is_sum_of_surfaces() {
    let windows = vec![
        Window::hermite(2),
        Window::hermite(1).shifted(TfPoint::new(0.3, 0.1)),
        Window::hermite(0).then(UnitaryOp::Dilation { a: 0.8 }),
    ];
    let n = 32;
    let sys = GaborSystem::new(windows.clone(), PointSet::integer()).unwrap();
    let total = frame_objective(&sys, n).unwrap();
    let mut sum = vec![0.0; n * n];
    for w in &windows {
        for (s, v) in sum.iter_mut().zip(zak_surface(w, n).unwrap().abs_sqr()) {
            *s += v;
        }
    }
    for (a, b) in total.iter().zip(&sum) {
        assert!((a - b).abs() <= 1e-12);
    }
}

#[test]
fn shifted_window_surface_is_a_translate() {
    let n = 32;
    let g = Window::hermite(3).then(UnitaryOp::Chirp { q: 0.4 });
    let (k1, k2) = (5usize, 27usize);
    let z = TfPoint::new(k1 as f64 / n as f64, k2 as f64 / n as f64);
    let base = zak_surface(&g, n).unwrap();
    let moved = zak_surface(&g.shifted(z), n).unwrap();
    for i in 0..n {
        for j in 0..n {
            let expect = base.value((i + k1) % n, (j + k2) % n).norm();
            assert!((moved.value(i, j).norm() - expect).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity(alpha in 0.05f64..20.0) {
        prop_assert!(jacobi_defect(alpha).unwrap() <= 1e-12 * (1.0 + alpha.sqrt()));
        prop_assert!(log_derivative_defect(alpha).unwrap() <= 1e-11);
    }

    #[test]
    fn iwasawa_recomposes(a in 0.1f64..4.0, b in -4.0f64..4.0, c in -4.0f64..4.0, neg in any::<bool>(), s in 0.3f64..3.0) {
        let a = if neg { -a } else { a };
        let m = Matrix2x2::new(a, b, c, (1.0 + b * c) / a).scaled(s);
        let f = iwasawa_factor(&m).unwrap();
        prop_assert!(f.a > 0.0);
        prop_assert!((f.scale - s).abs() <= 1e-12 * s);
        prop_assert!(f.recompose().max_abs_diff(&m) <= 1e-9 * (1.0 + s * s));
    }

    #[test]
    fn coset_representatives_are_complete(c00 in -4i64..5, c01 in -4i64..5, c10 in -4i64..5, c11 in -4i64..5) {
        let det = c00 * c11 - c01 * c10;
        prop_assume!(det != 0 && det.abs() <= 12);
        let c = [[c00, c01], [c10, c11]];
        let reps = integer_coset_representatives(c).unwrap();
        prop_assert_eq!(reps.len() as i64, det.abs());
        // v - w in C Z^2  iff  adj(C) (v - w) = 0 mod det
        let class = |v: (i64, i64)| {
            let m = det.abs();
            ((c11 * v.0 - c01 * v.1).rem_euclid(m), (-c10 * v.0 + c00 * v.1).rem_euclid(m))
        };
        let classes: std::collections::BTreeSet<_> = reps.iter().map(|&v| class(v)).collect();
        prop_assert_eq!(classes.len(), reps.len());
        for i in -6..=6 {
            for j in -6..=6 {
                prop_assert!(classes.contains(&class((i, j))));
            }
        }
    }

    #[test]
    fn zak_quasi_periodicity(n in 0usize..8, a in 0.5f64..2.0, q in -1.0f64..1.0, x in -2.0f64..2.0, om in -2.0f64..2.0) {
        let w = Window::hermite(n).then(UnitaryOp::Dilation { a }).then(UnitaryOp::Chirp { q });
        let ev = ZakEvaluator::new(&w).unwrap();
        let z = |x: f64, o: f64| ev.zak(x, o, Truncation::Auto).value;
        prop_assert!((z(x + 1.0, om) - unit_phase(om) * z(x, om)).norm() <= 1e-10);
        prop_assert!((z(x, om + 1.0) - z(x, om)).norm() <= 1e-10);
    }

    #[test]
    fn rotated_lattice_membership(i in -20i64..20, j in -20i64..20) {
        let g = Matrix2x2::rotation(PI / 4.0).scaled(1.0 / SQRT_2);
        let rotated = PointSet::lattice(g).unwrap();
        let p = g.apply(TfPoint::new(i as f64, j as f64));
        prop_assert!(PointSet::z2_union_half().contains(p));
        prop_assert!(rotated.contains(p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn intertwining_random_shift(x in -2.0f64..2.0, om in -2.0f64..2.0, kind in 0usize..4, param in 0.3f64..1.8) {
        let op = match kind {
            0 => UnitaryOp::Dilation { a: param },
            1 => UnitaryOp::Chirp { q: param - 1.0 },
            2 => UnitaryOp::Frft { r: param },
            _ => UnitaryOp::Fourier,
        };
        let d = intertwining_defect(&op, TfPoint::new(x, om), HermiteIndex(1), Grid::default()).unwrap();
        prop_assert!(d <= 1e-7, "{op:?} defect {d}");
    }

    #[test]
    fn chains_are_unitary(a in 0.6f64..1.6, q in -1.0f64..1.0, r in -2.5f64..2.5) {
        let f = shifted_gaussian();
        let chain = OperatorChain::new(vec![UnitaryOp::Frft { r }, UnitaryOp::Chirp { q }, UnitaryOp::Dilation { a }]).unwrap();
        let g = apply_chain(&chain, &f, FrftMethod::Auto).unwrap();
        prop_assert!((g.norm() - f.norm()).abs() <= 1e-9);
        let back = apply_chain(&chain.inverse(), &g, FrftMethod::Auto).unwrap();
        prop_assert!(back.relative_distance(&f) <= 1e-8);
    }

    #[test]
    fn hermite_eigenphase_any_angle(n in 0usize..10, r in -3.0f64..3.0) {
        let h = SampledFunction::from_fn(Grid::default(), |t| Complex64::new(hermite(HermiteIndex(n), t), 0.0));
        let out = apply_frft(r, &h, FrftMethod::Auto).unwrap();
        let expect = h.scale(Complex64::from_polar(1.0, -(n as f64) * r));
        prop_assert!(out.relative_distance(&expect) <= 1e-6);
    }
}
