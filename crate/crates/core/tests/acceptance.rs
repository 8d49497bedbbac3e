//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::time::Instant;

use gabor_zak::frame::{analyze, dilated_shift_pair, frame_bounds, GaborSystem, Verdict};
use gabor_zak::lattice::{coset_split, iwasawa_factor, Matrix2x2, PointSet};
use gabor_zak::special_fn::{hermite, jacobi_defect, log_derivative_defect, theta3, HermiteIndex};
use gabor_zak::tf_operators::{
    apply_frft, intertwining_defect, FrftMethod, Grid, SampledFunction, TfPoint, UnitaryOp, DEFAULT_HERMITE_TERMS,
};
use gabor_zak::zak::{verify_identities, IdentityOptions};
use gabor_zak::{zak_point, Truncation, Window};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn zak_abs(w: &Window, x: f64, omega: f64, trunc: Truncation) -> f64 {
    zak_point(w, x, omega, trunc).expect("zak value").value.norm()
}

fn zero_certificates() -> Outcome {
    let start = Instant::now();
    let dilated = Window::hermite(2).then(UnitaryOp::Dilation { a: FRAC_1_SQRT_2 });
    let cases = [
        (Window::hermite(2), 0.0, 0.0),
        (Window::hermite(2), 0.5, 0.5),
        (Window::hermite(0), 0.5, 0.5),
        (dilated.clone(), 0.25, 0.5),
        (dilated, 0.75, 0.5),
    ];
    let mut worst: f64 = 0.0;
    for (w, x, om) in &cases {
        for trunc in [Truncation::Fixed(12), Truncation::Fixed(20), Truncation::Auto] {
            let v = zak_point(w, *x, *om, trunc).expect("zak value");
            assert!(v.truncation >= 8);
            worst = worst.max(v.value.norm());
        }
        let fixed = zak_point(w, *x, *om, Truncation::Fixed(12)).unwrap();
        assert_eq!(fixed.truncation, 12);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-11 && secs < 1.0, format!("max |Z| = {worst:.2e} (tol 1e-11), runtime {secs:.3} s (limit 1 s)"))
}

fn parity_zero_families() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [1, 2, 3, 5, 6, 7, 9, 10, 11] {
        worst = worst.max(zak_abs(&Window::hermite(n), 0.0, 0.0, Truncation::Auto));
    }
    let h4 = zak_abs(&Window::hermite(4), 0.0, 0.0, Truncation::Auto);
    outcome(
        worst <= 1e-11 && h4 > 1e-3,
        format!("max |Z h_n(0,0)| = {worst:.2e} (tol 1e-11), |Z h_4(0,0)| = {h4:.4} (floor 1e-3)"),
    )
}

fn theta_suite() -> Outcome {
    let th = theta3(1.0).unwrap();
    let combo = th.value + 4.0 * th.derivative;
    let alphas = [0.25, 0.5, 1.0, 2.0, 4.0];
    let jac = alphas.iter().map(|&a| jacobi_defect(a).unwrap()).fold(0.0, f64::max);
    let logd = alphas.iter().map(|&a| log_derivative_defect(a).unwrap()).fold(0.0, f64::max);
    let z = zak_point(&Window::hermite(2), 0.0, 0.0, Truncation::Auto).unwrap().value;
    let agree = (2f64.powf(0.25) * z - Complex64::new(-combo, 0.0)).norm();
    outcome(
        combo.abs() <= 1e-13 && jac <= 1e-12 && logd <= 1e-12 && agree <= 1e-13,
        format!(
            "|theta+4theta'| = {:.1e}, jacobi {jac:.1e}, log-derivative {logd:.1e}, zak agreement {agree:.1e} (tol 1e-13, 1e-12, 1e-12, 1e-13)",
            combo.abs()
        ),
    )
}

fn frft_eigenfunctions() -> Outcome {
    let start = Instant::now();
    let grid = Grid::default();
    let methods = [FrftMethod::Quadrature, FrftMethod::HermiteEigen { terms: DEFAULT_HERMITE_TERMS }];
    let mut eigen: f64 = 0.0;
    for n in 0..=6 {
        let h = SampledFunction::from_fn(grid, |t| Complex64::new(hermite(HermiteIndex(n), t), 0.0));
        for r in [0.4, FRAC_PI_4, 1.2, FRAC_PI_2] {
            let expect = h.scale(Complex64::from_polar(1.0, -(n as f64) * r));
            for m in methods {
                eigen = eigen.max(apply_frft(r, &h, m).unwrap().relative_distance(&expect));
            }
        }
    }
    let f = Window::hermite(1).then(UnitaryOp::Chirp { q: 0.4 }).shifted(TfPoint::new(0.7, -0.5)).sample(grid).unwrap();
    let mut semigroup: f64 = 0.0;
    for (a, b) in [(0.3, 0.5), (0.7, 0.9), (1.0, -0.4), (FRAC_PI_4, FRAC_PI_4)] {
        for m in methods {
            let two = apply_frft(b, &apply_frft(a, &f, m).unwrap(), m).unwrap();
            let one = apply_frft(a + b, &f, m).unwrap();
            semigroup = semigroup.max(two.relative_distance(&one));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        eigen <= 1e-6 && semigroup <= 1e-6 && secs < 30.0,
        format!(
            "eigen defect {eigen:.2e}, semigroup defect {semigroup:.2e} (tol 1e-6), runtime {secs:.2} s (limit 30 s)"
        ),
    )
}

fn intertwining() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let ops = [
        UnitaryOp::Dilation { a: 1.7 },
        UnitaryOp::Dilation { a: 0.6 },
        UnitaryOp::Chirp { q: 0.8 },
        UnitaryOp::Chirp { q: -1.3 },
        UnitaryOp::Frft { r: 0.6 },
        UnitaryOp::Frft { r: 2.2 },
        UnitaryOp::Fourier,
    ];
    let mut worst: f64 = 0.0;
    for op in ops {
        for _ in 0..50 {
            let z = TfPoint::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            for n in [0, 1] {
                worst = worst.max(intertwining_defect(&op, z, HermiteIndex(n), Grid::default()).unwrap());
            }
        }
    }
    outcome(
        worst <= 1e-6,
        format!("max matched-phase defect {worst:.2e} (tol 1e-6) over {} operators x 50 shifts", ops.len()),
    )
}

fn frame_verdicts() -> Outcome {
    let n = 128;
    let mut systems = vec![
        ("G(h0, Z^2)", GaborSystem::single(Window::hermite(0), PointSet::integer())),
        ("G(h2, Z^2 u (Z+1/2)^2)", GaborSystem::single(Window::hermite(2), PointSet::z2_union_half())),
        ("G(h2, 2^-1/2 Z^2)", GaborSystem::single(Window::hermite(2), PointSet::sqrt2_square())),
    ];
    for (label, r) in [("G(h2, 2^-1/2 R(pi/6) Z^2)", PI / 6.0), ("G(h2, 2^-1/2 R(pi/4) Z^2)", PI / 4.0)] {
        let set = PointSet::lattice(Matrix2x2::rotation(r).scaled(FRAC_1_SQRT_2)).unwrap();
        systems.push((label, GaborSystem::single(Window::hermite(2), set)));
    }
    let mut failed = Vec::new();
    for (label, sys) in &systems {
        let rep = analyze(sys, n).unwrap();
        if rep.verdict != Verdict::NotFrame || !rep.zeros.iter().any(|z| z.certified) {
            failed.push(label.to_string());
        }
    }
    let pair = GaborSystem::new(dilated_shift_pair(HermiteIndex(2)), PointSet::integer()).unwrap();
    let rep = frame_bounds(&pair, n).unwrap();
    if rep.verdict != Verdict::NotFrame || !rep.zeros.iter().any(|z| z.certified) {
        failed.push("two-window dilated h2".into());
    }
    outcome(failed.is_empty(), format!("{} systems checked, failures: {failed:?}", systems.len() + 1))
}

fn zak_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let points: Vec<TfPoint> =
        (0..100).map(|_| TfPoint::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
    let mut worst: f64 = 0.0;
    let mut all = true;
    for n in 0..=5 {
        let rep = verify_identities(&Window::hermite(n), &points, &IdentityOptions::default()).unwrap();
        for name in ["quasi_periodicity_x", "quasi_periodicity_omega", "shift_covariance", "poisson"] {
            let c = rep.check(name).expect("check present");
            worst = worst.max(c.max_defect);
            all &= c.max_defect <= 1e-10;
        }
    }
    outcome(all, format!("max defect {worst:.2e} (tol 1e-10) over h0..h5 and 100 points"))
}

fn lattice_algebra() -> Outcome {
    // 2^{-1/2} Z^2 = D_{sqrt 2} Z^2 u D_{sqrt 2}((Z + 1/2) x Z)
    let d = Matrix2x2::dilation(SQRT_2);
    let split = coset_split(&d, &Matrix2x2::scalar(FRAC_1_SQRT_2)).unwrap();
    let explicit = PointSet::new(d, vec![TfPoint::ORIGIN, d.apply(TfPoint::new(0.5, 0.0))]).unwrap();
    let split_ok = split.same_points(&explicit, 5.0)
        && split.same_points(&PointSet::sqrt2_square(), 5.0)
        && split.shifts().len() == 2
        && split.enumerate(5.0) == explicit.enumerate(5.0);
    let rotated = PointSet::lattice(Matrix2x2::rotation(FRAC_PI_4).scaled(FRAC_1_SQRT_2)).unwrap();
    let quincunx_ok = PointSet::z2_union_half().same_points(&rotated, 3.0);
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let a: f64 = rng.random_range(0.2..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let b: f64 = rng.random_range(-3.0..3.0);
        let c: f64 = rng.random_range(-3.0..3.0);
        let m = Matrix2x2::new(a, b, c, (1.0 + b * c) / a);
        let f = iwasawa_factor(&m).unwrap();
        worst = worst.max(f.recompose().max_abs_diff(&m));
    }
    outcome(
        split_ok && quincunx_ok && worst <= 1e-9,
        format!("coset split {split_ok}, quincunx {quincunx_ok}, Iwasawa defect {worst:.1e} (tol 1e-9)"),
    )
}

/// Smallest eigenvalue of the frame operator of the periodic discrete Gabor
/// system of the periodized Gaussian on `Z_{m^2}` (step `1/m`, period `m`),
/// with time-frequency shifts `enumerate(Z^2, window)`.
fn finite_frame_min_eigenvalue(m: usize, window: f64) -> f64 {
    let len = m * m;
    let period = m as f64;
    let h = 1.0 / period;
    let t = |j: usize| (j as f64 - (len / 2) as f64) * h;
    let periodized = |s: f64| -> f64 { (-3..=3).map(|k| hermite(HermiteIndex(0), s + k as f64 * period)).sum() };
    let points = PointSet::integer().enumerate(window);
    assert_eq!(points.len(), len);
    let mut s = DMatrix::<Complex64>::zeros(len, len);
    for p in &points {
        let v: Vec<Complex64> =
            (0..len).map(|j| Complex64::from_polar(periodized(t(j) - p.x), 2.0 * PI * p.omega * t(j))).collect();
        for i in 0..len {
            for j in 0..len {
                s[(i, j)] += v[i] * v[j].conj() * h;
            }
        }
    }
    SymmetricEigen::new(s).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

fn brute_force_oracle() -> Outcome {
    let m = 13;
    let lambda = finite_frame_min_eigenvalue(m, 6.0);
    let rep = frame_bounds(&GaborSystem::single(Window::hermite(0), PointSet::integer()), m).unwrap();
    let rel = (rep.grid_min - lambda).abs() / lambda;
    outcome(
        rel <= 0.05,
        format!(
            "grid minimum {:.6e} vs smallest eigenvalue {lambda:.6e} (relative gap {rel:.1e}, tol 5e-2)",
            rep.grid_min
        ),
    )
}

fn outlook() -> Outcome {
    let quarter = PointSet::integer().with_shift(TfPoint::new(0.25, 0.25)).unwrap();
    let half = PointSet::integer().with_shift(TfPoint::new(0.5, 0.5)).unwrap();
    let a = analyze(&GaborSystem::single(Window::hermite(2), quarter), 1024).unwrap();
    let b = analyze(&GaborSystem::single(Window::hermite(2), half), 1024).unwrap();
    outcome(
        a.a_est > 0.01 * a.b_est && b.a_est <= 1e-10,
        format!(
            "z=(1/4,1/4): A_est {:.4} B_est {:.4} ({}, need A > B/100); z=(1/2,1/2): A_est {:.1e} ({}, need A <= 1e-10)",
            a.a_est, a.b_est, a.verdict, b.a_est, b.verdict
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("zero certificates", zero_certificates),
        ("parity and Poisson zero families", parity_zero_families),
        ("theta identities", theta_suite),
        ("fractional Fourier eigenfunctions", frft_eigenfunctions),
        ("intertwining", intertwining),
        ("frame verdicts", frame_verdicts),
        ("Zak identities", zak_identities),
        ("lattice algebra", lattice_algebra),
        ("finite frame matrix oracle", brute_force_oracle),
        ("double over-sampling outlook", outlook),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failures += 1;
        }
        println!("criterion {:>2} {:<36} {}  {}", i + 1, name, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
