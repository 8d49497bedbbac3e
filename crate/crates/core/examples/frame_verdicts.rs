//! Frame verdicts for Hermite systems that fail to be frames.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use gabor_zak::frame::{analyze, dilated_shift_pair, frame_bounds, GaborSystem};
use gabor_zak::{HermiteIndex, Matrix2x2, PointSet, Window};

pub fn run_example() -> gabor_zak::Result<()> {
    let n = 128;
    let mut systems = vec![
        ("G(h0, Z^2)", GaborSystem::single(Window::hermite(0), PointSet::integer())),
        ("G(h2, Z^2 u (Z+1/2)^2)", GaborSystem::single(Window::hermite(2), PointSet::z2_union_half())),
        ("G(h2, 2^-1/2 Z^2)", GaborSystem::single(Window::hermite(2), PointSet::sqrt2_square())),
    ];
    for (label, r) in [("G(h2, 2^-1/2 R(pi/6) Z^2)", PI / 6.0), ("G(h2, 2^-1/2 R(pi/4) Z^2)", PI / 4.0)] {
        let set = PointSet::lattice(Matrix2x2::rotation(r).scaled(FRAC_1_SQRT_2))?;
        systems.push((label, GaborSystem::single(Window::hermite(2), set)));
    }
    for (label, sys) in &systems {
        let rep = analyze(sys, n)?;
        let zeros: Vec<String> =
            rep.zeros.iter().filter(|z| z.certified).map(|z| format!("({}, {})", z.x, z.omega)).collect();
        println!(
            "{label:<28} {:<12} A_est {:.2e}  certified zeros {}",
            rep.verdict.to_string(),
            rep.a_est,
            zeros.join(" ")
        );
    }
    let pair = GaborSystem::new(dilated_shift_pair(HermiteIndex(2)), PointSet::integer())?;
    let rep = frame_bounds(&pair, n)?;
    println!("{:<28} {:<12} A_est {:.2e}", "two shifted dilated h2", rep.verdict.to_string(), rep.a_est);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
