//! Point sets as unions of lattice cosets.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use gabor_zak::lattice::{coset_split, iwasawa_factor, Matrix2x2, PointSet};

pub fn run_example() -> gabor_zak::Result<()> {
    // the square lattice of density 2 as two cosets of D_{sqrt 2} Z^2
    let split = coset_split(&Matrix2x2::dilation(SQRT_2), &Matrix2x2::scalar(FRAC_1_SQRT_2))?;
    println!("square lattice split: generator {} shifts {:?}", split.generator(), split.shifts());
    let square = PointSet::sqrt2_square();
    println!("same points on [-5, 5]^2: {}", split.same_points(&square, 5.0));

    let rotated = PointSet::lattice(Matrix2x2::rotation(FRAC_PI_4).scaled(FRAC_1_SQRT_2))?;
    println!(
        "Z^2 u (Z + 1/2)^2 equals the rotated square lattice on [-3, 3]^2: {}",
        PointSet::z2_union_half().same_points(&rotated, 3.0)
    );
    println!("points of Z^2 u (Z + 1/2)^2 with max-norm <= 1: {}", PointSet::z2_union_half().enumerate(1.0).len());

    let m = Matrix2x2::new(1.3, 0.4, -0.2, 0.7);
    let f = iwasawa_factor(&m)?;
    println!(
        "{m} = {:.6} R({:.6}) V({:.6}) D({:.6}); recomposition defect {:.1e}",
        f.scale,
        f.r,
        f.q,
        f.a,
        f.recompose().max_abs_diff(&m)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
