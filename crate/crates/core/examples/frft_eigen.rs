//! Hermite functions are eigenfunctions of the fractional Fourier transform:
//! `F_r h_n = e^{-i n r} h_n`. Both numerical methods are compared against it.

use gabor_zak::special_fn::{hermite, HermiteIndex};
use gabor_zak::tf_operators::{apply_frft, FrftMethod, Grid, SampledFunction, DEFAULT_HERMITE_TERMS};
use num_complex::Complex64;

pub fn run_example() -> gabor_zak::Result<()> {
    let grid = Grid::default();
    let methods = [
        ("quadrature", FrftMethod::Quadrature),
        ("hermite", FrftMethod::HermiteEigen { terms: DEFAULT_HERMITE_TERMS }),
    ];
    for n in [0usize, 3, 6] {
        let h = SampledFunction::from_fn(grid, |t| Complex64::new(hermite(HermiteIndex(n), t), 0.0));
        for r in [0.4, std::f64::consts::FRAC_PI_4, 1.2] {
            let expect = h.scale(Complex64::from_polar(1.0, -(n as f64) * r));
            for (name, method) in methods {
                let d = apply_frft(r, &h, method)?.relative_distance(&expect);
                println!("n = {n}  r = {r:.4}  {name:<10}  defect {d:.2e}");
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
