//! Zeros of the Zak transform of Hermite windows: point checks and a grid
//! search with polishing.

use std::f64::consts::FRAC_1_SQRT_2;

use gabor_zak::frame::find_zak_zeros;
use gabor_zak::{zak_point, Truncation, UnitaryOp, Window};

pub fn run_example() -> gabor_zak::Result<()> {
    let dilated = Window::hermite(2).then(UnitaryOp::Dilation { a: FRAC_1_SQRT_2 });
    let checks = [
        (Window::hermite(2), 0.0, 0.0),
        (Window::hermite(2), 0.5, 0.5),
        (Window::hermite(0), 0.5, 0.5),
        (dilated.clone(), 0.25, 0.5),
        (dilated.clone(), 0.75, 0.5),
        (Window::hermite(4), 0.0, 0.0),
    ];
    for (w, x, om) in &checks {
        let v = zak_point(w, *x, *om, Truncation::Fixed(12))?;
        println!("|Z {w}({x}, {om})| = {:.3e}  (tail bound {:.1e})", v.value.norm(), v.tail_bound);
    }
    for w in [Window::hermite(0), Window::hermite(2), dilated] {
        println!("zeros of Z {w}:");
        for z in find_zak_zeros(&w, 128, 1e-12)? {
            println!("  ({:.12}, {:.12})  residual {:.1e}  certified {}", z.x, z.omega, z.residual, z.certified);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
