//! `G(h_2, Z^2 u (Z^2 + z))` for several shifts `z`. Half-integer shifts keep
//! a common zero; other shifts give a positive lower bound estimate.
//! A LikelyFrame verdict is numerical evidence only.

use gabor_zak::frame::{analyze, GaborSystem};
use gabor_zak::{PointSet, TfPoint, Window};

pub fn run_example() -> gabor_zak::Result<()> {
    for z in [TfPoint::new(0.25, 0.25), TfPoint::new(0.5, 0.0), TfPoint::new(0.5, 0.5), TfPoint::new(0.1, 0.3)] {
        let set = PointSet::integer().with_shift(z)?;
        let rep = analyze(&GaborSystem::single(Window::hermite(2), set), 1024)?;
        println!(
            "z = ({}, {})  A_est {:.4e}  B_est {:.4}  slack {:.2e}  {}",
            z.x, z.omega, rep.a_est, rep.b_est, rep.slack, rep.verdict
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
