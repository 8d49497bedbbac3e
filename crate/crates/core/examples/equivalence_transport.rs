//! Unitarily equivalent systems share their frame bounds. A fractional
//! Fourier transform rotates `2^{-1/2} Z^2` and only changes the phase of
//! `h_2`.

use gabor_zak::frame::{analyze, equivalence_transport, GaborSystem};
use gabor_zak::{OperatorChain, PointSet, UnitaryOp, Window};

pub fn run_example() -> gabor_zak::Result<()> {
    let sys = GaborSystem::single(Window::hermite(2), PointSet::sqrt2_square());
    let before = analyze(&sys, 128)?;
    println!("before: {} A_est {:.3e} B_est {:.12}", before.verdict, before.a_est, before.b_est);
    for chain in [
        vec![UnitaryOp::Frft { r: 0.5 }],
        vec![UnitaryOp::Dilation { a: std::f64::consts::SQRT_2 }],
        vec![UnitaryOp::Chirp { q: 0.8 }, UnitaryOp::Frft { r: -1.1 }, UnitaryOp::Dilation { a: 0.7 }],
    ] {
        let chain = OperatorChain::new(chain)?;
        let moved = equivalence_transport(&sys, &chain)?;
        let after = analyze(&moved, 128)?;
        println!(
            "{:?}\n  set generator {}\n  {} A_est {:.3e} B_est {:.12}",
            chain.ops,
            moved.set.generator(),
            after.verdict,
            after.a_est,
            after.b_est
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
