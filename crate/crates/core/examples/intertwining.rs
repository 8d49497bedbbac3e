//! Each unitary operator moves time-frequency shifts along its matrix:
//! `U pi(z) U^{-1} = c pi(M z)` with `|c| = 1`.

use gabor_zak::special_fn::HermiteIndex;
use gabor_zak::tf_operators::{intertwining_defect, Grid, TfPoint, UnitaryOp};

pub fn run_example() -> gabor_zak::Result<()> {
    let ops =
        [UnitaryOp::Dilation { a: 1.6 }, UnitaryOp::Chirp { q: -0.7 }, UnitaryOp::Frft { r: 0.9 }, UnitaryOp::Fourier];
    let points = [TfPoint::new(0.4, -0.3), TfPoint::new(-1.1, 0.8), TfPoint::new(0.25, 1.5)];
    for op in ops {
        let m = op.matrix();
        let worst = points
            .iter()
            .map(|z| intertwining_defect(&op, *z, HermiteIndex(1), Grid::default()))
            .collect::<gabor_zak::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("{op:?}\n  matrix {m}\n  worst defect {worst:.2e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
