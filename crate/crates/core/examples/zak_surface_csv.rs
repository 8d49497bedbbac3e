//! Writes Zak surfaces of h_2 and of its dilation by 1/sqrt(2) as CSV with
//! JSON sidecars. The output directory is the first argument (default: the
//! system temporary directory).

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};

use gabor_zak::{zak_surface, UnitaryOp, Window};

pub fn run_example() -> gabor_zak::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    write_surfaces(&dir)
}

pub fn write_surfaces(dir: &Path) -> gabor_zak::Result<()> {
    let windows = [
        ("zak_h2", Window::hermite(2)),
        ("zak_h2_dilated", Window::hermite(2).then(UnitaryOp::Dilation { a: FRAC_1_SQRT_2 })),
    ];
    for (name, w) in windows {
        let s = zak_surface(&w, 64)?;
        let csv = dir.join(format!("{name}.csv"));
        s.write_files(&csv, &csv.with_extension("json"))?;
        let (i, j, m) = s.abs_min();
        let p = s.point(i, j);
        println!("{}: smallest |Z| = {m:.2e} at ({}, {})", csv.display(), p.x, p.omega);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
