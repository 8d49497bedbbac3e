//! Hermite functions and the theta function identities behind the zero of
//! `Z h_2` at the origin.

use gabor_zak::special_fn::{hermite, hermite_all, jacobi_defect, log_derivative_defect, theta3, HermiteIndex};

pub fn run_example() -> gabor_zak::Result<()> {
    println!("h_n(0.3) for n = 0..6:");
    for (n, v) in hermite_all(6, 0.3).iter().enumerate() {
        println!("  h_{n}(0.3) = {v:+.15e}");
    }

    // Riemann sums of h_m h_n on a fine grid
    let step = 1.0 / 64.0;
    let gram = |m: usize, n: usize| -> f64 {
        (-640..=640)
            .map(|i| {
                let t = i as f64 * step;
                hermite(HermiteIndex(m), t) * hermite(HermiteIndex(n), t)
            })
            .sum::<f64>()
            * step
    };
    println!("<h_2, h_2> = {:.15}", gram(2, 2));
    println!("<h_2, h_4> = {:+.3e}", gram(2, 4));

    let th = theta3(1.0)?;
    println!("theta_3(1)                 = {:.15}", th.value);
    println!("theta_3(1) + 4 theta_3'(1) = {:+.3e}", th.value + 4.0 * th.derivative);
    for alpha in [0.25, 0.5, 1.0, 2.0, 4.0] {
        println!(
            "alpha = {alpha:<4}  jacobi defect {:.2e}  log-derivative defect {:.2e}",
            jacobi_defect(alpha)?,
            log_derivative_defect(alpha)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gabor_zak::Result<()> {
    run_example()
}
