//! Jessen function, mean motion and the secular vector.
//!
//! For f = 1 + e^{iz} Jensen's formula gives J(y) = max(0, -y) and mean
//! motion c(y) = 1 for y < 0, 0 for y > 0.
//!
//! Run with `cargo run --release --example jessen_function`.

use num_complex::Complex64;
use tubeap::expsum::ExpSum;
use tubeap::jessen::{convexity_check, default_tracking_step, jessen_with, mean_motion, secular_vector, QuadParams};

fn main() -> tubeap::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    let f = ExpSum::from_pairs(1, [(vec![0.0], one), (vec![1.0], one)])?;
    let q = QuadParams { s: 1e4, ..QuadParams::default() };
    for y in [-1.0, -0.5, 0.5, 1.0] {
        let j = jessen_with(&f, &[y], &q)?;
        let step = default_tracking_step(&f, &[y])?;
        let m = mean_motion(&f, &[y], &[1.0], 2e3, step)?;
        println!(
            "y = {y:5.2}  J = {:.5} +/- {:.1e} (exact {:.5})  mean motion = {:.4}",
            j.value,
            j.stderr,
            (-y).max(0.0),
            m.value
        );
    }
    let g = secular_vector(&f, &[-1.0], 0.05, &q)?;
    println!("secular vector at y = -1: {:?}", g.value);

    let c = convexity_check(&f, &[-1.0], &[1.0], &q)?;
    println!("midpoint convexity gap {:.4} (tolerance {:.1e}): {}", c.gap, c.tolerance, c.passed);
    Ok(())
}
