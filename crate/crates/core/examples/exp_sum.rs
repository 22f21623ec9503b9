//! Building, evaluating and restricting exponential sums.
//!
//! Run with `cargo run --example exp_sum`.

use num_complex::Complex64;
use tubeap::expsum::{find_almost_period, fourier_coefficient, restrict_to_line, ExpSum, TubePoint};

fn main() -> tubeap::Result<()> {
    // f(z) = 1 + 2 e^{i z1} + e^{i (z1 + sqrt2 z2)}
    let f = ExpSum::from_pairs(
        2,
        [
            (vec![0.0, 0.0], Complex64::new(1.0, 0.0)),
            (vec![1.0, 0.0], Complex64::new(2.0, 0.0)),
            (vec![1.0, std::f64::consts::SQRT_2], Complex64::new(1.0, 0.0)),
        ],
    )?;
    let z = TubePoint::new(vec![0.3, -1.2], vec![0.5, 0.25])?;
    println!("f(z)      = {}", f.evaluate(&z)?);
    println!("log|f(z)| = {}", f.log_abs(&z)?);

    let c = fourier_coefficient(&f, &[1.0, 0.0], &[0.0, 0.0], 200.0, 512)?;
    println!("coefficient at (1, 0) ~ {} (bound {:.2e})", c.value, c.stderr);

    let line = restrict_to_line(&f, &z, &[0.6, 0.8])?;
    println!("restriction to a complex line has {} terms", line.len());
    println!("g(0) = {} equals f(z)", line.eval_1d(Complex64::new(0.0, 0.0))?);

    let tau = find_almost_period(&f, 0.5, &[vec![0.0, 0.0]], 60.0, 64)?;
    println!("almost period tau = {tau:?}");
    Ok(())
}
