//! Growth indicator: closed form, sampled estimate and the growth bound.
//!
//! Run with `cargo run --release --example indicator`.

use num_complex::Complex64;
use tubeap::expsum::ExpSum;
use tubeap::indicator::{frequency_gap, normalize, p_indicator_empirical, p_indicator_exact, pl_bound_check};

fn main() -> tubeap::Result<()> {
    let f = ExpSum::from_pairs(
        2,
        [
            (vec![0.0, 0.0], Complex64::new(1.5, 0.0)),
            (vec![-1.0, 0.5], Complex64::new(2.0, 1.0)),
            (vec![0.7, -1.0], Complex64::new(-1.0, 0.5)),
        ],
    )?;
    for y in [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8]] {
        let exact = p_indicator_exact(&f, &y)?;
        // the sampled estimate needs r_max * gap well above 1
        let r_max = (25.0 / frequency_gap(&f, &y)).max(50.0);
        let est = p_indicator_empirical(&f, &y, r_max, 256, 7)?;
        println!(
            "y = {y:?}  exact {exact:.4}  sampled {:.4} at r = {r_max:.0}  |gap| <= {:.4}",
            est.empirical, est.gap_bound
        );
    }
    let big_f = normalize(&f, &[1.0, 0.0], None)?;
    let bad = pl_bound_check(&big_f, &[0.0, 1.0], &[1.0, 5.0, 20.0], 128, 7)?;
    println!("normalized sum has coefficient mass {:.4}", big_f.coefficient_l1());
    println!("growth bound violations: {}", bad.len());
    Ok(())
}
