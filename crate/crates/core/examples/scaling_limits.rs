//! Large-scale behaviour of the Jessen function: J(Ry)/R against the
//! indicator, mollified secular vectors, and linearity versus zeros.
//!
//! Run with `cargo run --release --example scaling_limits`.

use num_complex::Complex64;
use tubeap::classify::{secular_convergence, theorem1_verify, theorem_r_check, LinearityParams};
use tubeap::cone::make_cone;
use tubeap::expsum::ExpSum;
use tubeap::jessen::QuadParams;

fn main() -> tubeap::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    let quadrant = make_cone(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    let q = QuadParams::default();
    let r: Vec<f64> = (0..7).map(|k| f64::powi(2.0, k)).collect();

    let f = ExpSum::from_pairs(2, [(vec![-1.0, -1.0], one), (vec![0.0, 0.0], one)])?;
    print!("{}", theorem1_verify(&f, &quadrant, &[1.0, 1.0], &r, &q)?.to_table());

    let g = ExpSum::from_pairs(
        2,
        [
            (vec![0.0, 0.0], Complex64::new(3.0, 0.0)),
            (vec![-1.0, 0.0], one),
            (vec![0.0, -1.0], Complex64::new(2.0, 0.0)),
        ],
    )?;
    let bases = vec![vec![1.5, 1.5], vec![2.5, 1.5]];
    let q5 = QuadParams { n_samples: 16384, ..q };
    print!("{}", secular_convergence(&g, &quadrant, &bases, &[16.0, 32.0, 64.0], 0.25, 5, &q5)?.to_table());

    let h = ExpSum::from_pairs(1, [(vec![0.0], one), (vec![1.0], one)])?;
    print!("{}", theorem_r_check(&h, &[0.5], &[1.5], &q, &LinearityParams::default())?.to_table());
    print!("{}", theorem_r_check(&h, &[-1.0], &[1.0], &q, &LinearityParams::default())?.to_table());
    Ok(())
}
