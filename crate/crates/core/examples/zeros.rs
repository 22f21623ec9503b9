//! Zero counting by the argument principle, strip densities and value roots.
//!
//! Run with `cargo run --release --example zeros`.

use num_complex::Complex64;
use tubeap::cone::make_cone;
use tubeap::expsum::{ExpSum, TubePoint};
use tubeap::zeros::{count_zeros_rect, solve_value, tail_zero_search, zero_density_strip, Rect};

fn main() -> tubeap::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    let f = ExpSum::from_pairs(1, [(vec![0.0], one), (vec![1.0], one)])?;

    // zeros of 1 + e^{iw} sit at w = (2k + 1) pi
    let c = count_zeros_rect(&f, &Rect::new(-10.0, 10.0, -1.0, 1.0)?)?;
    println!("zeros in [-10, 10] x [-1, 1]: {}", c.count);

    let d = zero_density_strip(&f, -1.0, 1.0, 1e3)?;
    println!(
        "density {:.5} +/- {:.1e}, from mean motion {:.5}, exact {:.5}",
        d.density,
        d.density_error,
        d.jessen_density,
        1.0 / std::f64::consts::TAU
    );

    let a = Complex64::new(2.0, -1.0);
    let roots = solve_value(&f, a, &TubePoint::imag(vec![0.0]), &[1.0], &Rect::new(-4.0, 4.0, -3.0, 3.0)?, 8)?;
    for r in &roots {
        println!("f(w) = {a} at w = {:.6} + {:.6}i (residual {:.1e})", r.w[0], r.w[1], r.residual);
    }

    let g = ExpSum::from_pairs(
        2,
        [
            (vec![0.0, 0.0], Complex64::new(3.0, 0.0)),
            (vec![-1.0, 0.0], one),
            (vec![0.0, -1.0], Complex64::new(2.0, 0.0)),
        ],
    )?;
    let quadrant = make_cone(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    if let Some(w) = tail_zero_search(&g, &quadrant, 5.0, 64, 42)? {
        println!("zero far out in the tube at y = {:?} (residual {:.1e})", w.z.y, w.residual);
    }
    Ok(())
}
