//! Cones, conjugate cones, support functions and shifted-cone membership.
//!
//! Run with `cargo run --example cone_geometry`.

use tubeap::cone::{conjugate_cone, make_cone, spectrum_in_shifted_cone, support_function, PointSet};

fn main() -> tubeap::Result<()> {
    let wedge = make_cone(vec![vec![1.0, 0.0], vec![1.0, 1.0]])?;
    let dual = conjugate_cone(&wedge)?;
    println!("cone generators      {:?}", wedge.generators());
    println!("conjugate generators {:?}", dual.generators());
    println!("(2, 1) in cone:      {}", wedge.contains(&[2.0, 1.0], 1e-12)?);
    println!("(0, 1) in cone:      {}", wedge.contains(&[0.0, 1.0], 1e-12)?);

    let spectrum = PointSet::new(vec![vec![-1.0, 0.0], vec![0.0, 0.0], vec![1.0, 2.0]], vec![])?;
    for x in [[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]] {
        println!("support function at {x:?} = {}", support_function(&spectrum, &x)?);
    }
    let quadrant = make_cone(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    for shift in [[-1.0, 0.0], [0.0, 0.0]] {
        let ok = spectrum_in_shifted_cone(&spectrum, &shift, &quadrant, 1e-12)?;
        println!("spectrum inside {shift:?} + quadrant: {ok}");
    }
    Ok(())
}
