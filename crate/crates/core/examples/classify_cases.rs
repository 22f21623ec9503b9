//! Value-distribution classification of spectra and the matching experiments.
//!
//! Run with `cargo run --release --example classify_cases`.

use num_complex::Complex64;
use tubeap::classify::{classify_spectrum, run_case_experiment, CaseParams};
use tubeap::cone::{make_cone, PointSet};
use tubeap::expsum::ExpSum;

fn main() -> tubeap::Result<()> {
    let quadrant = make_cone(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?;
    let ps = |pts: &[[f64; 2]], lim: &[[f64; 2]]| {
        PointSet::new(pts.iter().map(|p| p.to_vec()).collect(), lim.iter().map(|p| p.to_vec()).collect())
    };
    let spectra = [
        ps(&[[1.0, 0.0], [0.0, 1.0], [2.0, 3.0]], &[])?,
        ps(&[[-1.0, -1.0], [0.0, 0.0], [1.0, 2.0]], &[])?,
        ps(&(1..=5).map(|n| [-1.0 + 1.0 / n as f64; 2]).collect::<Vec<_>>(), &[[-1.0, -1.0]])?,
        ps(&[[1.0, 2.0]], &[[-1.0, 1.0]])?,
        ps(&[[-1.0, 0.0], [0.0, -1.0]], &[])?,
    ];
    for sp in &spectra {
        let label = classify_spectrum(sp, &quadrant)?;
        println!("{}  shift {:?}", label.case_id, label.shift);
    }

    let one = Complex64::new(1.0, 0.0);
    let f = ExpSum::from_pairs(2, [(vec![-1.0, 0.0], one), (vec![0.0, -1.0], one)])?;
    let label = classify_spectrum(&f.spectrum(), &quadrant)?;
    let exp = run_case_experiment(&f, &quadrant, &label, &CaseParams::default())?;
    print!("{}", exp.report.to_table());
    Ok(())
}
