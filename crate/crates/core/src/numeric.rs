//! Order-fixed compensated summation and seeded low-discrepancy point sets.
//!
//! Parallel reductions split the index range into fixed-size chunks, sum each
//! chunk with Neumaier compensation, and combine chunk totals in index order.
//! The result therefore does not depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Chunk length for order-fixed parallel reductions.
pub const CHUNK: usize = 4096;

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum of `f(i)` for `i in 0..n`, independent of thread count.
pub fn par_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = NeumaierSum::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                acc.add(f(i));
            }
            acc.total()
        })
        .collect();
    let mut acc = NeumaierSum::default();
    for p in partials {
        acc.add(p);
    }
    acc.total()
}

/// Componentwise version of [`par_sum`] for a fixed number of outputs.
pub fn par_sum_vec<F, const K: usize>(n: usize, f: F) -> [f64; K]
where
    F: Fn(usize) -> [f64; K] + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partials: Vec<[f64; K]> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = [NeumaierSum::default(); K];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let v = f(i);
                for k in 0..K {
                    acc[k].add(v[k]);
                }
            }
            acc.map(|a| a.total())
        })
        .collect();
    let mut acc = [NeumaierSum::default(); K];
    for p in partials {
        for k in 0..K {
            acc[k].add(p[k]);
        }
    }
    acc.map(|a| a.total())
}

/// Additive-recurrence (Kronecker) sequence in `[0,1)^dim` built on the
/// generalized golden ratio, with a Cranley–Patterson shift.
#[derive(Debug, Clone)]
pub struct Kronecker {
    alpha: Vec<f64>,
    shift: Vec<f64>,
}

impl Kronecker {
    pub fn new(dim: usize, shift: Vec<f64>) -> Self {
        debug_assert_eq!(shift.len(), dim);
        // phi_d is the positive root of x^(d+1) = x + 1
        let mut phi = 2.0f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
        }
        let alpha = (1..=dim).map(|j| (1.0 / phi.powi(j as i32)).fract()).collect();
        Kronecker { alpha, shift }
    }

    /// Shift drawn from a ChaCha stream keyed on `(seed, stream)`.
    pub fn seeded(dim: usize, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let shift = (0..dim).map(|_| rng.gen::<f64>()).collect();
        Self::new(dim, shift)
    }

    /// Writes the `k`-th point into `out`.
    pub fn point(&self, k: usize, out: &mut [f64]) {
        let kf = k as f64;
        for ((o, a), s) in out.iter_mut().zip(&self.alpha).zip(&self.shift) {
            // k * a is reduced before adding the shift to keep the fraction exact-ish
            *o = ((kf * a).fract() + s).fract();
        }
    }
}

/// Mean and standard error of the mean from batch means.
pub fn batch_stats(means: &[f64]) -> (f64, f64) {
    let b = means.len() as f64;
    let mut acc = NeumaierSum::default();
    for m in means {
        acc.add(*m);
    }
    let mean = acc.total() / b;
    if means.len() < 2 {
        return (mean, 0.0);
    }
    let mut var = NeumaierSum::default();
    for m in means {
        var.add((m - mean) * (m - mean));
    }
    let var = var.total() / (b - 1.0);
    (mean, (var / b).sqrt())
}
