//! Zeros of one-variable slices: argument-principle counting on rectangles,
//! strip densities, value attainment by bisection plus Newton polishing, and
//! seeded searches for value witnesses deep inside the tube.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::cone::{conjugate_cone, Cone};
use crate::defaults;
use crate::error::{check_dim, Error, Result};
use crate::expsum::{restrict_to_line, ExpSum, TubePoint, OVERFLOW_EXPONENT};
use crate::jessen::{default_tracking_step, mean_motion};
use crate::linalg::{add, dot, norm, scale, sub};

/// Cells smaller than this are not split further when several roots remain.
const MIN_CELL: f64 = 1e-2;
/// Off-centre split position; keeps symmetric root lattices off the cuts.
const SPLIT: f64 = 0.5 + 1.0 / (17.0 * PI);
const MAX_CELLS: usize = 20_000;
const COLLISION_RETRIES: usize = 3;

/// Axis-aligned rectangle in one complex variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Rect {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Rect> {
        let r = Rect { x_lo, x_hi, y_lo, y_hi };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_lo, self.x_hi, self.y_lo, self.y_hi].iter().all(|v| v.is_finite());
        if !finite || self.x_lo >= self.x_hi || self.y_lo >= self.y_hi {
            return Err(Error::InvalidInput(format!("degenerate rectangle {self:?}")));
        }
        Ok(())
    }

    pub fn diameter(&self) -> f64 {
        (self.x_hi - self.x_lo).hypot(self.y_hi - self.y_lo)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x_lo + self.x_hi), 0.5 * (self.y_lo + self.y_hi))
    }

    fn contains(&self, w: Complex64, slack: f64) -> bool {
        w.re >= self.x_lo - slack
            && w.re <= self.x_hi + slack
            && w.im >= self.y_lo - slack
            && w.im <= self.y_hi + slack
    }

    fn grown(&self, d: f64) -> Rect {
        Rect { x_lo: self.x_lo - d, x_hi: self.x_hi + d, y_lo: self.y_lo - d, y_hi: self.y_hi + d }
    }

    fn split(&self) -> (Rect, Rect) {
        if self.x_hi - self.x_lo >= self.y_hi - self.y_lo {
            let m = self.x_lo + SPLIT * (self.x_hi - self.x_lo);
            (Rect { x_hi: m, ..*self }, Rect { x_lo: m, ..*self })
        } else {
            let m = self.y_lo + SPLIT * (self.y_hi - self.y_lo);
            (Rect { y_hi: m, ..*self }, Rect { y_lo: m, ..*self })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCountResult {
    pub rect: Rect,
    pub count: usize,
    /// Smallest `|phi| / scale` met on the contour.
    pub boundary_margin: f64,
    pub perturbed: bool,
}

/// `psi(w) = sum c_n exp(i mu_n w) - a`.
#[derive(Debug, Clone)]
struct Slice1 {
    mus: Vec<f64>,
    coeffs: Vec<Complex64>,
    a: Complex64,
}

impl Slice1 {
    fn new(phi: &ExpSum, a: Complex64) -> Result<Slice1> {
        check_dim(1, phi.dim())?;
        Ok(Slice1 {
            mus: phi.terms().iter().map(|t| t.lambda[0]).collect(),
            coeffs: phi.terms().iter().map(|t| t.coeff).collect(),
            a,
        })
    }

    fn max_mu(&self) -> f64 {
        self.mus.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn guard(&self, y_lo: f64, y_hi: f64) -> Result<()> {
        for &mu in &self.mus {
            let e = (-mu * y_lo).max(-mu * y_hi);
            if e > OVERFLOW_EXPONENT {
                return Err(Error::OverflowGuard { exponent: e });
            }
        }
        Ok(())
    }

    fn eval(&self, w: Complex64) -> Complex64 {
        let mut acc = -self.a;
        for (mu, c) in self.mus.iter().zip(&self.coeffs) {
            acc += c * (-mu * w.im).exp() * Complex64::from_polar(1.0, mu * w.re);
        }
        acc
    }

    fn deriv(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (mu, c) in self.mus.iter().zip(&self.coeffs) {
            acc += Complex64::new(0.0, *mu) * c * (-mu * w.im).exp() * Complex64::from_polar(1.0, mu * w.re);
        }
        acc
    }

    fn scale(&self, y: f64) -> f64 {
        self.a.norm()
            + self
                .mus
                .iter()
                .zip(&self.coeffs)
                .map(|(mu, c)| c.norm() * (-mu * y).exp())
                .sum::<f64>()
    }

    /// Bound for `|psi'|` on a horizontal or vertical step of length at most
    /// `reach` starting at height `y`.
    fn deriv_bound(&self, y: f64, reach: f64) -> f64 {
        self.mus
            .iter()
            .zip(&self.coeffs)
            .map(|(mu, c)| mu.abs() * c.norm() * (-mu * y + mu.abs() * reach).exp())
            .sum()
    }

    fn base_step(&self) -> f64 {
        let m = self.max_mu();
        if m > 0.0 {
            0.1 / m
        } else {
            f64::INFINITY
        }
    }
}

enum Tracked {
    Winding(f64, f64),
    Boundary,
}

/// Accumulated argument change of `psi` along the segment `a -> b`.
fn track_segment(s: &Slice1, a: Complex64, b: Complex64, step: f64, margin: &mut f64) -> Option<f64> {
    let len = (b - a).norm();
    let zero_rel = defaults::CONTOUR_ZERO;
    let rel = |w: Complex64, v: Complex64| v.norm() / s.scale(w.im);
    let mut t = 0.0;
    let mut cur = s.eval(a);
    let r = rel(a, cur);
    *margin = margin.min(r);
    if r < zero_rel {
        return None;
    }
    let mut total = 0.0;
    let mut w = a;
    while t < len {
        // |psi(w + s) - psi(w)| <= |psi(w)| / 2 along the whole step
        let reach = step.min(len - t);
        let cap = 0.5 * cur.norm() / s.deriv_bound(w.im, reach);
        let mut h = reach.min(cap);
        let mut halvings = 0;
        loop {
            let tn = if t + h >= len { len } else { t + h };
            let wn = a + (b - a) * (tn / len);
            let v = s.eval(wn);
            let r = rel(wn, v);
            *margin = margin.min(r);
            if r < zero_rel {
                return None;
            }
            let d = (v * cur.conj()).arg();
            if d.abs() <= FRAC_PI_2 {
                total += d;
                cur = v;
                w = wn;
                t = tn;
                break;
            }
            halvings += 1;
            if halvings > defaults::MAX_HALVINGS {
                return None;
            }
            h *= 0.5;
        }
    }
    Some(total)
}

fn winding(s: &Slice1, rect: &Rect) -> Tracked {
    let c = [
        Complex64::new(rect.x_lo, rect.y_lo),
        Complex64::new(rect.x_hi, rect.y_lo),
        Complex64::new(rect.x_hi, rect.y_hi),
        Complex64::new(rect.x_lo, rect.y_hi),
    ];
    let step = s.base_step();
    let mut margin = f64::INFINITY;
    let mut total = 0.0;
    for k in 0..4 {
        match track_segment(s, c[k], c[(k + 1) % 4], step, &mut margin) {
            Some(d) => total += d,
            None => return Tracked::Boundary,
        }
    }
    Tracked::Winding(total / TAU, margin)
}

fn count_slice(s: &Slice1, rect: &Rect) -> Result<ZeroCountResult> {
    rect.validate()?;
    let grown = rect.grown(1e-6 * rect.diameter());
    s.guard(grown.y_lo, grown.y_hi)?;
    for (r, perturbed) in [(*rect, false), (grown, true)] {
        if let Tracked::Winding(n, margin) = winding(s, &r) {
            let k = n.round();
            if (n - k).abs() < 0.25 && k >= 0.0 {
                return Ok(ZeroCountResult { rect: r, count: k as usize, boundary_margin: margin, perturbed });
            }
        }
    }
    Err(Error::BoundaryZeroPersistent)
}

/// Number of zeros of `phi` inside `rect`, with multiplicity.
pub fn count_zeros_rect(phi: &ExpSum, rect: &Rect) -> Result<ZeroCountResult> {
    if phi.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    count_slice(&Slice1::new(phi, Complex64::new(0.0, 0.0))?, rect)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityResult {
    pub y1: f64,
    pub y2: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub count: usize,
    /// `count / (2S)`.
    pub density: f64,
    pub density_error: f64,
    /// `(c(y1) - c(y2)) / (2 pi)` from mean motions.
    pub jessen_density: f64,
    pub jessen_density_error: f64,
}

/// Zero density of `phi` in the strip `y1 < Im w < y2` together with the
/// jump of the Jessen derivative across the strip.
pub fn zero_density_strip(phi: &ExpSum, y1: f64, y2: f64, s: f64) -> Result<DensityResult> {
    check_dim(1, phi.dim())?;
    if !(y1 < y2) || !(s > 0.0) {
        return Err(Error::InvalidInput("need y1 < y2 and S > 0".into()));
    }
    let count = count_zeros_rect(phi, &Rect::new(-s, s, y1, y2)?)?;
    let span = 2.0 * s;
    let m1 = mean_motion(phi, &[y1], &[1.0], span, default_tracking_step(phi, &[y1])?)?;
    let m2 = mean_motion(phi, &[y2], &[1.0], span, default_tracking_step(phi, &[y2])?)?;
    let n = phi.len() as f64;
    Ok(DensityResult {
        y1,
        y2,
        s,
        count: count.count,
        density: count.count as f64 / span,
        density_error: n / span,
        jessen_density: (m1.value - m2.value) / TAU,
        jessen_density_error: (m1.error + m2.error) / TAU,
    })
}

/// A polished root of `f(z) = A` on a complex line `z = base + w * dir`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueRoot {
    pub w: [f64; 2],
    pub z: TubePoint,
    /// `|f(z) - A|` relative to the term scale at `z`.
    pub residual: f64,
    pub multiplicity: usize,
    pub dir: Vec<f64>,
}

fn newton(s: &Slice1, start: Complex64, cell: &Rect) -> Option<Complex64> {
    let mut w = start;
    let mut v = s.eval(w);
    for _ in 0..defaults::NEWTON_ITERS {
        if v.norm() < 1e-3 * defaults::ROOT_RESIDUAL * s.scale(w.im) {
            break;
        }
        let d = s.deriv(w);
        if d.norm() == 0.0 {
            return None;
        }
        let mut step = v / d;
        let mut accepted = false;
        for _ in 0..30 {
            let wn = w - step;
            let vn = s.eval(wn);
            if vn.norm() < v.norm() {
                w = wn;
                v = vn;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let ok = v.norm() < defaults::ROOT_RESIDUAL * s.scale(w.im) && cell.contains(w, 1e-3 * cell.diameter());
    ok.then_some(w)
}

fn isolate(s: &Slice1, window: &Rect, max_roots: usize) -> Result<Vec<(Complex64, usize)>> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let first = count_slice(s, window)?;
    let mut stack = vec![(first.rect, first.count)];
    let mut cells = 0usize;
    while let Some((cell, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if out.len() >= max_roots {
            break;
        }
        cells += 1;
        if cells > MAX_CELLS {
            return Err(Error::BudgetExhausted);
        }
        if n == 1 || cell.diameter() < MIN_CELL {
            if let Some(w) = newton(s, cell.center(), &cell) {
                if !out.iter().any(|(r, _)| (r - w).norm() < 1e-9 * (1.0 + w.norm())) {
                    out.push((w, n));
                }
                continue;
            }
            if cell.diameter() < 1e-9 * (1.0 + cell.center().norm()) {
                return Err(Error::BudgetExhausted);
            }
        }
        let (a, b) = cell.split();
        let ca = count_slice(s, &a)?;
        let cb = count_slice(s, &b)?;
        // second half first on the stack so the lower-left cell is processed first
        stack.push((cb.rect, cb.count));
        stack.push((ca.rect, ca.count));
    }
    Ok(out)
}

fn perturbed_dir(dir: &[f64], k: usize) -> Vec<f64> {
    if k == 0 {
        return dir.to_vec();
    }
    let n = norm(dir);
    dir.iter()
        .enumerate()
        .map(|(j, d)| d + 1e-6 * k as f64 * n * (1.0 / (j as f64 + 1.0) + 0.5f64.sqrt() * j as f64).fract())
        .collect()
}

/// Roots of `f(base + w dir) = a` with `w` inside `window`, at most
/// `max_roots` of them, each polished and checked against `f` directly.
pub fn solve_value(
    f: &ExpSum,
    a: Complex64,
    base: &TubePoint,
    dir: &[f64],
    window: &Rect,
    max_roots: usize,
) -> Result<Vec<ValueRoot>> {
    window.validate()?;
    let mut last = Error::NotFound;
    for k in 0..=COLLISION_RETRIES {
        let d = perturbed_dir(dir, k);
        let phi = match restrict_to_line(f, base, &d) {
            Ok(phi) => phi,
            Err(e @ Error::CollidingFrequencies(..)) => {
                last = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let s = Slice1::new(&phi, a)?;
        let roots = isolate(&s, window, max_roots)?;
        let mut out = Vec::with_capacity(roots.len());
        for (w, m) in roots {
            let z = TubePoint {
                x: add(&base.x, &scale(&d, w.re)),
                y: add(&base.y, &scale(&d, w.im)),
            };
            let residual = (f.evaluate(&z)? - a).norm() / (f.term_scale(&z.y)? + a.norm());
            if residual < defaults::ROOT_RESIDUAL {
                out.push(ValueRoot { w: [w.re, w.im], z, residual, multiplicity: m, dir: d.clone() });
            }
        }
        return Ok(out);
    }
    Err(last)
}

/// A verified point with `f(z) = A`, `y` strictly inside the conjugate cone
/// and `|y| > q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub z: TubePoint,
    pub residual: f64,
    pub ray: Vec<f64>,
    pub w: [f64; 2],
    pub target: [f64; 2],
}

fn random_interior(dual: &Cone, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut y = vec![0.0; dual.dim()];
    for g in dual.generators() {
        let wgt = rng.gen_range(0.05..1.0) / norm(g);
        for (yi, gi) in y.iter_mut().zip(g) {
            *yi += wgt * gi;
        }
    }
    let n = norm(&y);
    scale(&y, 1.0 / n)
}

/// Seeded search for `z` with `f(z) = a`, `Im z` in the interior of the
/// conjugate cone of `cone` and `|Im z| > q`.
///
/// Heights are sampled in a shell beyond `q`; pairs of heights with different
/// dominant terms of `f - a` bound a segment across which the dominant term
/// changes, and the complex line through that segment is searched for roots.
/// Returns `None` when `line_budget` lines yield nothing.
pub fn value_search(
    f: &ExpSum,
    cone: &Cone,
    a: Complex64,
    q: f64,
    line_budget: usize,
    seed: u64,
) -> Result<Option<Witness>> {
    check_dim(cone.dim(), f.dim())?;
    if !(q >= 0.0) {
        return Err(Error::InvalidInput("q must be nonnegative".into()));
    }
    let g = f.minus_constant(a)?;
    if g.len() < 2 {
        return Ok(None);
    }
    let dual = conjugate_cone(cone)?;
    let p = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r_lo = 1.05 * q + 0.5;
    let r_hi = q + 20f64.max(2.0 * q);
    let mut heights: Vec<(Vec<f64>, usize)> = Vec::new();
    for _ in 0..256 {
        let u = random_interior(&dual, &mut rng);
        let r = rng.gen_range(r_lo..r_hi);
        let y = scale(&u, r);
        if let Ok(Some(d)) = g.dominant_index(&y) {
            heights.push((y, d));
        }
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..heights.len() {
        for j in i + 1..heights.len() {
            if heights[i].1 != heights[j].1 {
                pairs.push((norm(&sub(&heights[i].0, &heights[j].0)), i, j));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    pairs.truncate(line_budget);
    let offsets: Vec<Vec<f64>> = (0..pairs.len())
        .map(|_| (0..p).map(|_| rng.gen_range(0.0..TAU)).collect())
        .collect();
    let n_terms = g.len() as f64;

    let found: Vec<Option<Witness>> = pairs
        .par_iter()
        .zip(&offsets)
        .map(|(&(_, i, j), x0)| {
            let (ya, da) = &heights[i];
            let (yb, db) = &heights[j];
            let dir = sub(yb, ya);
            let dmu = dot(&dir, &sub(&g.terms()[*da].lambda, &g.terms()[*db].lambda)).abs();
            if dmu == 0.0 {
                return None;
            }
            let x_len = (TAU * (n_terms + 3.0) / dmu).min(200.0);
            let base = TubePoint { x: x0.clone(), y: ya.clone() };
            let window = Rect { x_lo: 0.0, x_hi: x_len, y_lo: 0.0, y_hi: 1.0 };
            let roots = solve_value(f, a, &base, &dir, &window, 8).ok()?;
            roots.into_iter().find_map(|r| {
                let inside = cone.dual_interior_contains(&r.z.y, 0.0).unwrap_or(false);
                (inside && norm(&r.z.y) > q).then_some(Witness {
                    z: r.z,
                    residual: r.residual,
                    ray: r.dir,
                    w: r.w,
                    target: [a.re, a.im],
                })
            })
        })
        .collect();
    Ok(found.into_iter().flatten().next())
}

/// [`value_search`] for the value zero.
pub fn tail_zero_search(f: &ExpSum, cone: &Cone, q: f64, line_budget: usize, seed: u64) -> Result<Option<Witness>> {
    value_search(f, cone, Complex64::new(0.0, 0.0), q, line_budget, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn one_plus_exp(mu: f64) -> ExpSum {
        ExpSum::from_pairs(1, [(vec![0.0], c(1.0)), (vec![mu], c(1.0))]).unwrap()
    }

    #[test]
    fn count_examples() {
        let r = Rect::new(-10.0, 10.0, -1.0, 1.0).unwrap();
        assert_eq!(count_zeros_rect(&one_plus_exp(1.0), &r).unwrap().count, 4);
        let e = ExpSum::single(vec![1.0], c(1.0)).unwrap();
        assert_eq!(count_zeros_rect(&e, &r).unwrap().count, 0);
        let sq = one_plus_exp(1.0).mul(&one_plus_exp(1.0)).unwrap();
        assert_eq!(count_zeros_rect(&sq, &r).unwrap().count, 8);
    }

    #[test]
    fn additivity_over_adjacent_rects() {
        let f = ExpSum::from_pairs(1, [(vec![0.0], c(1.0)), (vec![1.0], c(2.0)), (vec![2.5], c(1.5))]).unwrap();
        let whole = count_zeros_rect(&f, &Rect::new(-20.0, 20.0, -3.0, 3.0).unwrap()).unwrap().count;
        let left = count_zeros_rect(&f, &Rect::new(-20.0, 0.37, -3.0, 3.0).unwrap()).unwrap().count;
        let right = count_zeros_rect(&f, &Rect::new(0.37, 20.0, -3.0, 3.0).unwrap()).unwrap().count;
        assert_eq!(whole, left + right);
        assert!(whole > 0);
    }

    #[test]
    fn boundary_zero_is_perturbed() {
        // pi lies on the right edge
        let r = Rect::new(0.0, PI, -1.0, 1.0).unwrap();
        let res = count_zeros_rect(&one_plus_exp(1.0), &r).unwrap();
        assert!(res.perturbed);
        assert_eq!(res.count, 1);
    }

    #[test]
    fn density_examples() {
        let d = zero_density_strip(&one_plus_exp(1.0), -1.0, 1.0, 1e3).unwrap();
        assert!((d.density - 1.0 / TAU).abs() < 2e-3, "{d:?}");
        assert!((d.jessen_density - 1.0 / TAU).abs() < 2e-3, "{d:?}");
        let d = zero_density_strip(&ExpSum::single(vec![1.0], c(1.0)).unwrap(), -1.0, 1.0, 1e3).unwrap();
        assert_eq!(d.density, 0.0);
        let d = zero_density_strip(&one_plus_exp(2.0), -1.0, 1.0, 1e3).unwrap();
        assert!((d.density - 2.0 / TAU).abs() < 2e-3, "{d:?}");
    }

    #[test]
    fn solve_value_examples() {
        let f = ExpSum::single(vec![-1.0], c(1.0)).unwrap();
        let win = Rect::new(-0.5, 13.0, -0.5, 0.5).unwrap();
        let roots = solve_value(&f, c(1.0), &TubePoint::real(vec![0.0]), &[1.0], &win, 10).unwrap();
        assert_eq!(roots.len(), 3);
        for (k, r) in roots.iter().enumerate() {
            assert!((r.w[0] - TAU * k as f64).abs() < 1e-9 && r.w[1].abs() < 1e-9);
            assert!(r.residual < 1e-10);
        }

        let case1 = ExpSum::from_pairs(
            2,
            [(vec![0.0, 0.0], c(2.0)), (vec![1.0, 0.0], c(1.0)), (vec![0.0, 1.0], c(1.0))],
        )
        .unwrap();
        let win = Rect::new(0.0, 40.0, 5.0, 25.0).unwrap();
        let roots = solve_value(&case1, c(5.0), &TubePoint::real(vec![0.3, 0.1]), &[1.0, 0.7], &win, 4).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn double_root_has_multiplicity_two() {
        let sq = one_plus_exp(1.0).mul(&one_plus_exp(1.0)).unwrap();
        let win = Rect::new(2.0, 4.0, -0.5, 0.5).unwrap();
        let roots = solve_value(&sq, c(0.0), &TubePoint::real(vec![0.0]), &[1.0], &win, 4).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[0].w[0] - PI).abs() < 1e-4);
    }

    #[test]
    fn case5_value_is_attained_deep_in_tube() {
        let f = ExpSum::from_pairs(2, [(vec![-1.0, 0.0], c(1.0)), (vec![0.0, -1.0], c(1.0))]).unwrap();
        let w = value_search(&f, &Cone::orthant(2), c(3.0), 5.0, 64, 1).unwrap().expect("witness");
        assert!(norm(&w.z.y) > 5.0 && w.z.y.iter().all(|v| *v > 0.0));
        assert!(w.residual < 1e-10);
    }

    #[test]
    fn tail_search_examples() {
        let quad = Cone::orthant(2);
        let nonlinear =
            ExpSum::from_pairs(2, [(vec![0.0, 0.0], c(1.0)), (vec![1.0, 0.0], c(1.0)), (vec![0.0, 1.0], c(1.0))])
                .unwrap();
        // H(-y) = max(0, -y1, -y2) vanishes on the quadrant, so no tail zeros
        assert!(tail_zero_search(&nonlinear, &quad, 5.0, 32, 3).unwrap().is_none());
        let single = ExpSum::single(vec![1.0, 2.0], c(1.0)).unwrap();
        assert!(tail_zero_search(&single, &quad, 5.0, 32, 3).unwrap().is_none());
        let boundary = ExpSum::from_pairs(2, [(vec![0.0, 0.0], c(1.0)), (vec![1.0, 0.0], c(1.0))]).unwrap();
        assert!(tail_zero_search(&boundary, &quad, 5.0, 32, 3).unwrap().is_none());
        let good =
            ExpSum::from_pairs(2, [(vec![0.0, 0.0], c(3.0)), (vec![-1.0, 0.0], c(1.0)), (vec![0.0, -1.0], c(2.0))])
                .unwrap();
        let w = tail_zero_search(&good, &quad, 5.0, 64, 3).unwrap().expect("witness");
        assert!(norm(&w.z.y) > 5.0 && w.residual < 1e-10);
    }
}
