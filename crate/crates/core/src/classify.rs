//! Spectrum classification by shifted-cone containment, and the experiment
//! drivers: indicator scaling, mollified secular convergence, linearity of the
//! Jessen function versus zeros, and value attainment per case.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::cone::{cone_contains, conjugate_cone, Cone, PointSet, MEMBERSHIP_TOL};
use crate::error::{check_dim, Error, Result};
use crate::expsum::{restrict_to_line, ExpSum, HeightSlice, TubePoint};
use crate::indicator::p_indicator_exact;
use crate::jessen::{jessen_profile, jessen_with, secular_vector, QuadParams};
use crate::linalg::{add, dot, lex_cmp, norm, scale, sub};
use crate::zeros::{count_zeros_rect, solve_value, value_search, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseId {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "5")]
    Five,
    #[serde(rename = "not_extendable")]
    NotExtendable,
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseId::One => "case 1",
            CaseId::Two => "case 2",
            CaseId::Three => "case 3",
            CaseId::Four => "case 4",
            CaseId::Five => "case 5",
            CaseId::NotExtendable => "not_extendable",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub case_id: CaseId,
    pub shift: Option<Vec<f64>>,
    pub notes: String,
    /// One line per tested candidate shift.
    pub trace: Vec<String>,
}

fn is_zero(v: &[f64]) -> bool {
    norm(v) <= MEMBERSHIP_TOL
}

fn shift_works(nonzero: &[&Vec<f64>], shift: &[f64], cone: &Cone) -> Result<bool> {
    for l in nonzero {
        if !cone_contains(cone, &sub(l, shift), MEMBERSHIP_TOL)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn smallest_shift<'a>(
    candidates: impl Iterator<Item = &'a Vec<f64>>,
    nonzero: &[&Vec<f64>],
    cone: &Cone,
    trace: &mut Vec<String>,
    case: u8,
) -> Result<Option<Vec<f64>>> {
    let mut cands: Vec<&Vec<f64>> = candidates.collect();
    cands.sort_by(|a, b| lex_cmp(a, b));
    for c in cands {
        let ok = shift_works(nonzero, c, cone)?;
        trace.push(format!("case {case}: shift {c:?} {}", if ok { "accepted" } else { "rejected" }));
        if ok {
            return Ok(Some(c.clone()));
        }
    }
    Ok(None)
}

/// Assigns one of the five spectral cases (or `NotExtendable`).
///
/// Candidate shifts are drawn from the declared points and limit points only.
/// Among admissible shifts the lexicographically smallest is reported, so the
/// label does not depend on input order.
pub fn classify_spectrum(sp: &PointSet, cone: &Cone) -> Result<CaseLabel> {
    if sp.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    sp.validate()?;
    let p = cone.dim();
    for l in sp.all() {
        check_dim(p, l.len())?;
    }
    let nonzero: Vec<&Vec<f64>> = sp.all().filter(|l| !is_zero(l)).collect();
    let in_cone = |v: &[f64]| cone_contains(cone, v, MEMBERSHIP_TOL);
    let in_neg = |v: &[f64]| cone_contains(cone, &scale(v, -1.0), MEMBERSHIP_TOL);
    let mut trace = Vec::new();
    let label = |case_id, shift, notes: &str, trace| CaseLabel { case_id, shift, notes: notes.into(), trace };

    let mut all_in = true;
    for l in &nonzero {
        if !in_cone(l)? {
            all_in = false;
            trace.push(format!("case 1: {l:?} lies outside the cone"));
            break;
        }
    }
    if all_in {
        trace.push("case 1: every nonzero frequency lies in the cone".into());
        return Ok(label(CaseId::One, None, "nonzero spectrum inside the cone", trace));
    }

    let mut pts = Vec::new();
    for l in &sp.points {
        if !is_zero(l) && in_neg(l)? {
            pts.push(l);
        }
    }
    if let Some(s) = smallest_shift(pts.into_iter(), &nonzero, cone, &mut trace, 2)? {
        return Ok(label(CaseId::Two, Some(s), "shift is a spectral point in the negative cone", trace));
    }

    let mut lims = Vec::new();
    for l in &sp.limit_points {
        if !is_zero(l) && in_neg(l)? {
            lims.push(l);
        }
    }
    if let Some(s) = smallest_shift(lims.into_iter(), &nonzero, cone, &mut trace, 3)? {
        return Ok(label(CaseId::Three, Some(s), "shift is a limit point in the negative cone", trace));
    }

    let mut outside = Vec::new();
    for l in sp.all() {
        if !in_cone(l)? && !in_neg(l)? {
            outside.push(l);
        }
    }
    if let Some(s) = smallest_shift(outside.into_iter(), &nonzero, cone, &mut trace, 4)? {
        return Ok(label(CaseId::Four, Some(s), "shift lies outside both the cone and its negative", trace));
    }

    // any shift at all: move far along the negated interior direction
    let e = cone.interior_direction();
    for k in 0..64 {
        let m = 2f64.powi(k);
        let cand = scale(&e, -m);
        if shift_works(&nonzero, &cand, cone)? {
            trace.push(format!("extension: shift -{m} * {e:?} contains the spectrum"));
            return Ok(label(
                CaseId::Five,
                None,
                "no admissible shift among the declared frequencies; candidate set is points and limit points only",
                trace,
            ));
        }
    }
    trace.push("extension: no shifted cone contains the spectrum".into());
    Ok(label(CaseId::NotExtendable, None, "spectrum lies in no shifted cone", trace))
}

/// One row of a verification table. Rows without a tolerance are data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub parameter: String,
    pub measured: f64,
    pub expected: f64,
    /// Estimated standard error of `measured`.
    pub error: f64,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl ReportRow {
    pub fn data(parameter: impl Into<String>, measured: f64, expected: f64, error: f64) -> Self {
        ReportRow { parameter: parameter.into(), measured, expected, error, tolerance: None, pass: true }
    }

    /// Passes when `|measured - expected| <= tolerance`.
    pub fn close(parameter: impl Into<String>, measured: f64, expected: f64, error: f64, tolerance: f64) -> Self {
        let pass = (measured - expected).abs() <= tolerance;
        ReportRow { parameter: parameter.into(), measured, expected, error, tolerance: Some(tolerance), pass }
    }

    pub fn check(parameter: impl Into<String>, measured: f64, expected: f64, error: f64, tolerance: f64, pass: bool) -> Self {
        ReportRow { parameter: parameter.into(), measured, expected, error, tolerance: Some(tolerance), pass }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub rows: Vec<ReportRow>,
    pub passed: bool,
    pub inconclusive: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport { name: name.into(), rows: Vec::new(), passed: true, inconclusive: false, notes: Vec::new() }
    }

    pub fn push(&mut self, row: ReportRow) {
        self.passed &= row.pass;
        self.rows.push(row);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for row in other.rows {
            let parameter = format!("{}: {}", other.name, row.parameter);
            self.push(ReportRow { parameter, ..row });
        }
        self.inconclusive |= other.inconclusive;
        self.notes.extend(other.notes);
    }

    /// Fixed-width table for terminals.
    pub fn to_table(&self) -> String {
        let mut s = format!("{}\n", self.name);
        s.push_str(&format!(
            "{:<44} {:>14} {:>14} {:>11} {:>11} {:>5}\n",
            "parameter", "measured", "expected", "error", "tolerance", "pass"
        ));
        for r in &self.rows {
            let tol = r.tolerance.map_or("-".to_string(), |t| format!("{t:.3e}"));
            s.push_str(&format!(
                "{:<44} {:>14.6e} {:>14.6e} {:>11.3e} {:>11} {:>5}\n",
                r.parameter, r.measured, r.expected, r.error, tol, r.pass
            ));
        }
        s.push_str(&format!("passed: {}{}\n", self.passed, if self.inconclusive { " (inconclusive)" } else { "" }));
        s
    }
}

fn require_dual_interior(cone: &Cone, y: &[f64], margin: f64) -> Result<()> {
    check_dim(cone.dim(), y.len())?;
    if !cone.dual_interior_contains(y, margin)? {
        return Err(Error::InvalidInput(format!("{y:?} is not inside the conjugate cone")));
    }
    Ok(())
}

/// Compares `J_f(R y) / R` with the indicator `h_f(y)` along a doubling
/// schedule of at least five radii.
pub fn theorem1_verify(f: &ExpSum, cone: &Cone, y: &[f64], r_schedule: &[f64], q: &QuadParams) -> Result<VerificationReport> {
    require_dual_interior(cone, y, 0.0)?;
    if r_schedule.len() < 5 || r_schedule.windows(2).any(|w| (w[1] / w[0] - 2.0).abs() > 1e-12) {
        return Err(Error::InvalidInput("R schedule must double and have at least 5 entries".into()));
    }
    let h = p_indicator_exact(f, y)?;
    let profile = jessen_profile(f, y, r_schedule, q)?;
    let mut rep = VerificationReport::new(format!("indicator scaling along {y:?}"));
    let gaps: Vec<f64> = profile.iter().map(|r| (r.value - h).abs()).collect();
    for row in &profile {
        rep.push(ReportRow::data(format!("J(Ry)/R at R={}", row.r), row.value, h, row.stderr));
        if row.clipped_fraction > crate::defaults::CLIP_WARNING {
            rep.notes.push(format!("clipped fraction {:.2e} at R={}", row.clipped_fraction, row.r));
        }
    }
    let n = profile.len();
    let last = &profile[n - 1];
    let tol = (0.02 * (1.0 + h.abs())).max(4.0 * last.stderr);
    rep.push(ReportRow::check(format!("gap at R={}", last.r), gaps[n - 1], 0.0, last.stderr, tol, gaps[n - 1] < tol));
    for k in n - 3..n - 1 {
        let noise = 4.0 * (profile[k].stderr + profile[k + 1].stderr) + 1e-12;
        rep.push(ReportRow::check(
            format!("gap change R={} -> R={}", profile[k].r, profile[k + 1].r),
            gaps[k + 1] - gaps[k],
            0.0,
            (profile[k].stderr.powi(2) + profile[k + 1].stderr.powi(2)).sqrt(),
            noise,
            gaps[k + 1] <= gaps[k] + noise,
        ));
    }
    Ok(rep)
}

/// Probabilists' Gauss–Hermite nodes and weights (weights sum to one).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Stein's identity on a tensor Gauss–Hermite grid:
/// `grad (G * N(0, w^2)) (y0) = E[G(y0 + w xi) xi] / w`.
fn stein_gradient<F>(y0: &[f64], width: f64, nodes: &[f64], weights: &[f64], mut g: F) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: FnMut(&[f64]) -> Result<(f64, f64)>,
{
    let p = y0.len();
    let n = nodes.len();
    let total = n.pow(p as u32);
    let mut grad = vec![0.0; p];
    let mut var = vec![0.0; p];
    let mut idx = vec![0usize; p];
    for flat in 0..total {
        let mut rem = flat;
        for j in (0..p).rev() {
            idx[j] = rem % n;
            rem /= n;
        }
        let wt: f64 = idx.iter().map(|&i| weights[i]).product();
        let point: Vec<f64> = (0..p).map(|j| y0[j] + width * nodes[idx[j]]).collect();
        let (v, se) = g(&point)?;
        for j in 0..p {
            let c = wt * nodes[idx[j]] / width;
            grad[j] += c * v;
            var[j] += (c * se).powi(2);
        }
    }
    Ok((grad, var.into_iter().map(f64::sqrt).collect()))
}

/// Mollified secular vector `-grad (J(R .)/R * N(0, w^2))` compared with the
/// equally mollified gradient of `y -> -H_sp(-y)`, whose unmollified value is
/// the active frequency.
pub fn secular_convergence(
    f: &ExpSum,
    cone: &Cone,
    base_points: &[Vec<f64>],
    r_schedule: &[f64],
    width: f64,
    nodes_per_dim: usize,
    q: &QuadParams,
) -> Result<VerificationReport> {
    if !(width > 0.0) || r_schedule.is_empty() || nodes_per_dim < 2 {
        return Err(Error::InvalidInput("need width > 0, a nonempty R schedule and >= 2 nodes".into()));
    }
    let spectrum = f.spectrum();
    let (nodes, weights) = gauss_hermite(nodes_per_dim);
    let mut rep = VerificationReport::new("mollified secular vector");
    rep.notes.push(format!("Gaussian mollifier width {width}, {nodes_per_dim} Gauss-Hermite nodes per axis"));
    let r_final = *r_schedule.last().unwrap();
    for y0 in base_points {
        require_dual_interior(cone, y0, 3.0 * width * norm(&cone.interior_direction()))?;
        let (h_grad, _) = stein_gradient(y0, width, &nodes, &weights, |y| {
            Ok((crate::cone::support_function(&spectrum, &scale(y, -1.0))?, 0.0))
        })?;
        let expected: Vec<f64> = h_grad.iter().map(|v| -v).collect();
        for &r in r_schedule {
            let (g, se) = stein_gradient(y0, width, &nodes, &weights, |y| {
                let e = jessen_with(f, &scale(y, r), q)?;
                Ok((e.value / r, e.stderr / r))
            })?;
            for j in 0..y0.len() {
                let measured = -g[j];
                let param = format!("y0={y0:?} R={r} component {j}");
                if r == r_final {
                    rep.push(ReportRow::close(param, measured, expected[j], se[j], 0.05 + 4.0 * se[j]));
                } else {
                    rep.push(ReportRow::data(param, measured, expected[j], se[j]));
                }
            }
        }
    }
    Ok(rep)
}

/// The active frequency `argmax <-y, lambda>`, the pointwise gradient of
/// `y -> -H_sp(-y)` away from kinks.
pub fn active_frequency(f: &ExpSum, y: &[f64]) -> Result<Vec<f64>> {
    check_dim(f.dim(), y.len())?;
    let mut best: Option<(f64, &Vec<f64>)> = None;
    for l in f.terms().iter().map(|t| &t.lambda).chain(f.limit_frequencies()) {
        let v = -dot(y, l);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, l));
        }
    }
    best.map(|(_, l)| l.clone()).ok_or(Error::EmptySpectrum)
}

/// Parameters of the linearity check on a segment of heights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityParams {
    pub slices: usize,
    pub seed: u64,
}

impl Default for LinearityParams {
    fn default() -> Self {
        LinearityParams { slices: 4, seed: crate::defaults::SEED }
    }
}

/// On the segment `[y1, y2]`: no zeros found implies `J` affine with a constant
/// secular vector, and a detected nonlinearity of `J` implies a verified zero.
pub fn theorem_r_check(
    f: &ExpSum,
    y1: &[f64],
    y2: &[f64],
    q: &QuadParams,
    lp: &LinearityParams,
) -> Result<VerificationReport> {
    let p = f.dim();
    check_dim(p, y1.len())?;
    check_dim(p, y2.len())?;
    let d = sub(y2, y1);
    if norm(&d) == 0.0 {
        return Err(Error::InvalidInput("segment endpoints coincide".into()));
    }
    let mut rep = VerificationReport::new(format!("linearity on [{y1:?}, {y2:?}]"));

    // zero search on complex lines through the strip
    let mus: Vec<f64> = f.terms().iter().map(|t| dot(&d, &t.lambda)).collect();
    let mut min_gap = f64::INFINITY;
    for i in 0..mus.len() {
        for j in i + 1..mus.len() {
            let g = (mus[i] - mus[j]).abs();
            if g > 0.0 {
                min_gap = min_gap.min(g);
            }
        }
    }
    let half = if min_gap.is_finite() { (TAU * (f.len() as f64 + 3.0) / min_gap).min(200.0) } else { 10.0 };
    let window = Rect::new(-half, half, 0.0, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(lp.seed);
    let mut zeros = 0usize;
    let mut bases = Vec::new();
    for k in 0..lp.slices.max(1) {
        let x0: Vec<f64> = if k == 0 { vec![0.0; p] } else { (0..p).map(|_| rng.gen_range(0.0..TAU)).collect() };
        let base = TubePoint { x: x0, y: y1.to_vec() };
        let phi = restrict_to_line(f, &base, &d)?;
        zeros += count_zeros_rect(&phi, &window)?.count;
        bases.push(base);
    }
    rep.push(ReportRow::data("zeros on slices", zeros as f64, 0.0, 0.0));

    let ts = [0.0, 1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0, 1.0];
    let mut js = Vec::new();
    for &t in &ts {
        js.push(jessen_with(f, &add(y1, &scale(&d, t)), q)?);
    }
    let max_se = js.iter().map(|e| e.stderr).fold(0.0, f64::max);
    if max_se > 0.05 {
        rep.inconclusive = true;
        rep.notes.push(format!("Jessen stderr {max_se:.3e} too large to judge linearity"));
    }
    let (j0, j1) = (&js[0], &js[6]);
    let mut nonlinear = false;
    let mut deviations = Vec::new();
    for k in 1..6 {
        let t = ts[k];
        let chord = (1.0 - t) * j0.value + t * j1.value;
        let se = (js[k].stderr.powi(2) + ((1.0 - t) * j0.stderr).powi(2) + (t * j1.stderr).powi(2)).sqrt();
        let tol = 3.0 * se + 1e-9 * (1.0 + chord.abs());
        let dev = js[k].value - chord;
        if dev.abs() > tol {
            nonlinear = true;
        }
        deviations.push((t, js[k].value, chord, se, tol));
    }

    if zeros == 0 {
        for (t, v, chord, se, tol) in &deviations {
            rep.push(ReportRow::close(format!("J at t={t:.3} vs chord"), *v, *chord, *se, *tol));
        }
        let h = (0.05 * norm(&d)).min(0.05);
        let mut vecs = Vec::new();
        for &t in &ts[1..6] {
            match secular_vector(f, &add(y1, &scale(&d, t)), h, q) {
                Ok(v) => vecs.push(v),
                Err(Error::StepTooSmall { stderr }) => {
                    rep.inconclusive = true;
                    rep.notes.push(format!("secular vector stderr {stderr:.3e} too large"));
                }
                Err(e) => return Err(e),
            }
        }
        if !vecs.is_empty() {
            for j in 0..p {
                let mean = vecs.iter().map(|v| v.value[j]).sum::<f64>() / vecs.len() as f64;
                let se = vecs.iter().map(|v| v.stderr[j]).fold(0.0, f64::max);
                let spread = vecs.iter().map(|v| (v.value[j] - mean).abs()).fold(0.0, f64::max);
                rep.push(ReportRow::check(
                    format!("c_f component {j} spread"),
                    spread,
                    0.0,
                    se,
                    3.0 * se + 1e-6,
                    spread <= 3.0 * se + 1e-6,
                ));
                rep.push(ReportRow::data(format!("c_f component {j}"), mean, mean, se));
            }
        }
    } else {
        for (t, v, chord, se, _) in &deviations {
            rep.push(ReportRow::data(format!("J at t={t:.3} vs chord"), *v, *chord, *se));
        }
    }

    if nonlinear {
        let mut witness = None;
        for base in &bases {
            let roots = solve_value(f, Complex64::new(0.0, 0.0), base, &d, &window, 1)?;
            if let Some(r) = roots.into_iter().next() {
                witness = Some(r);
                break;
            }
        }
        match witness {
            Some(r) => {
                rep.notes.push(format!("zero witness at x={:?} y={:?}", r.z.x, r.z.y));
                rep.push(ReportRow::check("zero witness residual", r.residual, 0.0, 0.0, 1e-10, r.residual < 1e-10));
            }
            None => rep.push(ReportRow::check("zero witness residual", f64::NAN, 0.0, 0.0, 1e-10, false)),
        }
    } else {
        rep.push(ReportRow::data("nonlinearity detected", 0.0, 0.0, 0.0));
    }
    Ok(rep)
}

/// Parameters of the per-case value experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    pub seed: u64,
    pub t_list: Vec<f64>,
    pub q_list: Vec<f64>,
    pub n_targets: usize,
    pub line_budget: usize,
    pub x_probes: usize,
    pub directions: usize,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams {
            seed: crate::defaults::SEED,
            t_list: vec![10.0, 20.0, 40.0],
            q_list: vec![1.0, 5.0],
            n_targets: 8,
            line_budget: 64,
            x_probes: 256,
            directions: 5,
        }
    }
}

/// Result of [`run_case_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseExperiment {
    pub label: CaseLabel,
    pub report: VerificationReport,
    pub exceptional_candidates: Vec<[f64; 2]>,
}

fn probe_directions(cone: &Cone, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>> {
    let dual = conjugate_cone(cone)?;
    let mut out = vec![dual.interior_direction()];
    while out.len() < n.max(1) {
        let mut y = vec![0.0; cone.dim()];
        for g in dual.generators() {
            let w = rng.gen_range(0.2..1.0) / norm(g);
            for (yi, gi) in y.iter_mut().zip(g) {
                *yi += w * gi;
            }
        }
        let ny = norm(&y);
        out.push(scale(&y, 1.0 / ny));
    }
    Ok(out)
}

fn probes(p: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..p).map(|_| rng.gen_range(-100.0..100.0)).collect()).collect()
}

/// Value-distribution experiment matching the label of `f`.
pub fn run_case_experiment(f: &ExpSum, cone: &Cone, label: &CaseLabel, params: &CaseParams) -> Result<CaseExperiment> {
    check_dim(cone.dim(), f.dim())?;
    let p = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let dirs = probe_directions(cone, params.directions, &mut rng)?;
    let xs = probes(p, params.x_probes, &mut rng);
    let b0 = f.constant_term();
    let mut rep = VerificationReport::new(format!("value experiment for {}", label.case_id));
    let mut exceptional = Vec::new();

    match label.case_id {
        CaseId::One => {
            let mut prev: Option<f64> = None;
            for &t in &params.t_list {
                let mut sup = 0.0f64;
                let mut bound = 0.0f64;
                for y in &dirs {
                    let ty = scale(y, t);
                    for x in &xs {
                        let v = f.evaluate(&TubePoint { x: x.clone(), y: ty.clone() })?;
                        sup = sup.max((v - b0).norm());
                    }
                }
                for term in f.terms().iter().filter(|t| !is_zero(&t.lambda)) {
                    let m = dirs.iter().map(|y| dot(y, &term.lambda)).fold(f64::INFINITY, f64::min);
                    bound += term.coeff.norm() * (-t * m).exp();
                }
                rep.push(ReportRow::check(format!("sup|f - b0| at t={t}"), sup, 0.0, 0.0, bound, sup <= bound * (1.0 + 1e-12)));
                if let Some(prev) = prev {
                    rep.push(ReportRow::check(format!("decrease at t={t}"), sup - prev, 0.0, 0.0, 0.0, sup <= prev));
                }
                prev = Some(sup);
            }
            rep.notes.push(format!("limit value b0 = {} + {}i", b0.re, b0.im));
        }
        CaseId::Two => {
            let shift = label.shift.clone().ok_or_else(|| Error::InvalidInput("case 2 label needs a shift".into()))?;
            let coeff = f
                .terms()
                .iter()
                .find(|t| norm(&sub(&t.lambda, &shift)) <= MEMBERSHIP_TOL)
                .map(|t| t.coeff.norm())
                .ok_or_else(|| Error::InvalidInput("shift is not a term frequency".into()))?;
            for &t in &params.t_list {
                for (k, y) in dirs.iter().enumerate() {
                    let ty = scale(y, t);
                    let slice = HeightSlice::new(f, &ty)?;
                    let min_log = xs.iter().map(|x| slice.log_abs(x)).fold(f64::INFINITY, f64::min);
                    let predicted = coeff.ln() - dot(&ty, &shift);
                    let ratio = (min_log - predicted).exp();
                    rep.push(ReportRow::check(
                        format!("min|f| / growth at t={t} direction {k}"),
                        ratio,
                        1.0,
                        0.0,
                        2.0,
                        (0.5..=2.0).contains(&ratio),
                    ));
                }
            }
        }
        CaseId::Three | CaseId::Four | CaseId::Five => {
            let mut targets: Vec<Complex64> = (0..params.n_targets)
                .map(|_| {
                    let r = 10f64.powf(rng.gen_range(-1.0..1.0));
                    Complex64::from_polar(r, rng.gen_range(0.0..TAU))
                })
                .collect();
            let probe_b0 = label.case_id == CaseId::Four;
            if probe_b0 {
                targets.push(b0);
            }
            for (k, a) in targets.iter().enumerate() {
                let is_b0 = probe_b0 && k == targets.len() - 1;
                for &qv in &params.q_list {
                    let seed = params.seed.wrapping_add(1000 * k as u64 + qv as u64);
                    let w = value_search(f, cone, *a, qv, params.line_budget, seed)?;
                    let param = format!("A={:.4}{:+.4}i q={qv}", a.re, a.im);
                    match w {
                        Some(w) => {
                            let ok = w.residual < 1e-10 && norm(&w.z.y) > qv;
                            rep.push(ReportRow::check(param, w.residual, 0.0, 0.0, 1e-10, ok));
                        }
                        None if is_b0 => {
                            rep.push(ReportRow::data(format!("{param} (candidate exceptional)"), f64::NAN, 0.0, 0.0));
                            if !exceptional.contains(&[a.re, a.im]) {
                                exceptional.push([a.re, a.im]);
                            }
                        }
                        None => {
                            rep.inconclusive = true;
                            rep.push(ReportRow::check(param, f64::NAN, 0.0, 0.0, 1e-10, false));
                        }
                    }
                }
            }
            if probe_b0 {
                rep.notes.push(format!("{} candidate exceptional value(s)", exceptional.len()));
            }
        }
        CaseId::NotExtendable => {
            rep.notes.push("no experiment for a spectrum outside every shifted cone".into());
            rep.inconclusive = true;
        }
    }
    Ok(CaseExperiment { label: label.clone(), report: rep, exceptional_candidates: exceptional })
}
