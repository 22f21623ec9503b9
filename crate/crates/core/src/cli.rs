//! Command-line front end. Every subcommand reads a JSON config, applies flag
//! overrides, runs one pipeline and writes a JSON or CSV document.
//!
//! Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or
//! config error, 3 inconclusive (budget or noise).

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

use crate::classify::{
    classify_spectrum, run_case_experiment, secular_convergence, theorem1_verify, theorem_r_check, CaseParams,
    LinearityParams, VerificationReport,
};
use crate::cone::{conjugate_cone, support_function, support_linear_on_cone};
use crate::config::{Analysis, Format, RunConfig};
use crate::defaults::{self, DefaultsHeader};
use crate::error::Error;
use crate::indicator::{p_indicator_empirical, p_indicator_exact};
use crate::jessen::{jessen_with, secular_vector};
use crate::linalg::{norm, scale};
use crate::zeros::{count_zeros_rect, value_search, zero_density_strip};

pub const THREADS_ENV: &str = "TUBEAP_THREADS";

#[derive(Debug, Parser)]
#[command(name = "tubeap", version, about = "Jessen functions, indicators and value distribution of exponential sums on tube domains")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (falls back to TUBEAP_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, conjugate cone and shift candidates.
    Spectrum(Opts),
    /// Jessen function at one height.
    Jessen(Opts),
    /// Secular vector by central differences.
    Secular(Opts),
    /// Exact and probed P-indicator.
    Indicator(Opts),
    /// Zero counts, densities and value witnesses.
    Zeros(Opts),
    /// Spectral case of the function.
    Classify(Opts),
    /// Scaling of the Jessen function against the indicator.
    #[command(name = "verify-t1")]
    VerifyT1(Opts),
    /// Mollified secular vector against the indicator gradient.
    #[command(name = "verify-secular")]
    VerifySecular(Opts),
    /// Affinity of the Jessen function on zero-free segments.
    #[command(name = "verify-tR")]
    VerifyTr(Opts),
    /// Value-attainment experiment for the spectral case.
    Picard(Opts),
    /// Classification, scaling check and value experiment together.
    Report(Opts),
}

// aliases keep clap from treating the parsed vectors as repeated arguments
type Floats = Vec<f64>;
type Points = Vec<Vec<f64>>;

fn parse_vec(s: &str) -> Result<Floats, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

fn parse_points(s: &str) -> Result<Points, String> {
    s.split(';').map(parse_vec).collect()
}

#[derive(Debug, Args, Clone, Default)]
pub struct Opts {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Height, comma separated.
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub y: Option<Floats>,
    /// Segment or strip start.
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub y1: Option<Floats>,
    /// Segment or strip end.
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub y2: Option<Floats>,
    /// Half-side of the averaging window.
    #[arg(long = "S")]
    pub s: Option<f64>,
    /// Quadrature points per height.
    #[arg(long)]
    pub n_samples: Option<usize>,
    /// Radii, comma separated.
    #[arg(long = "R", value_parser = parse_vec)]
    pub r_schedule: Option<Floats>,
    /// Lower bound on |Im z| for value and zero witnesses.
    #[arg(long)]
    pub q: Option<f64>,
    /// Scale of the probed indicator.
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Finite-difference step.
    #[arg(long)]
    pub h: Option<f64>,
    /// Gaussian mollifier width.
    #[arg(long)]
    pub width: Option<f64>,
    /// Base points, `;` between points and `,` between coordinates.
    #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
    pub base_points: Option<Points>,
    /// Zeros mode: density, count, tail or value.
    #[arg(long)]
    pub mode: Option<String>,
}

impl Opts {
    fn analysis(&self, seed: Option<u64>) -> Analysis {
        Analysis {
            y: self.y.clone(),
            y1: self.y1.clone(),
            y2: self.y2.clone(),
            s: self.s,
            n_samples: self.n_samples,
            r_schedule: self.r_schedule.clone(),
            q: self.q,
            r_max: self.r_max,
            h: self.h,
            width: self.width,
            base_points: self.base_points.clone(),
            mode: self.mode.clone(),
            seed,
            ..Analysis::default()
        }
    }
}

/// A finished computation: the JSON result, a CSV table and the exit status.
struct Outcome {
    result: Value,
    csv: Vec<Vec<String>>,
    status: i32,
    summary: Option<String>,
}

impl Outcome {
    fn data<T: Serialize>(result: &T, csv: Vec<Vec<String>>) -> Outcome {
        Outcome { result: to_value(result), csv, status: 0, summary: None }
    }

    fn report(rep: &VerificationReport) -> Outcome {
        Outcome { result: to_value(rep), csv: report_csv(rep), status: report_status(rep), summary: Some(rep.to_table()) }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable result")
}

fn report_status(rep: &VerificationReport) -> i32 {
    if rep.inconclusive && rep.passed {
        3
    } else if rep.passed {
        0
    } else if rep.inconclusive {
        3
    } else {
        1
    }
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

fn report_csv(rep: &VerificationReport) -> Vec<Vec<String>> {
    let mut rows = vec![["parameter", "measured", "expected", "error", "tolerance", "pass"].map(String::from).to_vec()];
    for r in &rep.rows {
        rows.push(vec![
            r.parameter.clone(),
            fmt(r.measured),
            fmt(r.expected),
            fmt(r.error),
            r.tolerance.map(fmt).unwrap_or_default(),
            r.pass.to_string(),
        ]);
    }
    rows
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted | Error::Inconclusive(_) | Error::NotFound | Error::StepTooSmall { .. } | Error::AllClipped => 3,
        _ => 2,
    }
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, Error> {
    v.clone().ok_or_else(|| Error::InvalidInput(format!("missing parameter `{name}` (flag or analysis.{name})")))
}

fn default_direction(cfg: &RunConfig) -> Result<Vec<f64>, Error> {
    Ok(conjugate_cone(&cfg.cone())?.interior_direction())
}

fn execute(command: &Command, cfg: &RunConfig, a: &mut Analysis) -> Result<Outcome, Error> {
    let f = &cfg.function;
    let cone = cfg.cone();
    match command {
        Command::Spectrum(_) => {
            let sp = f.spectrum();
            let dual = conjugate_cone(&cone)?;
            let shift = if sp.is_empty() { None } else { support_linear_on_cone(&sp, &cone)? };
            let support = match &a.y {
                Some(y) if !sp.is_empty() => Some(support_function(&sp, &scale(y, -1.0))?),
                _ => None,
            };
            let mut csv = vec![vec!["kind".to_string(), "lambda".into(), "re".into(), "im".into()]];
            for t in f.terms() {
                csv.push(vec!["point".into(), format!("{:?}", t.lambda), fmt(t.coeff.re), fmt(t.coeff.im)]);
            }
            for l in f.limit_frequencies() {
                csv.push(vec!["limit".into(), format!("{l:?}"), String::new(), String::new()]);
            }
            let result = json!({
                "spectrum": sp,
                "cone": cone,
                "conjugate_cone": dual,
                "linear_shift": shift,
                "support_at_minus_y": support,
            });
            Ok(Outcome { result, csv, status: 0, summary: None })
        }
        Command::Jessen(_) => {
            let q = a.quad();
            let y = need(&a.y, "y")?;
            let e = jessen_with(f, &y, &q)?;
            let mut csv = vec![vec!["y".to_string(), "value".into(), "stderr".into(), "S".into(), "n_samples".into(), "clipped_fraction".into()]];
            csv.push(vec![format!("{:?}", e.y), fmt(e.value), fmt(e.stderr), fmt(e.s), e.n_samples.to_string(), fmt(e.clipped_fraction)]);
            let mut out = Outcome::data(&json!({"estimate": e, "warning": e.warning()}), csv);
            out.summary = Some(format!("J = {} +/- {}\n", e.value, e.stderr));
            Ok(out)
        }
        Command::Secular(_) => {
            let q = a.quad();
            let y = need(&a.y, "y")?;
            let h = *a.h.get_or_insert(defaults::STEP_FRACTION * norm(&y).max(1.0));
            let v = secular_vector(f, &y, h, &q)?;
            let mut csv = vec![vec!["component".to_string(), "value".into(), "stderr".into()]];
            for (j, (val, se)) in v.value.iter().zip(&v.stderr).enumerate() {
                csv.push(vec![j.to_string(), fmt(*val), fmt(*se)]);
            }
            Ok(Outcome::data(&v, csv))
        }
        Command::Indicator(_) => {
            let seed = *a.seed.get_or_insert(defaults::SEED);
            let y = match &a.y {
                Some(y) => y.clone(),
                None => default_direction(cfg)?,
            };
            a.y = Some(y.clone());
            let r_max = *a.r_max.get_or_insert(50.0);
            let probes = *a.x_probes.get_or_insert(256);
            let est = match p_indicator_empirical(f, &y, r_max, probes, seed) {
                Ok(e) => json!(e),
                Err(Error::InvalidInput(msg)) => {
                    json!({"y": y, "exact": p_indicator_exact(f, &y)?, "empirical": null, "note": msg})
                }
                Err(e) => return Err(e),
            };
            let csv = vec![
                vec!["y".to_string(), "exact".into(), "empirical".into(), "r_max".into(), "gap_bound".into()],
                vec![
                    format!("{y:?}"),
                    est["exact"].to_string(),
                    est["empirical"].to_string(),
                    fmt(r_max),
                    est.get("gap_bound").map(|v| v.to_string()).unwrap_or_default(),
                ],
            ];
            Ok(Outcome { result: json!([est]), csv, status: 0, summary: None })
        }
        Command::Zeros(_) => {
            let seed = *a.seed.get_or_insert(defaults::SEED);
            let default_mode = if f.dim() == 1 { "density" } else { "tail" };
            let mode = a.mode.get_or_insert(default_mode.into()).clone();
            match mode.as_str() {
                "density" => {
                    let y1 = need(&a.y1, "y1")?;
                    let y2 = need(&a.y2, "y2")?;
                    let s = *a.s.get_or_insert(1e3);
                    let d = zero_density_strip(f, y1[0], y2[0], s)?;
                    let csv = vec![
                        vec!["y1".to_string(), "y2".into(), "count".into(), "density".into(), "density_error".into(), "jessen_density".into(), "jessen_density_error".into()],
                        vec![fmt(d.y1), fmt(d.y2), d.count.to_string(), fmt(d.density), fmt(d.density_error), fmt(d.jessen_density), fmt(d.jessen_density_error)],
                    ];
                    Ok(Outcome::data(&d, csv))
                }
                "count" => {
                    let rect = need(&a.window, "window")?;
                    let c = count_zeros_rect(f, &rect)?;
                    let csv = vec![
                        vec!["x_lo".to_string(), "x_hi".into(), "y_lo".into(), "y_hi".into(), "count".into(), "boundary_margin".into()],
                        vec![fmt(c.rect.x_lo), fmt(c.rect.x_hi), fmt(c.rect.y_lo), fmt(c.rect.y_hi), c.count.to_string(), fmt(c.boundary_margin)],
                    ];
                    Ok(Outcome::data(&c, csv))
                }
                "tail" | "value" => {
                    let q = *a.q.get_or_insert(5.0);
                    let budget = *a.line_budget.get_or_insert(64);
                    let targets = if mode == "tail" {
                        vec![[0.0, 0.0]]
                    } else {
                        need(&a.targets, "targets")?
                    };
                    let mut found = Vec::new();
                    let mut csv = vec![vec!["target_re".to_string(), "target_im".into(), "x".into(), "y".into(), "residual".into()]];
                    let mut status = 0;
                    for t in &targets {
                        let w = value_search(f, &cone, Complex64::new(t[0], t[1]), q, budget, seed)?;
                        match &w {
                            Some(w) => csv.push(vec![fmt(t[0]), fmt(t[1]), format!("{:?}", w.z.x), format!("{:?}", w.z.y), fmt(w.residual)]),
                            None => {
                                status = 3;
                                csv.push(vec![fmt(t[0]), fmt(t[1]), String::new(), String::new(), String::new()]);
                            }
                        }
                        found.push(json!({"target": t, "witness": w}));
                    }
                    Ok(Outcome { result: json!(found), csv, status, summary: None })
                }
                other => Err(Error::InvalidInput(format!("unknown zeros mode `{other}`"))),
            }
        }
        Command::Classify(_) => {
            let label = classify_spectrum(&f.spectrum(), &cone)?;
            let mut summary = format!("{}\n", label.case_id);
            for line in &label.trace {
                summary.push_str(&format!("  {line}\n"));
            }
            let csv = vec![
                vec!["case".to_string(), "shift".into(), "notes".into()],
                vec![label.case_id.to_string(), label.shift.as_ref().map(|s| format!("{s:?}")).unwrap_or_default(), label.notes.clone()],
            ];
            let mut out = Outcome::data(&label, csv);
            out.summary = Some(summary);
            Ok(out)
        }
        Command::VerifyT1(_) => {
            let q = a.quad();
            let y = match &a.y {
                Some(y) => y.clone(),
                None => default_direction(cfg)?,
            };
            a.y = Some(y.clone());
            let rs = a.r_schedule.get_or_insert((0..7).map(|k| 2f64.powi(k)).collect()).clone();
            let rep = theorem1_verify(f, &cone, &y, &rs, &q)?;
            let h = p_indicator_exact(f, &y)?;
            let mut out = Outcome::report(&rep);
            out.csv = vec![vec!["R".to_string(), "J_over_R".into(), "h".into(), "gap".into(), "stderr".into()]];
            for r in rep.rows.iter().filter(|r| r.parameter.starts_with("J(Ry)/R")) {
                let rv = r.parameter.rsplit('=').next().unwrap_or_default().to_string();
                out.csv.push(vec![rv, fmt(r.measured), fmt(h), fmt((r.measured - h).abs()), fmt(r.error)]);
            }
            Ok(out)
        }
        Command::VerifySecular(_) => {
            let q = a.quad();
            let bases = match &a.base_points {
                Some(b) => b.clone(),
                None => vec![scale(&default_direction(cfg)?, 2.0)],
            };
            a.base_points = Some(bases.clone());
            let rs = a.r_schedule.get_or_insert(vec![16.0, 32.0, 64.0]).clone();
            let width = *a.width.get_or_insert(0.25);
            let nodes = *a.nodes.get_or_insert(10);
            let rep = secular_convergence(f, &cone, &bases, &rs, width, nodes, &q)?;
            Ok(Outcome::report(&rep))
        }
        Command::VerifyTr(_) => {
            let q = a.quad();
            let y1 = need(&a.y1, "y1")?;
            let y2 = need(&a.y2, "y2")?;
            let lp = LinearityParams { seed: q.seed, ..LinearityParams::default() };
            let rep = theorem_r_check(f, &y1, &y2, &q, &lp)?;
            Ok(Outcome::report(&rep))
        }
        Command::Picard(_) => {
            let params = case_params(a);
            let label = classify_spectrum(&f.spectrum(), &cone)?;
            let exp = run_case_experiment(f, &cone, &label, &params)?;
            let mut out = Outcome::report(&exp.report);
            out.result = to_value(&exp);
            Ok(out)
        }
        Command::Report(_) => {
            let q = a.quad();
            let params = case_params(a);
            let label = classify_spectrum(&f.spectrum(), &cone)?;
            let y = match &a.y {
                Some(y) => y.clone(),
                None => default_direction(cfg)?,
            };
            a.y = Some(y.clone());
            let rs = a.r_schedule.get_or_insert((0..7).map(|k| 2f64.powi(k)).collect()).clone();
            let t1 = theorem1_verify(f, &cone, &y, &rs, &q)?;
            let exp = run_case_experiment(f, &cone, &label, &params)?;
            let mut combined = VerificationReport::new("report");
            combined.merge(t1.clone());
            combined.merge(exp.report.clone());
            let mut out = Outcome::report(&combined);
            out.result = json!({"label": label, "theorem1": t1, "case_experiment": exp});
            Ok(out)
        }
    }
}

fn case_params(a: &mut Analysis) -> CaseParams {
    let d = CaseParams::default();
    CaseParams {
        seed: *a.seed.get_or_insert(d.seed),
        t_list: a.t_list.get_or_insert(d.t_list).clone(),
        q_list: a.q_list.get_or_insert(d.q_list).clone(),
        n_targets: *a.n_targets.get_or_insert(d.n_targets),
        line_budget: *a.line_budget.get_or_insert(d.line_budget),
        x_probes: *a.x_probes.get_or_insert(d.x_probes),
        directions: d.directions,
    }
}

fn opts(c: &Command) -> &Opts {
    match c {
        Command::Spectrum(o)
        | Command::Jessen(o)
        | Command::Secular(o)
        | Command::Indicator(o)
        | Command::Zeros(o)
        | Command::Classify(o)
        | Command::VerifyT1(o)
        | Command::VerifySecular(o)
        | Command::VerifyTr(o)
        | Command::Picard(o)
        | Command::Report(o) => o,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum(_) => "spectrum",
        Command::Jessen(_) => "jessen",
        Command::Secular(_) => "secular",
        Command::Indicator(_) => "indicator",
        Command::Zeros(_) => "zeros",
        Command::Classify(_) => "classify",
        Command::VerifyT1(_) => "verify-t1",
        Command::VerifySecular(_) => "verify-secular",
        Command::VerifyTr(_) => "verify-tR",
        Command::Picard(_) => "picard",
        Command::Report(_) => "report",
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let mut out = String::new();
    for line in header {
        out.push_str(&format!("# {line}\n"));
    }
    for r in rows {
        out.push_str(&r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

fn thread_count(flag: Option<usize>) -> Result<usize, Error> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{THREADS_ENV} must be an integer, got `{v}`"))),
        Err(_) => Ok(0),
    }
}

/// Runs the command line `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_cli(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run_cli(cli: &Cli) -> Result<i32, Error> {
    let o = opts(&cli.command);
    let cfg = RunConfig::load(&o.config)?;
    cfg.validate()?;
    let mut analysis = cfg.analysis.clone().overlay(&o.analysis(cli.seed));
    let threads = thread_count(cli.threads)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| execute(&cli.command, &cfg, &mut analysis))?;

    let format = cli.format.or(cfg.output.format).unwrap_or_default();
    let path = cli.output.clone().or_else(|| cfg.output.path.clone());
    let name = command_name(&cli.command);
    let text = match format {
        Format::Json => {
            let doc = json!({
                "tool": "tubeap",
                "version": env!("CARGO_PKG_VERSION"),
                "command": name,
                "defaults": DefaultsHeader::default(),
                "parameters": analysis,
                "function": cfg.function,
                "cone": cfg.cone(),
                "result": outcome.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
            s.push('\n');
            s
        }
        Format::Csv => {
            let header = vec![
                format!("tubeap {} {name}", env!("CARGO_PKG_VERSION")),
                format!("defaults {}", serde_json::to_string(&DefaultsHeader::default()).expect("defaults")),
                format!("parameters {}", serde_json::to_string(&analysis).expect("parameters")),
            ];
            csv_text(&header, &outcome.csv)
        }
    };
    match &path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display())))?;
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let meta = json!({"unix_time": secs, "threads": pool.current_num_threads()});
            let mut side = p.clone().into_os_string();
            side.push(".meta.json");
            let _ = std::fs::write(PathBuf::from(side), meta.to_string());
            if let Some(s) = &outcome.summary {
                print!("{s}");
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            if let Some(s) = &outcome.summary {
                eprint!("{s}");
            }
        }
    }
    Ok(outcome.status)
}
