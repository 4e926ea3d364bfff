//! Subcommand implementations. Each returns `Ok(true)` when every check
//! passed.

use crate::config::{Defaults, Format, PartialConfig, RunConfig};
use crate::format::{json_num, num};
use crate::svg::SvgScene;
use crate::{CliError, Route};
use num_complex::Complex64;
use polyspiral::geometry::{build_chain, build_odd_chain, centers_all, centers_odd, CenterSequence, Family};
use polyspiral::metrics::{
    distance_table, fit_motion_to_approximant, fit_motion_to_spiral, richardson_extrapolate,
    ConvergenceRecord, LogSpiral, RigidMotion, SpiralFitOptions,
};
use polyspiral::verify::{run_suite, Comparison, Suite, VerifyConfig};
use polyspiral::Parity;
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// Largest index accepted by `render`.
pub const RENDER_LIMIT: usize = 100;

/// Tolerance name for the spiral-fit objective threshold.
pub const FIT_OBJECTIVE: &str = "fit.max_objective";

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::AllPolygons => "all",
        Family::OddPolygons => "odd",
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn sequence(cfg: &RunConfig) -> Result<CenterSequence, CliError> {
    Ok(match cfg.family {
        Family::AllPolygons => centers_all(cfg.n_max)?,
        Family::OddPolygons => centers_odd(cfg.n_max)?,
    })
}

pub fn centers(partial: &PartialConfig, out: Option<&Path>) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(
        partial.clone(),
        Defaults {
            n_max: 1000,
            window: None,
        },
    )?;
    let seq = sequence(&cfg)?;
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("n,re,im\n");
            for (n, z) in seq.iter() {
                let _ = writeln!(s, "{n},{},{}", num(z.re), num(z.im));
            }
            s
        }
        Format::Json => json_text(&json!({
            "family": family_name(cfg.family),
            "first_index": seq.first_index(),
            "seed_placement": cfg.seed_placement,
            "centers": seq
                .iter()
                .map(|(n, z)| json!({"n": n, "re": json_num(z.re), "im": json_num(z.im)}))
                .collect::<Vec<_>>(),
        })),
    };
    emit(out, &text)?;
    Ok(true)
}

pub fn verify(suite: &str, partial: &PartialConfig, out: Option<&Path>) -> Result<bool, CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(|e| CliError::Usage(e.to_string()))?]
    };
    let cfg = RunConfig::resolve(
        partial.clone(),
        Defaults {
            n_max: 10_000,
            window: Some((500, 1000)),
        },
    )?;
    let vcfg = VerifyConfig {
        n_max: cfg.n_max as u64,
        window: cfg.window,
        overrides: cfg.tolerances.clone(),
    };
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, &vcfg))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let comparison = |c: Comparison| match c {
        Comparison::AtMost => "at_most",
        Comparison::Above => "above",
    };
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("suite,check,value,threshold,comparison,margin,status\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        r.suite,
                        c.name,
                        num(c.value),
                        num(c.threshold),
                        comparison(c.comparison),
                        num(c.margin()),
                        if c.passed { "pass" } else { "fail" }
                    );
                }
            }
            s
        }
        Format::Json => json_text(&json!({
            "passed": passed,
            "suites": reports.iter().map(|r| json!({
                "suite": r.suite.name(),
                "passed": r.passed(),
                "checks": r.checks.iter().map(|c| json!({
                    "name": c.name,
                    "value": json_num(c.value),
                    "threshold": json_num(c.threshold),
                    "comparison": comparison(c.comparison),
                    "margin": json_num(c.margin()),
                    "passed": c.passed,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
    };
    emit(out, &text)?;
    for r in &reports {
        let failed = r.checks.iter().filter(|c| !c.passed).count();
        eprintln!(
            "{}: {} ({} checks, {failed} failed)",
            r.suite,
            if r.passed() { "pass" } else { "FAIL" },
            r.checks.len()
        );
    }
    Ok(passed)
}

struct Fitted {
    route: Route,
    motion: RigidMotion,
    diagnostics: Value,
}

fn fit_motion(cfg: &RunConfig, seq: &CenterSequence, route: Option<Route>) -> Result<Fitted, CliError> {
    let route = route.unwrap_or(match cfg.family {
        Family::AllPolygons => Route::Approximant,
        Family::OddPolygons => Route::Spiral,
    });
    match route {
        Route::Approximant => {
            if cfg.family != Family::AllPolygons {
                return Err(CliError::Usage(
                    "the approximant route needs --family all".to_string(),
                ));
            }
            let (motion, d) = fit_motion_to_approximant(seq, cfg.window)?;
            Ok(Fitted {
                route,
                motion,
                diagnostics: json!({
                    "max_residual": json_num(d.max_residual),
                    "max_scaled_residual": json_num(d.max_scaled_residual),
                    "first_half_max": json_num(d.first_half_max),
                    "second_half_max": json_num(d.second_half_max),
                    "decay_slope": json_num(d.decay_slope),
                }),
            })
        }
        Route::Spiral => {
            let init = match cfg.family {
                Family::AllPolygons => Some(fit_motion_to_approximant(seq, cfg.window)?.0),
                Family::OddPolygons => None,
            };
            let mut opts = SpiralFitOptions::default();
            if let Some(&t) = cfg.tolerances.get(FIT_OBJECTIVE) {
                opts.max_objective = t;
            }
            let (motion, fit) = fit_motion_to_spiral(seq, &LogSpiral::standard(), cfg.window, init, &opts)?;
            Ok(Fitted {
                route,
                motion,
                diagnostics: json!({
                    "objective": json_num(fit.objective),
                    "starts": fit.starts,
                    "evaluations": fit.evals,
                    "means": fit.means.iter().map(|m| json!({
                        "parity": m.parity.map(parity_name),
                        "mean": json_num(m.mean),
                        "std_dev": json_num(m.std_dev),
                        "count": m.count,
                    })).collect::<Vec<_>>(),
                }),
            })
        }
    }
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Approximant => "approximant",
        Route::Spiral => "spiral",
    }
}

fn motion_json(cfg: &RunConfig, fitted: &Fitted) -> Value {
    json!({
        "family": family_name(cfg.family),
        "route": route_name(fitted.route),
        "window": [cfg.window.0, cfg.window.1],
        "rotation": json_num(fitted.motion.rotation()),
        "translation": {
            "re": json_num(fitted.motion.translation().re),
            "im": json_num(fitted.motion.translation().im),
        },
    })
}

fn fit_defaults() -> Defaults {
    Defaults {
        n_max: 1000,
        window: None,
    }
}

pub fn fit(route: Option<Route>, partial: &PartialConfig, out: Option<&Path>) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(partial.clone(), fit_defaults())?;
    let seq = sequence(&cfg)?;
    let fitted = fit_motion(&cfg, &seq, route)?;
    let text = match cfg.format {
        Format::Csv => format!(
            "family,route,window_start,window_end,rotation,translation_re,translation_im\n{},{},{},{},{},{},{}\n",
            family_name(cfg.family),
            route_name(fitted.route),
            cfg.window.0,
            cfg.window.1,
            num(fitted.motion.rotation()),
            num(fitted.motion.translation().re),
            num(fitted.motion.translation().im)
        ),
        Format::Json => {
            let mut v = motion_json(&cfg, &fitted);
            v["diagnostics"] = fitted.diagnostics.clone();
            v["seed_placement"] = json!(cfg.seed_placement);
            json_text(&v)
        }
    };
    emit(out, &text)?;
    Ok(true)
}

struct SummaryLine {
    name: &'static str,
    value: f64,
    target: f64,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (s, k) = values.fold((0.0, 0usize), |(s, k), v| (s + v, k + 1));
    if k == 0 {
        f64::NAN
    } else {
        s / k as f64
    }
}

/// Extrapolated value of the record with the largest `n` (of `parity`,
/// when given) that has one.
fn last_extrapolated(records: &[ConvergenceRecord], parity: Option<Parity>) -> f64 {
    records
        .iter()
        .rev()
        .filter(|r| parity.is_none_or(|p| r.parity == p))
        .find_map(|r| r.extrapolated)
        .unwrap_or(f64::NAN)
}

fn summary(cfg: &RunConfig, records: &[ConvergenceRecord], extrapolated: bool) -> Vec<SummaryLine> {
    let (lo, hi) = cfg.window;
    let in_window = |r: &&ConvergenceRecord| (lo as u64..=hi as u64).contains(&r.n);
    let window_mean = |p: Option<Parity>| {
        mean(records
            .iter()
            .filter(in_window)
            .filter(|r| p.is_none_or(|p| r.parity == p))
            .map(|r| r.distance))
    };
    let mut lines = Vec::new();
    match cfg.family {
        Family::AllPolygons => {
            let even = window_mean(Some(Parity::Even));
            let odd = window_mean(Some(Parity::Odd));
            lines.push(SummaryLine { name: "even_mean", value: even, target: 5.0 / 6.0 });
            lines.push(SummaryLine { name: "odd_mean", value: odd, target: 7.0 / 12.0 });
            lines.push(SummaryLine { name: "combined_mean", value: (even + odd) / 2.0, target: 17.0 / 24.0 });
            lines.push(SummaryLine { name: "amplitude", value: (even - odd) / 2.0, target: 1.0 / 8.0 });
            if extrapolated {
                let e = last_extrapolated(records, Some(Parity::Even));
                let o = last_extrapolated(records, Some(Parity::Odd));
                lines.push(SummaryLine { name: "even_extrapolated", value: e, target: 5.0 / 6.0 });
                lines.push(SummaryLine { name: "odd_extrapolated", value: o, target: 7.0 / 12.0 });
                lines.push(SummaryLine { name: "combined_extrapolated", value: (e + o) / 2.0, target: 17.0 / 24.0 });
                lines.push(SummaryLine { name: "amplitude_extrapolated", value: (e - o) / 2.0, target: 1.0 / 8.0 });
            }
        }
        Family::OddPolygons => {
            lines.push(SummaryLine { name: "mean", value: window_mean(None), target: 7.0 / 24.0 });
            if extrapolated {
                lines.push(SummaryLine {
                    name: "extrapolated",
                    value: last_extrapolated(records, None),
                    target: 7.0 / 24.0,
                });
            }
        }
    }
    lines
}

pub fn distances(
    route: Option<Route>,
    extrapolate: bool,
    partial: &PartialConfig,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(partial.clone(), fit_defaults())?;
    let seq = sequence(&cfg)?;
    let fitted = fit_motion(&cfg, &seq, route)?;
    let mut records = distance_table(&seq, &fitted.motion, cfg.n_max)?;
    let mut skipped = Vec::new();
    if extrapolate {
        let ex = richardson_extrapolate(&records, 2)?;
        records = ex.records;
        skipped = ex.skipped;
    }
    let lines = summary(&cfg, &records, extrapolate);
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let text = match cfg.format {
        Format::Csv => {
            let mut s = String::from("n,parity,distance,extrapolated\n");
            for r in &records {
                let _ = writeln!(s, "{},{},{},{}", r.n, parity_name(r.parity), num(r.distance), opt(r.extrapolated));
            }
            s
        }
        Format::Json => {
            let mut v = json!({
                "family": family_name(cfg.family),
                "seed_placement": cfg.seed_placement,
                "motion": motion_json(&cfg, &fitted),
                "records": records.iter().map(|r| json!({
                    "n": r.n,
                    "parity": parity_name(r.parity),
                    "distance": json_num(r.distance),
                    "extrapolated": r.extrapolated.map(json_num),
                })).collect::<Vec<_>>(),
                "summary": lines.iter().map(|l| json!({
                    "name": l.name,
                    "value": json_num(l.value),
                    "target": json_num(l.target),
                })).collect::<Vec<_>>(),
            });
            if extrapolate {
                v["skipped"] = json!(skipped);
            }
            json_text(&v)
        }
    };
    emit(out, &text)?;
    eprintln!("summary,name,value,target,deviation");
    for l in &lines {
        eprintln!("summary,{},{},{},{}", l.name, num(l.value), num(l.target), num(l.value - l.target));
    }
    if extrapolate && !skipped.is_empty() {
        eprintln!(
            "note: {} records without an extrapolation partner (n = {}..={})",
            skipped.len(),
            skipped.first().copied().unwrap_or(0),
            skipped.last().copied().unwrap_or(0)
        );
    }
    Ok(true)
}

#[derive(Debug, Deserialize)]
struct MotionFile {
    family: String,
    rotation: f64,
    translation: TranslationFile,
}

#[derive(Debug, Deserialize)]
struct TranslationFile {
    re: f64,
    im: f64,
}

fn read_motion(path: &Path) -> Result<(String, RigidMotion), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let m: MotionFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: not a motion file: {e}", path.display())))?;
    Ok((m.family, RigidMotion::new(m.rotation, Complex64::new(m.translation.re, m.translation.im))))
}

pub fn render(motion: Option<&Path>, partial: &PartialConfig, out: Option<&Path>) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(
        partial.clone(),
        Defaults {
            n_max: 30,
            window: None,
        },
    )?;
    if cfg.n_max > RENDER_LIMIT {
        return Err(CliError::Usage(format!(
            "render draws at most {RENDER_LIMIT} polygons' worth of indices, got --n-max {}",
            cfg.n_max
        )));
    }
    let chain = match cfg.family {
        Family::AllPolygons => build_chain(cfg.n_max)?,
        Family::OddPolygons => build_odd_chain(cfg.n_max)?,
    };
    let overlay = match motion {
        Some(path) => {
            let (family, m) = read_motion(path)?;
            if family != family_name(cfg.family) {
                return Err(CliError::Usage(format!(
                    "motion in {} was fitted for family '{family}', not '{}'",
                    path.display(),
                    family_name(cfg.family)
                )));
            }
            Some(m)
        }
        None => None,
    };
    let offset = match cfg.family {
        Family::AllPolygons => Complex64::new(0.0, 0.0),
        Family::OddPolygons => Complex64::new(-(3f64.sqrt()) / 6.0, 0.0),
    };
    let scene = SvgScene::new(&chain, overlay.as_ref().map(|m| (m, offset)));
    emit(out, &scene.render())?;
    Ok(true)
}
