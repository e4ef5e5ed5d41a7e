//! Implementations of the subcommands, each a pure function of the merged
//! run configuration producing a deterministic output document.

use rayon::prelude::*;
use serde_json::json;

use catenoid_core::flux::{boundary_flux_balance, flux_constancy};
use catenoid_core::jacobi::{jacobi_pair, tail_integral};
use catenoid_core::profiles::{build_profile, embed, heights, v_height, Family, FamilySpec};
use catenoid_core::spectral::{assemble, index_on_interval, lambda1};
use catenoid_core::stability::{classify, envelope_cone, variation_zero, DomainSpec};
use catenoid_core::verify::{all_passed, run as run_verify, VerifyOptions};

use crate::config::{Format, RunConfig};
use crate::output::{emit, fmt15, Csv};

/// Command failure: usage errors exit 2, numerical failures exit 1.
pub enum CmdError {
    Usage(String),
    Numerical(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Numerical(_) => 1,
        }
    }
    pub fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Numerical(m) => m,
        }
    }
}

fn usage<T: std::fmt::Display>(e: T) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn numerical<T: std::fmt::Display>(e: T) -> CmdError {
    CmdError::Numerical(e.to_string())
}

type CmdResult = Result<(), CmdError>;

fn sample_range(cfg: &RunConfig, half_domain: f64) -> Result<(f64, usize), CmdError> {
    let s_max: f64 = cfg
        .parse("s_max")
        .map_err(usage)?
        .unwrap_or(if half_domain.is_finite() {
            0.95 * half_domain
        } else {
            5.0
        });
    if half_domain.is_finite() && s_max >= half_domain {
        return Err(usage(format!(
            "s_max = {s_max} outside the parameter domain (half-width {half_domain})"
        )));
    }
    let points: usize = cfg.parse("points").map_err(usage)?.unwrap_or(201);
    if points < 2 {
        return Err(usage("points must be at least 2"));
    }
    Ok((s_max, points))
}

fn require_csv(cfg: &RunConfig, what: &str) -> CmdResult {
    match cfg.format(Format::Csv).map_err(usage)? {
        Format::Csv => Ok(()),
        Format::Json => Err(usage(format!("{what} emits csv only"))),
    }
}

pub fn cmd_profile(cfg: &RunConfig) -> CmdResult {
    require_csv(cfg, "profile")?;
    let spec = cfg.family_spec().map_err(usage)?;
    let profile = build_profile(spec).map_err(numerical)?;
    let (s_max, points) = sample_range(cfg, profile.half_domain())?;

    if cfg.flag("mesh") {
        let theta_samples: usize = cfg.parse("theta_samples").map_err(usage)?.unwrap_or(64);
        let dim = profile.ambient_dim();
        let coord_names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        let mut header: Vec<&str> = vec!["s", "theta"];
        header.extend(coord_names.iter().map(|s| s.as_str()));
        let mut csv = Csv::new(&cfg.hash(), &header);
        for i in 0..points {
            let s = -s_max + 2.0 * s_max * i as f64 / (points - 1) as f64;
            for j in 0..theta_samples {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / theta_samples as f64;
                let x = embed(&profile, s, theta).map_err(numerical)?;
                let mut row = vec![s, theta];
                row.extend(x);
                csv.row(&row);
            }
        }
        emit(cfg.out_path().as_deref(), &csv.finish()).map_err(numerical)?;
        return Ok(());
    }

    let mut csv = Csv::new(
        &cfg.hash(),
        &["s", "radius", "height", "d_radius", "d_height"],
    );
    for i in 0..points {
        let s = -s_max + 2.0 * s_max * i as f64 / (points - 1) as f64;
        csv.row(&[
            s,
            profile.radius(s),
            profile.height(s),
            profile.d_radius(s),
            profile.d_height(s),
        ]);
    }
    emit(cfg.out_path().as_deref(), &csv.finish()).map_err(numerical)?;
    Ok(())
}

pub fn cmd_jacobi(cfg: &RunConfig) -> CmdResult {
    require_csv(cfg, "jacobi")?;
    let spec = cfg.family_spec().map_err(usage)?;
    let pair = jacobi_pair(spec).map_err(numerical)?;
    let (s_max, points) = sample_range(cfg, pair.half_domain())?;
    let alpha: Option<f64> = cfg.parse("alpha").map_err(usage)?;
    let alpha = match alpha {
        Some(a) => a,
        None => variation_zero(&pair).map_err(numerical)?.unwrap_or(1.0),
    };
    if !(alpha > 0.0 && alpha < pair.half_domain()) {
        return Err(usage(format!(
            "alpha = {alpha} outside (0, {})",
            pair.half_domain()
        )));
    }
    let w = catenoid_core::jacobi::combined_field(&pair, alpha).map_err(numerical)?;
    let mut csv = Csv::new(&cfg.hash(), &["s", "v", "e", "w"]);
    csv.comment(format!("alpha: {}", fmt15(alpha)));
    for i in 0..points {
        let s = -s_max + 2.0 * s_max * i as f64 / (points - 1) as f64;
        csv.row(&[s, pair.v(s), pair.e(s), w.eval(s)]);
    }
    emit(cfg.out_path().as_deref(), &csv.finish()).map_err(numerical)?;
    Ok(())
}

pub fn cmd_stability(cfg: &RunConfig) -> CmdResult {
    let spec = cfg.family_spec().map_err(usage)?;
    let report = classify(spec).map_err(numerical)?;
    let text = match cfg.format(Format::Json).map_err(usage)? {
        Format::Json => {
            let mut doc = serde_json::to_value(&report).map_err(numerical)?;
            doc["config_hash"] = json!(cfg.hash());
            serde_json::to_string_pretty(&doc).map_err(numerical)? + "\n"
        }
        Format::Csv => {
            let mut csv = Csv::new(
                &cfg.hash(),
                &["family", "a", "index", "E", "z", "ell", "lindelof"],
            );
            let opt = |v: Option<f64>| fmt15(v.unwrap_or(f64::NAN));
            csv.row_mixed(&[
                spec.family.label(),
                fmt15(spec.a),
                report.index.to_string(),
                opt(report.e_value),
                opt(report.z),
                opt(report.ell),
                report.lindelof.to_string(),
            ]);
            csv.finish()
        }
    };
    emit(cfg.out_path().as_deref(), &text).map_err(numerical)?;
    Ok(())
}

pub fn cmd_scan(cfg: &RunConfig) -> CmdResult {
    let a_min: f64 = cfg
        .parse("a_min")
        .map_err(usage)?
        .ok_or_else(|| usage("missing --a-min"))?;
    let a_max: f64 = cfg
        .parse("a_max")
        .map_err(usage)?
        .ok_or_else(|| usage("missing --a-max"))?;
    let a_step: f64 = cfg
        .parse("a_step")
        .map_err(usage)?
        .ok_or_else(|| usage("missing --a-step"))?;
    if !(a_min > 0.0 && a_max >= a_min && a_step > 0.0) {
        return Err(usage(format!(
            "empty or invalid range: a_min={a_min}, a_max={a_max}, a_step={a_step}"
        )));
    }
    let family = cfg.get("family").unwrap_or("h3min").to_string();
    let n_points = ((a_max - a_min) / a_step).floor() as usize + 1;
    if n_points > 100_000 {
        return Err(usage(format!(
            "scan of {n_points} points is unreasonably large; coarsen --a-step"
        )));
    }
    let necks: Vec<f64> = (0..n_points).map(|i| a_min + i as f64 * a_step).collect();

    let n_dim: Option<u32> = cfg.parse("n").map_err(usage)?;
    let make_spec = |a: f64| -> Result<FamilySpec, String> {
        let fam = match family.as_str() {
            "euclid" => Family::Euclid {
                n: n_dim.ok_or("--n required for euclid")?,
            },
            "h2xr" => Family::H2xR,
            "hnxr" => Family::HnxR {
                n: n_dim.ok_or("--n required for hnxr")?,
            },
            "h3min" => Family::H3Minimal,
            "h3cousin" => Family::H3Cousin,
            other => return Err(format!("unknown family '{other}'")),
        };
        FamilySpec::new(fam, a).map_err(|e| e.to_string())
    };
    make_spec(a_min).map_err(usage)?;

    // Row per neck value: (a, E0, V0, X0, index); fields that a family does
    // not define stay nan. Parallel over the grid, output in order.
    let rows: Vec<Result<[f64; 5], String>> = necks
        .par_iter()
        .map(|&a| {
            let spec = make_spec(a)?;
            let (e0, v0, x0, index) = match spec.family {
                Family::H3Minimal => {
                    let e0 = tail_integral(spec).map_err(|e| e.to_string())?.value;
                    let v0 = v_height(a).map_err(|e| e.to_string())?;
                    (e0, v0, v0.exp(), if e0 > 0.0 { 1.0 } else { 0.0 })
                }
                Family::H2xR | Family::HnxR { .. } => {
                    let e = tail_integral(spec).map_err(|e| e.to_string())?.value;
                    let v = heights(spec).map_err(|e| e.to_string())?.v;
                    (e, v, f64::NAN, 1.0)
                }
                Family::Euclid { .. } | Family::H3Cousin => (f64::NAN, f64::NAN, f64::NAN, 1.0),
            };
            Ok([a, e0, v0, x0, index])
        })
        .collect();

    let mut csv = Csv::new(&cfg.hash(), &["a", "E0", "V0", "X0", "index"]);
    let mut parsed = Vec::with_capacity(rows.len());
    for r in rows {
        parsed.push(r.map_err(CmdError::Numerical)?);
    }
    let mut sign_change: Option<(f64, f64)> = None;
    for pair in parsed.windows(2) {
        let (e_prev, e_next) = (pair[0][1], pair[1][1]);
        if e_prev.is_finite() && e_next.is_finite() && e_prev * e_next < 0.0 {
            sign_change = Some((pair[0][0], pair[1][0]));
        }
    }
    if let Format::Json = cfg.format(Format::Csv).map_err(usage)? {
        let rows: Vec<_> = parsed
            .iter()
            .map(|r| json!({"a": r[0], "E0": r[1], "V0": r[2], "X0": r[3], "index": r[4]}))
            .collect();
        let doc = json!({
            "rows": rows,
            "e0_sign_change": sign_change.map(|(lo, hi)| vec![lo, hi]),
            "config_hash": cfg.hash(),
        });
        let text = serde_json::to_string_pretty(&doc).map_err(numerical)? + "\n";
        emit(cfg.out_path().as_deref(), &text).map_err(numerical)?;
        return Ok(());
    }
    match sign_change {
        Some((lo, hi)) => csv.comment(format!(
            "E0 sign change bracketed in [{}, {}]",
            fmt15(lo),
            fmt15(hi)
        )),
        None => csv.comment("no E0 sign change on the scanned range"),
    }
    for row in &parsed {
        csv.row(row);
    }
    emit(cfg.out_path().as_deref(), &csv.finish()).map_err(numerical)?;
    Ok(())
}

pub fn cmd_spectrum(cfg: &RunConfig) -> CmdResult {
    let spec = cfg.family_spec().map_err(usage)?;
    let pair = jacobi_pair(spec).map_err(numerical)?;
    let (lo, hi) = cfg
        .interval("interval")
        .map_err(usage)?
        .ok_or_else(|| usage("missing --interval LO:HI"))?;
    let n_grid: usize = cfg.parse("grid").map_err(usage)?.unwrap_or(4001);
    let problem = assemble(&pair, lo, hi, n_grid).map_err(numerical)?;
    let result = lambda1(&problem);
    let index = index_on_interval(&problem);

    if let Some(path) = cfg.get("eigenvector") {
        let h = (problem.hi - problem.lo) / (n_grid - 1) as f64;
        let mut csv = Csv::new(&cfg.hash(), &["s", "f"]);
        for (i, v) in result.eigenvector.iter().enumerate() {
            csv.row(&[problem.lo + (i + 1) as f64 * h, *v]);
        }
        std::fs::write(path, csv.finish()).map_err(numerical)?;
    }

    let doc = json!({
        "family": spec.family.label(),
        "a": spec.a,
        "interval": [problem.lo, problem.hi],
        "grid": n_grid,
        "lambda1": result.lambda1,
        "index": index,
        "truncation": problem.truncation,
        "recovery_mismatch": problem.recovery_mismatch,
        "config_hash": cfg.hash(),
    });
    let text = serde_json::to_string_pretty(&doc).map_err(numerical)? + "\n";
    emit(cfg.out_path().as_deref(), &text).map_err(numerical)?;
    Ok(())
}

pub fn cmd_envelope(cfg: &RunConfig) -> CmdResult {
    let n: u32 = cfg
        .parse("n")
        .map_err(usage)?
        .ok_or_else(|| usage("missing --n"))?;
    if n < 2 {
        return Err(usage(format!("need n >= 2 (got {n})")));
    }
    let cone = envelope_cone(n).map_err(numerical)?;
    let doc = json!({
        "n": cone.n,
        "z_unit": cone.z_unit,
        "slope": cone.slope,
        "config_hash": cfg.hash(),
    });
    let text = serde_json::to_string_pretty(&doc).map_err(numerical)? + "\n";
    emit(cfg.out_path().as_deref(), &text).map_err(numerical)?;
    Ok(())
}

pub fn cmd_flux(cfg: &RunConfig) -> CmdResult {
    require_csv(cfg, "flux")?;
    let spec = cfg.family_spec().map_err(usage)?;
    let tol = cfg.tolerances().map_err(usage)?;
    let profile = build_profile(spec).map_err(numerical)?;
    let (s_max, points) = sample_range(cfg, profile.half_domain())?;
    let grid: Vec<f64> = (0..points)
        .map(|i| -s_max + 2.0 * s_max * i as f64 / (points - 1) as f64)
        .collect();
    let trace = flux_constancy(spec, &grid, tol).map_err(numerical)?;

    let mut csv = Csv::new(&cfg.hash(), &["s", "flux"]);
    csv.comment(format!(
        "constant-estimate: {}",
        fmt15(trace.constant_estimate)
    ));
    csv.comment(format!(
        "max-relative-deviation: {}",
        fmt15(trace.max_relative_deviation)
    ));
    if let Some((lo, hi)) = cfg.interval("domain").map_err(usage)? {
        let domain = DomainSpec::new(lo, hi).map_err(usage)?;
        let residual = boundary_flux_balance(spec, domain).map_err(numerical)?;
        csv.comment(format!("balance-residual: {}", fmt15(residual)));
    }
    for (s, v) in &trace.samples {
        csv.row(&[*s, *v]);
    }
    emit(cfg.out_path().as_deref(), &csv.finish()).map_err(numerical)?;
    Ok(())
}

pub fn cmd_verify(cfg: &RunConfig) -> CmdResult {
    let tol_scale: f64 = cfg.parse("tol_scale").map_err(usage)?.unwrap_or(1.0);
    if !(tol_scale > 0.0) {
        return Err(usage("tol-scale must be positive"));
    }
    let options = VerifyOptions {
        tol_scale,
        filter: cfg.get("filter").map(|s| s.to_string()),
    };
    let outcomes = run_verify(&options);
    if outcomes.is_empty() {
        return Err(usage(format!(
            "filter '{}' matched no criteria",
            options.filter.unwrap_or_default()
        )));
    }
    let mut text = String::new();
    text.push_str(&format!("# config-hash: {}\n", cfg.hash()));
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "[{status}] {:>2}. {}: {}\n",
            o.id, o.name, o.detail
        ));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    emit(cfg.out_path().as_deref(), &text).map_err(numerical)?;
    if all_passed(&outcomes) {
        Ok(())
    } else {
        Err(CmdError::Numerical("verification failed".into()))
    }
}
