//! `analyze`, `subdivide`, `rates` and `design`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use subdivlab::analysis::{classify_scheme, design_mask, spectral_report, sum_rule_order, SchemeTag, DEFAULT_SR_CAP};
use subdivlab::convergence::{error_curves, fit_rate, running_slopes, CurveRequest, RateFit};
use subdivlab::descriptor::{FilterDescriptor, MaskDescriptor, VectorDescriptor};
use subdivlab::engine::{limit_function_samples, transition_matrix, LevelGuard};
use subdivlab::linalg::Eigenvalue;
use subdivlab::scalar::rational_to_f64;
use subdivlab::smoothness::{sm_report, SmoothnessReport};
use subdivlab::{GaussRat, Mask, MatrixSequence, Rational, SupportWindow, Symmetry};

use crate::format::{json_f64, scalar15, sig};
use crate::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn load_mask(path: &Path) -> CliResult<Mask> {
    let text = read(path)?;
    let d = MaskDescriptor::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    d.to_mask().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_vector(path: &Path, cols: usize) -> CliResult<MatrixSequence<GaussRat>> {
    let text = read(path)?;
    let d = VectorDescriptor::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let width = d.values.first().map_or(cols, |v| v.len());
    if width == 0 || width % cols != 0 {
        return Err(CliError::Input(format!("{}: entries must hold a multiple of {cols} scalars", path.display())));
    }
    d.to_sequence(width / cols, cols).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn eigen_json(e: &Eigenvalue) -> Value {
    json!({
        "re": json_f64(e.value.re),
        "im": json_f64(e.value.im),
        "exact": e.exact.as_ref().map(|x| x.to_string()),
        "multiplicity": e.multiplicity,
    })
}

fn classification_json(tag: &SchemeTag) -> Value {
    match tag {
        SchemeTag::Lagrange => json!({ "tag": "lagrange" }),
        SchemeTag::Hermite(r) => json!({ "tag": "hermite", "r": r }),
        SchemeTag::GeneralizedHermite => json!({ "tag": "generalized_hermite" }),
        SchemeTag::ScalarType => json!({ "tag": "scalar_type" }),
        SchemeTag::Balanced { c, c_is_delta } => json!({
            "tag": "balanced",
            "c": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "c_is_delta": c_is_delta,
        }),
        SchemeTag::Unclassified => json!({ "tag": "unclassified" }),
    }
}

pub fn smoothness_json(s: &SmoothnessReport) -> Value {
    let spread = s.rho2.members.iter().map(|m| m.spread).fold(0.0, f64::max);
    json!({
        "sm2": {
            "value": json_f64(s.sm2),
            "estimator": "mean norm ratio over the last 4 levels",
            "levels": s.rho2.n_max,
            "log2_ratio_spread": json_f64(spread),
        },
        "log2_rho2": json_f64(s.rho2.log2_rho),
        "sm_inf_bracket": [json_f64(s.sm_inf_bracket.0), json_f64(s.sm_inf_bracket.1)],
        "notes": s.notes,
    })
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

pub fn analyze(path: &Path, order: Option<usize>, levels: u32) -> CliResult<String> {
    let a = load_mask(path)?;
    let sr = sum_rule_order(&a, DEFAULT_SR_CAP)?;
    let m = order.unwrap_or(sr.order.saturating_sub(1));
    let spec = spectral_report(&a, m);
    if !spec.cond_a0 {
        return Err(CliError::Analysis(
            "cond_a0 fails: a^(0) has an eigenvalue 2^k with k >= 1".into(),
        ));
    }
    let mut diagnostics: Vec<String> = Vec::new();
    if sr.order == DEFAULT_SR_CAP {
        diagnostics.push(format!("sum rule order reached the search cap {DEFAULT_SR_CAP}"));
    }
    if !sr.singular_orders.is_empty() {
        diagnostics.push(format!("filter not unique at orders {:?}; free directions set to zero", sr.singular_orders));
    }
    let t = transition_matrix(&a);
    let t_eigs: Vec<Value> = t.spectrum().iter().map(eigen_json).collect();
    let smooth = if sr.order >= 1 {
        match sm_report(&a, levels, None) {
            Ok(s) => smoothness_json(&s),
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        json!({ "error": "no sum rules" })
    };
    let cls_order = m.min(sr.filter.order());
    if cls_order < m {
        diagnostics.push(format!("classification order lowered to {cls_order}, the order of the filter"));
    }
    let classification = match classify_scheme(&sr.filter, a.r(), cls_order) {
        Ok(c) => {
            let mut v = classification_json(&c.tag);
            v["nu"] = json!(c.nu);
            v["fast"] = json!(c.fast);
            v["order"] = json!(c.order);
            v
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    let symmetry = a.symmetry().map(|s| json!({ "declared": true, "holds": s.holds(a.seq()) }));
    let w = a.support();
    let report = json!({
        "r": a.r(),
        "support": [w.lo, w.hi],
        "sr": sr.order,
        "sr_search_cap": DEFAULT_SR_CAP,
        "filter": FilterDescriptor::from_filter(&sr.filter),
        "spectral": {
            "order": spec.order,
            "cond_a": spec.cond_a,
            "cond_a0": spec.cond_a0,
            "m_tilde": spec.m_tilde,
            "unit_multiplicity": spec.unit_multiplicity,
            "eigenvalues": spec.eigenvalues.iter().map(eigen_json).collect::<Vec<_>>(),
            "method": "exact dyadic roots of the characteristic polynomial, remaining roots by floating Schur decomposition",
        },
        "transition": {
            "window": [t.window.lo, t.window.hi],
            "dim": t.dim(),
            "eigenvalues": t_eigs,
        },
        "smoothness": smooth,
        "classification": classification,
        "symmetry": symmetry,
        "diagnostics": diagnostics,
    });
    Ok(to_json_string(&report))
}

pub fn subdivide(
    path: &Path,
    j: usize,
    level: u32,
    initial: Option<&Path>,
    window: Option<i64>,
    force: bool,
) -> CliResult<String> {
    let a = load_mask(path)?;
    let guard = LevelGuard::from_env();
    guard.check(level)?;
    let w0 = match initial {
        Some(p) => load_vector(p, a.r())?,
        None => MatrixSequence::delta_identity(a.r()),
    };
    let sr = sum_rule_order(&a, DEFAULT_SR_CAP)?;
    if !force {
        let s = sm_report(&a, 18, None)?;
        let safe = s.safe_derivative();
        if safe.is_none_or(|f| j > f) {
            return Err(CliError::Analysis(format!(
                "derivative order {j} exceeds floor(sm2 - 1/2) = {}; convergence in C^{j} needs sm_inf > {j} (use --force to evaluate anyway)",
                safe.map_or("-1".to_string(), |f| f.to_string())
            )));
        }
    }
    if sr.filter.order() < j {
        return Err(CliError::Analysis(format!("the mask satisfies only {} sum rules, too few for derivative order {j}", sr.order)));
    }
    let w = a.support();
    let k = window.unwrap_or(w.lo.abs().max(w.hi.abs()));
    let samples = limit_function_samples(&a, &sr.filter, &w0, j, level, k, guard)?;
    let rows = samples.values.rows();
    let scale = 1i64 << level;
    let mut out = String::from("x");
    for c in 0..rows {
        write!(out, ",value{}", c + 1).unwrap();
    }
    out.push('\n');
    for idx in -scale * k..=scale * k {
        let x = rational_to_f64(&samples.x(idx));
        out.push_str(&sig(x, 15));
        let v = samples.at(idx);
        for c in 0..rows {
            out.push(',');
            out.push_str(&scalar15(v.get(c, 0)));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn rates(path: &Path, u_path: &Path, levels: u32, tail: usize, deriv: Option<usize>, m: Option<usize>) -> CliResult<String> {
    let a = load_mask(path)?;
    let u = load_vector(u_path, 1)?;
    if u.rows() != a.r() {
        return Err(CliError::Input(format!("test vector has {} components, the mask needs {}", u.rows(), a.r())));
    }
    let sr = sum_rule_order(&a, DEFAULT_SR_CAP)?;
    let sm = sm_report(&a, 18, None).ok();
    let m = match m {
        Some(m) => m,
        None => sm.as_ref().map_or(0, |s| s.default_m()).min(sr.filter.order()),
    };
    let guard = LevelGuard::from_env();
    let req = CurveRequest { u, j: deriv };
    let curve = error_curves(&a, &sr.filter, &[req], m, levels, guard)?.remove(0);
    let slopes = running_slopes(&curve, tail);
    let mut out = String::from("n,E,neg_log2_E,running_slope\n");
    for (l, s) in curve.levels.iter().zip(&slopes) {
        let e = if l.is_zero() { "0".to_string() } else { sig(l.value(), 12) };
        let nl = sig(l.neg_log2, 12);
        let s = s.map_or(String::new(), |s| sig(s, 6));
        writeln!(out, "{},{e},{nl},{s}", l.n).unwrap();
    }
    let fit = if tail <= curve.levels.len() { Some(fit_rate(&curve, tail)?) } else { None };
    let slope = match fit {
        Some(RateFit::Slope(s)) => sig(s, 6),
        Some(RateFit::ExactReproduction) => "exact".into(),
        None => "unavailable".into(),
    };
    write!(out, "# j={} beta={} m={m} tail={tail} slope={slope}", curve.j, curve.beta).unwrap();
    if let Some(s) = &sm {
        let (lo, hi) = s.sm_inf_bracket;
        write!(
            out,
            " sm_inf_bracket=[{},{}] rate_bound=[{},{}]",
            sig(lo, 6),
            sig(hi, 6),
            sig(lo - curve.j as f64, 6),
            sig(hi - curve.j as f64, 6)
        )
        .unwrap();
    }
    out.push('\n');
    Ok(out)
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    let z: GaussRat = s.trim().parse().map_err(|e: subdivlab::Error| CliError::Input(e.to_string()))?;
    if !z.is_real() {
        return Err(CliError::Input(format!("`{s}` is not real")));
    }
    Ok(z.re)
}

fn parse_symmetry(spec: &str, r: usize) -> CliResult<Symmetry> {
    let (centers, signs) =
        spec.split_once(':').ok_or_else(|| CliError::Input(format!("symmetry `{spec}` must look like `centers:signs`")))?;
    let signs = signs
        .split(',')
        .map(|s| s.trim().parse::<i8>().map_err(|_| CliError::Input(format!("bad sign `{s}`"))))
        .collect::<CliResult<Vec<_>>>()?;
    let centers = centers.split(',').map(parse_rational).collect::<CliResult<Vec<_>>>()?;
    let centers = if centers.len() == 1 { vec![centers[0].clone(); r] } else { centers };
    Symmetry::new(centers, signs).map_err(|e| CliError::Input(e.to_string()))
}

fn coeff_block(seq: &MatrixSequence<GaussRat>, w: SupportWindow) -> Vec<Vec<Vec<String>>> {
    w.iter()
        .map(|k| {
            let m = seq.at(k);
            (0..m.rows()).map(|i| m.row_vec(i).iter().map(|x| x.to_string()).collect()).collect()
        })
        .collect()
}

pub fn design(support: &str, r: usize, order: usize, filter: &Path, symmetry: Option<&str>) -> CliResult<String> {
    let (lo, hi) = support
        .split_once(',')
        .ok_or_else(|| CliError::Input(format!("support `{support}` must look like `lo,hi`")))?;
    let parse_i = |s: &str| s.trim().parse::<i64>().map_err(|_| CliError::Input(format!("bad support bound `{s}`")));
    let (lo, hi) = (parse_i(lo)?, parse_i(hi)?);
    if hi < lo {
        return Err(CliError::Input(format!("support [{lo}, {hi}] is empty")));
    }
    let text = read(filter)?;
    let fd: FilterDescriptor =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", filter.display())))?;
    let v = fd.to_filter().map_err(|e| CliError::Input(format!("{}: {e}", filter.display())))?;
    if v.r() != r {
        return Err(CliError::Input(format!("filter has {} entries, expected {r}", v.r())));
    }
    if order >= 1 && v.order() + 1 < order {
        return Err(CliError::Input(format!("filter must be given through order {}, found {}", order - 1, v.order())));
    }
    let sym = symmetry.map(|s| parse_symmetry(s, r)).transpose()?;
    let window = SupportWindow::new(lo, hi);
    let fam = design_mask(window, r, sym.as_ref(), order, &v)?;
    let out = json!({
        "r": r,
        "support": [lo, hi],
        "order": order,
        "dimension": fam.dimension(),
        "particular": coeff_block(&fam.particular, window),
        "directions": fam.directions.iter().map(|d| coeff_block(d, window)).collect::<Vec<_>>(),
    });
    Ok(to_json_string(&out))
}
