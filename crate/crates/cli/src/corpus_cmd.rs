//! `corpus run` and `corpus export`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use subdivlab::analysis::{classify_scheme, sum_rule_order, verify_matching_filter, SchemeTag, DEFAULT_SR_CAP};
use subdivlab::convergence::{error_curves, CurveRequest};
use subdivlab::corpus::{load_example, parse_overrides, spline_eval, ExampleCase, ExampleId, SchemeExpectation};
use subdivlab::descriptor::MaskDescriptor;
use subdivlab::engine::{dyadic_values, transition_matrix, LevelGuard};
use subdivlab::smoothness::{sm_report, DEFAULT_N_MAX};
use subdivlab::{GaussRat, Rational, Scalar};

use crate::commands::smoothness_json;
use crate::format::sig;
use crate::{CliError, CliResult};

const SPLINE_LEVEL: u32 = 4;
const FIGURE_TOLERANCE: f64 = 0.05;
const SM2_TOLERANCE: f64 = 0.05;
const EIGEN_TOLERANCE: f64 = 1e-8;

fn load(id: &str, params: Option<&str>) -> CliResult<ExampleCase> {
    let id: ExampleId = id.parse().map_err(|e: subdivlab::Error| CliError::Input(e.to_string()))?;
    let overrides = match params {
        Some(p) => parse_overrides(p).map_err(|e| CliError::Input(e.to_string()))?,
        None => Vec::new(),
    };
    let refs: Vec<(&str, Rational)> = overrides.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    load_example(id, &refs).map_err(|e| CliError::Input(e.to_string()))
}

pub fn export(id: &str, params: Option<&str>, mask_only: bool) -> CliResult<String> {
    let case = load(id, params)?;
    Ok(if mask_only { MaskDescriptor::from_mask(&case.mask, case.printed_filter.as_ref()).to_json() } else { case.to_json() })
}

struct Checks(Vec<Value>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.0.push(json!({ "name": name, "pass": pass, "detail": detail }));
    }

    fn fail(&mut self, name: &str, e: impl std::fmt::Display) {
        self.push(name, false, format!("error: {e}"));
    }
}

/// Greedy matching of two multisets of complex numbers; returns the largest distance.
fn multiset_distance(got: &[(f64, f64)], want: &[(f64, f64)]) -> Option<f64> {
    if got.len() != want.len() {
        return None;
    }
    let mut pool = got.to_vec();
    let mut worst: f64 = 0.0;
    for w in want {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, g)| (i, ((g.0 - w.0).powi(2) + (g.1 - w.1).powi(2)).sqrt()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        worst = worst.max(d);
        pool.remove(idx);
    }
    Some(worst)
}

pub fn run(id: &str, params: Option<&str>, out: Option<&Path>) -> CliResult<String> {
    let case = load(id, params)?;
    let a = &case.mask;
    let mut checks = Checks(Vec::new());

    let sr = match sum_rule_order(a, DEFAULT_SR_CAP) {
        Ok(sr) => sr,
        Err(e) => {
            checks.fail("sum_rules", &e);
            return Ok(render(&case, checks, Value::Null));
        }
    };
    checks.push("sum_rules", case.expected.sr.accepts(sr.order), format!("sr = {}, expected {:?}", sr.order, case.expected.sr));

    if let Some(v) = &case.printed_filter {
        match verify_matching_filter(a, v) {
            Ok(c) => {
                let k = v.order().min(sr.filter.order());
                let agrees = sr.filter.truncate(k) == v.truncate(k);
                checks.push(
                    "matching_filter",
                    c.holds && agrees,
                    format!("printed filter of order {} holds: {}; agrees with computed through order {k}: {agrees}", v.order(), c.holds),
                );
            }
            Err(e) => checks.fail("matching_filter", e),
        }
    }

    if let Some(want) = &case.expected.eigenvalues {
        let got: Vec<(f64, f64)> = transition_matrix(a)
            .spectrum()
            .iter()
            .flat_map(|e| std::iter::repeat_n((e.value.re, e.value.im), e.multiplicity))
            .filter(|z| z.0.abs() > EIGEN_TOLERANCE || z.1.abs() > EIGEN_TOLERANCE)
            .collect();
        let want: Vec<(f64, f64)> = want.iter().map(|q| (subdivlab::scalar::rational_to_f64(q), 0.0)).collect();
        match multiset_distance(&got, &want) {
            Some(d) => checks.push("transition_eigenvalues", d <= EIGEN_TOLERANCE, format!("largest deviation {}", sig(d, 3))),
            None => checks.push(
                "transition_eigenvalues",
                false,
                format!("{} nonzero eigenvalues, expected {}", got.len(), want.len()),
            ),
        }
    }

    let smooth = match sm_report(a, DEFAULT_N_MAX, None) {
        Ok(s) => {
            if let Some(want) = case.expected.sm2 {
                checks.push(
                    "sm2",
                    (s.sm2 - want).abs() <= SM2_TOLERANCE,
                    format!("sm2 = {}, expected {want} +- {SM2_TOLERANCE}", sig(s.sm2, 6)),
                );
            }
            Some(s)
        }
        Err(e) => {
            checks.fail("sm2", e);
            None
        }
    };

    if let Some(exp) = &case.expected.scheme {
        let (order, want) = match exp {
            SchemeExpectation::Lagrange => (sr.filter.order(), "lagrange".to_string()),
            SchemeExpectation::Hermite { r, fast_at } => (*fast_at, format!("hermite({r}), fast")),
            SchemeExpectation::BalancedDelta { order } => (*order, "balanced with c = delta".to_string()),
        };
        match classify_scheme(&sr.filter, a.r(), order.min(sr.filter.order())) {
            Ok(c) => {
                let pass = match exp {
                    SchemeExpectation::Lagrange => c.tag == SchemeTag::Lagrange,
                    SchemeExpectation::Hermite { r, .. } => c.tag == SchemeTag::Hermite(*r) && c.fast,
                    SchemeExpectation::BalancedDelta { .. } => matches!(c.tag, SchemeTag::Balanced { c_is_delta: true, .. }),
                };
                checks.push("classification", pass, format!("{:?} at order {}, expected {want}", c.tag, c.order));
            }
            Err(e) => checks.fail("classification", e),
        }
    }

    for tv in &case.test_vectors {
        let k = tv.identity.valid_through;
        let filter = match &case.printed_filter {
            Some(p) if p.order() >= k => p.clone(),
            _ => sr.filter.clone(),
        };
        let name = format!("moment_identity_{}", tv.name);
        if filter.order() < k {
            checks.push(&name, false, format!("filter known only through order {}", filter.order()));
            continue;
        }
        match filter.truncate(k).pair(&tv.u) {
            Ok(p) => {
                let ok = (0..=k).all(|l| {
                    let c = p.coeff(l).get(0, 0);
                    if l == tv.identity.degree {
                        *c == GaussRat::i_pow(l)
                    } else {
                        c.is_zero()
                    }
                });
                checks.push(&name, ok, format!("(i xi)^{} + O(xi^{})", tv.identity.degree, k + 1));
            }
            Err(e) => checks.fail(&name, e),
        }
    }

    if !case.figures.is_empty() {
        let m = smooth.as_ref().map_or(0, |s| s.default_m()).min(sr.filter.order());
        let reqs: Vec<CurveRequest> = case.test_vectors.iter().map(|t| CurveRequest { u: t.u.clone(), j: None }).collect();
        match error_curves(a, &sr.filter, &reqs, m, 10, LevelGuard::from_env()) {
            Ok(curves) => {
                for (tv, c) in case.test_vectors.iter().zip(&curves) {
                    if let Some(dir) = out {
                        let mut csv = String::from("n,neg_log2_E\n");
                        for l in &c.levels {
                            writeln!(csv, "{},{}", l.n, sig(l.neg_log2, 12)).unwrap();
                        }
                        let path = dir.join(format!("{}_{}.csv", case.id, tv.name));
                        std::fs::write(&path, csv).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
                    }
                    let Some(fig) = case.figure(tv.name) else { continue };
                    let worst = fig
                        .points
                        .iter()
                        .map(|&(n, y)| (c.levels[n as usize - 1].neg_log2 - y).abs())
                        .fold(0.0, f64::max);
                    checks.push(
                        &format!("figure_{}_{}", fig.panel, tv.name),
                        worst <= FIGURE_TOLERANCE,
                        format!("j = {}, largest deviation {}", c.j, sig(worst, 3)),
                    );
                }
            }
            Err(e) => checks.fail("figures", e),
        }
    }

    if let Some(spline) = &case.spline {
        let js: &[usize] = if case.id == ExampleId::Ex1 { &[0] } else { &[0, 2] };
        for &j in js {
            let name = format!("spline_oracle_j{j}");
            match dyadic_values(a, &sr.filter, j, SPLINE_LEVEL, LevelGuard::from_env()) {
                Ok(d) => {
                    let (lo, hi) = spline.support();
                    let scale = 1i64 << SPLINE_LEVEL;
                    let lo = (lo * Rational::from_integer(scale.into())).to_integer();
                    let hi = (hi * Rational::from_integer(scale.into())).to_integer();
                    let lo: i64 = i64::try_from(lo).unwrap_or(0);
                    let hi: i64 = i64::try_from(hi).unwrap_or(0);
                    let mut mismatches = 0;
                    for k in lo..=hi {
                        let want = spline_eval(spline, &d.x(k), j)?;
                        let got = d.at(k);
                        if (0..want.len()).any(|c| got.get(c, 0) != &GaussRat::real(want[c].clone())) {
                            mismatches += 1;
                        }
                    }
                    checks.push(&name, mismatches == 0, format!("{mismatches} mismatches on the level-{SPLINE_LEVEL} grid"));
                }
                Err(e) => checks.fail(&name, e),
            }
        }
    }

    let sm = smooth.as_ref().map_or(Value::Null, smoothness_json);
    Ok(render(&case, checks, sm))
}

fn render(case: &ExampleCase, checks: Checks, smoothness: Value) -> String {
    let passed = checks.0.iter().filter(|c| c["pass"] == json!(true)).count();
    let failed = checks.0.len() - passed;
    let params: serde_json::Map<String, Value> =
        case.params.iter().map(|(n, v)| (n.to_string(), Value::String(GaussRat::real(v.clone()).to_string()))).collect();
    let v = json!({
        "id": case.id.as_str(),
        "params": params,
        "smoothness": smoothness,
        "checks": checks.0,
        "summary": { "passed": passed, "failed": failed },
    });
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}
