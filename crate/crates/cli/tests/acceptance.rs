//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use subdivlab::analysis::{sum_rule_filters, sum_rule_order, verify_matching_filter, FilterJet, DEFAULT_SR_CAP};
use subdivlab::convergence::{error_curves, fit_rate, CurveRequest, ErrorCurve, RateFit};
use subdivlab::corpus::{load_example, spline_eval, ExampleCase, ExampleId};
use subdivlab::descriptor::{MaskDescriptor, VectorDescriptor};
use subdivlab::engine::{dyadic_values, limit_function_samples, phi_integer_samples, transition_matrix, LevelGuard};
use subdivlab::normal_form::{build_u1, determinant, filter_times};
use subdivlab::scalar::{rat, rational_to_f64};
use subdivlab::smoothness::{generator_basis_for, rho_estimate, sm_report, GeneratorBasis, Norm, DEFAULT_N_MAX};
use subdivlab::{Base, GaussRat, Jet, Mat, MatrixSequence, Rational, Scalar};

type Outcome = Result<String, String>;

fn case(id: ExampleId) -> ExampleCase {
    load_example(id, &[]).expect("corpus example")
}

fn case_at(id: ExampleId, params: &[Rational]) -> ExampleCase {
    let names = ["t1", "t2", "t3"];
    let p: Vec<(&str, Rational)> = params.iter().cloned().enumerate().map(|(i, q)| (names[i], q)).collect();
    load_example(id, &p).expect("corpus example")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Largest distance after greedy matching of two complex multisets.
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
            .map(|(i, g)| (i, (g.0 - w.0).hypot(g.1 - w.1)))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        worst = worst.max(d);
        pool.remove(idx);
    }
    Some(worst)
}

fn dyadic(num: &[i64]) -> Vec<(f64, f64)> {
    num.iter().map(|&k| ((-k as f64).exp2(), 0.0)).collect()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let cases = [
        (case(ExampleId::Ex1), dyadic(&[0, 1, 1, 2, 3, 3])),
        (case_at(ExampleId::Ex1, &ExampleId::Ex1.alternate()), dyadic(&[0, 1, 1, 2, 3, 3])),
        (case(ExampleId::Ex2a1), dyadic(&[0, 1, 2, 3, 4, 5, 6, 7, 3, 7])),
        (case(ExampleId::Ex2a2), dyadic(&[0, 1, 2, 3, 4, 5, 6, 7, 5, 7])),
    ];
    for (c, want) in &cases {
        let got: Vec<(f64, f64)> = transition_matrix(&c.mask)
            .spectrum()
            .iter()
            .flat_map(|e| std::iter::repeat_n((e.value.re, e.value.im), e.multiplicity))
            .filter(|z| z.0.hypot(z.1) > 1e-8)
            .collect();
        let d = multiset_distance(&got, want)
            .ok_or_else(|| format!("{} {:?}: {} nonzero eigenvalues, expected {}", c.id, c.params, got.len(), want.len()))?;
        ensure(d <= 1e-8, || format!("{}: eigenvalue deviation {d:e}", c.id))?;
        worst = worst.max(d);
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(1), || format!("runtime {}", secs(el)))?;
    Ok(format!("ex1 (two points), ex2a1, ex2a2; largest deviation {worst:.1e}; {}", secs(el)))
}

fn criterion_2() -> Outcome {
    let points: Vec<(ExampleCase, &str, usize, bool)> = vec![
        (case(ExampleId::Ex1), "ex1", 4, true),
        (case(ExampleId::Ex2a1), "ex2a1", 8, true),
        (case(ExampleId::Ex2a2), "ex2a2", 8, true),
        (case_at(ExampleId::Ex3, &[rat(1, 128), rat(-13, 512)]), "ex3@(1/128,-13/512)", 5, true),
        (case_at(ExampleId::Ex3, &[rat(1, 128), rat(-7, 256)]), "ex3@(1/128,-7/256)", 6, true),
        (case(ExampleId::Ex4), "ex4", 4, false),
    ];
    let mut parts = Vec::new();
    for (c, label, want, exact) in points {
        let sr = sum_rule_order(&c.mask, DEFAULT_SR_CAP).map_err(|e| format!("{label}: {e}"))?.order;
        let ok = if exact { sr == want } else { sr >= want };
        ensure(ok, || format!("{label}: sr = {sr}, expected {}{want}", if exact { "" } else { ">= " }))?;
        parts.push(format!("{label}={sr}"));
    }
    Ok(parts.join(" "))
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<ExampleCase> = ExampleId::ALL.iter().map(|&id| case(id)).collect();
    cases.push(case_at(ExampleId::Ex3, &[rat(1, 128), rat(-7, 256)]));
    let mut parts = Vec::new();
    for c in &cases {
        let printed = c.printed_filter.as_ref().ok_or_else(|| format!("{}: no printed filter", c.id))?;
        let chk = verify_matching_filter(&c.mask, printed).map_err(|e| e.to_string())?;
        ensure(chk.holds, || format!("{}: printed filter fails at order {:?}", c.id, chk.first_failing_order))?;
        let computed = sum_rule_order(&c.mask, DEFAULT_SR_CAP).map_err(|e| e.to_string())?.filter;
        ensure(computed.order() >= printed.order(), || {
            format!("{}: computed filter has order {}, printed {}", c.id, computed.order(), printed.order())
        })?;
        ensure(computed.truncate(printed.order()) == *printed, || format!("{}: computed filter differs from the printed one", c.id))?;
        parts.push(format!("{}(order {})", c.id, printed.order()));
    }
    Ok(format!("exact through the printed order: {}", parts.join(" ")))
}

fn criterion_4() -> Outcome {
    let want = [
        (ExampleId::Ex1, 1.5),
        (ExampleId::Ex2a1, 3.5),
        (ExampleId::Ex2a2, 5.5),
        (ExampleId::Ex3, 4.5335),
        (ExampleId::Ex4, 3.8853),
    ];
    let mut parts = Vec::new();
    for (id, sm) in want {
        let c = case(id);
        let t = Instant::now();
        let rep = sm_report(&c.mask, DEFAULT_N_MAX, None).map_err(|e| format!("{id}: {e}"))?;
        let el = t.elapsed();
        ensure((rep.sm2 - sm).abs() <= 0.05, || format!("{id}: sm2 = {:.4}, expected {sm}", rep.sm2))?;
        ensure(el < Duration::from_secs(60), || format!("{id}: runtime {}", secs(el)))?;
        parts.push(format!("{id}={:.4} ({})", rep.sm2, secs(el)));
    }
    Ok(parts.join(" "))
}

struct FigureRun {
    id: ExampleId,
    names: Vec<&'static str>,
    curves: Vec<ErrorCurve>,
}

fn figure_runs() -> Result<(Vec<FigureRun>, Duration), String> {
    let t = Instant::now();
    let mut runs = Vec::new();
    for id in [ExampleId::Ex2a2, ExampleId::Ex3, ExampleId::Ex4] {
        let c = case(id);
        let sr = sum_rule_order(&c.mask, DEFAULT_SR_CAP).map_err(|e| e.to_string())?;
        let sm = sm_report(&c.mask, DEFAULT_N_MAX, None).map_err(|e| e.to_string())?;
        let m = sm.default_m().min(sr.filter.order());
        let reqs: Vec<CurveRequest> = c.test_vectors.iter().map(|tv| CurveRequest { u: tv.u.clone(), j: None }).collect();
        let curves = error_curves(&c.mask, &sr.filter, &reqs, m, 10, LevelGuard::default()).map_err(|e| format!("{id}: {e}"))?;
        runs.push(FigureRun { id, names: c.test_vectors.iter().map(|tv| tv.name).collect(), curves });
    }
    Ok((runs, t.elapsed()))
}

fn criterion_5(runs: &[FigureRun], el: Duration) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for run in runs {
        let c = case(run.id);
        for (name, curve) in run.names.iter().zip(&run.curves) {
            let fig = c.figure(name).ok_or_else(|| format!("{}: no figure curve for {name}", run.id))?;
            let got = curve.neg_log2();
            for &(n, y) in &fig.points {
                let d = (got[n as usize - 1] - y).abs();
                ensure(d <= 0.05, || format!("{} {name} n={n}: {:.4} vs {y}", run.id, got[n as usize - 1]))?;
                worst = worst.max(d);
                points += 1;
            }
        }
    }
    ensure(el < Duration::from_secs(120), || format!("runtime {}", secs(el)))?;
    Ok(format!("{points} coordinates, largest deviation {worst:.1e}; {}", secs(el)))
}

fn criterion_6(runs: &[FigureRun]) -> Outcome {
    let want: [(ExampleId, &str, f64); 6] = [
        (ExampleId::Ex2a2, "u1", 2.0),
        (ExampleId::Ex2a2, "u2", 4.0),
        (ExampleId::Ex2a2, "u3", 5.0),
        (ExampleId::Ex2a2, "u4", 2.0),
        (ExampleId::Ex2a2, "u5", 3.0),
        (ExampleId::Ex3, "u1", 4.0),
    ];
    let mut parts = Vec::new();
    for (id, name, rate) in want {
        let run = runs.iter().find(|r| r.id == id).expect("figure run");
        let idx = run.names.iter().position(|n| *n == name).ok_or_else(|| format!("{id}: no test vector {name}"))?;
        let slope = match fit_rate(&run.curves[idx], 5).map_err(|e| e.to_string())? {
            RateFit::Slope(s) => s,
            RateFit::ExactReproduction => return Err(format!("{id} {name}: exact reproduction, expected rate {rate}")),
        };
        ensure((slope - rate).abs() <= 0.15, || format!("{id} {name}: slope {slope:.4}, expected {rate}"))?;
        parts.push(format!("{id}/{name}={slope:.3}"));
    }
    Ok(parts.join(" "))
}

fn criterion_7() -> Outcome {
    let mut checked = 0usize;
    for (id, js) in [(ExampleId::Ex1, &[0usize][..]), (ExampleId::Ex2a1, &[0, 2]), (ExampleId::Ex2a2, &[0, 2])] {
        let c = case(id);
        let spline = c.spline.as_ref().ok_or_else(|| format!("{id}: no spline"))?;
        let (lo, hi) = spline.support();
        let sr = sum_rule_order(&c.mask, DEFAULT_SR_CAP).map_err(|e| e.to_string())?;
        for &j in js {
            for n in 0..=6u32 {
                let d = dyadic_values(&c.mask, &sr.filter, j, n, LevelGuard::default()).map_err(|e| format!("{id} j={j}: {e}"))?;
                let scale = 1i64 << n;
                let klo = rational_to_f64(&lo).floor() as i64 * scale - scale;
                let khi = rational_to_f64(&hi).ceil() as i64 * scale + scale;
                for k in klo..=khi {
                    let x = d.x(k);
                    let want = spline_eval(spline, &x, j).map_err(|e| e.to_string())?;
                    let got = d.at(k);
                    for (comp, w) in want.iter().enumerate() {
                        ensure(got.get(comp, 0) == &GaussRat::real(w.clone()), || {
                            format!("{id} j={j} n={n} x={x} component {}: {} vs {w}", comp + 1, got.get(comp, 0))
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("ex1 j=0, ex2a1 and ex2a2 j=0,2 at levels 0..6: {checked} grid points exact"))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for id in [ExampleId::Ex2a2, ExampleId::Ex3, ExampleId::Ex4] {
        let c = case(id);
        let printed = c.printed_filter.clone().ok_or_else(|| format!("{id}: no printed filter"))?;
        let computed = sum_rule_order(&c.mask, DEFAULT_SR_CAP).map_err(|e| e.to_string())?.filter;
        for tv in &c.test_vectors {
            let k = tv.identity.valid_through;
            let v = if printed.order() >= k { printed.clone() } else { computed.clone() };
            ensure(v.order() >= k, || format!("{id} {}: filter known only through order {}", tv.name, v.order()))?;
            let p = v.truncate(k).pair(&tv.u).map_err(|e| e.to_string())?;
            for l in 0..=k {
                let want = if l == tv.identity.degree { GaussRat::i_pow(l) } else { GaussRat::zero() };
                ensure(p.coeff(l).get(0, 0) == &want, || {
                    format!("{id} {}: coefficient of xi^{l} is {}, expected {want}", tv.name, p.coeff(l).get(0, 0))
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} identities exact (ex2a2 u1-u5, ex3 u1-u3, ex4 u1-u4)"))
}

fn nesting(c: &ExampleCase, v: &FilterJet) -> Result<usize, String> {
    let mut checks = 0;
    for j in 0..=2usize {
        let coarse = match dyadic_values(&c.mask, v, j, 3, LevelGuard::default()) {
            Ok(d) => d,
            Err(_) => continue,
        };
        let fine = dyadic_values(&c.mask, v, j, 4, LevelGuard::default()).map_err(|e| e.to_string())?;
        let w = c.mask.support();
        for k in (w.lo - 1) * 8..=(w.hi + 1) * 8 {
            ensure(fine.at(2 * k) == coarse.at(k), || format!("{} j={j}: level 4 and level 3 differ at k={k}", c.id))?;
        }
        checks += 1;
    }
    Ok(checks)
}

fn eigen_identity(c: &ExampleCase, v: &FilterJet) -> Result<usize, String> {
    let t = transition_matrix(&c.mask);
    let mut checks = 0;
    for j in 0..=v.order() {
        let Ok(u) = phi_integer_samples(&c.mask, v, j) else { continue };
        let tu = t.apply(&u).map_err(|e| e.to_string())?;
        ensure(tu == u.scale(&GaussRat::pow2(-(j as i64))), || format!("{} j={j}: T u != 2^-j u", c.id))?;
        checks += 1;
    }
    Ok(checks)
}

/// `(p * v)(k) = sum_e p^(e)(k) c_e (-i)^e` for `p = x^d` and filter coefficients `c_e`.
fn polynomial_data(v: &FilterJet, d: usize, window: i64) -> MatrixSequence<GaussRat> {
    let r = v.r();
    let coeffs = (-window..=window)
        .map(|k| {
            let mut row = vec![GaussRat::zero(); r];
            let mut falling = 1i64;
            for e in 0..=d {
                if e > 0 {
                    falling *= (d - e + 1) as i64;
                }
                let kp = GaussRat::real(Rational::from_integer(k.into()).pow((d - e) as i32));
                let pe = kp.mul_ref(&GaussRat::from_i64(falling));
                let w = pe.mul_ref(&GaussRat::neg_i_pow(e));
                for (l, x) in row.iter_mut().enumerate() {
                    *x = x.add_ref(&w.mul_ref(v.jet().coeff(e).get(0, l)));
                }
            }
            Mat::row(row)
        })
        .collect();
    MatrixSequence::new(1, r, -window, coeffs).expect("row sequence")
}

fn reproduction(c: &ExampleCase, v: &FilterJet, sr: usize) -> Result<usize, String> {
    const WINDOW: i64 = 6;
    const LEVEL: u32 = 3;
    let w = c.mask.support();
    let mut checks = 0;
    for d in 0..sr {
        let w0 = polynomial_data(v, d, WINDOW);
        let s = limit_function_samples(&c.mask, v, &w0, 0, LEVEL, WINDOW, LevelGuard::default()).map_err(|e| e.to_string())?;
        let scale = 1i64 << LEVEL;
        for k in (w.hi - WINDOW) * scale..=(w.lo + WINDOW) * scale {
            let x = s.x(k);
            let want = GaussRat::real(x.pow(d as i32));
            ensure(s.at(k).get(0, 0) == &want, || format!("{} degree {d}: eta({x}) = {} instead of {want}", c.id, s.at(k).get(0, 0)))?;
        }
        checks += 1;
    }
    Ok(checks)
}

fn with_direction(v: &FilterJet, dir: &Jet<GaussRat>, weight: i64) -> Result<FilterJet, String> {
    let w = GaussRat::from_i64(weight);
    let order = v.order().min(dir.order());
    let coeffs = (0..=order).map(|k| v.jet().coeff(k).add(&dir.coeff(k).scale(&w))).collect();
    let jet = Jet::new(Base::Zero, 1, v.r(), coeffs).map_err(|e| e.to_string())?;
    FilterJet::new(jet).map_err(|e| e.to_string())
}

/// Same filter through order `sr - 1`, arbitrary entries at order `sr`.
fn perturbed_tail(v: &FilterJet, sr: usize) -> Result<FilterJet, String> {
    let r = v.r();
    let mut coeffs: Vec<Mat<GaussRat>> = v.truncate(sr - 1).jet().coeffs().to_vec();
    coeffs.push(Mat::row((0..r).map(|l| GaussRat::ratio(3 + l as i64, 7)).collect()));
    FilterJet::new(Jet::new(Base::Zero, 1, r, coeffs).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn mixed_basis(b: &GeneratorBasis) -> GeneratorBasis {
    let mut members: Vec<MatrixSequence<GaussRat>> = b.members.iter().map(|u| u.shift(1)).collect();
    if members.len() > 1 {
        members[1] = members[1].add(&b.members[0]).expect("same shape");
    }
    GeneratorBasis { order: b.order, members }
}

fn filter_independence(c: &ExampleCase, sr: usize) -> Result<f64, String> {
    let family = sum_rule_filters(&c.mask, sr).map_err(|e| e.to_string())?.ok_or("sum rules fail at the computed order")?;
    let canonical = family.particular.clone();
    let mut filters = vec![canonical.clone(), perturbed_tail(&canonical, sr)?];
    for dir in &family.directions {
        filters.push(with_direction(&canonical, dir, 3)?);
    }
    let mut bases = Vec::new();
    for v in &filters {
        let b = generator_basis_for(v, sr).map_err(|e| e.to_string())?;
        ensure(b.verify(&canonical).map_err(|e| e.to_string())?, || format!("{}: basis from an alternate filter is not annihilated", c.id))?;
        bases.push(b);
    }
    let mixed = mixed_basis(&bases[0]);
    bases.push(mixed);
    let rhos: Vec<f64> = bases
        .iter()
        .map(|b| rho_estimate(&c.mask, b, Norm::L2, DEFAULT_N_MAX).map(|e| e.log2_rho).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let hi = rhos.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = rhos.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(hi - lo)
}

fn normal_form(c: &ExampleCase, v: &FilterJet, sr: usize) -> Result<usize, String> {
    let r = v.r();
    let mut checks = 0;
    for m in 0..sr {
        if r == 1 && m > 0 {
            break;
        }
        let u1 = build_u1(v, m).map_err(|e| format!("{} m={m}: {e}", c.id))?;
        if r > 1 {
            let det = determinant(u1.seq());
            ensure(det == MatrixSequence::delta_identity(1), || format!("{} m={m}: det U_1 is not 1", c.id))?;
        }
        let prod = filter_times(&v.truncate(m), u1.seq()).map_err(|e| e.to_string())?;
        for k in 0..=m {
            let want = if k == 0 {
                Mat::row((0..r).map(|l| if l == 0 { GaussRat::one() } else { GaussRat::zero() }).collect())
            } else {
                Mat::zeros(1, r)
            };
            ensure(prod.coeff(k) == &want, || format!("{} m={m}: v U_1 has a wrong coefficient at xi^{k}", c.id))?;
        }
        checks += 1;
    }
    Ok(checks)
}

/// Levels for the `rho_j` comparison. At ex2a2, `j = 5` settles only after about 30.
const RHOJ_LEVELS: u32 = 36;

fn rho_consistency(c: &ExampleCase, v: &FilterJet, sr: usize) -> Result<f64, String> {
    let top = rho_estimate(&c.mask, &generator_basis_for(v, sr).map_err(|e| e.to_string())?, Norm::L2, RHOJ_LEVELS)
        .map_err(|e| e.to_string())?
        .log2_rho;
    let mut worst: f64 = 0.0;
    for j in 0..sr {
        let b = generator_basis_for(v, j).map_err(|e| e.to_string())?;
        let got = rho_estimate(&c.mask, &b, Norm::L2, RHOJ_LEVELS).map_err(|e| e.to_string())?.log2_rho;
        let want = (0.5 - j as f64).max(top);
        let d = (got - want).abs();
        ensure(d <= 0.05, || format!("{} j={j}: log2 rho_j = {got:.4}, expected {want:.4}", c.id))?;
        worst = worst.max(d);
    }
    Ok(worst)
}

fn criterion_9() -> Outcome {
    let mut cases: Vec<ExampleCase> = ExampleId::ALL.iter().map(|&id| case(id)).collect();
    cases.push(case_at(ExampleId::Ex3, &[rat(1, 128), rat(-7, 256)]));
    let (mut nest, mut eig, mut repro, mut nf) = (0, 0, 0, 0);
    let (mut spread, mut rhoj): (f64, f64) = (0.0, 0.0);
    for c in &cases {
        let sr = sum_rule_order(&c.mask, DEFAULT_SR_CAP).map_err(|e| e.to_string())?;
        let v = &sr.filter;
        nest += nesting(c, v)?;
        eig += eigen_identity(c, v)?;
        repro += reproduction(c, v, sr.order)?;
        let s = filter_independence(c, sr.order)?;
        ensure(s <= 1e-3, || format!("{}: log2 rho spread {s:.2e} across filters and bases", c.id))?;
        spread = spread.max(s);
        nf += normal_form(c, v, sr.order)?;
        rhoj = rhoj.max(rho_consistency(c, v, sr.order)?);
    }
    Ok(format!(
        "nesting {nest} cases, eigen-identity {eig}, polynomial reproduction {repro} degrees, \
         filter independence spread {spread:.1e}, normal form {nf} orders, rho_j consistency within {rhoj:.3}"
    ))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_subdivlab")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok(out.stdout)
}

fn criterion_10() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for id in ExampleId::ALL {
        let c = case(id);
        let mask = dir.path().join(format!("{id}.json"));
        std::fs::write(&mask, MaskDescriptor::from_mask(&c.mask, c.printed_filter.as_ref()).to_json()).map_err(|e| e.to_string())?;
        let m = mask.to_str().unwrap();
        ensure(cli(&["analyze", m])? == cli(&["analyze", m])?, || format!("{id}: analyze output differs between runs"))?;
        runs += 1;
        if let Some(tv) = c.test_vectors.first() {
            let u = dir.path().join(format!("{id}_{}.json", tv.name));
            std::fs::write(&u, serde_json::to_string(&VectorDescriptor::from_sequence(&tv.u)).unwrap()).map_err(|e| e.to_string())?;
            let args = ["rates", m, "--u", u.to_str().unwrap()];
            ensure(cli(&args)? == cli(&args)?, || format!("{id}: rates output differs between runs"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} analyze/rates invocations byte-identical across two runs"))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "transition spectra", criterion_1()),
        (2, "sum rule orders", criterion_2()),
        (3, "matching filter jets", criterion_3()),
        (4, "sm2 estimates", criterion_4()),
    ];
    match figure_runs() {
        Ok((runs, el)) => {
            results.push((5, "figure reproduction", criterion_5(&runs, el)));
            results.push((6, "rate law", criterion_6(&runs)));
        }
        Err(e) => {
            results.push((5, "figure reproduction", Err(e.clone())));
            results.push((6, "rate law", Err(e)));
        }
    }
    results.push((7, "spline oracle", criterion_7()));
    results.push((8, "moment identities", criterion_8()));
    results.push((9, "property suite", criterion_9()));
    results.push((10, "CLI determinism", criterion_10()));

    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {}", results.len() - failed, secs(start.elapsed()));
    if failed > 0 {
        std::process::exit(1);
    }
}
