use subdivlab::Scalar;
use subdivlab::analysis::{classify_scheme, sum_rule_order, verify_matching_filter, SchemeTag, DEFAULT_SR_CAP};
use subdivlab::corpus::{load_example, spline_eval, ExampleId, SchemeExpectation};
use subdivlab::engine::{dyadic_values, transition_matrix, LevelGuard};
use subdivlab::scalar::GaussRat;

fn check_filter_and_sr(id: ExampleId, params: &[(&str, subdivlab::Rational)]) {
    let case = load_example(id, params).unwrap();
    let v = case.printed_filter.as_ref().unwrap();
    let chk = verify_matching_filter(&case.mask, v).unwrap();
    assert!(chk.holds, "{id}: printed filter fails at {:?}", chk.first_failing_order);
    let sr = sum_rule_order(&case.mask, DEFAULT_SR_CAP).unwrap();
    assert!(case.expected.sr.accepts(sr.order), "{id}: sr {} vs {:?}", sr.order, case.expected.sr);
    let k = v.order().min(sr.filter.order());
    assert_eq!(sr.filter.truncate(k), v.truncate(k), "{id}");
}

#[test]
fn printed_filters_and_sum_rules() {
    for id in ExampleId::ALL {
        check_filter_and_sr(id, &[]);
        let names = ["t1", "t2", "t3"];
        let alt: Vec<_> = id.alternate().into_iter().enumerate().map(|(i, q)| (names[i], q)).collect();
        check_filter_and_sr(id, &alt);
    }
}

#[test]
fn spectra_match_recorded_eigenvalues() {
    for id in [ExampleId::Ex1, ExampleId::Ex2a1, ExampleId::Ex2a2] {
        let case = load_example(id, &[]).unwrap();
        let want: Vec<GaussRat> = case.expected.eigenvalues.clone().unwrap().into_iter().map(GaussRat::real).collect();
        let t = transition_matrix(&case.mask);
        let spec = t.spectrum();
        let mut got: Vec<GaussRat> = Vec::new();
        for e in &spec {
            if let Some(x) = &e.exact {
                if !x.is_zero() {
                    for _ in 0..e.multiplicity {
                        got.push(x.clone());
                    }
                }
            }
        }
        for w in &want {
            let pos = got.iter().position(|g| g == w).unwrap_or_else(|| panic!("{id}: missing eigenvalue {w}; spectrum {spec:?}"));
            got.remove(pos);
        }
        let dominant: f64 = spec.iter().filter(|e| e.exact.as_ref().map_or(true, |x| !x.is_zero())).map(|e| e.value.norm()).fold(0.0, f64::max);
        assert!((dominant - 1.0).abs() < 1e-12);
    }
}

#[test]
fn splines_match_dyadic_values() {
    for id in [ExampleId::Ex1, ExampleId::Ex2a1, ExampleId::Ex2a2] {
        for alt in [false, true] {
            let names = ["t1", "t2"];
            let params: Vec<_> = if alt { id.alternate().into_iter().enumerate().map(|(i, q)| (names[i], q)).collect() } else { Vec::new() };
            let case = load_example(id, &params).unwrap();
            let spline = case.spline.as_ref().unwrap();
            let sr = sum_rule_order(&case.mask, DEFAULT_SR_CAP).unwrap();
            let js: &[usize] = if id == ExampleId::Ex1 { &[0] } else { &[0, 1, 2] };
            for &j in js {
                let d = dyadic_values(&case.mask, &sr.filter, j, 3, LevelGuard::default()).unwrap();
                for k in -24..=24 {
                    let x = d.x(k);
                    let want = spline_eval(spline, &x, j).unwrap();
                    let got = d.at(k);
                    for c in 0..2 {
                        assert_eq!(got.get(c, 0), &GaussRat::real(want[c].clone()), "{id} alt={alt} j={j} x={x} comp={c}");
                    }
                }
            }
        }
    }
}

#[test]
fn classification_matches() {
    for id in ExampleId::ALL {
        let case = load_example(id, &[]).unwrap();
        let sr = sum_rule_order(&case.mask, DEFAULT_SR_CAP).unwrap();
        let m = sr.order - 1;
        let cls = classify_scheme(&sr.filter, case.mask.r(), m).unwrap();
        match case.expected.scheme.as_ref().unwrap() {
            SchemeExpectation::Lagrange => assert_eq!(cls.tag, SchemeTag::Lagrange, "{id}"),
            SchemeExpectation::Hermite { r, fast_at } => {
                assert_eq!(cls.tag, SchemeTag::Hermite(*r));
                let c3 = classify_scheme(&sr.filter, 2, *fast_at).unwrap();
                assert!(c3.fast);
            }
            SchemeExpectation::BalancedDelta { order } => {
                let c = classify_scheme(&sr.filter, 2, *order).unwrap();
                assert!(matches!(c.tag, SchemeTag::Balanced { c_is_delta: true, .. }), "{id}: {c:?}");
            }
        }
    }
}
