use std::time::Instant;

use subdivlab::corpus::{load_example, ExampleId};
use subdivlab::smoothness::{sm_report, DEFAULT_N_MAX};

#[test]
fn corpus_sm2_values() {
    for id in ExampleId::ALL {
        let case = load_example(id, &[]).unwrap();
        let t = Instant::now();
        let rep = sm_report(&case.mask, DEFAULT_N_MAX, None).unwrap();
        let want = case.expected.sm2.unwrap();
        eprintln!("{id}: sm2 {:.4} (want {want}) sr {} in {:?} spreads {:?}", rep.sm2, rep.sr, t.elapsed(), rep.rho2.members.iter().map(|m| (m.log2_ratio, m.spread)).collect::<Vec<_>>());
        assert!((rep.sm2 - want).abs() < 0.05, "{id}: {} vs {want}", rep.sm2);
    }
}
