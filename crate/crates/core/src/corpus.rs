//! Worked example masks with their recorded properties: filters, spectra,
//! spline closed forms, test vectors and convergence-plot coordinates.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::analysis::FilterJet;
use crate::descriptor::{MaskDescriptor, VectorDescriptor};
use crate::error::{Error, Result};
use crate::mask::{Mask, Symmetry};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::scalar::{rat, GaussRat, Rational, Scalar};
use crate::sequence::MatrixSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleId {
    Ex1,
    Ex2a1,
    Ex2a2,
    Ex3,
    Ex4,
}

impl ExampleId {
    pub const ALL: [ExampleId; 5] = [ExampleId::Ex1, ExampleId::Ex2a1, ExampleId::Ex2a2, ExampleId::Ex3, ExampleId::Ex4];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleId::Ex1 => "ex1",
            ExampleId::Ex2a1 => "ex2a1",
            ExampleId::Ex2a2 => "ex2a2",
            ExampleId::Ex3 => "ex3",
            ExampleId::Ex4 => "ex4",
        }
    }

    fn param_names(&self) -> &'static [&'static str] {
        match self {
            ExampleId::Ex4 => &["t1", "t2", "t3"],
            _ => &["t1", "t2"],
        }
    }

    pub fn defaults(&self) -> Vec<Rational> {
        match self {
            ExampleId::Ex1 => vec![rat(1, 16), rat(1, 8)],
            ExampleId::Ex2a1 => vec![rat(1, 64), rat(1, 32)],
            ExampleId::Ex2a2 => vec![rat(1, 1), rat(-1, 1)],
            ExampleId::Ex3 => vec![rat(1, 128), rat(-13, 512)],
            ExampleId::Ex4 => vec![rat(-1, 64), rat(-1, 32), rat(-1, 128)],
        }
    }

    /// A second parameter point used to check family-wide claims.
    pub fn alternate(&self) -> Vec<Rational> {
        match self {
            ExampleId::Ex1 => vec![rat(1, 32), rat(1, 16)],
            ExampleId::Ex2a1 => vec![rat(1, 128), rat(1, 64)],
            ExampleId::Ex2a2 => vec![rat(1, 2), rat(-1, 2)],
            ExampleId::Ex3 => vec![rat(1, 128), rat(-7, 256)],
            ExampleId::Ex4 => vec![rat(-1, 64), rat(-1, 32), rat(-1, 128)],
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SrExpectation {
    Exactly(usize),
    AtLeast(usize),
}

impl SrExpectation {
    pub fn accepts(&self, sr: usize) -> bool {
        match self {
            SrExpectation::Exactly(v) => sr == *v,
            SrExpectation::AtLeast(v) => sr >= *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SchemeExpectation {
    Lagrange,
    Hermite { r: usize, fast_at: usize },
    BalancedDelta { order: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub sr: SrExpectation,
    pub sm2: Option<f64>,
    /// Eigenvalues of the transition matrix, with multiplicity.
    pub eigenvalues: Option<Vec<Rational>>,
    pub scheme: Option<SchemeExpectation>,
}

/// `v^ u^ = (i xi)^degree + O(xi^{valid_through + 1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentIdentity {
    pub degree: usize,
    pub valid_through: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestVector {
    pub name: &'static str,
    pub u: MatrixSequence<GaussRat>,
    pub identity: MomentIdentity,
}

/// Plotted `(n, -log2 E_u(n))` coordinates for one test vector.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureCurve {
    pub panel: &'static str,
    pub vector: &'static str,
    pub points: Vec<(u32, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplinePiece {
    pub lo: Rational,
    pub hi: Rational,
    pub components: Vec<Poly>,
}

/// Piecewise polynomial vector function.
#[derive(Clone, Debug, PartialEq)]
pub struct SplineOracle {
    pub pieces: Vec<SplinePiece>,
    pub max_derivative: usize,
}

impl SplineOracle {
    /// Pieces on `[0, ...]` plus their mirror images under `x -> -x`.
    fn symmetric(right: Vec<SplinePiece>, max_derivative: usize) -> Self {
        let mut pieces: Vec<SplinePiece> = right
            .iter()
            .rev()
            .map(|p| SplinePiece {
                lo: -p.hi.clone(),
                hi: -p.lo.clone(),
                components: p.components.iter().map(|c| c.reflect()).collect(),
            })
            .collect();
        pieces.extend(right);
        SplineOracle { pieces, max_derivative }
    }

    pub fn support(&self) -> (Rational, Rational) {
        (self.pieces[0].lo.clone(), self.pieces.last().unwrap().hi.clone())
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].components.len()
    }
}

/// Exact `j`-th derivative of the spline at `x`. Knots take the piece to their
/// right; points outside the support give zero.
pub fn spline_eval(oracle: &SplineOracle, x: &Rational, j: usize) -> Result<Vec<Rational>> {
    if j > oracle.max_derivative {
        return Err(Error::InvalidParameter(format!(
            "derivative order {j} exceeds the supported order {}",
            oracle.max_derivative
        )));
    }
    let piece = oracle.pieces.iter().find(|p| &p.lo <= x && x < &p.hi);
    Ok(match piece {
        Some(p) => p.components.iter().map(|c| c.nth_derivative(j).eval(x)).collect(),
        None => vec![Rational::zero(); oracle.dim()],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleCase {
    pub id: ExampleId,
    pub params: Vec<(&'static str, Rational)>,
    pub mask: Mask,
    /// The filter jets as printed, after substituting the parameters.
    pub printed_filter: Option<FilterJet>,
    pub expected: Expected,
    pub test_vectors: Vec<TestVector>,
    pub figures: Vec<FigureCurve>,
    pub spline: Option<SplineOracle>,
}

fn g(q: Rational) -> GaussRat {
    GaussRat::real(q)
}

fn m2(a: Rational, b: Rational, c: Rational, d: Rational) -> Mat<GaussRat> {
    Mat::from_rows(vec![vec![g(a), g(b)], vec![g(c), g(d)]]).expect("2x2")
}

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn int(n: i64) -> Rational {
    rat(n, 1)
}

fn col(items: &[(i64, [Rational; 2])]) -> MatrixSequence<GaussRat> {
    let v: Vec<(i64, Vec<GaussRat>)> = items.iter().map(|(k, x)| (*k, x.iter().cloned().map(g).collect())).collect();
    MatrixSequence::from_vectors(2, &v).expect("2-vectors")
}

/// Filter from even-power coefficients: `entries[l][k]` multiplies `xi^{2k}`.
fn even_filter(entries: [Vec<Rational>; 2], order: usize) -> FilterJet {
    let rows = (0..=order)
        .map(|k| {
            entries
                .iter()
                .map(|e| if k % 2 == 0 { e.get(k / 2).cloned().map(g).unwrap_or_default() } else { GaussRat::zero() })
                .collect()
        })
        .collect();
    FilterJet::from_rows(rows).expect("printed filter")
}

/// Filter from `(i xi)^k` coefficients: `entries[l][k]` multiplies `(i xi)^k`.
fn ixi_filter(entries: [Vec<Rational>; 2], order: usize) -> FilterJet {
    let rows = (0..=order)
        .map(|k| {
            entries
                .iter()
                .map(|e| e.get(k).cloned().map(g).unwrap_or_default().mul_ref(&GaussRat::i_pow(k)))
                .collect()
        })
        .collect();
    FilterJet::from_rows(rows).expect("printed filter")
}

fn pw(p: &Poly, e: u32) -> Poly {
    p.pow(e)
}

fn c(q: Rational) -> Poly {
    Poly::constant(q)
}

/// `sum_k coeffs[k] x^k`.
fn px(coeffs: Vec<Rational>) -> Poly {
    Poly::new(coeffs)
}

fn piece(lo: i64, hi: i64, components: Vec<Poly>) -> SplinePiece {
    SplinePiece { lo: int(lo), hi: int(hi), components }
}

fn dyadic_eigs(extra: &[i64], top: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..=top).map(|k| crate::scalar::pow2_rational(-k)).collect();
    v.extend(extra.iter().map(|&k| crate::scalar::pow2_rational(-k)));
    v
}

fn curve(panel: &'static str, vector: &'static str, ys: [f64; 10]) -> FigureCurve {
    FigureCurve { panel, vector, points: ys.iter().enumerate().map(|(i, &y)| (i as u32 + 1, y)).collect() }
}

fn build_ex1(t: &[Rational]) -> Result<ExampleCase> {
    let (t1, t2) = (&t[0], &t[1]);
    let b = m2(r(1, 16) + t1 - t2, t1 - t2, r(3, 16) - t1 + t2, r(1, 4) - t1 + t2);
    let cm = m2(r(1, 8) + int(2) * t1, int(2) * t1, r(3, 8) - int(2) * t1, r(1, 2) - int(2) * t1);
    let mask = Mask::from_coeffs(-1, vec![b.clone(), cm, b], Some(Symmetry::uniform(int(0), vec![1, 1])?))?;
    let filter = even_filter(
        [
            vec![int(1), (int(16) * t1 - int(3)) / (int(96) * t2)],
            vec![int(1), t1.clone() / (int(6) * t2)],
        ],
        3,
    );
    let x = Poly::x();
    let one_minus_x = c(int(1)).sub(&x);
    let q1 = px(vec![t1.clone(), int(-2) * t2, t2.clone()]);
    let phi1 = one_minus_x.mul(&q1).scale(&r(16, 3));
    let q2 = px(vec![int(16) * t1 - int(3), int(-32) * t2, int(16) * t2]);
    let phi2 = Poly::linear(int(1)).mul(&q2).scale(&r(1, 3));
    let spline = SplineOracle::symmetric(vec![piece(0, 1, vec![phi1, phi2])], 3);
    Ok(ExampleCase {
        id: ExampleId::Ex1,
        params: vec![("t1", t1.clone()), ("t2", t2.clone())],
        mask,
        printed_filter: Some(filter),
        expected: Expected {
            sr: SrExpectation::Exactly(4),
            sm2: Some(1.5),
            eigenvalues: Some(dyadic_eigs(&[1, 3], 3)),
            scheme: Some(SchemeExpectation::Lagrange),
        },
        test_vectors: Vec::new(),
        figures: Vec::new(),
        spline: Some(spline),
    })
}

fn build_ex2a1(t: &[Rational]) -> Result<ExampleCase> {
    let (t1, t2) = (&t[0], &t[1]);
    let s0 = int(6) * t1 + int(4) * t2;
    let a0 = m2(s0.clone(), r(-3, 128) + &s0, r(3, 8) - &s0, r(51, 128) - &s0);
    let s1 = int(4) * t1 - t2;
    let a1 = m2(s1.clone(), r(-1, 64) + &s1, r(1, 4) - &s1, r(17, 64) - &s1);
    let a2 = m2(t1.clone(), r(-1, 256) + t1, r(1, 16) - t1, r(17, 256) - t1);
    let mask = Mask::from_coeffs(
        -2,
        vec![a2.clone(), a1.clone(), a0, a1, a2],
        Some(Symmetry::uniform(int(0), vec![1, 1])?),
    )?;
    let d1 = int(241920) * t2;
    let d2 = int(967680) * t2;
    let filter = even_filter(
        [
            vec![
                int(1),
                r(1, 6),
                (int(4032) * t2 + int(2688) * t1 - int(168)) / &d1,
                (int(384) * t2 + int(448) * t1 - int(28)) / &d1,
            ],
            vec![
                int(1),
                r(1, 6),
                (int(16128) * t2 + int(10752) * t1 - int(42)) / &d2,
                (int(1536) * t2 + int(1792) * t1 - int(7)) / &d2,
            ],
        ],
        7,
    );
    let x = Poly::x();
    let x2 = Poly::linear(int(2));
    // phi_1 on [0, 1]
    let p1_01 = px(vec![
        r(512, 45) * t1 + r(512, 105) * t2 - r(2, 45),
        int(0),
        -(r(256, 15) * t1 + r(256, 5) * t2 - r(1, 15)),
        r(128, 15) * t1 + r(256, 3) * t2 - r(1, 30),
        r(-128, 3) * t2,
        int(0),
        r(64, 15) * t2,
        r(-32, 35) * t2,
    ]);
    // phi_1 on [1, 2]
    let p1_12 = pw(&x2, 3)
        .mul(&px(vec![
            int(-1792) * t1 + int(3072) * t2 + int(7),
            int(-6144) * t2,
            int(4608) * t2,
            int(-1536) * t2,
            int(192) * t2,
        ]))
        .scale(&r(1, 630));
    // phi_2 on [0, 1]
    let p2_01 = px(vec![
        r(-512, 45) * t1 - r(512, 105) * t2 + r(32, 45),
        int(0),
        r(256, 15) * t1 + r(256, 5) * t2 - r(16, 15),
        -(r(128, 15) * t1 + r(256, 3) * t2 - r(8, 15)),
        r(128, 3) * t2,
        int(0),
        r(-64, 15) * t2,
        r(32, 35) * t2,
    ]);
    // phi_2 on [1, 2]
    let p2_12 = pw(&x2, 3)
        .mul(&px(vec![
            int(112) * t1 - int(192) * t2 - int(7),
            int(384) * t2,
            int(-288) * t2,
            int(96) * t2,
            int(-12) * t2,
        ]))
        .scale(&r(8, 315));
    let _ = x;
    let spline = SplineOracle::symmetric(vec![piece(0, 1, vec![p1_01, p2_01]), piece(1, 2, vec![p1_12, p2_12])], 7);
    Ok(ExampleCase {
        id: ExampleId::Ex2a1,
        params: vec![("t1", t1.clone()), ("t2", t2.clone())],
        mask,
        printed_filter: Some(filter),
        expected: Expected {
            sr: SrExpectation::Exactly(8),
            sm2: Some(3.5),
            eigenvalues: Some(dyadic_eigs(&[3, 7], 7)),
            scheme: Some(SchemeExpectation::Lagrange),
        },
        test_vectors: Vec::new(),
        figures: Vec::new(),
        spline: Some(spline),
    })
}

fn build_ex2a2(t: &[Rational]) -> Result<ExampleCase> {
    let (t1, t2) = (&t[0], &t[1]);
    let t1s = t1 * t1;
    let p = (r(40, 3) * &t1s - r(71, 24) * t1 + r(31, 768)) * t2;
    let a0 = m2(
        &p + r(5, 2) * t1 - r(13, 128),
        p.clone(),
        -&p - int(5) * t1 + r(71, 128) - r(15, 32) / t2,
        -&p - r(5, 2) * t1 + r(29, 64),
    );
    let tt = t1 * t2;
    let a1 = m2(r(1, 16) - &tt, -tt.clone(), r(3, 16) + &tt, r(1, 4) + &tt);
    let q = (r(-20, 3) * &t1s - r(7, 48) * t1 - r(1, 1536)) * t2;
    let a2 = m2(
        &q - r(5, 4) * t1 - r(1, 256),
        q.clone(),
        -&q + r(5, 2) * t1 + r(7, 256) + r(15, 64) / t2,
        -&q + r(5, 4) * t1 + r(3, 128),
    );
    let mask = Mask::from_coeffs(
        -2,
        vec![a2.clone(), a1.clone(), a0, a1, a2],
        Some(Symmetry::uniform(int(0), vec![1, 1])?),
    )?;
    let inv = t2.recip();
    let filter = even_filter(
        [
            vec![
                int(1),
                r(1, 6) - r(16, 3) * t1 - &inv,
                r(7, 360) - r(8, 9) * t1 - r(1, 6) * &inv,
                r(31, 15120) - r(14, 135) * t1 - r(7, 360) * &inv,
            ],
            vec![int(1), r(1, 6) - r(16, 3) * t1, r(7, 360) - r(8, 9) * t1, r(31, 15120) - r(14, 135) * t1],
        ],
        7,
    );
    let x2 = Poly::linear(int(2));
    let two_minus_x = c(int(0)).sub(&x2);
    let p1_01 = px(vec![
        int(-5120) * t1 + int(64),
        int(0),
        int(8960) * t1 - int(280),
        int(0),
        int(770) - int(11200) * t1,
        int(10080) * t1 - int(861),
        int(350) - int(4480) * t1,
        int(960) * t1 - int(45),
    ])
    .scale(&(t2 / int(1260)));
    let p2_01 = px(vec![
        r(256, 63) * &tt - r(16, 315) * t2 + r(16, 21),
        int(0),
        -(r(64, 9) * &tt - r(2, 9) * t2 + r(4, 3)),
        int(0),
        r(80, 9) * &tt - r(11, 18) * t2 + r(5, 3),
        -(int(8) * &tt - r(41, 60) * t2 + r(3, 2)),
        r(32, 9) * &tt - r(5, 18) * t2 + r(2, 3),
        r(-16, 21) * &tt + r(1, 28) * t2 - r(1, 7),
    ]);
    let p1_12 = pw(&two_minus_x, 5)
        .mul(&px(vec![int(160) * t1 + int(13), -(int(1280) * t1 + int(20)), int(320) * t1 + int(5)]))
        .scale(&(t2 / int(1260)));
    let p2_12 = pw(&x2, 5).mul(&px(vec![
        r(8, 63) * &tt + r(13, 1260) * t2 + r(1, 42),
        -(r(64, 63) * &tt + r(1, 63) * t2 + r(4, 21)),
        r(16, 63) * &tt + r(1, 252) * t2 + r(1, 21),
    ]));
    let spline = SplineOracle::symmetric(vec![piece(0, 1, vec![p1_01, p2_01]), piece(1, 2, vec![p1_12, p2_12])], 7);
    let figure_point = t1 == &int(1) && t2 == &int(-1);
    let (test_vectors, figures) = if figure_point { ex2a2_figure_data() } else { (Vec::new(), Vec::new()) };
    Ok(ExampleCase {
        id: ExampleId::Ex2a2,
        params: vec![("t1", t1.clone()), ("t2", t2.clone())],
        mask,
        printed_filter: Some(filter),
        expected: Expected {
            sr: SrExpectation::Exactly(8),
            sm2: Some(5.5),
            eigenvalues: Some(dyadic_eigs(&[5, 7], 7)),
            scheme: Some(SchemeExpectation::Lagrange),
        },
        test_vectors,
        figures,
        spline: Some(spline),
    })
}

fn ex2a2_figure_data() -> (Vec<TestVector>, Vec<FigureCurve>) {
    let id = |degree, valid_through| MomentIdentity { degree, valid_through };
    let tv = vec![
        TestVector { name: "u1", u: col(&[(0, [int(1), int(0)])]), identity: id(0, 1) },
        TestVector { name: "u2", u: col(&[(0, [r(31, 6), r(-25, 6)])]), identity: id(0, 3) },
        TestVector {
            name: "u3",
            u: col(&[
                (0, [r(-1384, 315), r(1144, 315)]),
                (1, [r(301, 18), r(-839, 63)]),
                (2, [r(-2648, 315), r(2168, 315)]),
                (3, [r(-401, 630), r(163, 315)]),
            ]),
            identity: id(0, 7),
        },
        TestVector { name: "u4", u: col(&[(0, [int(-1), int(1)])]), identity: id(2, 3) },
        TestVector {
            name: "u5",
            u: col(&[
                (0, [r(-1832, 9), r(1496, 9)]),
                (1, [r(6493, 18), r(-5173, 18)]),
                (2, [r(-1708, 9), r(1396, 9)]),
                (3, [r(-127, 18), r(103, 18)]),
            ]),
            identity: id(2, 7),
        },
    ];
    let figs = vec![
        curve("fig2c", "u1", [-4.32530, -2.03069, 0.104175, 2.14328, 4.15343, 6.15600, 8.15665, 10.1568, 12.1569, 14.1569]),
        curve("fig2c", "u2", [4.06921, 7.43446, 11.3115, 15.2824, 19.2752, 23.2733, 27.2729, 31.2728, 35.2729, 39.2727]),
        curve("fig2c", "u3", [1.09346, 6.11992, 11.1266, 16.1284, 21.1288, 26.1289, 31.1288, 36.1290, 41.1289, 46.1290]),
        curve("fig2d", "u4", [-2.43557, -0.918534, 0.982343, 2.95860, 4.95273, 6.95127, 8.95091, 10.9508, 12.9508, 14.9508]),
        curve("fig2d", "u5", [-5.26642, -2.21179, 0.802197, 3.80573, 6.80662, 9.80685, 12.8069, 15.8069, 18.8069, 21.8070]),
    ];
    (tv, figs)
}

fn build_ex3(t: &[Rational]) -> Result<ExampleCase> {
    let (t1, t2) = (&t[0], &t[1]);
    let coeffs = vec![
        m2(int(2) * t1, int(-3) * t2, -t1.clone(), t2.clone()),
        m2(r(1, 4), r(3, 8), r(-1, 16), r(-1, 16)),
        m2(r(1, 2) - int(4) * t1, int(0), int(0), r(1, 4) + int(4) * t2),
        m2(r(1, 4), r(-3, 8), r(1, 16), r(-1, 16)),
        m2(int(2) * t1, int(3) * t2, t1.clone(), t2.clone()),
    ];
    let mask = Mask::from_coeffs(-2, coeffs, Some(Symmetry::uniform(int(0), vec![1, -1])?))?;
    let sr5 = t1 == &r(1, 128);
    let sr6 = sr5 && t2 == &r(-7, 256);
    let filter = if sr6 {
        Some(ixi_filter(
            [
                vec![int(1), int(0), int(0), int(0), r(1, 360), int(0)],
                vec![int(0), int(1), int(0), int(0), int(0), r(7, 1080)],
            ],
            5,
        ))
    } else if sr5 {
        Some(ixi_filter([vec![int(1), int(0), int(0), int(0), r(1, 360)], vec![int(0), int(1)]], 4))
    } else {
        Some(ixi_filter([vec![int(1)], vec![int(0), int(1)]], 3))
    };
    let (sr, sm2) = if sr6 {
        (SrExpectation::Exactly(6), Some(4.3266))
    } else if sr5 {
        (SrExpectation::Exactly(5), if t2 == &r(-13, 512) { Some(4.5335) } else { None })
    } else {
        (SrExpectation::AtLeast(4), None)
    };
    let figure_point = sr5 && t2 == &r(-13, 512);
    let (test_vectors, figures) = if figure_point {
        let id = |degree, valid_through| MomentIdentity { degree, valid_through };
        (
            vec![
                TestVector { name: "u1", u: col(&[(0, [int(1), int(0)])]), identity: id(0, 3) },
                TestVector {
                    name: "u2",
                    u: col(&[(0, [r(13, 12), r(-1, 30)]), (1, [r(-1, 15), r(-1, 15)]), (2, [r(-1, 60), int(0)])]),
                    identity: id(0, 4),
                },
                TestVector { name: "u3", u: col(&[(0, [int(0), int(1)])]), identity: id(1, 4) },
            ],
            vec![
                curve("fig3c", "u1", [7.90692, 10.7079, 14.2875, 17.8782, 21.5834, 25.3653, 29.1828, 33.0339, 36.9082, 40.8004]),
                curve("fig3c", "u2", [7.15203, 10.4302, 15.0116, 18.9401, 23.0666, 27.1959, 31.2871, 35.4031, 39.5099, 43.6182]),
                curve("fig3d", "u3", [3.36314, 6.77818, 10.0420, 13.2365, 16.3669, 19.4440, 22.5690, 25.6726, 28.7811, 31.8906]),
            ],
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(ExampleCase {
        id: ExampleId::Ex3,
        params: vec![("t1", t1.clone()), ("t2", t2.clone())],
        mask,
        printed_filter: filter,
        expected: Expected { sr, sm2, eigenvalues: None, scheme: Some(SchemeExpectation::Hermite { r: 2, fast_at: 3 }) },
        test_vectors,
        figures,
        spline: None,
    })
}

fn build_ex4(t: &[Rational]) -> Result<ExampleCase> {
    let (t1, t2, t3) = (&t[0], &t[1], &t[2]);
    let coeffs = vec![
        m2(t1.clone(), r(-1, 32) - int(4) * t3, int(0), t3.clone()),
        m2(int(-4) * t2, r(9, 32) - int(4) * t3, t2.clone(), r(-1, 32) + t3),
        m2(r(1, 2) + int(6) * t1, r(9, 32) - int(4) * t3, int(-4) * t1, r(9, 32) + int(6) * t3),
        m2(int(-4) * t2, r(-1, 32) - int(4) * t3, r(1, 2) + int(6) * t2, r(9, 32) + int(6) * t3),
        m2(t1.clone(), int(0), int(-4) * t1, r(-1, 32) + t3),
        m2(int(0), int(0), t2.clone(), t3.clone()),
    ];
    let sym = Symmetry::new(vec![int(0), r(1, 2)], vec![1, 1])?;
    let mask = Mask::from_coeffs(-2, coeffs, Some(sym))?;
    let is_default = t1 == &r(-1, 64) && t2 == &r(-1, 32) && t3 == &r(-1, 128);
    let filter = if is_default {
        ixi_filter([vec![int(1)], vec![int(1), r(1, 2), r(1, 8), r(1, 48), r(1, 96)]], 4)
    } else {
        ixi_filter([vec![int(1)], vec![int(1), r(1, 2), r(1, 8), r(1, 48)]], 3)
    };
    let (test_vectors, figures) = if is_default {
        let id = |degree, valid_through| MomentIdentity { degree, valid_through };
        (
            vec![
                TestVector { name: "u1", u: col(&[(0, [int(0), int(1)])]), identity: id(0, 0) },
                TestVector { name: "u2", u: col(&[(0, [int(1), int(0)])]), identity: id(0, 4) },
                TestVector { name: "u3", u: col(&[(0, [int(-2), int(2)])]), identity: id(1, 1) },
                TestVector {
                    name: "u4",
                    u: col(&[(0, [int(1), r(2, 3)]), (1, [r(1, 3), int(-2)])]),
                    identity: id(1, 4),
                },
            ],
            vec![
                curve("fig4c", "u1", [1.44338, 2.45672, 3.42572, 4.42085, 5.42070, 6.42013, 7.42002, 8.42000, 9.42001, 10.4200]),
                curve("fig4c", "u2", [6.32195, 10.3220, 14.3220, 18.3220, 22.3220, 26.3221, 30.3221, 34.3220, 38.3220, 42.3220]),
                curve("fig4d", "u3", [0.415039, 1.35615, 2.29956, 3.27551, 4.26700, 5.26425, 6.26341, 7.26316, 8.26309, 9.26307]),
                curve("fig4d", "u4", [3.00001, 6.00002, 8.86337, 11.6042, 14.2861, 16.9112, 19.4855, 22.0173, 24.5158, 26.9893]),
            ],
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(ExampleCase {
        id: ExampleId::Ex4,
        params: vec![("t1", t1.clone()), ("t2", t2.clone()), ("t3", t3.clone())],
        mask,
        printed_filter: Some(filter),
        expected: Expected {
            sr: if is_default { SrExpectation::Exactly(5) } else { SrExpectation::AtLeast(4) },
            sm2: if is_default { Some(3.8853) } else { None },
            eigenvalues: None,
            scheme: Some(SchemeExpectation::BalancedDelta { order: 3 }),
        },
        test_vectors,
        figures,
        spline: None,
    })
}

/// Builds an example at its default parameters with the given overrides.
pub fn load_example(id: ExampleId, overrides: &[(&str, Rational)]) -> Result<ExampleCase> {
    let names = id.param_names();
    let mut params = id.defaults();
    for (name, value) in overrides {
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidParameter(format!("{id} has no parameter `{name}`")))?;
        params[idx] = value.clone();
    }
    if matches!(id, ExampleId::Ex1 | ExampleId::Ex2a1 | ExampleId::Ex2a2) && params[1].is_zero() {
        return Err(Error::InvalidParameter(format!("{id} requires t2 != 0")));
    }
    match id {
        ExampleId::Ex1 => build_ex1(&params),
        ExampleId::Ex2a1 => build_ex2a1(&params),
        ExampleId::Ex2a2 => build_ex2a2(&params),
        ExampleId::Ex3 => build_ex3(&params),
        ExampleId::Ex4 => build_ex4(&params),
    }
}

/// Parses `t1=1/128,t2=-7/256`.
pub fn parse_overrides(spec: &str) -> Result<Vec<(String, Rational)>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, found `{kv}`")))?;
            let z: GaussRat = v.trim().parse()?;
            if !z.is_real() {
                return Err(Error::Parse(format!("parameter `{k}` must be real")));
            }
            Ok((k.trim().to_string(), z.re))
        })
        .collect()
}

impl ExampleCase {
    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn test_vector(&self, name: &str) -> Option<&TestVector> {
        self.test_vectors.iter().find(|t| t.name == name)
    }

    pub fn figure(&self, vector: &str) -> Option<&FigureCurve> {
        self.figures.iter().find(|f| f.vector == vector)
    }

    /// Machine-readable form: mask file plus metadata blocks.
    pub fn to_json_value(&self) -> Value {
        let mask = serde_json::to_value(MaskDescriptor::from_mask(&self.mask, self.printed_filter.as_ref())).expect("json");
        let params: serde_json::Map<String, Value> =
            self.params.iter().map(|(n, v)| (n.to_string(), Value::String(GaussRat::real(v.clone()).to_string()))).collect();
        let sr = match &self.expected.sr {
            SrExpectation::Exactly(v) => json!({ "exactly": v }),
            SrExpectation::AtLeast(v) => json!({ "at_least": v }),
        };
        let eig = self
            .expected
            .eigenvalues
            .as_ref()
            .map(|v| v.iter().map(|q| GaussRat::real(q.clone()).to_string()).collect::<Vec<_>>());
        let scheme = self.expected.scheme.as_ref().map(|s| match s {
            SchemeExpectation::Lagrange => json!({ "tag": "lagrange" }),
            SchemeExpectation::Hermite { r, fast_at } => json!({ "tag": "hermite", "r": r, "fast_at": fast_at }),
            SchemeExpectation::BalancedDelta { order } => json!({ "tag": "balanced_delta", "order": order }),
        });
        let tvs: Vec<Value> = self
            .test_vectors
            .iter()
            .map(|t| {
                json!({
                    "name": t.name,
                    "u": VectorDescriptor::from_sequence(&t.u),
                    "identity": { "degree": t.identity.degree, "valid_through": t.identity.valid_through },
                })
            })
            .collect();
        let figs: Vec<Value> = self
            .figures
            .iter()
            .map(|f| json!({ "panel": f.panel, "vector": f.vector, "points": f.points }))
            .collect();
        json!({
            "id": self.id.as_str(),
            "params": params,
            "mask": mask,
            "expected": { "sr": sr, "sm2": self.expected.sm2, "eigenvalues": eig, "scheme": scheme },
            "test_vectors": tvs,
            "figures": figs,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("json");
        s.push('\n');
        s
    }
}

/// JSON resources shipped with the crate, one per example at default parameters.
pub fn resource(id: ExampleId) -> &'static str {
    match id {
        ExampleId::Ex1 => include_str!("../resources/corpus/ex1.json"),
        ExampleId::Ex2a1 => include_str!("../resources/corpus/ex2a1.json"),
        ExampleId::Ex2a2 => include_str!("../resources/corpus/ex2a2.json"),
        ExampleId::Ex3 => include_str!("../resources/corpus/ex3.json"),
        ExampleId::Ex4 => include_str!("../resources/corpus/ex4.json"),
    }
}

/// Mask stored in a resource file.
pub fn resource_mask(id: ExampleId) -> Result<Mask> {
    let v: Value = serde_json::from_str(resource(id)).map_err(|e| Error::Parse(e.to_string()))?;
    let d: MaskDescriptor = serde_json::from_value(v["mask"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
    d.to_mask()
}

