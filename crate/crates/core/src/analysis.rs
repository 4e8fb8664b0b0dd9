//! Spectral conditions, matching filters, sum rules, mask design and
//! classification of vector subdivision schemes.

use crate::error::{Error, Result};
use crate::jet::{Base, Jet};
use crate::linalg;
use crate::mask::{Mask, Symmetry};
use crate::matrix::Mat;
use crate::scalar::{GaussRat, Rational, Scalar};
use crate::sequence::{MatrixSequence, SupportWindow};

/// Eigenvalue data of `a^(0) = sum_k a(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub eigenvalues: Vec<linalg::Eigenvalue>,
    /// Algebraic multiplicity of the exact eigenvalue `1`.
    pub unit_multiplicity: usize,
    /// `1` is a simple eigenvalue and all others are below `2^{-m}` in modulus.
    pub cond_a: bool,
    /// No `2^k` with `k >= 1` is an eigenvalue.
    pub cond_a0: bool,
    /// Largest `m` such that every eigenvalue other than `1` is below `2^{-m}`;
    /// `None` when all of them vanish.
    pub m_tilde: Option<i64>,
    pub order: usize,
}

impl SpectralReport {
    /// `cond_a(m')` for any `m'`, derived from `m_tilde`.
    pub fn cond_a_at(&self, m: usize) -> bool {
        self.unit_multiplicity == 1 && self.m_tilde.is_none_or(|t| t >= m as i64)
    }
}

pub fn spectral_report(a: &Mask, m: usize) -> SpectralReport {
    let a0 = a.symbol_at_zero();
    let eigenvalues = linalg::spectrum(&a0);
    let one = GaussRat::one();
    let unit_multiplicity = eigenvalues
        .iter()
        .filter(|e| e.exact.as_ref() == Some(&one))
        .map(|e| e.multiplicity)
        .sum();
    let mut cond_a0 = true;
    for e in &eigenvalues {
        if let Some(x) = &e.exact {
            for k in 1..=96 {
                if *x == GaussRat::pow2(k) {
                    cond_a0 = false;
                }
            }
        }
    }
    let mut others: Vec<&linalg::Eigenvalue> = eigenvalues.iter().collect();
    if let Some(pos) = others.iter().position(|e| e.exact.as_ref() == Some(&one)) {
        if unit_multiplicity == 1 {
            others.remove(pos);
        }
    }
    let largest = others.iter().map(|e| e.value.norm()).fold(0.0, f64::max);
    let m_tilde = if largest == 0.0 {
        None
    } else {
        let mut t = (-largest.log2()).floor() as i64;
        while largest >= (-(t as f64)).exp2() {
            t -= 1;
        }
        while largest < (-((t + 1) as f64)).exp2() {
            t += 1;
        }
        Some(t)
    };
    let mut rep = SpectralReport { eigenvalues, unit_multiplicity, cond_a: false, cond_a0, m_tilde, order: m };
    rep.cond_a = rep.cond_a_at(m);
    rep
}

/// Row jet `v` at `0` normalized so the first nonzero entry of `v(0)` is `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterJet {
    jet: Jet<GaussRat>,
}

impl FilterJet {
    /// Normalizes a `1 x r` jet at base `0`.
    pub fn new(jet: Jet<GaussRat>) -> Result<Self> {
        if jet.base() != Base::Zero || jet.shape().0 != 1 {
            return Err(Error::InvalidParameter("filter jets are 1 x r rows at base 0".into()));
        }
        let c0 = jet.coeff(0);
        let Some(lead) = c0.entries().iter().find(|x| !x.is_zero()) else {
            return Err(Error::Degenerate("filter vanishes at 0".into()));
        };
        let s = lead.inv().expect("nonzero");
        let coeffs = jet.coeffs().iter().map(|c| c.scale(&s)).collect();
        Ok(FilterJet { jet: Jet::new(Base::Zero, 1, jet.shape().1, coeffs)? })
    }

    /// Builds a filter from per-order rows `rows[k][l]` = coefficient of `xi^k`
    /// in entry `l`.
    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Result<Self> {
        let coeffs = rows.into_iter().map(Mat::row).collect::<Vec<_>>();
        let r = coeffs.first().map_or(0, |m| m.cols());
        Self::new(Jet::new(Base::Zero, 1, r, coeffs)?)
    }

    pub fn jet(&self) -> &Jet<GaussRat> {
        &self.jet
    }

    pub fn order(&self) -> usize {
        self.jet.order()
    }

    pub fn r(&self) -> usize {
        self.jet.shape().1
    }

    pub fn truncate(&self, order: usize) -> Self {
        FilterJet { jet: self.jet.truncate(order) }
    }

    /// Jet of `v^ u^` for a column sequence `u`, to the filter's order.
    pub fn pair(&self, u: &MatrixSequence<GaussRat>) -> Result<Jet<GaussRat>> {
        let uj = Jet::of_sequence(u, Base::Zero, self.order());
        self.jet.mul(&uj)
    }

    /// Scalar jet of entry `l`.
    pub fn entry(&self, l: usize) -> Jet<GaussRat> {
        self.jet.entry(0, l)
    }
}

fn left_unit_eigenvector(a0: &Mat<GaussRat>) -> Result<Vec<GaussRat>> {
    let r = a0.rows();
    let shifted = a0.sub(&Mat::identity(r)).transpose();
    let ns = linalg::nullspace(&shifted);
    match ns.len() {
        0 => Err(Error::NoUnitEigenvalue),
        1 => {
            let v = ns.into_iter().next().unwrap();
            let lead = v.iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
            Ok(v.iter().map(|x| x.mul_ref(&lead)).collect())
        }
        d => Err(Error::EigenvalueNotSimple(d)),
    }
}

/// Order-by-order solve of `v_j (I - 2^j a^(0)) = sum_{k<j} 2^k v_k a^(j-k)`.
fn filter_recursion(a: &Mask, m: usize) -> Result<Vec<Vec<GaussRat>>> {
    let r = a.r();
    let aj = Jet::of_sequence(a.seq(), Base::Zero, m);
    let a0 = aj.coeff(0);
    let v0 = left_unit_eigenvector(a0)?;
    let mut rows = vec![v0];
    for j in 1..=m {
        let mut rhs = Mat::<GaussRat>::zeros(1, r);
        for (k, vk) in rows.iter().enumerate() {
            let w = Mat::row(vk.clone()).scale(&GaussRat::pow2(k as i64));
            w.mul_acc_into(aj.coeff(j - k), &mut rhs);
        }
        let lhs = Mat::identity(r).sub(&a0.scale(&GaussRat::pow2(j as i64)));
        let inv = linalg::inverse(&lhs).ok_or(Error::SingularRecursion { order: j })?;
        rows.push(rhs.mul(&inv).row_vec(0));
    }
    Ok(rows)
}

/// Matching filter moments through order `m`, exact.
pub fn matching_filter_moments(a: &Mask, m: usize) -> Result<FilterJet> {
    FilterJet::from_rows(filter_recursion(a, m)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterCheck {
    pub holds: bool,
    pub first_failing_order: Option<usize>,
}

/// Checks `v(2 xi) a(xi) = v(xi) + O(xi^{m+1})` with `m` the filter order.
pub fn verify_matching_filter(a: &Mask, v: &FilterJet) -> Result<FilterCheck> {
    if v.r() != a.r() {
        return Err(Error::DimensionMismatch {
            op: "verify_matching_filter",
            expected: format!("{} entries", a.r()),
            found: format!("{}", v.r()),
        });
    }
    let aj = Jet::of_sequence(a.seq(), Base::Zero, v.order());
    let lhs = v.jet().scale_arg(2).mul(&aj)?;
    let diff = lhs.sub(v.jet())?;
    let first = diff.leading_order();
    Ok(FilterCheck { holds: first.is_none(), first_failing_order: first })
}

/// Sum-rule order with its witnessing filter.
#[derive(Clone, Debug, PartialEq)]
pub struct SumRules {
    pub order: usize,
    pub filter: FilterJet,
    /// Recursion orders where `I - 2^j a^(0)` was singular and a particular
    /// solution was taken.
    pub singular_orders: Vec<usize>,
}

pub const DEFAULT_SR_CAP: usize = 16;

/// Linear conditions on `v_1, ..., v_{m-1}` (with `v_0` fixed) expressing the
/// sum rules of order `m`. Unknowns are laid out order-major, then component.
fn sum_rule_system(a: &Mask, v0: &[GaussRat], m: usize) -> (Mat<GaussRat>, Vec<GaussRat>) {
    let r = a.r();
    let top = m - 1;
    let a0 = Jet::of_sequence(a.seq(), Base::Zero, top);
    let api = Jet::of_sequence(a.seq(), Base::Pi, top);
    let unknowns = r * top;
    let mut rows: Vec<Vec<GaussRat>> = Vec::new();
    let mut rhs = Vec::new();
    for (jet, shift) in [(&a0, true), (&api, false)] {
        for k in 0..=top {
            for c in 0..r {
                let mut row = vec![GaussRat::zero(); unknowns];
                let mut b = GaussRat::zero();
                for l in 0..=k {
                    let w = GaussRat::pow2(l as i64);
                    let blk = jet.coeff(k - l);
                    for p in 0..r {
                        let mut coef = w.mul_ref(blk.get(p, c));
                        if shift && l == k && p == c {
                            coef = coef - GaussRat::one();
                        }
                        if l == 0 {
                            b = b - coef.mul_ref(&v0[p]);
                        } else {
                            row[(l - 1) * r + p] = coef;
                        }
                    }
                }
                rows.push(row);
                rhs.push(b);
            }
        }
    }
    let mat = if unknowns == 0 {
        Mat::zeros(rows.len(), 0)
    } else {
        Mat::from_rows(rows).expect("rectangular")
    };
    (mat, rhs)
}

/// Largest `m_a <= cap` for which the sum rules of order `m_a` hold.
pub fn sum_rule_order(a: &Mask, cap: usize) -> Result<SumRules> {
    let r = a.r();
    let a0 = Jet::of_sequence(a.seq(), Base::Zero, 0);
    let v0 = left_unit_eigenvector(a0.coeff(0))?;
    let mut best: Option<(usize, Vec<GaussRat>)> = None;
    for m in 1..=cap.max(1) {
        let (mat, rhs) = sum_rule_system(a, &v0, m);
        let sol = if mat.cols() == 0 {
            rhs.iter().all(|x| x.is_zero()).then(Vec::new)
        } else {
            linalg::solve_affine(&mat, &rhs).map(|(x, _)| x)
        };
        match sol {
            Some(x) => best = Some((m, x)),
            None => break,
        }
    }
    let (order, x) = match best {
        Some(b) => b,
        None => {
            let filter = FilterJet::from_rows(vec![v0])?;
            return Ok(SumRules { order: 0, filter, singular_orders: Vec::new() });
        }
    };
    let mut rows = vec![v0];
    for chunk in x.chunks(r) {
        rows.push(chunk.to_vec());
    }
    let filter = FilterJet::from_rows(rows)?;
    let a0m = a0.coeff(0);
    let singular_orders = (1..order)
        .filter(|&j| linalg::inverse(&Mat::identity(r).sub(&a0m.scale(&GaussRat::pow2(j as i64)))).is_none())
        .collect();
    Ok(SumRules { order, filter, singular_orders })
}

/// Every filter witnessing the sum rules of order `m`: `particular` plus any
/// combination of `directions`, which vanish at order `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterFamily {
    pub particular: FilterJet,
    pub directions: Vec<Jet<GaussRat>>,
}

/// Solution set of the sum rules of order `m >= 1`, or `None` when they fail.
pub fn sum_rule_filters(a: &Mask, m: usize) -> Result<Option<FilterFamily>> {
    if m == 0 {
        return Err(Error::InvalidParameter("sum rule order must be at least 1".into()));
    }
    let r = a.r();
    let a0 = Jet::of_sequence(a.seq(), Base::Zero, 0);
    let v0 = left_unit_eigenvector(a0.coeff(0))?;
    let (mat, rhs) = sum_rule_system(a, &v0, m);
    let (x, null) = if mat.cols() == 0 {
        if !rhs.iter().all(|x| x.is_zero()) {
            return Ok(None);
        }
        (Vec::new(), Vec::new())
    } else {
        match linalg::solve_affine(&mat, &rhs) {
            Some(s) => s,
            None => return Ok(None),
        }
    };
    let mut rows = vec![v0];
    rows.extend(x.chunks(r).map(|c| c.to_vec()));
    let particular = FilterJet::from_rows(rows)?;
    let directions = null
        .into_iter()
        .map(|d| {
            let mut coeffs = vec![Mat::zeros(1, r)];
            coeffs.extend(d.chunks(r).map(|c| Mat::row(c.to_vec())));
            Jet::new(Base::Zero, 1, r, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(FilterFamily { particular, directions }))
}

/// `(-i k)^l / l!` as an exact complex number.
fn moment_weight(k: i64, l: usize) -> GaussRat {
    let mut q = Rational::from_integer(1.into());
    for t in 1..=l {
        q = q * Rational::from_integer(k.into()) / Rational::from_integer((t as i64).into());
    }
    GaussRat::real(q).mul_ref(&GaussRat::neg_i_pow(l))
}

/// Linear sum-rule system in the real mask entries on a window.
struct DesignSystem {
    window: SupportWindow,
    r: usize,
    matrix: Mat<GaussRat>,
    rhs: Vec<GaussRat>,
}

impl DesignSystem {
    fn unknown(&self, k: i64, p: usize, q: usize) -> usize {
        ((k - self.window.lo) as usize) * self.r * self.r + p * self.r + q
    }

    fn build(window: SupportWindow, r: usize, symmetry: Option<&Symmetry>, m_a: usize, v: &FilterJet) -> Result<Self> {
        if v.r() != r {
            return Err(Error::DimensionMismatch {
                op: "design_mask",
                expected: format!("{r} filter entries"),
                found: format!("{}", v.r()),
            });
        }
        if m_a > 0 && v.order() + 1 < m_a {
            return Err(Error::InsufficientOrder { needed: m_a - 1, got: v.order() });
        }
        let n = window.len() * r * r;
        let mut sys = DesignSystem { window, r, matrix: Mat::zeros(0, n), rhs: Vec::new() };
        let mut rows: Vec<Vec<GaussRat>> = Vec::new();
        let mut rhs: Vec<GaussRat> = Vec::new();
        let v2 = v.jet().scale_arg(2);
        let mut push_complex = |row: Vec<GaussRat>, b: GaussRat| {
            rows.push(row.iter().map(|x| GaussRat::real(x.re.clone())).collect());
            rhs.push(GaussRat::real(b.re.clone()));
            rows.push(row.iter().map(|x| GaussRat::real(x.im.clone())).collect());
            rhs.push(GaussRat::real(b.im.clone()));
        };
        for j in 0..m_a {
            for q in 0..r {
                for pi in [false, true] {
                    let mut row = vec![GaussRat::zero(); n];
                    for k in window.iter() {
                        let flip = pi && k.rem_euclid(2) == 1;
                        for p in 0..r {
                            let mut c = GaussRat::zero();
                            for l in 0..=j {
                                c.mul_acc(v2.coeff(j - l).get(0, p), &moment_weight(k, l));
                            }
                            if flip {
                                c = -c;
                            }
                            row[sys.unknown(k, p, q)] = c;
                        }
                    }
                    let b = if pi { GaussRat::zero() } else { v.jet().coeff(j).get(0, q).clone() };
                    push_complex(row, b);
                }
            }
        }
        if let Some(s) = symmetry {
            if s.dim() != r {
                return Err(Error::DimensionMismatch {
                    op: "design_mask symmetry",
                    expected: format!("{r} components"),
                    found: format!("{}", s.dim()),
                });
            }
            for k in window.iter() {
                for p in 0..r {
                    for q in 0..r {
                        let mut row = vec![GaussRat::zero(); n];
                        let kk = s.reflection(p, q) - k;
                        row[sys.unknown(k, p, q)] = GaussRat::one();
                        if window.contains(kk) {
                            let c = if s.sign(p, q) > 0 { -GaussRat::one() } else { GaussRat::one() };
                            let idx = sys.unknown(kk, p, q);
                            row[idx] += &c;
                        }
                        rows.push(row);
                        rhs.push(GaussRat::zero());
                    }
                }
            }
        }
        sys.matrix = if rows.is_empty() { Mat::zeros(0, n) } else { Mat::from_rows(rows)? };
        sys.rhs = rhs;
        Ok(sys)
    }

    fn to_sequence(&self, x: &[GaussRat]) -> MatrixSequence<GaussRat> {
        let coeffs = self
            .window
            .iter()
            .map(|k| Mat::from_fn(self.r, self.r, |p, q| x[self.unknown(k, p, q)].clone()))
            .collect();
        MatrixSequence::new(self.r, self.r, self.window.lo, coeffs).expect("square")
    }
}

/// Affine family `particular + sum_i t_i directions[i]` of real masks on a window.
#[derive(Clone, Debug, PartialEq)]
pub struct MaskFamily {
    pub window: SupportWindow,
    pub r: usize,
    pub order: usize,
    pub symmetry: Option<Symmetry>,
    pub particular: MatrixSequence<GaussRat>,
    pub directions: Vec<MatrixSequence<GaussRat>>,
    filter: FilterJet,
}

impl MaskFamily {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn member(&self, params: &[Rational]) -> Result<Mask> {
        if params.len() != self.directions.len() {
            return Err(Error::DimensionMismatch {
                op: "MaskFamily::member",
                expected: format!("{} parameters", self.directions.len()),
                found: format!("{}", params.len()),
            });
        }
        let mut s = self.particular.clone();
        for (t, d) in params.iter().zip(&self.directions) {
            s = s.add(&d.scale(&GaussRat::real(t.clone())))?;
        }
        Mask::new(s, self.symmetry.clone())
    }

    /// Whether a real mask supported in the window satisfies every constraint.
    pub fn contains(&self, a: &Mask) -> bool {
        let Ok(sys) = DesignSystem::build(self.window, self.r, self.symmetry.as_ref(), self.order, &self.filter) else {
            return false;
        };
        if a.r() != self.r || !a.is_real() {
            return false;
        }
        let w = a.support();
        if w.lo < self.window.lo || w.hi > self.window.hi {
            return false;
        }
        let mut x = vec![GaussRat::zero(); self.window.len() * self.r * self.r];
        for k in self.window.iter() {
            let m = a.seq().at(k);
            for p in 0..self.r {
                for q in 0..self.r {
                    x[sys.unknown(k, p, q)] = m.get(p, q).clone();
                }
            }
        }
        let lhs = sys.matrix.mul(&Mat::column(x));
        lhs.entries().iter().zip(&sys.rhs).all(|(l, b)| l == b)
    }
}

/// Solves the sum rules of order `m_a` with the fixed filter `v` (and an
/// optional symmetry) for real masks supported on `window`.
pub fn design_mask(
    window: SupportWindow,
    r: usize,
    symmetry: Option<&Symmetry>,
    m_a: usize,
    v: &FilterJet,
) -> Result<MaskFamily> {
    let sys = DesignSystem::build(window, r, symmetry, m_a, v)?;
    let (x, ns) = linalg::solve_affine(&sys.matrix, &sys.rhs)
        .ok_or_else(|| Error::Infeasible(format!("no mask on [{}, {}] with {m_a} sum rules", window.lo, window.hi)))?;
    let particular = sys.to_sequence(&x);
    if particular.is_zero() && ns.is_empty() {
        return Err(Error::Infeasible("only the zero mask satisfies the constraints".into()));
    }
    let directions = ns.iter().map(|d| sys.to_sequence(d)).collect();
    Ok(MaskFamily {
        window,
        r,
        order: m_a,
        symmetry: symmetry.cloned(),
        particular,
        directions,
        filter: v.truncate(m_a.max(1) - 1),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum SchemeTag {
    Lagrange,
    Hermite(usize),
    GeneralizedHermite,
    ScalarType,
    /// Balanced with `c^(xi) = v_1(xi)`; `c_is_delta` when `c^ = 1` to the
    /// classification order.
    Balanced { c: Vec<GaussRat>, c_is_delta: bool },
    Unclassified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeClass {
    pub tag: SchemeTag,
    /// Leading orders of the filter entries when every entry has the
    /// generalized Hermite form `(i xi)^nu + O(xi^{nu+1})`.
    pub nu: Vec<usize>,
    /// The template holds exactly through order `m`.
    pub fast: bool,
    pub order: usize,
}

fn exp_jet(t: &Rational, order: usize) -> Vec<GaussRat> {
    // e^{i t xi}
    let mut out = Vec::with_capacity(order + 1);
    let mut c = GaussRat::one();
    let it = GaussRat::i().mul_ref(&GaussRat::real(t.clone()));
    for k in 0..=order {
        out.push(c.clone());
        c = c.mul_ref(&it).mul_ref(&GaussRat::ratio(1, k as i64 + 1));
    }
    out
}

fn scalar_mul(a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut s = GaussRat::zero();
            for l in 0..=k {
                s.mul_acc(&a[l], &b[k - l]);
            }
            s
        })
        .collect()
}

/// `(i xi)^d` as a coefficient list.
fn monomial(d: usize, order: usize) -> Vec<GaussRat> {
    (0..=order).map(|k| if k == d { GaussRat::i_pow(d) } else { GaussRat::zero() }).collect()
}

/// Classifies a filter against the scheme templates, in the order
/// balanced, Hermite, generalized Hermite, scalar-type, Lagrange.
pub fn classify_scheme(v: &FilterJet, r: usize, m: usize) -> Result<SchemeClass> {
    if v.order() < m {
        return Err(Error::InsufficientOrder { needed: m, got: v.order() });
    }
    if v.r() != r {
        return Err(Error::DimensionMismatch {
            op: "classify_scheme",
            expected: format!("{r} entries"),
            found: format!("{}", v.r()),
        });
    }
    let entries: Vec<Vec<GaussRat>> = (0..r).map(|l| v.entry(l).truncate(m).scalar_coeffs()).collect();
    let one = GaussRat::one();

    let mut nu = Vec::new();
    let mut gh = true;
    for e in &entries {
        match e.iter().position(|x| !x.is_zero()) {
            Some(d) if e[d] == GaussRat::i_pow(d) => nu.push(d),
            _ => {
                gh = false;
                break;
            }
        }
    }
    if !gh || nu[0] != 0 {
        nu.clear();
    }

    if r >= 2 && m >= 1 && entries[0][0] == one {
        let c = entries[0].clone();
        let balanced = (1..r).all(|l| {
            let target = scalar_mul(&c, &exp_jet(&Rational::new((l as i64).into(), (r as i64).into()), m));
            entries[l] == target
        });
        if balanced {
            let c_is_delta = c == monomial(0, m);
            return Ok(SchemeClass { tag: SchemeTag::Balanced { c, c_is_delta }, nu, fast: true, order: m });
        }
    }
    let exact_template = |degrees: &[usize]| entries.iter().zip(degrees).all(|(e, &d)| *e == monomial(d, m));
    if r >= 2 && m + 1 >= r && !nu.is_empty() && nu.iter().enumerate().all(|(l, &d)| d == l) {
        let degrees: Vec<usize> = (0..r).collect();
        let fast = exact_template(&degrees);
        return Ok(SchemeClass { tag: SchemeTag::Hermite(r), nu, fast, order: m });
    }
    if !nu.is_empty() && nu.iter().any(|&d| d > 0) {
        let fast = exact_template(&nu);
        return Ok(SchemeClass { tag: SchemeTag::GeneralizedHermite, nu, fast, order: m });
    }
    if r >= 2 && entries[0][0] == one && entries[1..].iter().all(|e| e.iter().all(|x| x.is_zero())) {
        let fast = entries[0] == monomial(0, m);
        return Ok(SchemeClass { tag: SchemeTag::ScalarType, nu: Vec::new(), fast, order: m });
    }
    if entries.iter().all(|e| e[0] == one) {
        let fast = exact_template(&vec![0; r]);
        return Ok(SchemeClass { tag: SchemeTag::Lagrange, nu: vec![0; r], fast, order: m });
    }
    Ok(SchemeClass { tag: SchemeTag::Unclassified, nu, fast: false, order: m })
}
