//! Subdivision and transition operators, and exact evaluation of refinable
//! vector functions and their derivatives on dyadic grids.

use num_complex::Complex64;

use crate::analysis::FilterJet;
use crate::error::{Error, Result};
use crate::linalg;
use crate::mask::Mask;
use crate::matrix::Mat;
use crate::scalar::{GaussRat, Scalar};
use crate::sequence::{MatrixSequence, SupportWindow};

pub const MAX_LEVEL_ENV: &str = "SUBDIVLAB_MAX_LEVEL";
pub const DEFAULT_MAX_LEVEL: u32 = 20;

/// Upper bound on subdivision levels, guarding the `2^n` growth of iterates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelGuard {
    pub max_level: u32,
}

impl Default for LevelGuard {
    fn default() -> Self {
        LevelGuard { max_level: DEFAULT_MAX_LEVEL }
    }
}

impl LevelGuard {
    /// Reads the limit from `SUBDIVLAB_MAX_LEVEL`, falling back to the default.
    pub fn from_env() -> Self {
        let max_level = std::env::var(MAX_LEVEL_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_LEVEL);
        LevelGuard { max_level }
    }

    pub fn check(&self, level: u32) -> Result<()> {
        if level > self.max_level {
            Err(Error::ResourceLimit { level, limit: self.max_level })
        } else {
            Ok(())
        }
    }
}

/// `(S_a w)(j) = 2 sum_k w(k) a(j - 2k)`, evaluated as two coset convolutions.
pub fn subdivide_seq<T: Scalar>(a: &MatrixSequence<T>, w: &MatrixSequence<T>) -> Result<MatrixSequence<T>> {
    if w.cols() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "subdivide_step",
            expected: format!("{} columns", a.rows()),
            found: format!("{}", w.cols()),
        });
    }
    let two = T::from_i64(2);
    let even = w.convolve(&a.coset(0))?.upsample(2);
    let odd = w.convolve(&a.coset(1))?.upsample(2).shift(1);
    Ok(even.add(&odd)?.scale(&two))
}

pub fn subdivide_step(a: &Mask, w: &MatrixSequence<GaussRat>) -> Result<MatrixSequence<GaussRat>> {
    subdivide_seq(a.seq(), w)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubdivisionIterate<T> {
    pub level: u32,
    pub seq: MatrixSequence<T>,
}

/// `S_a^n w0`.
pub fn iterate(a: &Mask, w0: &MatrixSequence<GaussRat>, n: u32, guard: LevelGuard) -> Result<SubdivisionIterate<GaussRat>> {
    guard.check(n)?;
    let mut w = w0.clone();
    for _ in 0..n {
        w = subdivide_step(a, &w)?;
    }
    Ok(SubdivisionIterate { level: n, seq: w })
}

/// Successive iterates `S_a^n (delta I_r)`, `n = 0, 1, 2, ...`.
#[derive(Clone, Debug)]
pub struct Cascade<T> {
    mask: MatrixSequence<T>,
    current: MatrixSequence<T>,
    level: u32,
    guard: LevelGuard,
}

impl<T: Scalar> Cascade<T> {
    pub fn new(mask: MatrixSequence<T>, guard: LevelGuard) -> Self {
        let r = mask.rows();
        Cascade { mask, current: MatrixSequence::delta_identity(r), level: 0, guard }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn current(&self) -> &MatrixSequence<T> {
        &self.current
    }

    pub fn advance(&mut self) -> Result<&MatrixSequence<T>> {
        self.guard.check(self.level + 1)?;
        self.current = subdivide_seq(&self.mask, &self.current)?;
        self.level += 1;
        Ok(&self.current)
    }

    /// Advances until `level == n`.
    pub fn advance_to(&mut self, n: u32) -> Result<&MatrixSequence<T>> {
        while self.level < n {
            self.advance()?;
        }
        Ok(&self.current)
    }
}

/// `(T_a u)(j) = 2 sum_k a(k) u(2j - k)`.
pub fn transition_seq<T: Scalar>(a: &MatrixSequence<T>, u: &MatrixSequence<T>) -> Result<MatrixSequence<T>> {
    if u.rows() != a.cols() {
        return Err(Error::DimensionMismatch {
            op: "transition_step",
            expected: format!("{} rows", a.cols()),
            found: format!("{}", u.rows()),
        });
    }
    Ok(a.convolve(u)?.downsample(2).scale(&T::from_i64(2)))
}

pub fn transition_step(a: &Mask, u: &MatrixSequence<GaussRat>) -> Result<MatrixSequence<GaussRat>> {
    transition_seq(a.seq(), u)
}

/// Dense matrix of `T_a` on sequences supported in the mask support, ordered
/// position-major then by component.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    pub window: SupportWindow,
    pub r: usize,
    pub matrix: Mat<GaussRat>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    fn index(&self, k: i64, c: usize) -> usize {
        (k - self.window.lo) as usize * self.r + c
    }

    pub fn flatten(&self, u: &MatrixSequence<GaussRat>) -> Result<Vec<GaussRat>> {
        if let Some(w) = u.support() {
            if w.lo < self.window.lo || w.hi > self.window.hi {
                return Err(Error::InvalidParameter(format!(
                    "sequence support [{}, {}] leaves the window [{}, {}]",
                    w.lo, w.hi, self.window.lo, self.window.hi
                )));
            }
        }
        let mut x = vec![GaussRat::zero(); self.dim()];
        for k in self.window.iter() {
            let m = u.at(k);
            for c in 0..self.r {
                x[self.index(k, c)] = m.get(c, 0).clone();
            }
        }
        Ok(x)
    }

    pub fn unflatten(&self, x: &[GaussRat]) -> MatrixSequence<GaussRat> {
        let coeffs = self
            .window
            .iter()
            .map(|k| Mat::column((0..self.r).map(|c| x[self.index(k, c)].clone()).collect()))
            .collect();
        MatrixSequence::new(self.r, 1, self.window.lo, coeffs).expect("column shape")
    }

    pub fn apply(&self, u: &MatrixSequence<GaussRat>) -> Result<MatrixSequence<GaussRat>> {
        let x = self.flatten(u)?;
        let y = self.matrix.mul(&Mat::column(x));
        Ok(self.unflatten(y.entries()))
    }

    pub fn spectrum(&self) -> Vec<linalg::Eigenvalue> {
        linalg::spectrum(&self.matrix)
    }

    /// Exact eigenspace basis for `lambda`.
    pub fn eigenspace(&self, lambda: &GaussRat) -> Vec<MatrixSequence<GaussRat>> {
        let shifted = self.matrix.sub(&Mat::identity(self.dim()).scale(lambda));
        linalg::nullspace(&shifted).iter().map(|v| self.unflatten(v)).collect()
    }
}

pub fn transition_matrix(a: &Mask) -> TransitionMatrix {
    let window = a.support();
    let r = a.r();
    let n = window.len() * r;
    let mut matrix = Mat::zeros(n, n);
    let two = GaussRat::from_i64(2);
    for j in window.iter() {
        for l in window.iter() {
            if let Some(m) = a.seq().get(2 * j - l) {
                for p in 0..r {
                    for q in 0..r {
                        let v = m.get(p, q).mul_ref(&two);
                        matrix.set((j - window.lo) as usize * r + p, (l - window.lo) as usize * r + q, v);
                    }
                }
            }
        }
    }
    TransitionMatrix { window, r, matrix }
}

/// `u_{phi,j}`: the exact eigenvector of `T_a` for `2^{-j}`, normalized so that
/// `v^ u^ = (i xi)^j + O(xi^{j+1})`.
pub fn phi_integer_samples(a: &Mask, v: &FilterJet, j: usize) -> Result<MatrixSequence<GaussRat>> {
    if v.order() < j {
        return Err(Error::InsufficientOrder { needed: j, got: v.order() });
    }
    let t = transition_matrix(a);
    let lambda = GaussRat::pow2(-(j as i64));
    let space = t.eigenspace(&lambda);
    let u = match space.len() {
        0 => return Err(Error::NotAnEigenvalue(lambda.to_string())),
        1 => space.into_iter().next().unwrap(),
        d => return Err(Error::AmbiguousEigenvector { eigenvalue: lambda.to_string(), dimension: d }),
    };
    let pair = v.truncate(j).pair(&u)?;
    let c = pair.coeff(j).get(0, 0).clone();
    let target = GaussRat::i_pow(j);
    let s = target.div_ref(&c).ok_or(Error::Normalization { order: j })?;
    Ok(u.scale(&s))
}

/// Values of `phi^{(j)}` (or of a derived function) on `2^{-n} Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct DyadicSamples {
    pub j: usize,
    pub level: u32,
    /// `values(k)` is the sample at `x = 2^{-n} k`.
    pub values: MatrixSequence<GaussRat>,
    pub seed: MatrixSequence<GaussRat>,
}

impl DyadicSamples {
    pub fn at(&self, k: i64) -> Mat<GaussRat> {
        self.values.at(k)
    }

    /// Restriction to `k` in `[lo, hi]`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<(i64, Mat<GaussRat>)> {
        (lo..=hi).map(|k| (k, self.values.at(k))).collect()
    }

    /// Grid point `2^{-n} k` as an exact rational.
    pub fn x(&self, k: i64) -> crate::scalar::Rational {
        crate::scalar::Rational::from_integer(k.into()) * crate::scalar::pow2_rational(-(self.level as i64))
    }
}

/// `2^{jn} (A_n * u)` with `A_n = S_a^n (delta I_r)`.
pub fn scaled_cascade_apply(an: &MatrixSequence<GaussRat>, u: &MatrixSequence<GaussRat>, j: usize, n: u32) -> Result<MatrixSequence<GaussRat>> {
    Ok(an.convolve(u)?.scale(&GaussRat::pow2((j as i64) * n as i64)))
}

/// `phi^{(j)}(2^{-n} k) = 2^{jn} (S_a^n (delta I_r) * u_{phi,j})(k)`, exact.
pub fn dyadic_values(a: &Mask, v: &FilterJet, j: usize, n: u32, guard: LevelGuard) -> Result<DyadicSamples> {
    guard.check(n)?;
    let seed = phi_integer_samples(a, v, j)?;
    let an = iterate(a, &MatrixSequence::delta_identity(a.r()), n, guard)?.seq;
    let values = scaled_cascade_apply(&an, &seed, j, n)?;
    Ok(DyadicSamples { j, level: n, values, seed })
}

/// Samples of `eta^{(j)}` with `eta = sum_l w0(l) phi(. - l)` at `2^{-n} k`,
/// `k` in `[-2^n K, 2^n K]`.
pub fn limit_function_samples(
    a: &Mask,
    v: &FilterJet,
    w0: &MatrixSequence<GaussRat>,
    j: usize,
    n: u32,
    k_window: i64,
    guard: LevelGuard,
) -> Result<DyadicSamples> {
    if w0.cols() != a.r() {
        return Err(Error::DimensionMismatch {
            op: "limit_function_samples",
            expected: format!("{} columns", a.r()),
            found: format!("{}", w0.cols()),
        });
    }
    let phi = dyadic_values(a, v, j, n, guard)?;
    let scale = 1i64 << n;
    let eta = w0.upsample(scale).convolve(&phi.values)?;
    let values = eta.restrict(-scale * k_window, scale * k_window);
    Ok(DyadicSamples { j, level: n, values, seed: phi.seed })
}

/// `2^{jn} a^(xi/2) ... a^(xi/2^n) u^(xi/2^n)` in floating point.
pub fn product_limit(a: &Mask, u: &MatrixSequence<GaussRat>, j: usize, xi: f64, n: u32) -> Mat<Complex64> {
    let af = a.seq().to_c64();
    let uf = u.to_c64();
    let mut acc = uf.symbol_eval(xi / (n as f64).exp2());
    for l in (1..=n).rev() {
        acc = af.symbol_eval(xi / (l as f64).exp2()).mul(&acc);
    }
    acc.scale(&Complex64::new(((j as f64) * n as f64).exp2(), 0.0))
}

/// Jet check used by callers that hold a candidate `u_{phi,j}`: the pairing
/// with the filter starts with `(i xi)^j`.
pub fn leading_pairing(v: &FilterJet, u: &MatrixSequence<GaussRat>) -> Result<Option<(usize, GaussRat)>> {
    let p = v.pair(u)?;
    Ok(p.leading_term())
}
