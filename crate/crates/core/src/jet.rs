//! Truncated Taylor expansions of matrix symbols about `0` or `pi`.
//!
//! A jet of order `m` stores the coefficients of `xi^0, ..., xi^m` in
//! `f(base + xi) = sum_k c_k xi^k + O(xi^{m+1})`.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Rational, Scalar};
use crate::sequence::MatrixSequence;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Base {
    Zero,
    Pi,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Jet<T> {
    base: Base,
    rows: usize,
    cols: usize,
    coeffs: Vec<Mat<T>>,
}

/// `(-i k)^j / j!` as a scalar.
fn moment_weight<T: Scalar>(k: i64, j: usize) -> T {
    let mut q = Rational::from_integer(1.into());
    for t in 1..=j {
        q = q * Rational::from_integer(k.into()) / Rational::from_integer((t as i64).into());
    }
    T::from_rational(&q).mul_ref(&T::neg_i_pow(j))
}

impl<T: Scalar> Jet<T> {
    pub fn new(base: Base, rows: usize, cols: usize, coeffs: Vec<Mat<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("jet needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| c.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch {
                op: "Jet::new",
                expected: format!("{rows}x{cols}"),
                found: "mixed coefficient shapes".into(),
            });
        }
        Ok(Jet { base, rows, cols, coeffs })
    }

    /// Taylor jet of the symbol of `u` about `base`, through `xi^order`.
    pub fn of_sequence(u: &MatrixSequence<T>, base: Base, order: usize) -> Self {
        let mut coeffs = vec![Mat::zeros(u.rows(), u.cols()); order + 1];
        for (k, m) in u.iter() {
            let sign_flip = base == Base::Pi && k.rem_euclid(2) == 1;
            for (j, c) in coeffs.iter_mut().enumerate() {
                let mut w: T = moment_weight(k, j);
                if sign_flip {
                    w = -w;
                }
                c.add_assign(&m.scale(&w));
            }
        }
        Jet { base, rows: u.rows(), cols: u.cols(), coeffs }
    }

    /// Constant jet.
    pub fn constant(base: Base, m: Mat<T>, order: usize) -> Self {
        let (rows, cols) = m.shape();
        let mut coeffs = vec![Mat::zeros(rows, cols); order + 1];
        coeffs[0] = m;
        Jet { base, rows, cols, coeffs }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn coeff(&self, k: usize) -> &Mat<T> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Mat<T>] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(order + 1);
        out
    }

    /// Product truncated to the smaller order.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.base != o.base {
            return Err(Error::InvalidParameter(format!(
                "jet bases differ: {:?} vs {:?}",
                self.base, o.base
            )));
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch {
                op: "Jet::mul",
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", o.rows),
            });
        }
        let order = self.order().min(o.order());
        let mut coeffs = vec![Mat::zeros(self.rows, o.cols); order + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            for l in 0..=k {
                self.coeffs[l].mul_acc_into(&o.coeffs[k - l], c);
            }
        }
        Ok(Jet { base: self.base, rows: self.rows, cols: o.cols, coeffs })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        if self.base != o.base || self.shape() != o.shape() {
            return Err(Error::DimensionMismatch {
                op: "Jet::sub",
                expected: format!("{:?} {}x{}", self.base, self.rows, self.cols),
                found: format!("{:?} {}x{}", o.base, o.rows, o.cols),
            });
        }
        let order = self.order().min(o.order());
        let coeffs = (0..=order).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect();
        Ok(Jet { base: self.base, rows: self.rows, cols: self.cols, coeffs })
    }

    /// Jet of `xi -> f(s xi)`.
    pub fn scale_arg(&self, s: i64) -> Self {
        let mut p = T::one();
        let sv = T::from_i64(s);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.scale(&p);
                p = p.mul_ref(&sv);
                out
            })
            .collect();
        Jet { base: self.base, rows: self.rows, cols: self.cols, coeffs }
    }

    /// Relabels the expansion point. Valid only for pi-periodic functions,
    /// such as `xi -> v(2 xi)` with `v` 2pi-periodic, whose jets at `0` and
    /// `pi` coincide.
    pub fn periodic_rebase(&self, base: Base) -> Self {
        let mut out = self.clone();
        out.base = base;
        out
    }

    /// First order at which some coefficient is nonzero.
    pub fn leading_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.leading_order().is_none()
    }

    /// For a `1 x 1` jet: `(j, beta)` with `f = beta (i xi)^j + O(xi^{j+1})`.
    pub fn leading_term(&self) -> Option<(usize, T)> {
        assert_eq!(self.shape(), (1, 1), "leading_term needs a scalar jet");
        let j = self.leading_order()?;
        let beta = self.coeffs[j].get(0, 0).mul_ref(&T::neg_i_pow(j));
        Some((j, beta))
    }

    /// Reciprocal series of a `1 x 1` jet with nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        assert_eq!(self.shape(), (1, 1), "recip needs a scalar jet");
        let c0 = self.coeffs[0].get(0, 0).inv().ok_or_else(|| Error::Degenerate("jet has zero constant term".into()))?;
        let mut out: Vec<T> = vec![c0.clone()];
        for k in 1..=self.order() {
            let mut s = T::zero();
            for l in 1..=k {
                s.mul_acc(self.coeffs[l].get(0, 0), &out[k - l]);
            }
            out.push(-s.mul_ref(&c0));
        }
        let coeffs = out.into_iter().map(|x| Mat::from_fn(1, 1, |_, _| x.clone())).collect();
        Ok(Jet { base: self.base, rows: 1, cols: 1, coeffs })
    }

    /// Entry `(i, j)` as a scalar jet.
    pub fn entry(&self, i: usize, j: usize) -> Self {
        let coeffs = self.coeffs.iter().map(|c| Mat::from_fn(1, 1, |_, _| c.get(i, j).clone())).collect();
        Jet { base: self.base, rows: 1, cols: 1, coeffs }
    }

    /// Scalar Taylor coefficients of a `1 x 1` jet.
    pub fn scalar_coeffs(&self) -> Vec<T> {
        self.coeffs.iter().map(|c| c.get(0, 0).clone()).collect()
    }

    pub fn from_scalar_coeffs(base: Base, c: Vec<T>) -> Result<Self> {
        let coeffs = c.into_iter().map(|x| Mat::from_fn(1, 1, |_, _| x.clone())).collect();
        Jet::new(base, 1, 1, coeffs)
    }
}
