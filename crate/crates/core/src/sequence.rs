//! Finitely supported sequences of matrices indexed by the integers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// Closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct SupportWindow {
    pub lo: i64,
    pub hi: i64,
}

impl SupportWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        SupportWindow { lo, hi }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo <= k && k <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Finitely supported `rows x cols` matrix sequence. Stored trimmed: the first
/// and last stored coefficients are nonzero, and the zero sequence stores none.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixSequence<T> {
    rows: usize,
    cols: usize,
    start: i64,
    coeffs: Vec<Mat<T>>,
}

impl<T: Scalar> MatrixSequence<T> {
    pub fn new(rows: usize, cols: usize, start: i64, coeffs: Vec<Mat<T>>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|m| m.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch {
                op: "MatrixSequence::new",
                expected: format!("{rows}x{cols}"),
                found: format!("{}x{}", bad.rows(), bad.cols()),
            });
        }
        let mut s = MatrixSequence { rows, cols, start, coeffs };
        s.trim();
        Ok(s)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixSequence { rows, cols, start: 0, coeffs: Vec::new() }
    }

    /// `delta * I_r`.
    pub fn delta_identity(r: usize) -> Self {
        MatrixSequence { rows: r, cols: r, start: 0, coeffs: vec![Mat::identity(r)] }
    }

    /// Single coefficient `m` placed at index `k`.
    pub fn single(k: i64, m: Mat<T>) -> Self {
        let (rows, cols) = m.shape();
        let mut s = MatrixSequence { rows, cols, start: k, coeffs: vec![m] };
        s.trim();
        s
    }

    /// Column-vector sequence from `(index, entries)` pairs.
    pub fn from_vectors(r: usize, items: &[(i64, Vec<T>)]) -> Result<Self> {
        let Some(lo) = items.iter().map(|x| x.0).min() else {
            return Ok(Self::zero(r, 1));
        };
        let hi = items.iter().map(|x| x.0).max().unwrap();
        let mut coeffs = vec![Mat::zeros(r, 1); (hi - lo + 1) as usize];
        for (k, v) in items {
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    op: "MatrixSequence::from_vectors",
                    expected: format!("{r} entries"),
                    found: format!("{}", v.len()),
                });
            }
            coeffs[(k - lo) as usize].add_assign(&Mat::column(v.clone()));
        }
        Self::new(r, 1, lo, coeffs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn coeffs(&self) -> &[Mat<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Option<SupportWindow> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(SupportWindow::new(self.start, self.start + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn get(&self, k: i64) -> Option<&Mat<T>> {
        let idx = k - self.start;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize)
    }

    pub fn at(&self, k: i64) -> Mat<T> {
        self.get(k).cloned().unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    /// Iterates `(index, coefficient)` over the stored range.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Mat<T>)> {
        self.coeffs.iter().enumerate().map(move |(i, m)| (self.start + i as i64, m))
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|m| m.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = 0;
            return;
        }
        let tail = self.coeffs.iter().rev().take_while(|m| m.is_zero()).count();
        self.coeffs.truncate(self.coeffs.len() - tail);
        self.coeffs.drain(..lead);
        self.start += lead as i64;
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MatrixSequence<U> {
        let coeffs = self.coeffs.iter().map(|m| m.map(&f)).collect();
        MatrixSequence::new(self.rows, self.cols, self.start, coeffs).expect("shape preserved")
    }

    pub fn to_c64(&self) -> MatrixSequence<Complex64> {
        self.map(|x| x.to_c64())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    fn check_same_shape(&self, o: &Self, op: &'static str) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch {
                op,
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", o.rows, o.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o, "MatrixSequence::add")?;
        let (Some(a), Some(b)) = (self.support(), o.support()) else {
            return Ok(if self.is_zero() { o.clone() } else { self.clone() });
        };
        let lo = a.lo.min(b.lo);
        let hi = a.hi.max(b.hi);
        let coeffs = (lo..=hi)
            .map(|k| match (self.get(k), o.get(k)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => Mat::zeros(self.rows, self.cols),
            })
            .collect();
        Self::new(self.rows, self.cols, lo, coeffs)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// `(a * b)(k) = sum_l a(l) b(k - l)`.
    pub fn convolve(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch {
                op: "convolve",
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", o.rows),
            });
        }
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.rows, o.cols));
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut out = vec![Mat::zeros(self.rows, o.cols); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                x.mul_acc_into(y, &mut out[i + j]);
            }
        }
        Self::new(self.rows, o.cols, self.start + o.start, out)
    }

    /// `b(k) = a(e + 2k)` for `e` in `{0, 1}`.
    pub fn coset(&self, e: i64) -> Self {
        let Some(w) = self.support() else {
            return self.clone();
        };
        let lo = (w.lo - e).div_euclid(2);
        let hi = (w.hi - e).div_euclid(2);
        let coeffs = (lo..=hi).map(|k| self.at(e + 2 * k)).collect();
        Self::new(self.rows, self.cols, lo, coeffs).expect("shape preserved")
    }

    /// `b(k) = a(f k)`.
    pub fn downsample(&self, f: i64) -> Self {
        let Some(w) = self.support() else {
            return self.clone();
        };
        let lo = w.lo.div_euclid(f) + i64::from(w.lo.rem_euclid(f) != 0);
        let hi = w.hi.div_euclid(f);
        if lo > hi {
            return Self::zero(self.rows, self.cols);
        }
        let coeffs = (lo..=hi).map(|k| self.at(f * k)).collect();
        Self::new(self.rows, self.cols, lo, coeffs).expect("shape preserved")
    }

    /// `b(f k) = a(k)`, zero off the multiples of `f`.
    pub fn upsample(&self, f: i64) -> Self {
        assert!(f >= 1);
        let Some(w) = self.support() else {
            return self.clone();
        };
        let lo = w.lo * f;
        let hi = w.hi * f;
        let coeffs = (lo..=hi)
            .map(|k| {
                if k.rem_euclid(f) == 0 {
                    self.at(k / f)
                } else {
                    Mat::zeros(self.rows, self.cols)
                }
            })
            .collect();
        Self::new(self.rows, self.cols, lo, coeffs).expect("shape preserved")
    }

    /// `b(k) = a(k - s)`.
    pub fn shift(&self, s: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.start += s;
        }
        out
    }

    /// Backward difference `a(k) - a(k - 1)`.
    pub fn difference(&self) -> Self {
        self.sub(&self.shift(1)).expect("same shape")
    }

    /// `b(k) = a(-k)^*`.
    pub fn adjoint(&self) -> Self {
        let Some(w) = self.support() else {
            return MatrixSequence::zero(self.cols, self.rows);
        };
        let coeffs = (-w.hi..=-w.lo).map(|k| self.at(-k).conj_transpose()).collect();
        MatrixSequence::new(self.cols, self.rows, -w.hi, coeffs).expect("shape preserved")
    }

    /// Restriction to the coefficients in `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        if lo > hi {
            return Self::zero(self.rows, self.cols);
        }
        let coeffs = (lo..=hi).map(|k| self.at(k)).collect();
        Self::new(self.rows, self.cols, lo, coeffs).expect("shape preserved")
    }

    /// Symbol `sum_k a(k) e^{-i k xi}`.
    pub fn symbol_eval(&self, xi: f64) -> Mat<Complex64> {
        let mut acc = Mat::<Complex64>::zeros(self.rows, self.cols);
        for (k, m) in self.iter() {
            let e = Complex64::from_polar(1.0, -(k as f64) * xi);
            acc.add_assign(&m.to_c64().scale(&e));
        }
        acc
    }

    /// Largest entry modulus over all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|m| m.max_abs()).fold(0.0, f64::max)
    }

    /// Entry `(i, j)` as a scalar sequence.
    pub fn entry(&self, i: usize, j: usize) -> MatrixSequence<T> {
        let coeffs = self.coeffs.iter().map(|m| Mat::from_fn(1, 1, |_, _| m.get(i, j).clone())).collect();
        MatrixSequence::new(1, 1, self.start, coeffs).expect("shape preserved")
    }

    /// Column `j` as an `r x 1` sequence.
    pub fn column(&self, j: usize) -> MatrixSequence<T> {
        let coeffs = self.coeffs.iter().map(|m| Mat::column(m.col_vec(j))).collect();
        MatrixSequence::new(self.rows, 1, self.start, coeffs).expect("shape preserved")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn scalar_seq(start: i64, v: &[i64]) -> MatrixSequence<GaussRat> {
        let coeffs = v.iter().map(|&x| Mat::from_fn(1, 1, |_, _| GaussRat::from_i64(x))).collect();
        MatrixSequence::new(1, 1, start, coeffs).unwrap()
    }

    #[test]
    fn trims_and_convolves() {
        let a = scalar_seq(-1, &[0, 1, 2, 0]);
        assert_eq!(a.support(), Some(SupportWindow::new(0, 1)));
        let b = scalar_seq(0, &[1, 1]);
        let c = a.convolve(&b).unwrap();
        assert_eq!(c, scalar_seq(0, &[1, 3, 2]));
    }

    #[test]
    fn cosets_reassemble() {
        let a = scalar_seq(-3, &[1, 2, 3, 4, 5, 6, 7]);
        let even = a.coset(0).upsample(2);
        let odd = a.coset(1).upsample(2).shift(1);
        assert_eq!(even.add(&odd).unwrap(), a);
    }

    #[test]
    fn downsample_is_even_coset() {
        let a = scalar_seq(-3, &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(a.downsample(2), a.coset(0));
    }
}
