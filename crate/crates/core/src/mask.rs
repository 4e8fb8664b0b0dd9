//! Matrix masks and their symmetries.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{GaussRat, Rational, Scalar};
use crate::sequence::{MatrixSequence, SupportWindow};

/// Reflection symmetry `a_pq(k) = e_p e_q a_pq(4 c_p - 2 c_q - k)`.
///
/// `centers[p]` is a half-integer and `signs[p]` is `+1` or `-1`. A common
/// center `c` for all components reduces to `a(k) = S a(2c - k) S` with
/// `S = diag(signs)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Symmetry {
    pub centers: Vec<Rational>,
    pub signs: Vec<i8>,
}

impl Symmetry {
    pub fn new(centers: Vec<Rational>, signs: Vec<i8>) -> Result<Self> {
        if centers.len() != signs.len() {
            return Err(Error::DimensionMismatch {
                op: "Symmetry::new",
                expected: format!("{} signs", centers.len()),
                found: format!("{}", signs.len()),
            });
        }
        for c in &centers {
            if !(c * Rational::from_integer(2.into())).is_integer() {
                return Err(Error::InvalidParameter(format!("symmetry center {c} is not a half-integer")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter("symmetry signs must be +1 or -1".into()));
        }
        Ok(Symmetry { centers, signs })
    }

    pub fn uniform(center: Rational, signs: Vec<i8>) -> Result<Self> {
        Self::new(vec![center; signs.len()], signs)
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    /// Reflection point `4 c_p - 2 c_q` for entry `(p, q)`.
    pub fn reflection(&self, p: usize, q: usize) -> i64 {
        let four = Rational::from_integer(4.into());
        let two = Rational::from_integer(2.into());
        let v = &self.centers[p] * four - &self.centers[q] * two;
        v.to_integer().to_i64().expect("small reflection point")
    }

    pub fn sign(&self, p: usize, q: usize) -> i8 {
        self.signs[p] * self.signs[q]
    }

    /// Checks the relation on every entry of `a`.
    pub fn holds<T: Scalar>(&self, a: &MatrixSequence<T>) -> bool {
        let Some(w) = a.support() else {
            return true;
        };
        let r = self.dim();
        for k in w.iter() {
            let m = a.at(k);
            for p in 0..r {
                for q in 0..r {
                    let other = a.at(self.reflection(p, q) - k);
                    let mut v = other.get(p, q).clone();
                    if self.sign(p, q) < 0 {
                        v = -v;
                    }
                    if &v != m.get(p, q) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_uniform(&self) -> bool {
        self.centers.windows(2).all(|w| w[0] == w[1])
    }
}

/// Finitely supported `r x r` mask with exact coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Mask {
    seq: MatrixSequence<GaussRat>,
    symmetry: Option<Symmetry>,
}

impl Mask {
    pub fn new(seq: MatrixSequence<GaussRat>, symmetry: Option<Symmetry>) -> Result<Self> {
        if seq.rows() != seq.cols() {
            return Err(Error::DimensionMismatch {
                op: "Mask::new",
                expected: "square coefficients".into(),
                found: format!("{}x{}", seq.rows(), seq.cols()),
            });
        }
        if seq.is_zero() {
            return Err(Error::Degenerate("mask is identically zero".into()));
        }
        if let Some(s) = &symmetry {
            if s.dim() != seq.rows() {
                return Err(Error::DimensionMismatch {
                    op: "Mask::new symmetry",
                    expected: format!("{} components", seq.rows()),
                    found: format!("{}", s.dim()),
                });
            }
            if !s.holds(&seq) {
                return Err(Error::InvalidParameter("mask violates its declared symmetry".into()));
            }
        }
        Ok(Mask { seq, symmetry })
    }

    /// Mask from coefficient matrices on consecutive indices starting at `lo`.
    pub fn from_coeffs(lo: i64, coeffs: Vec<Mat<GaussRat>>, symmetry: Option<Symmetry>) -> Result<Self> {
        let r = coeffs.first().map_or(0, |m| m.rows());
        Self::new(MatrixSequence::new(r, r, lo, coeffs)?, symmetry)
    }

    pub fn r(&self) -> usize {
        self.seq.rows()
    }

    pub fn seq(&self) -> &MatrixSequence<GaussRat> {
        &self.seq
    }

    pub fn symmetry(&self) -> Option<&Symmetry> {
        self.symmetry.as_ref()
    }

    pub fn support(&self) -> SupportWindow {
        self.seq.support().expect("nonzero mask")
    }

    /// `a^(0)` symbol value at `xi = 0`, i.e. `sum_k a(k)`.
    pub fn symbol_at_zero(&self) -> Mat<GaussRat> {
        let mut acc = Mat::zeros(self.r(), self.r());
        for (_, m) in self.seq.iter() {
            acc.add_assign(m);
        }
        acc
    }

    /// `sum_k (-1)^k a(k)`.
    pub fn symbol_at_pi(&self) -> Mat<GaussRat> {
        let mut acc = Mat::zeros(self.r(), self.r());
        for (k, m) in self.seq.iter() {
            if k.is_odd() {
                acc = acc.sub(m);
            } else {
                acc.add_assign(m);
            }
        }
        acc
    }

    /// All coefficients are real.
    pub fn is_real(&self) -> bool {
        self.seq.iter().all(|(_, m)| m.entries().iter().all(|x| x.im.is_zero()))
    }

    pub fn is_zero_entry(x: &GaussRat) -> bool {
        x.re.is_zero() && x.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn half_integer_centers_reflect() {
        let s = Symmetry::new(vec![rat(0, 1), rat(1, 2)], vec![1, 1]).unwrap();
        assert_eq!(s.reflection(0, 0), 0);
        assert_eq!(s.reflection(1, 1), 1);
        assert_eq!(s.reflection(0, 1), -1);
        assert_eq!(s.reflection(1, 0), 2);
        assert!(Symmetry::new(vec![rat(1, 3)], vec![1]).is_err());
    }
}
