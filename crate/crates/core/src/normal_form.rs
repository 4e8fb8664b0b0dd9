//! Strongly invertible transforms and the normal form of a matching filter.

use crate::analysis::FilterJet;
use crate::error::{Error, Result};
use crate::jet::{Base, Jet};
use crate::linalg;
use crate::mask::Mask;
use crate::matrix::Mat;
use crate::scalar::{GaussRat, Scalar};
use crate::sequence::MatrixSequence;

type Poly1 = MatrixSequence<GaussRat>;

fn scalar_seq(k: i64, c: GaussRat) -> Poly1 {
    MatrixSequence::single(k, Mat::from_rows(vec![vec![c]]).expect("1x1"))
}

fn delta() -> Poly1 {
    scalar_seq(0, GaussRat::one())
}

/// Assembles an `r x r` sequence from a grid of scalar sequences.
fn assemble(grid: &[Vec<Poly1>]) -> MatrixSequence<GaussRat> {
    let r = grid.len();
    let (lo, hi) = grid
        .iter()
        .flatten()
        .filter_map(|p| p.support())
        .fold((i64::MAX, i64::MIN), |(lo, hi), w| (lo.min(w.lo), hi.max(w.hi)));
    if lo > hi {
        return MatrixSequence::zero(r, r);
    }
    let coeffs = (lo..=hi)
        .map(|k| Mat::from_fn(r, r, |i, j| grid[i][j].at(k).get(0, 0).clone()))
        .collect();
    MatrixSequence::new(r, r, lo, coeffs).expect("square")
}

fn grid_of(u: &MatrixSequence<GaussRat>) -> Vec<Vec<Poly1>> {
    (0..u.rows()).map(|i| (0..u.cols()).map(|j| u.entry(i, j)).collect()).collect()
}

fn conv(a: &Poly1, b: &Poly1) -> Poly1 {
    a.convolve(b).expect("scalar sequences")
}

fn plus(a: &Poly1, b: &Poly1) -> Poly1 {
    a.add(b).expect("scalar sequences")
}

fn minor(grid: &[Vec<Poly1>], row: usize, col: usize) -> Vec<Vec<Poly1>> {
    grid.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
        .collect()
}

/// Determinant of a matrix of Laurent polynomials by cofactor expansion.
fn det_grid(grid: &[Vec<Poly1>]) -> Poly1 {
    match grid.len() {
        0 => delta(),
        1 => grid[0][0].clone(),
        n => {
            let mut acc = MatrixSequence::zero(1, 1);
            for j in 0..n {
                let term = conv(&grid[0][j], &det_grid(&minor(grid, 0, j)));
                acc = if j % 2 == 0 { plus(&acc, &term) } else { acc.sub(&term).expect("scalar") };
            }
            acc
        }
    }
}

/// Determinant sequence of an `r x r` sequence.
pub fn determinant(u: &MatrixSequence<GaussRat>) -> MatrixSequence<GaussRat> {
    det_grid(&grid_of(u))
}

/// A sequence `U` whose symbol has a nonzero monomial determinant, with its
/// exact inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct StronglyInvertible {
    u: MatrixSequence<GaussRat>,
    inverse: MatrixSequence<GaussRat>,
    /// `perm[l]` is the original coordinate placed in position `l` before
    /// the construction; identity unless a swap was needed. The swapped-out
    /// coordinate also changes sign so that the determinant stays 1.
    pub permutation: Vec<usize>,
}

impl StronglyInvertible {
    pub fn new(u: MatrixSequence<GaussRat>) -> Result<Self> {
        if u.rows() != u.cols() {
            return Err(Error::DimensionMismatch {
                op: "StronglyInvertible::new",
                expected: "square".into(),
                found: format!("{}x{}", u.rows(), u.cols()),
            });
        }
        let r = u.rows();
        let det = determinant(&u);
        let (k0, c) = match det.support() {
            Some(w) if w.lo == w.hi => (w.lo, det.at(w.lo).get(0, 0).clone()),
            _ => return Err(Error::Degenerate("determinant is not a nonzero monomial".into())),
        };
        let grid = grid_of(&u);
        let cinv = c.inv().expect("nonzero");
        let adj: Vec<Vec<Poly1>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let m = det_grid(&minor(&grid, j, i));
                        let m = if (i + j) % 2 == 0 { m } else { m.neg() };
                        conv(&m, &scalar_seq(-k0, cinv.clone()))
                    })
                    .collect()
            })
            .collect();
        let inverse = assemble(&adj);
        Ok(StronglyInvertible { u, inverse, permutation: (0..r).collect() })
    }

    pub fn seq(&self) -> &MatrixSequence<GaussRat> {
        &self.u
    }

    pub fn inverse_seq(&self) -> &MatrixSequence<GaussRat> {
        &self.inverse
    }

    pub fn r(&self) -> usize {
        self.u.rows()
    }

    /// The transform with `U` and `U^{-1}` exchanged.
    pub fn inverted(&self) -> Self {
        StronglyInvertible { u: self.inverse.clone(), inverse: self.u.clone(), permutation: self.permutation.clone() }
    }

    /// `self * other`.
    pub fn compose(&self, other: &StronglyInvertible) -> Result<Self> {
        Ok(StronglyInvertible {
            u: self.u.convolve(&other.u)?,
            inverse: other.inverse.convolve(&self.inverse)?,
            permutation: (0..self.r()).collect(),
        })
    }
}

/// Sequence on `{0, ..., m}` whose symbol has the given Taylor coefficients
/// through order `m`.
pub fn moment_fit(target: &[GaussRat]) -> Result<Poly1> {
    let n = target.len();
    let mat = Mat::from_fn(n, n, |l, k| {
        // (-i k)^l / l!
        let mut w = GaussRat::one();
        for t in 1..=l {
            w = w.mul_ref(&GaussRat::from_i64(k as i64)).mul_ref(&GaussRat::ratio(1, t as i64));
        }
        w.mul_ref(&GaussRat::neg_i_pow(l))
    });
    let (x, _) = linalg::solve_affine(&mat, target).ok_or_else(|| Error::Degenerate("moment system is singular".into()))?;
    let coeffs = x.into_iter().map(|c| Mat::from_rows(vec![vec![c]]).expect("1x1")).collect();
    MatrixSequence::new(1, 1, 0, coeffs)
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `U_1` with `v^ U^_1 = [1, 0, ..., 0] + O(xi^{m+1})` and `det U^_1 = 1`.
pub fn build_u1(v: &FilterJet, m: usize) -> Result<StronglyInvertible> {
    if v.order() < m {
        return Err(Error::InsufficientOrder { needed: m, got: v.order() });
    }
    let r = v.r();
    let v = v.truncate(m);
    let v0: Vec<GaussRat> = (0..r).map(|l| v.entry(l).coeff(0).get(0, 0).clone()).collect();
    let lead = v0.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Degenerate("filter vanishes at 0".into()))?;
    let mut perm: Vec<usize> = (0..r).collect();
    perm.swap(0, lead);

    if r == 1 {
        if m > 0 {
            return Err(Error::InvalidParameter("for r = 1 the normal form exists only for m = 0".into()));
        }
        let c = v0[0].inv().expect("nonzero");
        let mut s = StronglyInvertible::new(MatrixSequence::single(0, Mat::from_rows(vec![vec![c]])?))?;
        s.permutation = perm;
        return Ok(s);
    }

    // signed swap keeps det U = 1: position 0 takes v_lead, position lead takes -v_0
    let entries: Vec<Jet<GaussRat>> = perm
        .iter()
        .enumerate()
        .map(|(pos, &p)| {
            let e = v.entry(p);
            if pos == lead && lead != 0 {
                Jet::from_scalar_coeffs(Base::Zero, e.scalar_coeffs().into_iter().map(|x| -x).collect()).expect("scalar")
            } else {
                e
            }
        })
        .collect();
    let inv1 = entries[0].recip()?;
    let u1 = moment_fit(&inv1.scalar_coeffs())?;
    let mut others = Vec::with_capacity(r - 1);
    for e in &entries[1..] {
        others.push(moment_fit(&e.mul(&inv1)?.scalar_coeffs())?);
    }
    // g = sum_{k=1}^{m+1} C(m+1, k) (-1)^{k+1} u1^{k-1} / c^k with c = u1^(0)
    let c = inv1.coeff(0).get(0, 0).clone();
    let cinv = c.inv().expect("nonzero");
    let mut g = MatrixSequence::zero(1, 1);
    let mut power = delta();
    let mut ck = GaussRat::one();
    for k in 1..=m + 1 {
        ck = ck.mul_ref(&cinv);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coef = GaussRat::from_i64(sign * binom(m + 1, k)).mul_ref(&ck);
        g = plus(&g, &power.scale(&coef));
        power = conv(&power, &u1);
    }

    let s12 = plus(&u1, &others[0]);
    let zero = MatrixSequence::zero(1, 1);
    let mut grid = vec![vec![zero.clone(); r]; r];
    grid[0][0] = s12.clone();
    grid[0][1] = delta().sub(&conv(&s12, &g))?;
    for l in 2..r {
        grid[0][l] = others[l - 1].neg();
    }
    grid[1][0] = delta().neg();
    grid[1][1] = g;
    for (l, row) in grid.iter_mut().enumerate().skip(2) {
        row[l] = delta();
    }
    // undo the signed swap on the rows: U = P U'
    let mut rows: Vec<Vec<Poly1>> = vec![Vec::new(); r];
    for (pos, row) in grid.into_iter().enumerate() {
        rows[perm[pos]] = if pos == lead && lead != 0 { row.iter().map(|p| p.neg()).collect() } else { row };
    }
    let mut s = StronglyInvertible::new(assemble(&rows))?;
    s.permutation = perm;
    Ok(s)
}

/// `v^ U^` as a jet through the order of `v`.
pub fn filter_times(v: &FilterJet, u: &MatrixSequence<GaussRat>) -> Result<Jet<GaussRat>> {
    let uj = Jet::of_sequence(u, Base::Zero, v.order());
    v.jet().mul(&uj)
}

/// `a^(xi) = U^(2 xi) a0^(xi) U^(xi)^{-1}`.
pub fn similarity_transform(a0: &Mask, u: &StronglyInvertible) -> Result<Mask> {
    if a0.r() != u.r() {
        return Err(Error::DimensionMismatch {
            op: "similarity_transform",
            expected: format!("{}x{}", a0.r(), a0.r()),
            found: format!("{}x{}", u.r(), u.r()),
        });
    }
    let seq = u.seq().upsample(2).convolve(a0.seq())?.convolve(u.inverse_seq())?;
    Mask::new(seq, None)
}
