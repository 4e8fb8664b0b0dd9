//! Exact linear algebra over a field [`Scalar`], plus floating eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::matrix::Mat;
use crate::scalar::{GaussRat, Scalar};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(m: &mut Mat<T>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let a = m.get(p, j).clone();
                let b = m.get(r, j).clone();
                m.set(p, j, b);
                m.set(r, j, a);
            }
        }
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for j in c..cols {
            let v = m.get(r, j).mul_ref(&inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..cols {
                if m.get(r, j).is_zero() {
                    continue;
                }
                let d = f.mul_ref(m.get(r, j));
                *m.get_mut(i, j) -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &Mat<T>) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of the right nullspace `{x : m x = 0}`.
pub fn nullspace<T: Scalar>(m: &Mat<T>) -> Vec<Vec<T>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -w.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// Solution set of `a x = b`: a particular solution (free variables zero) and a
/// nullspace basis, or `None` when the system is inconsistent.
pub fn solve_affine<T: Scalar>(a: &Mat<T>, b: &[T]) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    let (rows, cols) = a.shape();
    assert_eq!(rows, b.len());
    let mut aug = Mat::from_fn(rows, cols + 1, |i, j| if j < cols { a.get(i, j).clone() } else { b[i].clone() });
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, cols).clone();
    }
    Some((x, nullspace(a)))
}

/// Solves the row-vector system `x a = b`.
pub fn solve_left<T: Scalar>(a: &Mat<T>, b: &[T]) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    solve_affine(&a.transpose(), b)
}

pub fn inverse<T: Scalar>(m: &Mat<T>) -> Option<Mat<T>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            T::one()
        } else {
            T::zero()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
}

pub fn determinant<T: Scalar>(m: &Mat<T>) -> T {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut w = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w.get(i, c).is_zero()) else {
            return T::zero();
        };
        if p != c {
            for j in 0..n {
                let a = w.get(p, j).clone();
                let b = w.get(c, j).clone();
                w.set(p, j, b);
                w.set(c, j, a);
            }
            det = -det;
        }
        let piv = w.get(c, c).clone();
        det = det.mul_ref(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if w.get(i, c).is_zero() {
                continue;
            }
            let f = w.get(i, c).mul_ref(&inv);
            for j in c..n {
                let d = f.mul_ref(w.get(c, j));
                *w.get_mut(i, j) -= &d;
            }
        }
    }
    det
}

/// Coefficients `c_0, ..., c_n` of `det(x I - m) = sum c_k x^k` (monic).
pub fn charpoly<T: Scalar>(m: &Mat<T>) -> Vec<T> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut mk = Mat::<T>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            *next.get_mut(i, i) += &c[n - k + 1];
        }
        let am = m.mul(&next);
        let kinv = T::from_i64(k as i64).inv().unwrap();
        c[n - k] = -am.trace().mul_ref(&kinv);
        mk = next;
    }
    c
}

pub fn poly_eval<T: Scalar>(p: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for c in p.iter().rev() {
        acc = acc.mul_ref(x);
        acc += c;
    }
    acc
}

/// Divides `p` by `(x - root)`; the caller guarantees `root` is a root.
fn deflate<T: Scalar>(p: &[T], root: &T) -> Vec<T> {
    let n = p.len() - 1;
    let mut q = vec![T::zero(); n];
    let mut carry = T::zero();
    for k in (0..n).rev() {
        carry = p[k + 1].add_ref(&carry.mul_ref(root));
        q[k] = carry.clone();
    }
    q
}

pub fn to_nalgebra(m: &Mat<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| *m.get(i, j))
}

/// Floating eigenvalues via complex Schur decomposition.
pub fn eigenvalues_c64(m: &Mat<Complex64>) -> Vec<Complex64> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let a = to_nalgebra(m);
    match a.clone().try_schur(1e-15, 10_000) {
        Some(s) => {
            let (_, t) = s.unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
        None => {
            let s = a.schur();
            let (_, t) = s.unpack();
            (0..n).map(|i| t[(i, i)]).collect()
        }
    }
}

/// One eigenvalue with its algebraic multiplicity. `exact` is set when the value
/// was certified as an exact root of the characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: Complex64,
    pub exact: Option<GaussRat>,
    pub multiplicity: usize,
}

/// Spectrum of an exact matrix. Roots of the form `0` and `+-2^{-k}` are
/// found exactly with their algebraic multiplicities; the rest come from a
/// floating Schur decomposition. Sorted by decreasing modulus.
pub fn spectrum(m: &Mat<GaussRat>) -> Vec<Eigenvalue> {
    let mut p = charpoly(m);
    let mut exact: Vec<(GaussRat, usize)> = Vec::new();
    let mut candidates = vec![GaussRat::zero()];
    for k in -8i64..=96 {
        candidates.push(GaussRat::pow2(-k));
        candidates.push(-GaussRat::pow2(-k));
    }
    for c in candidates {
        let mut mult = 0;
        while p.len() > 1 && poly_eval(&p, &c).is_zero() {
            p = deflate(&p, &c);
            mult += 1;
        }
        if mult > 0 {
            exact.push((c, mult));
        }
    }
    let mut floats = eigenvalues_c64(&m.to_c64());
    let mut out = Vec::new();
    for (c, mult) in exact {
        let v = c.to_c64();
        for _ in 0..mult {
            if let Some((idx, _)) = floats
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - v).norm().total_cmp(&(b.1 - v).norm()))
            {
                floats.swap_remove(idx);
            }
        }
        out.push(Eigenvalue { value: v, exact: Some(c), multiplicity: mult });
    }
    for f in floats {
        out.push(Eigenvalue { value: f, exact: None, multiplicity: 1 });
    }
    out.sort_by(|a, b| b.value.norm().total_cmp(&a.value.norm()).then(b.value.re.total_cmp(&a.value.re)));
    out
}

/// Flattened list with multiplicities expanded.
pub fn expand(spec: &[Eigenvalue]) -> Vec<Complex64> {
    spec.iter().flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::real(rat(n, d))
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_rows(vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]).unwrap();
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        assert_eq!(determinant(&m), q(1, 1));
    }

    #[test]
    fn nullspace_dimension() {
        let m = Mat::from_rows(vec![vec![q(1, 1), q(2, 1), q(3, 1)], vec![q(2, 1), q(4, 1), q(6, 1)]]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let x = m.mul(&Mat::column(v));
            assert!(x.is_zero());
        }
    }

    #[test]
    fn dyadic_spectrum() {
        let m = Mat::from_rows(vec![
            vec![q(1, 2), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 2), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(-1, 8)],
        ])
        .unwrap();
        let s = spectrum(&m);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].exact, Some(q(1, 2)));
        assert_eq!(s[0].multiplicity, 2);
        assert_eq!(s[1].exact, Some(q(-1, 8)));
    }

    #[test]
    fn charpoly_matches_determinant() {
        let m = Mat::from_rows(vec![vec![q(1, 3), q(2, 1)], vec![q(-1, 1), q(5, 7)]]).unwrap();
        let p = charpoly(&m);
        let x = q(3, 2);
        let xi = Mat::identity(2).scale(&x).sub(&m);
        assert_eq!(poly_eval(&p, &x), determinant(&xi));
    }
}
