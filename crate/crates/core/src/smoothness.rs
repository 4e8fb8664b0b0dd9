//! Moment-annihilating generator bases, norm-growth rates and smoothness
//! exponents.

use crate::analysis::{sum_rule_order, FilterJet, DEFAULT_SR_CAP};
use crate::engine::{Cascade, LevelGuard};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::normal_form::{build_u1, StronglyInvertible};
use crate::scalar::{log2_abs_rational, GaussRat, Scalar};
use crate::sequence::MatrixSequence;

pub const DEFAULT_N_MAX: u32 = 18;
/// Levels averaged by the ratio estimator.
pub const RATIO_WINDOW: usize = 4;

/// Generators of the sequences `u` with `v^ u^ = O(xi^j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorBasis {
    pub order: usize,
    pub members: Vec<MatrixSequence<GaussRat>>,
}

impl GeneratorBasis {
    /// Checks `v^ u^ = O(xi^order)` for every member, exactly.
    pub fn verify(&self, v: &FilterJet) -> Result<bool> {
        if self.order == 0 {
            return Ok(true);
        }
        if v.order() + 1 < self.order {
            return Err(Error::InsufficientOrder { needed: self.order - 1, got: v.order() });
        }
        let v = v.truncate(self.order - 1);
        for u in &self.members {
            if !v.pair(u)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `{nabla^j u_1, u_2, ..., u_r}` from the columns of `U_1`.
pub fn generator_basis(v: &FilterJet, j: usize, u1: &StronglyInvertible) -> Result<GeneratorBasis> {
    let r = v.r();
    let mut members = Vec::with_capacity(r);
    if r == 1 {
        let mut d = MatrixSequence::delta_identity(1);
        for _ in 0..j {
            d = d.difference();
        }
        members.push(d);
    } else {
        let cols: Vec<_> = (0..r).map(|l| u1.seq().column(l)).collect();
        let mut first = cols[0].clone();
        for _ in 0..j {
            first = first.difference();
        }
        members.push(first);
        members.extend(cols.into_iter().skip(1));
    }
    let basis = GeneratorBasis { order: j, members };
    if !basis.verify(v)? {
        return Err(Error::Degenerate(format!("U_1 order is insufficient for a generator basis of order {j}")));
    }
    Ok(basis)
}

/// Generator basis of order `j` with `U_1` built from `v` at order `j - 1`.
pub fn generator_basis_for(v: &FilterJet, j: usize) -> Result<GeneratorBasis> {
    if v.r() == 1 {
        let u1 = build_u1(v, 0)?;
        return generator_basis(v, j, &u1);
    }
    let m = j.saturating_sub(1);
    let u1 = build_u1(v, m)?;
    generator_basis(v, j, &u1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L2,
    Sup,
}

impl Norm {
    pub fn inv_p(&self) -> f64 {
        match self {
            Norm::L2 => 0.5,
            Norm::Sup => 0.0,
        }
    }
}

/// Norm history of one basis member.
#[derive(Clone, Debug, PartialEq)]
pub struct MemberEstimate {
    /// `log2 ||S_a^n(delta I_r) * u||_p` for `n = 0, ..., n_max`.
    pub log2_norms: Vec<f64>,
    /// `log2` of the mean of the last norm ratios.
    pub log2_ratio: f64,
    /// `log2 s_n^{1/n}` at the last level.
    pub log2_root: f64,
    /// Spread (max minus min) of the `log2` ratios in the averaging window.
    pub spread: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoEstimate {
    pub norm: Norm,
    pub order: usize,
    pub n_max: u32,
    pub members: Vec<MemberEstimate>,
    /// `log2` of the estimated rate: max over members of the ratio estimate.
    pub log2_rho: f64,
}

impl RhoEstimate {
    pub fn rho(&self) -> f64 {
        self.log2_rho.exp2()
    }

    /// `1/p - log2 rho`.
    pub fn smoothness(&self) -> f64 {
        self.norm.inv_p() - self.log2_rho
    }
}

/// `u * u~` with `u~(k) = u(-k)^*`.
fn autocorrelation(u: &MatrixSequence<GaussRat>) -> Result<MatrixSequence<GaussRat>> {
    u.convolve(&u.adjoint())
}

/// `log2 ||S_a^n (delta I_r) * u||_2` for `n = 0..=n_max`, exact up to the final logarithm.
///
/// Uses `h_{n+1}(k) = 4 (a * h_n * a~)(2k)` with `||S_a^n(delta I_r) * u||_2^2 = tr h_n(0)`.
pub fn l2_norm_history(a: &Mask, u: &MatrixSequence<GaussRat>, n_max: u32) -> Result<Vec<f64>> {
    let seq = a.seq();
    let adj = seq.adjoint();
    let four = GaussRat::from_i64(4);
    let mut h = autocorrelation(u)?;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let tr = h.at(0).trace();
        out.push(0.5 * log2_abs_rational(&tr.re));
        if n < n_max {
            h = seq.convolve(&h)?.convolve(&adj)?.downsample(2).scale(&four);
        }
    }
    Ok(out)
}

/// `log2 ||S_a^n (delta I_r) * u||_inf` for `n = 0..=n_max`, exact cascade.
pub fn sup_norm_history(a: &Mask, u: &MatrixSequence<GaussRat>, n_max: u32, guard: LevelGuard) -> Result<Vec<f64>> {
    let mut cascade = Cascade::new(a.seq().clone(), guard);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n > 0 {
            cascade.advance()?;
        }
        let v = cascade.current().convolve(u)?;
        let m = v
            .iter()
            .flat_map(|(_, c)| c.entries().iter().map(|x| x.log2_abs()).collect::<Vec<_>>())
            .fold(f64::NEG_INFINITY, f64::max);
        out.push(m);
    }
    Ok(out)
}

fn summarize(log2_norms: Vec<f64>) -> MemberEstimate {
    let n = log2_norms.len();
    let last = log2_norms[n - 1];
    let log2_root = if n > 1 { last / (n - 1) as f64 } else { last };
    let diffs: Vec<f64> = log2_norms.windows(2).map(|w| w[1] - w[0]).filter(|d| d.is_finite()).collect();
    let tail: Vec<f64> = diffs.iter().rev().take(RATIO_WINDOW).copied().collect();
    if tail.is_empty() {
        return MemberEstimate { log2_norms, log2_ratio: f64::NEG_INFINITY, log2_root, spread: 0.0 };
    }
    let mean_ratio = tail.iter().map(|d| d.exp2()).sum::<f64>() / tail.len() as f64;
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    MemberEstimate { log2_norms, log2_ratio: mean_ratio.log2(), log2_root, spread: hi - lo }
}

/// Estimates the norm-growth rate of the cascade against the basis members.
pub fn rho_estimate(a: &Mask, basis: &GeneratorBasis, norm: Norm, n_max: u32) -> Result<RhoEstimate> {
    if n_max < 4 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 4, got {n_max}")));
    }
    let mut members = Vec::with_capacity(basis.members.len());
    for u in &basis.members {
        let hist = match norm {
            Norm::L2 => l2_norm_history(a, u, n_max)?,
            Norm::Sup => sup_norm_history(a, u, n_max, LevelGuard { max_level: n_max })?,
        };
        members.push(summarize(hist));
    }
    let log2_rho = members.iter().map(|m| m.log2_ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(RhoEstimate { norm, order: basis.order, n_max, members, log2_rho })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessReport {
    pub sr: usize,
    pub rho2: RhoEstimate,
    pub sm2: f64,
    /// `[sm_2 - 1/2, sm_2]`.
    pub sm_inf_bracket: (f64, f64),
    pub rho_inf: Option<RhoEstimate>,
    pub notes: Vec<String>,
}

impl SmoothnessReport {
    /// Largest integer strictly below the midpoint of the sup-norm bracket.
    pub fn default_m(&self) -> usize {
        let mid = 0.5 * (self.sm_inf_bracket.0 + self.sm_inf_bracket.1);
        let m = mid.ceil() as i64 - 1;
        m.max(0) as usize
    }

    /// Largest derivative order the bracket guarantees.
    pub fn safe_derivative(&self) -> Option<usize> {
        let f = self.sm_inf_bracket.0.floor();
        (f >= 0.0).then_some(f as usize)
    }
}

/// Smoothness report with `n_max` levels for the `L2` estimate and an optional
/// sup-norm estimate with `sup_levels` levels.
pub fn sm_report(a: &Mask, n_max: u32, sup_levels: Option<u32>) -> Result<SmoothnessReport> {
    let sr = sum_rule_order(a, DEFAULT_SR_CAP)?;
    let mut notes = Vec::new();
    if sr.order == 0 {
        return Err(Error::Degenerate("mask satisfies no sum rules".into()));
    }
    if sr.order == DEFAULT_SR_CAP {
        notes.push(format!("sum rule order reached the search cap {DEFAULT_SR_CAP}"));
    }
    let basis = generator_basis_for(&sr.filter, sr.order)?;
    let rho2 = rho_estimate(a, &basis, Norm::L2, n_max)?;
    let sm2 = rho2.smoothness();
    let spread = rho2.members.iter().map(|m| m.spread).fold(0.0, f64::max);
    if spread > 0.05 {
        notes.push(format!("ratio spread {spread:.4} in log2 over the last {RATIO_WINDOW} levels"));
    }
    let rho_inf = match sup_levels {
        Some(n) => Some(rho_estimate(a, &basis, Norm::Sup, n)?),
        None => None,
    };
    Ok(SmoothnessReport { sr: sr.order, rho2, sm2, sm_inf_bracket: (sm2 - 0.5, sm2), rho_inf, notes })
}
