//! Error curves of rescaled subdivision iterates against exact derivative
//! samples, slope fits and convergence verdicts.

use num_traits::Zero;

use crate::analysis::FilterJet;
use crate::engine::{phi_integer_samples, Cascade, LevelGuard};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::scalar::{log2_abs_rational, pow2_rational, GaussRat, Rational, Scalar};
use crate::sequence::MatrixSequence;
use crate::smoothness::{GeneratorBasis, SmoothnessReport};

pub const DEFAULT_TAIL: usize = 5;

/// `(j, beta_j)` with `v^ u^ = beta_j (i xi)^j + O(xi^{j+1})`, the order capped at `m`.
pub fn leading_degree(v: &FilterJet, u: &MatrixSequence<GaussRat>, m: usize) -> Result<(usize, GaussRat)> {
    if v.order() < m {
        return Err(Error::InsufficientOrder { needed: m, got: v.order() });
    }
    let p = v.truncate(m).pair(u)?;
    for k in 0..=m {
        let c = p.coeff(k).get(0, 0);
        if !c.is_zero() {
            return Ok((k, c.div_ref(&GaussRat::i_pow(k)).expect("nonzero")));
        }
    }
    Ok((m, GaussRat::zero()))
}

/// `E_u(n)` at one level.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorLevel {
    pub n: u32,
    /// `E_u(n)^2`, exact.
    pub e_squared: Rational,
    /// `-log2 E_u(n)`; `+inf` when the error vanishes.
    pub neg_log2: f64,
}

impl ErrorLevel {
    pub fn is_zero(&self) -> bool {
        self.e_squared.is_zero()
    }

    pub fn value(&self) -> f64 {
        (-self.neg_log2).exp2()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorCurve {
    pub u: MatrixSequence<GaussRat>,
    pub j: usize,
    pub beta: GaussRat,
    pub levels: Vec<ErrorLevel>,
    /// `min(s, sm_inf - j)` when known.
    pub theoretical_rate: Option<f64>,
}

impl ErrorCurve {
    pub fn neg_log2(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.neg_log2).collect()
    }
}

/// Request for one curve: the test vector and an optional derivative order
/// overriding the leading degree.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRequest {
    pub u: MatrixSequence<GaussRat>,
    pub j: Option<usize>,
}

struct Prepared {
    u: MatrixSequence<GaussRat>,
    j: usize,
    beta: GaussRat,
    /// `u - beta u_{phi,j}`.
    residual: MatrixSequence<GaussRat>,
}

fn prepare(a: &Mask, v: &FilterJet, req: &CurveRequest, m: usize) -> Result<Prepared> {
    let (ld, beta_ld) = leading_degree(v, &req.u, m)?;
    let (j, beta) = match req.j {
        None => (ld, beta_ld),
        Some(j) => {
            if v.order() < j {
                return Err(Error::InsufficientOrder { needed: j, got: v.order() });
            }
            let p = v.truncate(j.max(ld)).pair(&req.u)?;
            let c = p.coeff(j).get(0, 0).clone();
            (j, c.div_ref(&GaussRat::i_pow(j)).expect("nonzero"))
        }
    };
    if beta.is_zero() && j < m {
        return Err(Error::Degenerate(format!("beta_{j} vanishes with j = {j} < m = {m}")));
    }
    let residual = if beta.is_zero() {
        req.u.clone()
    } else {
        let uphi = phi_integer_samples(a, v, j)?;
        req.u.sub(&uphi.scale(&beta))?
    };
    Ok(Prepared { u: req.u.clone(), j, beta, residual })
}

fn sup_sq(w: &MatrixSequence<GaussRat>) -> Rational {
    let mut best = Rational::zero();
    for (_, c) in w.iter() {
        for x in c.entries() {
            let q = x.norm_sqr();
            if q > best {
                best = q;
            }
        }
    }
    best
}

/// Error curves for several test vectors, sharing the cascade `S_a^n(delta I_r)`.
///
/// `m` caps the leading degree; `n_max` is the last level.
pub fn error_curves(
    a: &Mask,
    v: &FilterJet,
    requests: &[CurveRequest],
    m: usize,
    n_max: u32,
    guard: LevelGuard,
) -> Result<Vec<ErrorCurve>> {
    guard.check(n_max)?;
    let prepared = requests.iter().map(|r| prepare(a, v, r, m)).collect::<Result<Vec<_>>>()?;
    let mut levels: Vec<Vec<ErrorLevel>> = vec![Vec::with_capacity(n_max as usize); prepared.len()];
    let mut cascade = Cascade::new(a.seq().clone(), guard);
    for n in 1..=n_max {
        cascade.advance()?;
        let an = cascade.current();
        for (p, out) in prepared.iter().zip(levels.iter_mut()) {
            let w = an.convolve(&p.residual)?;
            let scale = pow2_rational(2 * (p.j as i64) * n as i64);
            let e_squared = sup_sq(&w) * scale;
            let neg_log2 = if e_squared.is_zero() { f64::INFINITY } else { -0.5 * log2_abs_rational(&e_squared) };
            out.push(ErrorLevel { n, e_squared, neg_log2 });
        }
    }
    Ok(prepared
        .into_iter()
        .zip(levels)
        .map(|(p, levels)| ErrorCurve { u: p.u, j: p.j, beta: p.beta, levels, theoretical_rate: None })
        .collect())
}

pub fn error_curve(a: &Mask, v: &FilterJet, u: &MatrixSequence<GaussRat>, m: usize, n_max: u32) -> Result<ErrorCurve> {
    let req = CurveRequest { u: u.clone(), j: None };
    Ok(error_curves(a, v, &[req], m, n_max, LevelGuard::from_env())?.remove(0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RateFit {
    Slope(f64),
    /// Some error in the window is exactly zero.
    ExactReproduction,
}

impl RateFit {
    pub fn slope(&self) -> Option<f64> {
        match self {
            RateFit::Slope(s) => Some(*s),
            RateFit::ExactReproduction => None,
        }
    }
}

/// Least-squares slope of `y` against `x`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Slope of `-log2 E_u(n)` over the last `tail` levels.
pub fn fit_rate(curve: &ErrorCurve, tail: usize) -> Result<RateFit> {
    fit_levels(&curve.levels, tail)
}

fn fit_levels(levels: &[ErrorLevel], tail: usize) -> Result<RateFit> {
    if tail < 3 || levels.len() < tail {
        return Err(Error::InvalidParameter(format!("slope fit needs at least 3 and at most {} levels, got {tail}", levels.len())));
    }
    let window = &levels[levels.len() - tail..];
    if window.iter().any(|l| l.is_zero()) {
        return Ok(RateFit::ExactReproduction);
    }
    let pts: Vec<(f64, f64)> = window.iter().map(|l| (l.n as f64, l.neg_log2)).collect();
    Ok(RateFit::Slope(least_squares_slope(&pts)))
}

/// Slope over the last `min(tail, n)` levels ending at each level, once at
/// least 2 levels are available.
pub fn running_slopes(curve: &ErrorCurve, tail: usize) -> Vec<Option<f64>> {
    (0..curve.levels.len())
        .map(|i| {
            let lo = (i + 1).saturating_sub(tail);
            let window = &curve.levels[lo..=i];
            if window.len() < 2 || window.iter().any(|l| l.is_zero()) {
                return None;
            }
            let pts: Vec<(f64, f64)> = window.iter().map(|l| (l.n as f64, l.neg_log2)).collect();
            Some(least_squares_slope(&pts))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TauStarEstimate {
    /// `(n, log2 sup_{|k| <= 2^n K} |v_n(k)|)`.
    pub log2_sup: Vec<(u32, f64)>,
    pub tau: Option<f64>,
    /// Whether `log2_sup + tau n` is monotone over the tail.
    pub monotone_tail: bool,
}

/// Critical exponent of per-level data `v_n` on windows `[-2^n K, 2^n K]`.
pub fn tau_star_estimate(iterates: &[(u32, MatrixSequence<GaussRat>)], k_window: i64) -> Result<TauStarEstimate> {
    if iterates.len() < 6 {
        return Err(Error::InvalidParameter(format!("need at least 6 levels, got {}", iterates.len())));
    }
    let log2_sup: Vec<(u32, f64)> = iterates
        .iter()
        .map(|(n, v)| {
            let lim = (1i64 << n) * k_window;
            let s = sup_sq(&v.restrict(-lim, lim));
            (*n, if s.is_zero() { f64::NEG_INFINITY } else { 0.5 * log2_abs_rational(&s) })
        })
        .collect();
    if log2_sup.iter().all(|(_, l)| l.is_infinite()) {
        return Err(Error::Degenerate("all levels vanish on the window".into()));
    }
    let tail: Vec<(f64, f64)> = log2_sup.iter().rev().take(DEFAULT_TAIL).rev().map(|&(n, l)| (n as f64, l)).collect();
    let finite = tail.iter().all(|p| p.1.is_finite());
    let tau = finite.then(|| -least_squares_slope(&tail));
    let monotone_tail = match tau {
        Some(t) => {
            let adj: Vec<f64> = tail.iter().map(|p| p.1 + t * p.0).collect();
            adj.windows(2).all(|w| w[1] <= w[0] + 1e-9) || adj.windows(2).all(|w| w[1] >= w[0] - 1e-9)
        }
        None => false,
    };
    Ok(TauStarEstimate { log2_sup, tau, monotone_tail })
}

/// Per-level iterates `2^{0} S_a^n(delta I_r) * u` for `n = 1..=n_max`.
pub fn cascade_iterates(a: &Mask, u: &MatrixSequence<GaussRat>, n_max: u32, guard: LevelGuard) -> Result<Vec<(u32, MatrixSequence<GaussRat>)>> {
    guard.check(n_max)?;
    let mut cascade = Cascade::new(a.seq().clone(), guard);
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let an = cascade.advance()?;
        out.push((n, an.convolve(u)?));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    ConsistentWithConvergence,
    Inconsistent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MemberVerdict {
    pub j: usize,
    pub fit: Option<RateFit>,
    pub decreasing: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub m: usize,
    pub members: Vec<MemberVerdict>,
    pub sm_inf_bracket: Option<(f64, f64)>,
    pub notes: Vec<String>,
}

/// Finite-level evidence for `C^m` convergence: every basis member's error
/// curve at order `m` decays, and the smoothness bracket lies above `m`.
pub fn convergence_verdict(
    a: &Mask,
    v: &FilterJet,
    basis: &GeneratorBasis,
    m: usize,
    n_max: u32,
    smoothness: Option<&SmoothnessReport>,
) -> Verdict {
    let mut notes = Vec::new();
    let mut members = Vec::new();
    let tail = DEFAULT_TAIL.min(n_max as usize).max(3);
    for u in &basis.members {
        let req = CurveRequest { u: u.clone(), j: Some(m) };
        let res = error_curves(a, v, &[req], m, n_max, LevelGuard { max_level: n_max.max(1) });
        match res {
            Ok(mut curves) => {
                let c = curves.remove(0);
                let fit = fit_rate(&c, tail).ok();
                let ys = c.neg_log2();
                let t = &ys[ys.len().saturating_sub(tail)..];
                let decreasing = t.windows(2).all(|w| w[1] >= w[0]);
                members.push(MemberVerdict { j: c.j, fit, decreasing, error: None });
            }
            Err(e) => members.push(MemberVerdict { j: m, fit: None, decreasing: false, error: Some(e.to_string()) }),
        }
    }
    let bracket = smoothness.map(|s| s.sm_inf_bracket);
    let bracket_excludes = bracket.is_some_and(|(_, hi)| hi <= m as f64);
    let bracket_confirms = bracket.is_some_and(|(lo, _)| lo > m as f64);
    if bracket_excludes {
        notes.push(format!("smoothness bracket upper end {:.4} does not exceed m = {m}", bracket.unwrap().1));
    }
    let all_decay = members.iter().all(|mv| {
        mv.error.is_none()
            && match mv.fit {
                Some(RateFit::ExactReproduction) => true,
                Some(RateFit::Slope(s)) => s > 0.0 && mv.decreasing,
                None => false,
            }
    });
    let any_growth = members.iter().any(|mv| matches!(mv.fit, Some(RateFit::Slope(s)) if s <= 0.0));
    for mv in &members {
        if let Some(e) = &mv.error {
            notes.push(format!("error curve unavailable: {e}"));
        }
    }
    let kind = if bracket_excludes || any_growth {
        VerdictKind::Inconsistent
    } else if all_decay && (bracket.is_none() || bracket_confirms) {
        VerdictKind::ConsistentWithConvergence
    } else {
        VerdictKind::Inconclusive
    };
    Verdict { kind, m, members, sm_inf_bracket: bracket, notes }
}
