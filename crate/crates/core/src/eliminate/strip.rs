use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::groebner::{has_no_common_zero, Consistency, DEFAULT_PRIMES};
use crate::exactalg::polymatrix::rank_rational;
use crate::exactalg::rational::Rational;
use crate::exactalg::unipoly::UniPoly;
use crate::sbsystem::{time_reverse_poly, DesignParams, ReducedSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalReason {
    KnownDeltaSquare,
    InconsistentLinearSystem,
    /// The linear part is consistent but the whole specialized system is not.
    InconsistentSystem,
    SubmatrixGcd,
    /// Not shared with the time-reversed polynomial.
    ReversalAsymmetric,
}

impl fmt::Display for RemovalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RemovalReason::KnownDeltaSquare => "known_delta_square",
            RemovalReason::InconsistentLinearSystem => "inconsistent_linear_system",
            RemovalReason::InconsistentSystem => "inconsistent_system",
            RemovalReason::SubmatrixGcd => "submatrix_gcd",
            RemovalReason::ReversalAsymmetric => "reversal_asymmetric",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovedFactor {
    pub factor: UniPoly,
    pub reason: RemovalReason,
}

/// True when the linear equations of the reduced system have no solution
/// at this `t` (coefficient rank below augmented rank).
pub fn linear_system_inconsistent(sys: &ReducedSystem, t: &Rational) -> bool {
    let (a, c) = sys.linear_part();
    if a.is_empty() {
        return false;
    }
    let am: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|e| e.eval(t)).collect()).collect();
    let aug: Vec<Vec<Rational>> =
        am.iter().zip(&c).map(|(r, ci)| r.iter().cloned().chain([ci.eval(t)]).collect()).collect();
    rank_rational(&am) < rank_rational(&aug)
}

/// Pair budget for the Groebner consistency test; beyond it the candidate
/// factor is kept.
const GROEBNER_MAX_PAIRS: usize = 20_000;

/// True when the reduced system specialized at `t` has no common zero over
/// the complex numbers (Groebner basis `{1}` modulo two large primes).
pub fn system_inconsistent(sys: &ReducedSystem, t: &Rational) -> bool {
    let polys: Vec<BTreeMap<Vec<u32>, Rational>> = (0..sys.equations.len())
        .map(|e| {
            sys.coefficient_form(e).into_iter().map(|(m, c)| (m, c.eval(t))).filter(|(_, c)| !c.is_zero()).collect()
        })
        .collect();
    has_no_common_zero(&polys, &DEFAULT_PRIMES, GROEBNER_MAX_PAIRS) == Consistency::Inconsistent
}

/// Why the system has no solution at `t`, if it has none.
pub(crate) fn inconsistency_at(sys: &ReducedSystem, t: &Rational) -> Option<RemovalReason> {
    if linear_system_inconsistent(sys, t) {
        Some(RemovalReason::InconsistentLinearSystem)
    } else if system_inconsistent(sys, t) {
        Some(RemovalReason::InconsistentSystem)
    } else {
        None
    }
}

/// `p(S - t) = +-p(t)` with `S = K + L + M`.
pub fn is_reversal_symmetric(p: &UniPoly, params: &DesignParams) -> bool {
    let r = time_reverse_poly(p, params);
    r == *p || r == -p
}

pub(crate) fn strip_half_integers(
    mut poly: UniPoly,
    params: &DesignParams,
    inconsistent: impl Fn(&Rational) -> Option<RemovalReason>,
    removed: &mut Vec<RemovedFactor>,
) -> Result<UniPoly> {
    let n = params.n() as i64;
    let s = params.span() as i64;
    for i in (-2 * n)..=(2 * s + 2 * n) {
        let t = Rational::new(BigInt::from(i), BigInt::from(2));
        if !poly.eval(&t).is_zero() {
            continue;
        }
        let Some(reason) = inconsistent(&t) else {
            continue;
        };
        let f = UniPoly::from_i64(&[-i, 2]);
        let mut total = UniPoly::one();
        while poly.eval(&t).is_zero() && !poly.is_zero() {
            poly = poly.exact_div(&f)?;
            total = &total * &f;
        }
        removed.push(RemovedFactor { factor: total, reason });
    }
    Ok(poly)
}

/// Remove the known and the detectable extraneous factors from `raw`:
/// an optional known factor (divided exactly), then every half-integer
/// root at which the system has no solution. The result
/// is normalized to a primitive integer polynomial with positive leading
/// coefficient and must be symmetric under time reversal.
pub fn strip_extraneous(
    raw: &UniPoly,
    sys: &ReducedSystem,
    hint: Option<&UniPoly>,
) -> Result<(UniPoly, Vec<RemovedFactor>)> {
    strip_with(raw, &sys.params, hint, |t| inconsistency_at(sys, t))
}

pub(crate) fn strip_with(
    raw: &UniPoly,
    params: &DesignParams,
    hint: Option<&UniPoly>,
    inconsistent: impl Fn(&Rational) -> Option<RemovalReason>,
) -> Result<(UniPoly, Vec<RemovedFactor>)> {
    if raw.is_zero() {
        return Err(Error::EliminationFailure(format!("resultant vanishes identically for {params}")));
    }
    let mut removed = Vec::new();
    let mut poly = raw.clone();
    if let Some(h) = hint {
        poly = poly.exact_div(h).map_err(|_| {
            Error::VerificationFailure(format!("known extraneous factor does not divide the resultant for {params}"))
        })?;
        if !h.is_constant() {
            removed.push(RemovedFactor { factor: h.clone(), reason: RemovalReason::KnownDeltaSquare });
        }
    }
    poly = strip_half_integers(poly, params, inconsistent, &mut removed)?;
    let stripped = poly.primitive_normalized();
    if !is_reversal_symmetric(&stripped, params) {
        return Err(Error::EliminationFailure(format!(
            "stripped polynomial of degree {:?} is not symmetric under time reversal for {params}",
            stripped.degree()
        )));
    }
    Ok((stripped, removed))
}
