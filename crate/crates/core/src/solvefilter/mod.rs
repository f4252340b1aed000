//! From the moment polynomial to filters: real roots, moments at each root,
//! coefficients `h[n]`, the square magnitude response and its shape.

mod backsub;
mod response;

pub use backsub::{back_substitute, full_residual, BackSubstitution, MAX_WORKING_BITS};
pub use response::{classify_response, magnitude_response, ResponseClass, MIN_CLASSIFY_SAMPLES};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::eliminate::EliminationResult;
use crate::error::{Error, Result};
use crate::exactalg::intpoly::IntPoly;
use crate::exactalg::rational::{pow2, to_f64, Rational};
use crate::exactalg::roots::{sturm_real_roots, RootInterval};
use crate::sbsystem::{build_moment_matrices, reduce_system, DesignParams, MomentMatrices};

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub precision_bits: u32,
    pub samples: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { precision_bits: 256, samples: 512 }
    }
}

#[derive(Clone, Debug)]
pub struct FilterSolution {
    /// Isolating interval of the root after refinement.
    pub t_root: RootInterval,
    /// The rational point inside `t_root` used for back-substitution.
    pub t: Rational,
    /// `m_0..m_{L+M}`.
    pub moments: Vec<Rational>,
    /// `h[0..N-1]`.
    pub coeffs: Vec<Rational>,
    /// Index of the time-reversed twin in the solution list.
    pub partner: Option<usize>,
    pub response_class: ResponseClass,
    pub residual: Rational,
    pub working_bits: u32,
}

impl FilterSolution {
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

/// `h = T (QT)^-1 m`, checked for the factor `(1 + z^-1)^K` by synthetic
/// division.
pub fn recover_coefficients(moments: &[Rational], mats: &MomentMatrices) -> Result<Vec<Rational>> {
    let h = mats.coefficients(moments)?;
    let mut rem = h.clone();
    for _ in 0..mats.params.k {
        // divide by (1 + z^-1): q[n] = r[n] - q[n-1]
        let mut q = Vec::with_capacity(rem.len().saturating_sub(1));
        let mut prev = Rational::zero();
        for r in &rem[..rem.len() - 1] {
            let v = r - &prev;
            q.push(v.clone());
            prev = v;
        }
        let last = &rem[rem.len() - 1] - &prev;
        if !last.is_zero() {
            return Err(Error::VerificationFailure(format!(
                "coefficients not divisible by (1 + z^-1)^{}: remainder {}",
                mats.params.k,
                to_f64(&last)
            )));
        }
        rem = q;
    }
    Ok(h)
}

/// For each root, the index of the root closest to `S - t`, accepted when
/// the gap is below `tol`.
pub fn pair_roots(ts: &[Rational], params: &DesignParams, tol: &Rational) -> Vec<Option<usize>> {
    let s = Rational::from_integer(BigInt::from(params.span()));
    ts.iter()
        .map(|t| {
            let target = &s - t;
            ts.iter()
                .enumerate()
                .map(|(j, u)| (j, (u - &target).abs()))
                .min_by(|a, b| a.1.cmp(&b.1))
                .filter(|(_, gap)| gap <= tol)
                .map(|(j, _)| j)
        })
        .collect()
}

/// Real roots of the stripped polynomial with isolating intervals of width
/// at most `2^-precision_bits`.
pub fn real_roots(elim: &EliminationResult, precision_bits: u32) -> Result<Vec<RootInterval>> {
    sturm_real_roots(&elim.stripped, precision_bits)
}

/// Back-substitute at every real root and build the filters.
pub fn solve(elim: &EliminationResult, cfg: &SolveConfig) -> Result<Vec<FilterSolution>> {
    if cfg.samples < MIN_CLASSIFY_SAMPLES {
        return Err(Error::Param(format!("need at least {MIN_CLASSIFY_SAMPLES} samples, got {}", cfg.samples)));
    }
    let params = elim.params;
    let mats = build_moment_matrices(params)?;
    let sys = if params.m > params.l { Some(reduce_system(params)?) } else { None };
    let roots = real_roots(elim, cfg.precision_bits)?;
    let factors: Vec<(IntPoly, usize)> =
        elim.stripped.squarefree_decomposition()?.into_iter().map(|(f, m)| (f.to_int_poly().1, m)).collect();
    let mut out = Vec::with_capacity(roots.len());
    for root in &roots {
        // the squarefree factor carrying this root
        let f = factors
            .iter()
            .find(|(f, m)| {
                *m == root.multiplicity
                    && (root.is_point() && f.eval(&root.lo).is_zero() || f.sign_at(&root.lo) != f.sign_at(&root.hi))
            })
            .map(|(f, _)| f)
            .ok_or_else(|| Error::Internal("root interval without a matching squarefree factor".into()))?;
        let bs = back_substitute(&params, sys.as_ref(), &mats, elim.dixon.as_ref(), f, root, cfg.precision_bits)?;
        let coeffs = recover_coefficients(&bs.moments, &mats)?;
        let hf: Vec<f64> = coeffs.iter().map(to_f64).collect();
        let samples = magnitude_response(&hf, cfg.samples)?;
        let response_class = classify_response(&samples)?;
        out.push(FilterSolution {
            t_root: bs.interval,
            t: bs.t,
            moments: bs.moments,
            coeffs,
            partner: None,
            response_class,
            residual: bs.residual,
            working_bits: bs.working_bits,
        });
    }
    let ts: Vec<Rational> = out.iter().map(|s| s.t.clone()).collect();
    let tol = pow2(8 - i64::from(cfg.precision_bits));
    for (s, p) in out.iter_mut().zip(pair_roots(&ts, &params, &tol)) {
        s.partner = p;
    }
    Ok(out)
}
