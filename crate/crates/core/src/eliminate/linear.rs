//! Backends built on solving the linear equations first: Region I, and the
//! diagonals `q = 3` (one quadric left) and `q = 4` (two quadrics left).

use std::collections::BTreeMap;

use num_traits::One;

use super::strip::{strip_extraneous, strip_with, RemovedFactor};
use super::sylvester::sylvester_resultant;
use crate::error::{Error, Result};
use crate::exactalg::polymatrix::{det_fraction_free, PolyMatrix};
use crate::exactalg::rational::Rational;
use crate::exactalg::unipoly::UniPoly;
use crate::sbsystem::{build_moment_matrices, reduce_system, DesignParams, Region};

/// Polynomial in one eliminated unknown `x`, coefficients in `Q[t]`,
/// ascending in `x`.
type XPoly = Vec<UniPoly>;

fn xmul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UniPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn xadd(a: &mut XPoly, b: &XPoly) {
    if a.len() < b.len() {
        a.resize(b.len(), UniPoly::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = &*x + y;
    }
}

fn xtrim(mut a: XPoly) -> XPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Substitute `var_j = nums[j] / den` into a form of degree at most 2 and
/// multiply through by `den^2`.
fn substitute_homogenized(form: &BTreeMap<Vec<u32>, UniPoly>, nums: &[XPoly], den: &XPoly) -> Result<XPoly> {
    let mut out = Vec::new();
    for (mono, coef) in form {
        let deg: u32 = mono.iter().sum();
        if deg > 2 {
            return Err(Error::Internal(format!("expected a quadric, found a term of degree {deg}")));
        }
        let mut term: XPoly = vec![coef.clone()];
        for (j, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                term = xmul(&term, &nums[j]);
            }
        }
        for _ in deg..2 {
            term = xmul(&term, den);
        }
        xadd(&mut out, &term);
    }
    Ok(xtrim(out))
}

fn replace_column(a: &[Vec<UniPoly>], col: usize, v: &[UniPoly]) -> PolyMatrix {
    let rows = a.iter().zip(v).map(|(r, x)| {
        let mut r = r.clone();
        r[col] = x.clone();
        r
    });
    PolyMatrix::from_rows(rows.collect()).expect("rectangular rows")
}

/// Eliminate `n` unknowns from `n` affine equations `A x + c = 0` and one
/// quadric. With `delta_I` the maximal minor of `(A | c)` missing column `I`,
/// the result is the quadric homogenized by `z` and evaluated at the kernel
/// vector `(delta_1, -delta_2, ..., +-delta_{n+1})`.
pub fn res_linear_quadric(a: &[Vec<UniPoly>], c: &[UniPoly], quadric: &BTreeMap<Vec<u32>, UniPoly>) -> Result<UniPoly> {
    let n = a.len();
    if c.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("expected {n} affine equations in {n} unknowns")));
    }
    let full: Vec<Vec<UniPoly>> =
        a.iter().zip(c).map(|(r, ci)| r.iter().cloned().chain([ci.clone()]).collect()).collect();
    let mut kernel = Vec::with_capacity(n + 1);
    for skip in 0..=n {
        let cols: Vec<usize> = (0..=n).filter(|&j| j != skip).collect();
        let rows: Vec<usize> = (0..n).collect();
        let m = PolyMatrix::from_rows(full.clone())?.submatrix(&rows, &cols);
        let d = det_fraction_free(&m)?;
        kernel.push(if skip % 2 == 0 { d } else { -&d });
    }
    if kernel.iter().all(UniPoly::is_zero) {
        return Err(Error::EliminationFailure("linear equations are dependent".into()));
    }
    let nums: Vec<XPoly> = kernel[..n].iter().map(|k| vec![k.clone()]).collect();
    let den = vec![kernel[n].clone()];
    let r = substitute_homogenized(quadric, &nums, &den)?;
    Ok(r.into_iter().next().unwrap_or_else(UniPoly::zero))
}

/// Output of a backend before packaging.
pub(crate) struct Eliminated {
    pub raw: UniPoly,
    pub stripped: UniPoly,
    pub removed: Vec<RemovedFactor>,
}

/// Region I: every remaining equation is linear, so the consistency
/// condition is a determinant (or a single closure identity when no
/// free moment is left).
pub(crate) fn solve_region1(p: DesignParams) -> Result<Eliminated> {
    if p.region() != Region::I {
        return Err(Error::Param(format!("{p} is not in Region I")));
    }
    if p.m <= p.l + 1 {
        let mm = build_moment_matrices(p)?;
        let k = p.top_moment() + 1;
        let row = mm.closure_rows.get(&k).ok_or_else(|| Error::Internal(format!("missing closure row for m_{k}")))?;
        let raw = &UniPoly::new(row.clone()) - &UniPoly::monomial(Rational::one(), k);
        let (stripped, removed) = strip_with(&raw, &p, None, |_| None)?;
        return Ok(Eliminated { raw, stripped, removed });
    }
    let sys = reduce_system(p)?;
    if sys.linear_count() != sys.equations.len() {
        return Err(Error::Internal("Region I system with a nonlinear equation".into()));
    }
    let (a, c) = sys.linear_part();
    let rows: Vec<Vec<UniPoly>> = a
        .into_iter()
        .zip(c)
        .map(|(mut r, ci)| {
            r.push(ci);
            r
        })
        .collect();
    let raw = det_fraction_free(&PolyMatrix::from_rows(rows)?)?;
    let (stripped, removed) = strip_extraneous(&raw, &sys, None)?;
    Ok(Eliminated { raw, stripped, removed })
}

/// Known square factor of the `q = 3` resultant.
pub fn q3_known_factor(p: &DesignParams) -> UniPoly {
    let (k, l) = (p.k as i64, p.l as i64);
    let mut delta = UniPoly::one();
    for i in (2 * l + 5 + k)..=(4 * l + 1 + k) {
        let e = (l - (3 * l + 3 + k - i).abs()) / 2;
        if e > 0 {
            delta = &delta * &UniPoly::from_i64(&[-i, 2]).pow(e as usize);
        }
    }
    &delta * &delta
}

fn check_degree(p: &DesignParams, stripped: &UniPoly, expected: usize) -> Result<()> {
    match stripped.degree() {
        Some(d) if d == expected => Ok(()),
        d => Err(Error::VerificationFailure(format!(
            "expected degree {expected} for {p}, got {}",
            d.map_or("-inf".to_string(), |d| d.to_string())
        ))),
    }
}

/// `q = 3`: `L+1` linear equations and one quadric in `L+1` unknowns.
pub(crate) fn solve_diagonal_q3(p: DesignParams) -> Result<Eliminated> {
    if p.q() != 3 {
        return Err(Error::Param(format!("diagonal q=3 backend called for {p}")));
    }
    let sys = reduce_system(p)?;
    let (a, c) = sys.linear_part();
    let quadric = sys.coefficient_form(sys.equations.len() - 1);
    let raw = res_linear_quadric(&a, &c, &quadric)?;
    let hint = q3_known_factor(&p);
    let (stripped, removed) = strip_extraneous(&raw, &sys, Some(&hint))?;
    check_degree(&p, &stripped, 8 * p.l + 8)?;
    Ok(Eliminated { raw, stripped, removed })
}

/// `q = 4`: solve the `L+1` linear equations for all unknowns but
/// `x = m_{2L+3}`, substitute into both quadrics and take the Sylvester
/// resultant in `x`.
pub(crate) fn solve_diagonal_q4(p: DesignParams) -> Result<Eliminated> {
    if p.q() != 4 || p.l < 1 {
        return Err(Error::Param(format!("diagonal q=4 backend needs M = 2L+4 with L >= 1, got {p}")));
    }
    let sys = reduce_system(p)?;
    let (a, c) = sys.linear_part();
    let n = sys.num_moment_vars();
    let nl = a.len();
    if nl + 1 != n || sys.equations.len() != nl + 2 {
        return Err(Error::Internal(format!("unexpected shape for {p}")));
    }
    // A' y = -c - a x
    let a_y: Vec<Vec<UniPoly>> = a.iter().map(|r| r[1..].to_vec()).collect();
    let neg_c: Vec<UniPoly> = c.iter().map(|x| -x).collect();
    let neg_a: Vec<UniPoly> = a.iter().map(|r| -&r[0]).collect();
    let d = det_fraction_free(&PolyMatrix::from_rows(a_y.clone())?)?;
    if d.is_zero() {
        return Err(Error::EliminationFailure(format!("linear block is singular for {p}")));
    }
    let mut nums: Vec<XPoly> = vec![vec![UniPoly::zero(), d.clone()]];
    for j in 0..nl {
        let pj = det_fraction_free(&replace_column(&a_y, j, &neg_c))?;
        let qj = det_fraction_free(&replace_column(&a_y, j, &neg_a))?;
        nums.push(vec![pj, qj]);
    }
    let den = vec![d.clone()];
    let d2 = &d * &d;
    let h1 = substitute_homogenized(&sys.coefficient_form(nl), &nums, &den)?;
    let e1: XPoly = h1
        .iter()
        .map(|c| {
            c.exact_div(&d2).map_err(|_| {
                Error::VerificationFailure(format!(
                    "first quadric is not divisible by the squared Cramer denominator for {p}"
                ))
            })
        })
        .collect::<Result<_>>()?;
    let h2 = substitute_homogenized(&sys.coefficient_form(nl + 1), &nums, &den)?;
    let mut g = UniPoly::zero();
    for c in &h2 {
        if !c.is_zero() {
            g = if g.is_zero() { c.monic() } else { g.gcd(c)? };
        }
    }
    if g.is_zero() {
        return Err(Error::EliminationFailure(format!("second quadric vanishes after substitution for {p}")));
    }
    let e2: XPoly = h2.iter().map(|c| c.exact_div(&g)).collect::<Result<_>>()?;
    let raw = sylvester_resultant(&e1, &e2)?;
    let (stripped, removed) = strip_extraneous(&raw, &sys, None)?;
    check_degree(&p, &stripped, 12 * p.l + 14)?;
    Ok(Eliminated { raw, stripped, removed })
}
