use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::eliminate::DixonDecomposition;
use crate::error::{Error, Result};
use crate::exactalg::intpoly::IntPoly;
use crate::exactalg::polymatrix::{eliminate_rational, solve_approx};
use crate::exactalg::rational::{pow2, round_abs, Rational};
use crate::exactalg::roots::{refine_simple_root, RootInterval};
use crate::sbsystem::{group_delay_quadric, magnitude_quadric, DesignParams, MomentMatrices, ReducedSystem};

/// Largest working precision tried before a root is declared spurious.
pub const MAX_WORKING_BITS: u32 = 2048;

/// Extra bits carried on `t` beyond the working precision.
const GUARD_BITS: u32 = 64;

/// Moments recovered at one real root.
#[derive(Clone, Debug)]
pub struct BackSubstitution {
    /// Dyadic approximation of the root used for the solve.
    pub t: Rational,
    /// Bracket of the root after refinement.
    pub interval: RootInterval,
    /// `m_0..m_{L+M}`.
    pub moments: Vec<Rational>,
    /// Largest absolute residual over the full design system.
    pub residual: Rational,
    pub working_bits: u32,
}

/// Reduced row echelon form of `[A | b]` for `A x = b`: a particular
/// solution and a basis of the null space, or `None` when inconsistent.
fn affine_solution(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut m: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x0[c] = m[i][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f].clone();
            }
            v
        })
        .collect();
    Some((x0, basis))
}

/// Quadric coefficients `(a, b, c)` of equation `e` restricted to the line
/// `x0 + s v`.
fn on_line(sys: &ReducedSystem, e: usize, t: &Rational, x0: &[Rational], v: &[Rational]) -> [Rational; 3] {
    let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (mono, coef) in sys.coefficient_form(e) {
        let c = coef.eval(t);
        // product of affine factors (x0_j + s v_j), at most quadratic
        let mut poly = vec![c];
        for (j, &k) in mono.iter().enumerate() {
            for _ in 0..k {
                let mut next = vec![Rational::zero(); poly.len() + 1];
                for (d, p) in poly.iter().enumerate() {
                    next[d] += p * &x0[j];
                    next[d + 1] += p * &v[j];
                }
                poly = next;
            }
        }
        for (d, p) in poly.into_iter().enumerate() {
            if d <= 2 {
                out[2 - d] += p;
            }
        }
    }
    out
}

/// Common root of the quadrics `a s^2 + b s + c` along a line, from the
/// best-conditioned pair.
fn line_parameter(quads: &[[Rational; 3]]) -> Option<Rational> {
    let mut best: Option<(Rational, Rational)> = None;
    let mut consider = |num: Rational, den: Rational| {
        if den.is_zero() {
            return;
        }
        if best.as_ref().map_or(true, |(_, d)| den.abs() > d.abs()) {
            best = Some((num, den));
        }
    };
    for q in quads {
        if q[0].is_zero() {
            consider(-q[2].clone(), q[1].clone());
        }
    }
    for (i, p) in quads.iter().enumerate() {
        for q in &quads[i + 1..] {
            // eliminate s^2
            let den = &q[0] * &p[1] - &p[0] * &q[1];
            let num = &p[0] * &q[2] - &q[0] * &p[2];
            consider(num, den);
        }
    }
    best.map(|(n, d)| n / d)
}

/// Moments from the left kernel of the chosen Dixon submatrix at `t`,
/// normalized so the entry of the row for the monomial 1 is 1, rounded to
/// `frac_bits` fractional bits.
fn dixon_kernel_moments(d: &DixonDecomposition, t: &Rational, n: usize, frac_bits: u64) -> Option<Vec<Rational>> {
    let m = d.submatrix().eval(t);
    let rows = &d.chosen_rows;
    let unit = rows.iter().position(|&r| Some(r) == d.unit_row())?;
    let others: Vec<usize> = (0..m.len()).filter(|&i| i != unit).collect();
    let cols = m.first()?.len();
    // v^T M = 0 with v_unit = 1; M is singular at the root, so one of the
    // column equations is redundant and pivoting leaves it out
    let a: Vec<Vec<Rational>> = (0..cols).map(|j| others.iter().map(|&i| m[i][j].clone()).collect()).collect();
    let b: Vec<Rational> = (0..cols).map(|j| -m[unit][j].clone()).collect();
    let x = solve_approx(&a, &b, frac_bits as u32)?;
    (0..n)
        .map(|k| {
            let row = d.linear_row(k)?;
            let pos = rows.iter().position(|&x| x == row)?;
            if pos == unit {
                return Some(Rational::one());
            }
            Some(round_abs(&x[others.iter().position(|&i| i == pos)?], frac_bits))
        })
        .collect()
}

/// Free moments `m_{2L+3}..m_{L+M}` at `t`, rounded to `frac_bits`
/// fractional bits.
fn free_moments(
    sys: &ReducedSystem,
    dixon: Option<&DixonDecomposition>,
    t: &Rational,
    frac_bits: u64,
) -> Result<Vec<Rational>> {
    let n = sys.num_moment_vars();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (a, c) = sys.linear_part();
    let am: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|e| e.eval(t)).collect()).collect();
    // at an approximate root an overdetermined linear part is only nearly
    // consistent; solve on independent rows and let the residual check
    // judge the rest
    let rows = eliminate_rational(&am, &[]).pivot_rows;
    let am: Vec<Vec<Rational>> = rows.iter().map(|&i| am[i].clone()).collect();
    let bm: Vec<Rational> = rows.iter().map(|&i| -c[i].eval(t)).collect();
    let Some((x0, basis)) = affine_solution(&am, &bm, n) else {
        return Err(Error::SpuriousRoot(format!("linear equations inconsistent at t = {t}")));
    };
    match basis.len() {
        0 => Ok(x0.iter().map(|x| round_abs(x, frac_bits)).collect()),
        1 => {
            let v = &basis[0];
            let quads: Vec<[Rational; 3]> =
                (sys.linear_count()..sys.equations.len()).map(|e| on_line(sys, e, t, &x0, v)).collect();
            let s = line_parameter(&quads)
                .ok_or_else(|| Error::SpuriousRoot(format!("no common root on the solution line at t = {t}")))?;
            Ok(x0.iter().zip(v).map(|(a, b)| round_abs(&(a + &s * b), frac_bits)).collect())
        }
        _ => {
            let d = dixon.ok_or_else(|| {
                Error::Internal("back-substitution needs the Dixon decomposition for this system".into())
            })?;
            dixon_kernel_moments(d, t, n, frac_bits)
                .ok_or_else(|| Error::SpuriousRoot(format!("Dixon kernel is degenerate at t = {t}")))
        }
    }
}

/// Largest absolute residual of the full design system (magnitude and group
/// delay flatness, zeros at `z = -1`, normalization) for the filter
/// recovered from `moments`.
pub fn full_residual(params: &DesignParams, mats: &MomentMatrices, moments: &[Rational]) -> Result<Rational> {
    let h = mats.coefficients(moments)?;
    let kmax = 2 * params.m.max(params.l + 1);
    let powers: Vec<Vec<BigInt>> = (0..h.len())
        .map(|x| {
            let mut v = Vec::with_capacity(kmax + 1);
            let mut acc = BigInt::one();
            for _ in 0..=kmax {
                v.push(acc.clone());
                acc *= x;
            }
            v
        })
        .collect();
    let mm: Vec<Rational> = (0..=kmax)
        .map(|k| h.iter().enumerate().map(|(x, hx)| hx * Rational::from_integer(powers[x][k].clone())).sum())
        .collect();
    let mut worst = Rational::zero();
    let mut note = |r: Rational| {
        let r = r.abs();
        if r > worst {
            worst = r;
        }
    };
    note(&mm[0] - Rational::one());
    for (k, m) in moments.iter().enumerate() {
        note(&mm[k] - m);
    }
    let mut point = mm.clone();
    for i in 1..=params.m {
        let q = magnitude_quadric(i);
        point.truncate(2 * i + 1);
        note(q.eval(&point));
        point = mm.clone();
    }
    for j in 1..=params.l {
        let q = group_delay_quadric(j);
        point.truncate(2 * j + 2);
        note(q.eval(&point));
        point = mm.clone();
    }
    for j in 0..params.k {
        let s: Rational = h
            .iter()
            .enumerate()
            .map(|(x, hx)| {
                let v = hx * Rational::from_integer(powers[x][j].clone());
                if x % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        note(s);
    }
    Ok(worst)
}

/// Recover the moments at a simple real root of the squarefree polynomial
/// `f`, doubling the working precision until the full-system residual is at
/// most `2^(16 - precision_bits)`.
pub fn back_substitute(
    params: &DesignParams,
    sys: Option<&ReducedSystem>,
    mats: &MomentMatrices,
    dixon: Option<&DixonDecomposition>,
    f: &IntPoly,
    root: &RootInterval,
    precision_bits: u32,
) -> Result<BackSubstitution> {
    let bound = pow2(16 - i64::from(precision_bits));
    let top = params.top_moment();
    let first = params.first_free_moment();
    let mut work = precision_bits.max(64);
    let last_residual = loop {
        let (lo, hi) = refine_simple_root(f, &root.lo, &root.hi, work + GUARD_BITS);
        let interval = RootInterval { lo, hi, multiplicity: root.multiplicity };
        let t = interval.midpoint();
        let free = match sys {
            // far below the accuracy of t itself, and keeps denominators small
            Some(s) => free_moments(s, dixon, &t, 2 * u64::from(work) + u64::from(GUARD_BITS))?,
            None => Vec::new(),
        };
        let mut moments = Vec::with_capacity(top + 1);
        let mut pw = Rational::one();
        for k in 0..=top {
            if k < first {
                moments.push(pw.clone());
                pw *= &t;
            } else {
                moments.push(free[k - first].clone());
            }
        }
        let residual = full_residual(params, mats, &moments)?;
        if residual <= bound {
            return Ok(BackSubstitution { t, interval, moments, residual, working_bits: work });
        }
        if work >= MAX_WORKING_BITS {
            break residual;
        }
        work = (work * 2).min(MAX_WORKING_BITS);
    };
    Err(Error::SpuriousRoot(format!(
        "residual {} above 2^{} after {} working bits",
        crate::exactalg::rational::to_f64(&last_residual),
        16 - i64::from(precision_bits),
        MAX_WORKING_BITS
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn affine_line() {
        // x + y = 2 in two unknowns
        let (x0, basis) = affine_solution(&[vec![int(1), int(1)]], &[int(2)], 2).unwrap();
        assert_eq!(x0, vec![int(2), int(0)]);
        assert_eq!(basis, vec![vec![int(-1), int(1)]]);
        assert!(affine_solution(&[vec![int(0), int(0)]], &[int(1)], 2).is_none());
    }

    #[test]
    fn pair_of_quadrics() {
        // (s-3)(s+1) and (s-3)(s-5) share s = 3
        let p = [int(1), int(-2), int(-3)];
        let q = [int(1), int(-8), int(15)];
        assert_eq!(line_parameter(&[p, q]).unwrap(), int(3));
    }
}
