use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::params::DesignParams;
use crate::error::{Error, Result};
use crate::exactalg::rational::{binomial, Rational};

/// Constant matrices linking coefficients and moments.
///
/// With `h = T p` (`H(z) = (1 + z^-1)^K P(z)`) and `m = Q h`, the filter is
/// recovered from its first `L+M+1` moments as `h = T (QT)^-1 m`, and every
/// higher moment is a fixed linear form in those.
#[derive(Clone, Debug)]
pub struct MomentMatrices {
    pub params: DesignParams,
    /// `N x (N-K)`, column `j` is the binomial vector `C(K, .)` shifted down by `j`.
    pub t: Vec<Vec<Rational>>,
    /// `(L+M+1) x N`, row `i` holds `n^i` for `n = 0..N-1` (with `0^0 = 1`).
    pub q: Vec<Vec<Rational>>,
    pub qt_inv: Vec<Vec<Rational>>,
    /// `T (QT)^-1`, maps moments `m_0..m_{L+M}` to coefficients `h[0..N-1]`.
    pub recovery: Vec<Vec<Rational>>,
    /// For each `k > L+M`, the coefficients of `m_k` on `m_0..m_{L+M}`.
    pub closure_rows: BTreeMap<usize, Vec<Rational>>,
}

fn int_pow(n: usize, k: usize) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(n), k))
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Exact Gauss-Jordan inverse.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(p, k);
        let inv = Rational::one() / &m[k][k];
        for x in m[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..2 * n {
                if !m[k][j].is_zero() {
                    let d = &f * &m[k][j];
                    m[i][j] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Build `T`, `Q`, `(QT)^-1` and the closure rows for `m_k`,
/// `L+M < k <= max(2M, 2L+2)`.
pub fn build_moment_matrices(p: DesignParams) -> Result<MomentMatrices> {
    let n = p.n();
    let cols = n - p.k;
    let rows_q = p.top_moment() + 1;
    let t: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i >= j && i - j <= p.k {
                        Rational::from_integer(binomial(p.k as u64, (i - j) as u64))
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let q: Vec<Vec<Rational>> = (0..rows_q).map(|i| (0..n).map(|x| int_pow(x, i)).collect()).collect();
    let qt = mat_mul(&q, &t);
    let qt_inv = invert(&qt).ok_or_else(|| Error::Internal(format!("QT singular for {p}")))?;
    let recovery = mat_mul(&t, &qt_inv);
    let kmax = (2 * p.m).max(2 * p.l + 2);
    let mut closure_rows = BTreeMap::new();
    for k in (p.top_moment() + 1)..=kmax {
        let pow_row: Vec<Vec<Rational>> = vec![(0..n).map(|x| int_pow(x, k)).collect()];
        let row = mat_mul(&pow_row, &recovery).pop().unwrap();
        closure_rows.insert(k, row);
    }
    Ok(MomentMatrices { params: p, t, q, qt_inv, recovery, closure_rows })
}

impl MomentMatrices {
    /// `h = T (QT)^-1 m` for moments `m_0..m_{L+M}`.
    pub fn coefficients(&self, moments: &[Rational]) -> Result<Vec<Rational>> {
        if moments.len() != self.params.top_moment() + 1 {
            return Err(Error::Shape(format!(
                "expected {} moments, got {}",
                self.params.top_moment() + 1,
                moments.len()
            )));
        }
        Ok(self.recovery.iter().map(|row| row.iter().zip(moments).map(|(a, b)| a * b).sum()).collect())
    }

    /// All moments `m_0..m_kmax` from the independent ones.
    pub fn extend_moments(&self, moments: &[Rational], kmax: usize) -> Vec<Rational> {
        let mut out = moments.to_vec();
        for k in out.len()..=kmax {
            let v = match self.closure_rows.get(&k) {
                Some(row) => row.iter().zip(moments).map(|(a, b)| a * b).sum(),
                None => {
                    // beyond the cached rows: sum n^k h[n]
                    let h = self.coefficients(moments).expect("moment count");
                    h.iter().enumerate().map(|(x, hx)| int_pow(x, k) * hx).sum()
                }
            };
            out.push(v);
        }
        out
    }
}
