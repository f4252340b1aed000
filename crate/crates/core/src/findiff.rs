//! Finite-difference operators, bracket polynomials and the determinant
//! identities for the matrices built from them.
//!
//! `Delta^j` is the `j`-th forward difference divided by `j!`, and
//! `D^j_K = 2^-K sum_l C(K,l) Delta^j(shifted by l)`. The bracket
//! `[j, l; K](t)` pairs `D^j_K` against `((i - t)^l)_i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::polymatrix::{det_fraction_free, eliminate_rational, smith_normal_form, PolyMatrix};
use crate::exactalg::rational::{binomial, factorial, Rational};
use crate::exactalg::unipoly::UniPoly;

/// Finitely supported sequence indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffVector {
    pub entries: Vec<Rational>,
}

impl DiffVector {
    /// `Delta^j`: entries `(-1)^(j-i) C(j,i) / j!`, `i = 0..j`.
    pub fn delta(j: usize) -> Self {
        let jf = Rational::from_integer(factorial(j as u64));
        let entries = (0..=j)
            .map(|i| {
                let c = Rational::from_integer(binomial(j as u64, i as u64)) / &jf;
                if (j - i) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        DiffVector { entries }
    }

    /// `D^j_K`, supported on `0..=j+K`.
    pub fn averaged(j: usize, k: usize) -> Self {
        let base = DiffVector::delta(j);
        let mut entries = vec![Rational::zero(); j + k + 1];
        let scale = Rational::new(BigInt::one(), BigInt::one() << k);
        for l in 0..=k {
            let c = Rational::from_integer(binomial(k as u64, l as u64)) * &scale;
            for (i, x) in base.entries.iter().enumerate() {
                entries[i + l] += &c * x;
            }
        }
        DiffVector { entries }
    }
}

/// `[j, l; K](t)` together with its indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketPoly {
    pub j: usize,
    pub l: usize,
    pub k: usize,
    pub poly: UniPoly,
}

/// `[j, l; K] = sum_i D^j_K[i] (i - t)^l`, zero when `j > l`.
pub fn bracket(j: usize, l: usize, k: usize) -> BracketPoly {
    let poly = if j > l {
        UniPoly::zero()
    } else {
        let d = DiffVector::averaged(j, k);
        let mut acc = UniPoly::zero();
        for (i, c) in d.entries.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let base = UniPoly::from_i64(&[i as i64, -1]).pow(l);
            acc = &acc + &base.scale(c);
        }
        acc
    };
    BracketPoly { j, l, k, poly }
}

/// `A(s,m;K)`: entry `(r, c)` is `[2s-1+c, 2s+2r; K]`.
pub fn build_a(s: usize, m: usize, k: usize) -> PolyMatrix {
    assert!(s >= 1 && k >= 1);
    PolyMatrix::from_fn(m + 1, m + 1, |r, c| bracket(2 * s - 1 + c, 2 * s + 2 * r, k).poly)
}

/// `A~(s,m;K)`: entry `(r, c)` is `[2s+c, 2s+2r; K]`.
pub fn build_a_tilde(s: usize, m: usize, k: usize) -> PolyMatrix {
    assert!(s >= 1 && k >= 1);
    PolyMatrix::from_fn(m + 1, m + 1, |r, c| bracket(2 * s + c, 2 * s + 2 * r, k).poly)
}

fn two_t_minus(i: usize) -> UniPoly {
    UniPoly::from_i64(&[-(i as i64), 2])
}

fn product_of_factors(range: std::ops::RangeInclusive<usize>, exponent: impl Fn(usize) -> i64) -> UniPoly {
    let mut acc = UniPoly::one();
    for i in range {
        let e = exponent(i);
        if e > 0 {
            acc = &acc * &two_t_minus(i).pow(e as usize);
        }
    }
    acc
}

/// Closed form of `det A(s,m;K)` up to a constant:
/// `prod_{i} (2t - i)^(floor((m - |c_A - i|)/2) + 1)`, `c_A = 2s-1+m+K`.
pub fn predicted_delta(s: usize, m: usize, k: usize) -> UniPoly {
    let lo = 2 * s - 1 + k;
    let c = (lo + m) as i64;
    product_of_factors(lo..=lo + 2 * m, |i| ((m as i64 - (c - i as i64).abs()).div_euclid(2)) + 1)
}

/// Closed form of `det A~(s,m;K)` up to a constant, `m >= 1`.
pub fn predicted_delta_tilde(s: usize, m: usize, k: usize) -> UniPoly {
    assert!(m >= 1);
    let c = (2 * s + m + k) as i64;
    product_of_factors(2 * s + 1 + k..=2 * s - 1 + k + 2 * m, |i| {
        ((m as i64 - 1 - (c - i as i64).abs()).div_euclid(2)) + 1
    })
}

/// `Some(c)` with `a = c * b` when the two are proportional.
pub fn proportionality(a: &UniPoly, b: &UniPoly) -> Option<Rational> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let c = a.lc() / b.lc();
    (b.scale(&c) == *a).then_some(c)
}

/// Which parts of the difference-bracket identities were checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketIdentityReport {
    pub reflection: bool,
    /// `None` when `j` and `l` have the same parity (no claim).
    pub center_zero: Option<bool>,
    pub boost: bool,
}

/// Reflection `[j,l;K](j+K-t) = (-1)^(j+l) [j,l;K](t)`, the center zero
/// for opposite parity, and the boost
/// `[j,l;K](t-1) = [j,l;K](t) + (j+1) [j+1,l;K](t)`.
pub fn verify_bracket_identities(j: usize, l: usize, k: usize) -> Result<BracketIdentityReport> {
    if j > l {
        return Err(Error::Param(format!("need j <= l, got j={j}, l={l}")));
    }
    let p = bracket(j, l, k).poly;
    let center = Rational::from_integer(BigInt::from(j + k));
    let reflected = p.reflect(&center);
    let want = if (j + l) % 2 == 0 { p.clone() } else { -&p };
    let reflection = reflected == want;
    if !reflection {
        return Err(Error::VerificationFailure(format!("reflection identity fails for [{j},{l};{k}]")));
    }
    let center_zero = if (j + l) % 2 == 1 {
        let half = Rational::new(BigInt::from(j + k), BigInt::from(2));
        let ok = p.eval(&half).is_zero();
        if !ok {
            return Err(Error::VerificationFailure(format!("center value is not a zero of [{j},{l};{k}]")));
        }
        Some(true)
    } else {
        None
    };
    let shifted = p.compose_linear(&-Rational::one(), &Rational::one());
    let next = bracket(j + 1, l, k).poly;
    let rhs = &p + &next.scale(&Rational::from_integer(BigInt::from(j + 1)));
    let boost = shifted == rhs;
    if !boost {
        return Err(Error::VerificationFailure(format!("boost identity fails for [{j},{l};{k}]")));
    }
    Ok(BracketIdentityReport { reflection, center_zero, boost })
}

/// Roots `i/2` of a product of `(2t - i)` factors with multiplicities.
fn half_integer_roots(s: usize, m: usize, k: usize) -> Vec<(usize, usize)> {
    let lo = 2 * s - 1 + k;
    let c = (lo + m) as i64;
    (lo..=lo + 2 * m).map(|i| (i, ((m as i64 - (c - i as i64).abs()).div_euclid(2) + 1) as usize)).collect()
}

/// Outcome of the determinant checks for one `(s, m, K)`.
#[derive(Clone, Debug)]
pub struct DeterminantReport {
    pub s: usize,
    pub m: usize,
    pub k: usize,
    pub delta: UniPoly,
    /// `det A = constant * predicted`
    pub constant: Rational,
    pub smith: Vec<UniPoly>,
}

/// Check `det A(s,m;K)` against the closed form, its reflection symmetry,
/// the Smith form structure, the rank drops at the center values and the
/// `A~` identities.
pub fn verify_determinant_identities(s: usize, m: usize, k: usize) -> Result<DeterminantReport> {
    let tag = format!("(s={s}, m={m}, K={k})");
    let a = build_a(s, m, k);
    let delta = det_fraction_free(&a)?;
    let predicted = predicted_delta(s, m, k);
    let constant = proportionality(&delta, &predicted)
        .ok_or_else(|| Error::VerificationFailure(format!("det A is not proportional to the closed form at {tag}")))?;
    let c_a = Rational::from_integer(BigInt::from(2 * s - 1 + m + k));
    let refl = delta.reflect(&c_a);
    if refl != delta && refl != -&delta {
        return Err(Error::VerificationFailure(format!("det A is not symmetric about c_A at {tag}")));
    }
    // Smith form: entry n-q collects the roots of multiplicity > q
    let smith = smith_normal_form(&a)?;
    let roots = half_integer_roots(s, m, k);
    for q in 0..=m {
        let mut want = UniPoly::one();
        for &(i, mult) in &roots {
            if mult > q {
                want = &want * &two_t_minus(i);
            }
        }
        if smith[m - q] != want.monic() {
            return Err(Error::VerificationFailure(format!(
                "Smith form entry {} differs from the predicted product at {tag}",
                m - q + 1
            )));
        }
    }
    // rank drops at the center values of the columns
    for p in 0..=m {
        for (offset, applies) in [(2 * s - 1 + 2 * p, 2 * p <= m), (2 * s + 2 * p, 2 * p < m)] {
            if !applies {
                continue;
            }
            let t = Rational::new(BigInt::from(offset + k), BigInt::from(2));
            let rank = eliminate_rational(&a.eval(&t), &[]).rank;
            if rank > m - p {
                return Err(Error::VerificationFailure(format!("rank {rank} > {} at t = {t} for {tag}", m - p)));
            }
        }
    }
    if m >= 1 {
        let at = build_a_tilde(s, m, k);
        for c in 1..=m {
            if !at.get(0, c).is_zero() {
                return Err(Error::VerificationFailure(format!("first row of A~ is not sparse at {tag}")));
            }
        }
        let dt = det_fraction_free(&at)?;
        let shifted = det_fraction_free(&build_a(s + 1, m - 1, k))?;
        if dt != shifted {
            return Err(Error::VerificationFailure(format!("det A~ differs from det A(s+1, m-1) at {tag}")));
        }
        if proportionality(&dt, &predicted_delta_tilde(s, m, k)).is_none() {
            return Err(Error::VerificationFailure(format!("det A~ is not proportional to its closed form at {tag}")));
        }
    }
    Ok(DeterminantReport { s, m, k, delta, constant, smith })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn difference_vectors() {
        assert_eq!(DiffVector::delta(2).entries, vec![rat(1, 2), int(-1), rat(1, 2)]);
        let d = DiffVector::averaged(1, 1);
        assert_eq!(d.entries, vec![rat(-1, 2), int(0), rat(1, 2)]);
    }

    #[test]
    fn printed_brackets() {
        assert_eq!(bracket(3, 6, 2).poly, UniPoly::from_i64(&[425, -420, 150, -20]));
        assert_eq!(bracket(6, 8, 2).poly, UniPoly::from_i64(&[476, -224, 28]));
        assert!(bracket(5, 3, 1).poly.is_zero());
    }

    #[test]
    fn small_predictions() {
        assert_eq!(predicted_delta_tilde(2, 1, 3), two_t_minus(8));
        assert_eq!(predicted_delta(3, 1, 2), &(&two_t_minus(7) * &two_t_minus(8)) * &two_t_minus(9));
    }

    #[test]
    fn bracket_identity_checks() {
        let r = verify_bracket_identities(3, 6, 2).unwrap();
        assert!(r.reflection && r.boost && r.center_zero.is_some());
        assert!(verify_bracket_identities(4, 4, 2).unwrap().center_zero.is_none());
        assert!(verify_bracket_identities(5, 3, 1).is_err());
    }

    #[test]
    fn determinant_identities_small() {
        let r = verify_determinant_identities(2, 3, 2).unwrap();
        assert_eq!(r.delta.degree(), Some(10));
        verify_determinant_identities(1, 0, 1).unwrap();
    }
}
