use crate::error::{Error, Result};
use crate::exactalg::polymatrix::{det_fraction_free, PolyMatrix};
use crate::exactalg::unipoly::UniPoly;

fn trim(p: &[UniPoly]) -> &[UniPoly] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// Sylvester matrix of two polynomials in `x` whose coefficients (listed in
/// ascending powers of `x`) are polynomials in `t`.
pub fn sylvester_matrix(p: &[UniPoly], q: &[UniPoly]) -> Result<PolyMatrix> {
    let p = trim(p);
    let q = trim(q);
    if p.is_empty() || q.is_empty() {
        return Err(Error::DegenerateInput("Sylvester matrix of a zero polynomial".into()));
    }
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    if dp == 0 && dq == 0 {
        return Err(Error::DegenerateInput("both polynomials are constant in x".into()));
    }
    let n = dp + dq;
    let mut m = PolyMatrix::zeros(n, n);
    // rows: dq shifted copies of p, then dp shifted copies of q, leading
    // coefficient first
    for r in 0..dq {
        for (k, c) in p.iter().rev().enumerate() {
            m.set(r, r + k, c.clone());
        }
    }
    for r in 0..dp {
        for (k, c) in q.iter().rev().enumerate() {
            m.set(dq + r, r + k, c.clone());
        }
    }
    Ok(m)
}

/// Resultant with respect to `x` as the Sylvester determinant.
pub fn sylvester_resultant(p: &[UniPoly], q: &[UniPoly]) -> Result<UniPoly> {
    det_fraction_free(&sylvester_matrix(p, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> UniPoly {
        UniPoly::from_i64(v)
    }

    #[test]
    fn linear_pair() {
        // x - t and x - 1
        let r = sylvester_resultant(&[c(&[0, -1]), c(&[1])], &[c(&[-1]), c(&[1])]).unwrap();
        assert!(r == c(&[-1, 1]) || r == c(&[1, -1]));
    }

    #[test]
    fn square_against_linear() {
        // x^2 and x + t
        let r = sylvester_resultant(&[c(&[]), c(&[]), c(&[1])], &[c(&[0, 1]), c(&[1])]).unwrap();
        assert_eq!(r, c(&[0, 0, 1]));
    }

    #[test]
    fn constants_rejected() {
        assert!(matches!(sylvester_resultant(&[c(&[1])], &[c(&[2])]), Err(Error::DegenerateInput(_))));
    }
}
