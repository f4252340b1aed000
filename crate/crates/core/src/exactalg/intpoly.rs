//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse behind the rational [`UniPoly`](super::UniPoly):
//! determinants, gcds and Sturm sequences run here after clearing
//! denominators, which avoids a rational normalization per coefficient op.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Exact quotient over Z, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        let db = b.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let lb = b.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] -= &qk * bj;
                }
            }
            q[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut e = da - db + 1;
        let mut deg = da;
        loop {
            while deg > 0 && r[deg].is_zero() {
                deg -= 1;
            }
            if deg < db || (deg == 0 && r[0].is_zero()) {
                break;
            }
            let lr = r[deg].clone();
            for c in r.iter_mut().take(deg + 1) {
                *c *= &lb;
            }
            let off = deg - db;
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    r[off + j] -= &lr * bj;
                }
            }
            e -= 1;
            if deg == 0 {
                break;
            }
        }
        let mut out = IntPoly::new(r);
        if e > 0 {
            out = out.scale(&num_traits::pow(lb, e));
        }
        out
    }

    /// Primitive gcd with positive leading coefficient. Tries the
    /// evaluation heuristic first and falls back to the subresultant PRS.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let a = self.primitive();
        let b = other.primitive();
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return IntPoly::constant(BigInt::one());
        }
        if let Some(g) = gcd_heuristic(&a, &b) {
            return g;
        }
        a.gcd_subresultant(&b)
    }

    /// Subresultant PRS gcd, primitive with positive leading coefficient.
    pub fn gcd_subresultant(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) =
            if self.degree() >= other.degree() { (self.clone(), other.clone()) } else { (other.clone(), self.clone()) };
        if b.is_zero() {
            return a.primitive();
        }
        a = a.primitive();
        b = b.primitive();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                return IntPoly::constant(BigInt::one());
            }
            let div = &g * num_traits::pow(h.clone(), delta);
            a = b;
            b = r.div_scalar_exact(&div);
            g = a.lc().unwrap().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                d => num_traits::pow(g.clone(), d) / num_traits::pow(h, d - 1),
            };
        }
        b.primitive()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at a rational point, using integer Horner only.
    pub fn sign_at(&self, x: &Rational) -> Sign {
        let Some(d) = self.degree() else {
            return Sign::NoSign;
        };
        let p = x.numer();
        let q = x.denom();
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for i in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[i] * &qpow;
        }
        acc.sign()
    }

    /// Sign as x -> +infinity (`positive`) or -infinity.
    pub fn sign_at_infinity(&self, positive: bool) -> Sign {
        let Some(d) = self.degree() else {
            return Sign::NoSign;
        };
        let s = self.coeffs[d].sign();
        if positive || d % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

// Evaluate at a large integer, take the integer gcd and read the candidate
// back off in balanced base-xi digits; accepted only if it divides both.
fn gcd_heuristic(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let bound = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        let va = a.eval_int(&xi);
        let vb = b.eval_int(&xi);
        let mut gamma = va.gcd(&vb);
        let mut digits = Vec::new();
        let half = &xi >> 1;
        while !gamma.is_zero() {
            let mut c = gamma.mod_floor(&xi);
            if c > half {
                c -= &xi;
            }
            gamma = (gamma - &c) / &xi;
            digits.push(c);
        }
        let g = IntPoly::new(digits).primitive();
        if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
            return Some(g);
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

fn add_vecs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(add_vecs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(add_vecs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

const KARATSUBA_CUTOFF: usize = 24;

fn mul_school(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn mul_karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        return mul_school(a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let z0 = mul_karatsuba(a0, b0);
    let z2 = mul_karatsuba(a1, b1);
    let sa = add_vecs(a0, a1, false);
    let sb = add_vecs(b0, b1, false);
    let z1 = mul_karatsuba(&sa, &sb);
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z1.iter().enumerate() {
        out[i + half] += c;
    }
    for (i, c) in z0.iter().enumerate() {
        out[i + half] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        out[i + half] -= c;
        out[i + 2 * half] += c;
    }
    out
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(mul_karatsuba(&self.coeffs, &rhs.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn exact_division() {
        let a = &p(&[-1, 1]) * &p(&[1, 1]);
        assert_eq!(a, p(&[-1, 0, 1]));
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[3])), None);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..70).map(|i| BigInt::from((i * 37 % 23) - 11)).collect();
        let b: Vec<BigInt> = (0..55).map(|i| BigInt::from((i * 13 % 19) - 9)).collect();
        assert_eq!(mul_karatsuba(&a, &b), mul_school(&a, &b));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[-7, 2]);
        let a = &(&f * &f) * &p(&[-9, 2]);
        let b = &f * &p(&[1, 0, 3]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn signs() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.sign_at(&Rational::new(3.into(), 2.into())), Sign::Plus);
        assert_eq!(f.sign_at(&Rational::new(1.into(), 1.into())), Sign::Minus);
        assert_eq!(f.sign_at_infinity(false), Sign::Plus);
        assert_eq!(p(&[0, 1]).sign_at_infinity(false), Sign::Minus);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[3, -1, 4, 1, 5]);
        let b = p(&[2, 0, 3]);
        let r = a.pseudo_rem(&b);
        // 3^3 * a - r must be divisible by b
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        assert!(lhs.div_exact(&b).is_some());
        assert!(r.degree().unwrap() < 2);
    }
}
