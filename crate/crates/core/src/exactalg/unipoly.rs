use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `t` over the rationals, coefficients in
/// ascending order. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k];
        v.push(c);
        UniPoly::new(v)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    /// `a + b*t`
    pub fn linear(a: Rational, b: Rational) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.lc()))
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(a + b*t)`, expanded.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let inner = UniPoly::linear(a.clone(), b.clone());
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Split into a rational scale and a primitive integer polynomial with
    /// positive leading coefficient: `self = scale * poly`.
    pub fn to_int_poly(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::zero(), IntPoly::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let raw = IntPoly::new(ints);
        let prim = raw.primitive();
        let factor = Rational::new(raw.lc().unwrap().clone(), prim.lc().unwrap().clone());
        (factor / Rational::from_integer(den), prim)
    }

    /// Integer coefficients after multiplying by the lcm of denominators
    /// (no content removal): `self = poly / den`.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (den, IntPoly::new(ints))
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        UniPoly { coeffs: p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect() }
    }

    /// Primitive integer normalization: content 1, positive leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        UniPoly::from_int_poly(&self.to_int_poly().1)
    }

    pub fn div_rem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let db = b.degree().ok_or_else(|| Error::Division("division by the zero polynomial".into()))?;
        let Some(da) = self.degree() else {
            return Ok((UniPoly::zero(), UniPoly::zero()));
        };
        if da < db {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let inv = Rational::one() / b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let qk = top * &inv;
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] -= &qk * bj;
                }
            }
            q[k] = qk;
        }
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Quotient of an exact division; errors when a remainder is left.
    pub fn exact_div(&self, b: &UniPoly) -> Result<UniPoly> {
        if b.is_zero() {
            return Err(Error::Division("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(UniPoly::zero());
        }
        let (sa, pa) = self.to_int_poly();
        let (sb, pb) = b.to_int_poly();
        // primitive over primitive stays integral when exact (Gauss)
        match pa.div_exact(&pb) {
            Some(q) => Ok(UniPoly::from_int_poly(&q).scale(&(sa / sb))),
            None => Err(Error::Division(format!(
                "degree {:?} polynomial not divisible by degree {:?} polynomial",
                self.degree(),
                b.degree()
            ))),
        }
    }

    pub fn divides(&self, a: &UniPoly) -> bool {
        self.exact_div_opt(a).is_some()
    }

    fn exact_div_opt(&self, a: &UniPoly) -> Option<UniPoly> {
        a.exact_div(self).ok()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::DegenerateInput("gcd of two zero polynomials".into()));
        }
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        let (_, a) = self.to_int_poly();
        let (_, b) = other.to_int_poly();
        Ok(UniPoly::from_int_poly(&a.gcd(&b)).monic())
    }

    /// Monic polynomial with the same roots, each of multiplicity one.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::DegenerateInput("squarefree part of zero".into()));
        }
        if self.is_constant() {
            return Ok(UniPoly::one());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime `(f_i, i)` with
    /// `self = lc * prod f_i^i`; trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::DegenerateInput("squarefree decomposition of zero".into()));
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = fp.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d)?;
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// `p((center) - t)`
    pub fn reflect(&self, center: &Rational) -> Self {
        self.compose_linear(center, &-Rational::one())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn zip_add(a: &[Rational], b: &[Rational], negate: bool) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) if negate => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(zip_add(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(zip_add(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (sa, pa) = self.to_int_poly();
        let (sb, pb) = rhs.to_int_poly();
        UniPoly::from_int_poly(&(&pa * &pb)).scale(&(sa * sb))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Named ring operation for [`uni_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

pub fn uni_arith(a: &UniPoly, b: &UniPoly, op: UniOp) -> Result<UniPoly> {
    Ok(match op {
        UniOp::Add => a + b,
        UniOp::Sub => a - b,
        UniOp::Mul => a * b,
        UniOp::ExactDiv => a.exact_div(b)?,
    })
}

pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    a.gcd(b)
}

pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    p.squarefree_part()
}

/// Product of `(b*t - a)` factors, e.g. `linear_product(&[(5, 2)])` is `2t - 5`.
pub fn linear_product(factors: &[(i64, i64)]) -> UniPoly {
    factors.iter().fold(UniPoly::one(), |acc, &(a, b)| &acc * &UniPoly::from_i64(&[-a, b]))
}
