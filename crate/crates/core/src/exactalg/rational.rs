//! Scalar field helpers.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps every value
//! reduced with a positive denominator. The helpers here cover the handful of
//! conversions and roundings the rest of the crate needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `n / 2^shift` as a rational.
pub fn dyadic(n: BigInt, shift: u64) -> Rational {
    Rational::new(n, BigInt::one() << shift)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Number of bits needed to represent `|n|`; 0 for zero.
pub fn bit_len(n: &BigInt) -> u64 {
    n.bits()
}

/// Floor of log2 |x| for nonzero x, as a signed exponent.
pub fn log2_floor(x: &Rational) -> i64 {
    debug_assert!(!x.is_zero());
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let mut e = nb - db;
    // adjust so that 2^e <= |x| < 2^(e+1)
    let ax = x.abs();
    if ax < pow2(e) {
        e -= 1;
    } else if ax >= pow2(e + 1) {
        e += 1;
    }
    e
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as u64))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as u64))
    }
}

/// Round to the nearest dyadic rational carrying `bits` significant bits.
pub fn round_sig(x: &Rational, bits: u32) -> Rational {
    if x.is_zero() {
        return x.clone();
    }
    let e = log2_floor(x);
    // want an integer mantissa of `bits` bits: scale = 2^(bits-1-e)
    let shift = bits as i64 - 1 - e;
    let scaled = if shift >= 0 {
        x * Rational::from_integer(BigInt::one() << (shift as u64))
    } else {
        x / Rational::from_integer(BigInt::one() << ((-shift) as u64))
    };
    let m = round_half_away(&scaled);
    if shift >= 0 {
        Rational::new(m, BigInt::one() << (shift as u64))
    } else {
        Rational::from_integer(m << ((-shift) as u64))
    }
}

/// Round to the nearest multiple of `2^-frac_bits`.
pub fn round_abs(x: &Rational, frac_bits: u64) -> Rational {
    let scaled = x * Rational::from_integer(BigInt::one() << frac_bits);
    Rational::new(round_half_away(&scaled), BigInt::one() << frac_bits)
}

fn round_half_away(x: &Rational) -> BigInt {
    let (q, r) = x.numer().div_mod_floor(x.denom());
    // r in [0, denom)
    let twice = r << 1;
    if &twice >= x.denom() {
        q + 1
    } else {
        q
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // large operands: take a 64-bit mantissa and scale by 2^e
    let e = log2_floor(x);
    let shift = 63 - e;
    let scaled = if shift >= 0 { x * pow2(shift) } else { x / pow2(-shift) };
    let m = round_half_away(&scaled).to_f64().unwrap_or(0.0);
    let e = (e - 63).clamp(-2200, 2200) as i32;
    m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
}

/// Decimal rendering with `digits` significant digits (scientific notation
/// when the magnitude is far from 1).
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // decimal exponent estimate
    let mut e10 = ((log2_floor(&ax) as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigInt::from(10);
    let p10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    // normalize so that 10^e10 <= ax < 10^(e10+1)
    while ax < p10(e10) {
        e10 -= 1;
    }
    while ax >= p10(e10 + 1) {
        e10 += 1;
    }
    let scale = digits as i64 - 1 - e10;
    let mut mant = round_half_away(&(&ax * p10(scale)));
    if mant >= num_traits::pow(ten.clone(), digits) {
        mant /= &ten;
        e10 += 1;
    }
    let s = mant.to_str_radix(10);
    let sign = if neg { "-" } else { "" };
    if (-5..=20).contains(&e10) {
        let point = e10 + 1; // digits before the decimal point
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        };
        format!("{sign}{body}")
    } else {
        format!("{sign}{}.{}e{}", &s[..1], &s[1..], e10)
    }
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn sign_of(x: &Rational) -> Sign {
    x.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(4, 7), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn rounding_keeps_requested_bits() {
        let x = rat(1, 3);
        let r = round_sig(&x, 20);
        assert!((&r - &x).abs() <= pow2(-21));
        assert!(r.denom().bits() <= 22);
        assert_eq!(round_abs(&rat(7, 4), 1), rat(2, 1));
    }

    #[test]
    fn log2_bounds() {
        for (n, d) in [(1, 1), (3, 1), (1, 3), (1023, 1024), (-17, 2)] {
            let x = rat(n, d);
            let e = log2_floor(&x);
            assert!(pow2(e) <= x.abs() && x.abs() < pow2(e + 1), "{n}/{d}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 8), 3), "0.125");
        assert_eq!(to_decimal(&rat(-7, 2), 4), "-3.500");
        assert_eq!(to_decimal(&int(1), 3), "1.00");
        assert_eq!(to_decimal(&rat(2, 3), 5), "0.66667");
        assert!(to_decimal(&pow2(-100), 3).contains("e-31"));
    }
}
