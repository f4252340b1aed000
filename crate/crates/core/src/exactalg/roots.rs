//! Real root isolation with Sturm sequences and certified refinement.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::rational::{dyadic, pow2, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Isolating interval `[lo, hi]` for one real root. `lo == hi` marks an
/// exactly located rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sturm chain of a squarefree integer polynomial.
///
/// The chain is computed as a subresultant PRS (exact divisions only, no
/// content gcds); `signs[k]` records the sign that turns the k-th element
/// into a positive multiple of the classical negated-remainder sequence.
pub struct SturmSequence {
    polys: Vec<IntPoly>,
    signs: Vec<i8>,
}

impl SturmSequence {
    pub fn new(f: &IntPoly) -> Self {
        let mut polys = vec![f.clone(), f.derivative()];
        let mut signs: Vec<i8> = vec![1, 1];
        if polys[1].is_zero() {
            polys.pop();
            signs.pop();
            return SturmSequence { polys, signs };
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let n = polys.len();
            let a = &polys[n - 2];
            let b = &polys[n - 1];
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let beta = &g * num_traits::pow(h.clone(), delta);
            let next = r.div_scalar_exact(&beta);
            let lcb = b.lc().unwrap();
            let lc_sign: i8 = if lcb.is_negative() && (delta + 1) % 2 == 1 { -1 } else { 1 };
            let beta_sign: i8 = if beta.is_negative() { -1 } else { 1 };
            let eps = -signs[n - 2] * beta_sign * lc_sign;
            // subresultant bookkeeping for the next step
            g = lcb.clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                d => num_traits::pow(g.clone(), d) / num_traits::pow(h, d - 1),
            };
            let stop = next.degree() == Some(0);
            polys.push(next);
            signs.push(eps);
            if stop {
                break;
            }
        }
        SturmSequence { polys, signs }
    }

    fn variations(&self, signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for s in signs {
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn fix(sign: Sign, eps: i8) -> Sign {
        if eps < 0 {
            -sign
        } else {
            sign
        }
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        self.variations(self.polys.iter().zip(&self.signs).map(|(p, &e)| Self::fix(p.sign_at(x), e)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        self.variations(self.polys.iter().zip(&self.signs).map(|(p, &e)| Self::fix(p.sign_at_infinity(positive), e)))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// Power of two strictly above every root modulus (Cauchy bound).
fn root_bound(f: &IntPoly) -> Rational {
    let lc = f.lc().unwrap().abs();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let k = max.bits() as i64 - lc.bits() as i64 + 2;
    pow2(k.max(1))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("root count of the zero polynomial".into()));
    }
    let f = p.squarefree_part()?;
    if f.is_constant() {
        return Ok(0);
    }
    Ok(SturmSequence::new(&f.to_int_poly().1).count_all())
}

/// Isolate the real roots of a squarefree integer polynomial. Intervals
/// have non-root endpoints (or are exact points) and are ordered.
fn isolate_squarefree(f: &IntPoly) -> Vec<RootInterval> {
    let sturm = SturmSequence::new(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b.clone())];
    let two = Rational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo, hi, multiplicity: 1 });
            continue;
        }
        let mid = (&lo + &hi) / &two;
        if f.sign_at(&mid) != Sign::NoSign {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
            continue;
        }
        // exact root at the split point: fence it off
        let mut eta = (&hi - &lo) / Rational::from_integer(BigInt::from(4));
        loop {
            let a = &mid - &eta;
            let c = &mid + &eta;
            if f.sign_at(&a) != Sign::NoSign && f.sign_at(&c) != Sign::NoSign && sturm.count(&a, &c) == 1 {
                out.push(RootInterval { lo: mid.clone(), hi: mid.clone(), multiplicity: 1 });
                stack.push((lo, a));
                stack.push((c, hi));
                break;
            }
            eta /= &two;
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Shrink an isolating interval of a simple root (sign change at the
/// endpoints) to width at most `2^-bits`.
pub fn refine_simple_root(f: &IntPoly, lo: &Rational, hi: &Rational, bits: u32) -> (Rational, Rational) {
    if lo == hi {
        return (lo.clone(), hi.clone());
    }
    let target = pow2(-(bits as i64));
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let s_lo = f.sign_at(&lo);
    debug_assert!(s_lo != Sign::NoSign && f.sign_at(&hi) == -s_lo);
    let two = Rational::from_integer(BigInt::from(2));
    // cheap bisection first; Newton once the bracket is narrow
    let newton_after = pow2(-40);
    let mut tried_newton = false;
    while &hi - &lo > target {
        if !tried_newton && &hi - &lo <= newton_after && bits > 60 {
            tried_newton = true;
            if let Some((a, b)) = newton_certify(f, &lo, &hi, s_lo, bits) {
                return (a, b);
            }
        }
        let mid = (&lo + &hi) / &two;
        let s = f.sign_at(&mid);
        if s == Sign::NoSign {
            return (mid.clone(), mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

// Newton iteration in fixed point with 2^-w resolution, followed by an
// exact sign check on a bracket of width 2^-bits around the result.
fn newton_certify(f: &IntPoly, lo: &Rational, hi: &Rational, s_lo: Sign, bits: u32) -> Option<(Rational, Rational)> {
    let fp = f.derivative();
    let max_bits = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let deg = f.degree().unwrap_or(0) as u64;
    let mag = (hi.abs().max(lo.abs()).to_integer().bits() + 1) * deg;
    let mut w = bits as u64 + 64 + max_bits + mag;
    for _attempt in 0..3 {
        let scale = BigInt::one() << w;
        let mid = (lo + hi) / Rational::from_integer(BigInt::from(2));
        let mut x = (mid * Rational::from_integer(scale.clone())).round().to_integer();
        let lo_fixed = (lo * Rational::from_integer(scale.clone())).floor().to_integer();
        let hi_fixed = (hi * Rational::from_integer(scale.clone())).ceil().to_integer();
        let mut ok = false;
        for _ in 0..200 {
            let fv = eval_fixed(f, &x, w);
            let dv = eval_fixed(&fp, &x, w);
            if dv.is_zero() {
                break;
            }
            let step = (fv << w) / &dv;
            x -= &step;
            if x < lo_fixed || x > hi_fixed {
                break;
            }
            if step.abs() <= BigInt::one() {
                ok = true;
                break;
            }
        }
        if ok {
            let half = bits as u64 + 1;
            let center = dyadic(x.clone(), w);
            let r = pow2(-(half as i64));
            let a = (&center - &r).max(lo.clone());
            let b = (&center + &r).min(hi.clone());
            let sa = f.sign_at(&a);
            let sb = f.sign_at(&b);
            if sa == Sign::NoSign {
                return Some((a.clone(), a));
            }
            if sb == Sign::NoSign {
                return Some((b.clone(), b));
            }
            if sa == s_lo && sb == -s_lo {
                return Some((a, b));
            }
        }
        w *= 2;
    }
    None
}

// f(x) * 2^w for x = x_fixed / 2^w, truncated.
fn eval_fixed(f: &IntPoly, x: &BigInt, w: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.coeffs().iter().rev() {
        acc = ((acc * x) >> w) + (c << w);
    }
    acc
}

/// All real roots of `p` as disjoint intervals of width at most
/// `2^-precision_bits`, with multiplicities.
pub fn sturm_real_roots(p: &UniPoly, precision_bits: u32) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("real roots of the zero polynomial".into()));
    }
    let mut found: Vec<(RootInterval, IntPoly)> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition()? {
        let f = factor.to_int_poly().1;
        for iv in isolate_squarefree(&f) {
            let (lo, hi) = refine_simple_root(&f, &iv.lo, &iv.hi, precision_bits);
            found.push((RootInterval { lo, hi, multiplicity: mult }, f.clone()));
        }
    }
    found.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    // roots of different squarefree factors are distinct; shrink until the
    // brackets separate
    let mut bits = precision_bits;
    loop {
        let clash = (1..found.len()).find(|&i| found[i].0.lo <= found[i - 1].0.hi);
        let Some(i) = clash else { break };
        bits += 4;
        for k in [i - 1, i] {
            let (iv, f) = &found[k];
            let (lo, hi) = refine_simple_root(f, &iv.lo, &iv.hi, bits);
            found[k].0.lo = lo;
            found[k].0.hi = hi;
        }
        found.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    }
    Ok(found.into_iter().map(|(iv, _)| iv).collect())
}
