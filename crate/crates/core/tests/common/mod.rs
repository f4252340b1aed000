//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};

use sbflat::exactalg::rational::{int, pow2};
use sbflat::exactalg::Rational;
use sbflat::sbsystem::{DesignParams, ReducedSystem};
use sbflat::solvefilter::FilterSolution;

pub fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

/// Sylvester resultant of `f` and `g` (ascending coefficients, formal
/// degrees `len - 1`).
pub fn sylvester(f: &[Rational], g: &[Rational]) -> Rational {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let n = df + dg;
    if n == 0 {
        return Rational::one();
    }
    let mut a = vec![vec![Rational::zero(); n]; n];
    for r in 0..dg {
        for (i, c) in f.iter().rev().enumerate() {
            a[r][r + i] = c.clone();
        }
    }
    for r in 0..df {
        for (i, c) in g.iter().rev().enumerate() {
            a[dg + r][r + i] = c.clone();
        }
    }
    det(a)
}

/// Coefficients of the polynomial through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for lvl in 1..n {
        for i in (lvl..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - lvl]);
        }
    }
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for k in 0..n - 1 {
            next[k + 1] += &coeffs[k];
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Equation `e` at fixed `t` as a coefficient list in `y` at fixed `x`,
/// where the moment variables are `(x, y)`.
pub fn in_y(sys: &ReducedSystem, e: usize, t: &Rational, x: &Rational, dy: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dy + 1];
    for (mono, c) in sys.coefficient_form(e) {
        let mut v = c.eval(t);
        for _ in 0..mono[0] {
            v *= x;
        }
        out[mono[1] as usize] += v;
    }
    out
}

/// `Res_x(Res_y(e0, e1), Res_y(e0, e2))` at `t`, with fixed formal degrees.
pub fn iterated_resultant(sys: &ReducedSystem, t: &Rational, dx: usize) -> Rational {
    let xs: Vec<Rational> = (0..=dx as i64).map(int).collect();
    let inner = |e: usize| {
        let ys: Vec<Rational> = xs.iter().map(|x| sylvester(&in_y(sys, 0, t, x, 1), &in_y(sys, e, t, x, 1))).collect();
        interpolate(&xs, &ys)
    };
    let (a, b) = (inner(1), inner(2));
    let trim = |mut v: Vec<Rational>, d: usize| {
        assert!(v[d + 1..].iter().all(Zero::is_zero));
        v.truncate(d + 1);
        v
    };
    sylvester(&trim(a, 1), &trim(b, 2))
}

pub fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |a, _| a * x)
}

pub fn max_abs<'a>(xs: impl Iterator<Item = &'a Rational>) -> Rational {
    xs.fold(Rational::zero(), |m, x| if x.abs() > m { x.abs() } else { m })
}

/// `sum_j j^(2i) r_j` over the autocorrelation of `h`; zero for `i = 1..=M`
/// exactly when the squared magnitude is flat to order `2M` at zero.
pub fn magnitude_defects(h: &[Rational], m: usize) -> Vec<Rational> {
    let r: Vec<Rational> = (0..h.len()).map(|j| (0..h.len() - j).map(|n| &h[n] * &h[n + j]).sum()).collect();
    (1..=m).map(|i| r.iter().enumerate().skip(1).map(|(j, rj)| pow(&int(j as i64), 2 * i) * rj).sum()).collect()
}

/// Complex power series over Q, truncated at `len` terms.
#[derive(Clone)]
struct Series {
    re: Vec<Rational>,
    im: Vec<Rational>,
}

impl Series {
    /// `sum_n w_n h_n e^{-i n x}` expanded at `x = 0`.
    fn of(h: &[Rational], weight: impl Fn(usize) -> Rational, len: usize) -> Series {
        let mut re = vec![Rational::zero(); len];
        let mut im = vec![Rational::zero(); len];
        let mut fact = Rational::one();
        for k in 0..len {
            if k > 0 {
                fact *= int(k as i64);
            }
            let c: Rational =
                h.iter().enumerate().map(|(n, hn)| weight(n) * hn * pow(&int(n as i64), k)).sum::<Rational>() / &fact;
            // (-i)^k
            match k % 4 {
                0 => re[k] = c,
                1 => im[k] = -c,
                2 => re[k] = -c,
                _ => im[k] = c,
            }
        }
        Series { re, im }
    }

    /// `self / den`, `den` with a real nonzero constant term.
    fn div(&self, den: &Series) -> Series {
        let len = self.re.len();
        let mut re = vec![Rational::zero(); len];
        let mut im = vec![Rational::zero(); len];
        let d0 = den.re[0].clone();
        assert!(den.im[0].is_zero() && !d0.is_zero());
        for k in 0..len {
            let mut a = self.re[k].clone();
            let mut b = self.im[k].clone();
            for j in 1..=k {
                a -= &den.re[j] * &re[k - j] - &den.im[j] * &im[k - j];
                b -= &den.re[j] * &im[k - j] + &den.im[j] * &re[k - j];
            }
            re[k] = a / &d0;
            im[k] = b / &d0;
        }
        Series { re, im }
    }
}

/// Taylor coefficients of the group delay `Re(sum n h_n e^{-inx} / H)`.
pub fn group_delay_series(h: &[Rational], len: usize) -> Vec<Rational> {
    let num = Series::of(h, |n| int(n as i64), len);
    let den = Series::of(h, |_| Rational::one(), len);
    num.div(&den).re
}

/// `sum (-1)^n n^k h_n`, zero for `k < K` when `(1 + z^-1)^K` divides `H`.
pub fn zero_at_pi(h: &[Rational], k: usize) -> Rational {
    h.iter()
        .enumerate()
        .map(|(n, hn)| {
            let v = pow(&int(n as i64), k) * hn;
            if n % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

pub fn check_flat(p: &DesignParams, s: &FilterSolution) {
    let h = &s.coeffs;
    assert_eq!(h.len(), p.k + p.l + p.m + 1);
    let scale = max_abs(h.iter());
    let tol = pow2(-150);
    let sum: Rational = h.iter().sum();
    assert!((sum - Rational::one()).abs() < tol, "{p}: dc gain");
    for (i, d) in magnitude_defects(h, p.m).iter().enumerate() {
        let size = pow(&int(h.len() as i64), 2 * i + 2) * &scale * &scale;
        assert!(d.abs() < &tol * size, "{p}: magnitude order {}", i + 1);
    }
    let g = group_delay_series(h, 2 * p.l + 2);
    assert!((&g[0] - &s.t).abs() < tol, "{p}: delay");
    for j in 1..=p.l {
        let size = pow(&int(h.len() as i64), 2 * j + 2);
        assert!(g[2 * j].abs() < &tol * size, "{p}: group delay order {j}");
    }
    for k in 0..p.k {
        assert!(zero_at_pi(h, k).is_zero(), "{p}: zero at pi, order {k}");
    }
}
