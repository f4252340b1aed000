//! Buchberger's algorithm over `Z/p` for small dense-ish systems, used only
//! to decide whether a specialized polynomial system has a common zero.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::modp::{inv, mulmod, reduce_rational, PRIMES};
use super::rational::Rational;

pub const DEFAULT_PRIMES: [u64; 2] = PRIMES;

type Mono = Vec<u16>;

#[derive(Clone, Debug)]
struct Poly {
    /// Terms in decreasing grevlex order.
    terms: Vec<(Mono, u64)>,
}

fn grevlex(a: &Mono, b: &Mono) -> Ordering {
    let da: u32 = a.iter().map(|&x| u32::from(x)).sum();
    let db: u32 = b.iter().map(|&x| u32::from(x)).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Poly {
    fn from_map(map: BTreeMap<Mono, u64>) -> Poly {
        let mut terms: Vec<(Mono, u64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        Poly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn make_monic(&mut self, p: u64) {
        let c = inv(self.terms[0].1, p);
        for t in self.terms.iter_mut() {
            t.1 = mulmod(t.1, c, p);
        }
    }

    /// `self - c * x^shift * other`
    fn sub_scaled(&self, other: &Poly, c: u64, shift: &Mono, p: u64) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Mono, u64)> = other
            .terms
            .iter()
            .map(|(m, v)| (m.iter().zip(shift).map(|(a, b)| a + b).collect(), mulmod(*v, c, p)))
            .collect();
        while i < self.terms.len() || j < shifted.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == shifted.len() {
                Ordering::Greater
            } else {
                grevlex(&self.terms[i].0, &shifted[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].0.clone(), p - shifted[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = (self.terms[i].1 + p - shifted[j].1) % p;
                    if v != 0 {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `f` by the monic polynomials in `basis`.
fn normal_form(mut f: Poly, basis: &[Poly], p: u64) -> Poly {
    let mut done: Vec<(Mono, u64)> = Vec::new();
    while !f.is_zero() {
        let (m, c) = f.terms[0].clone();
        match basis.iter().find(|g| divides(g.lm(), &m)) {
            Some(g) => f = f.sub_scaled(g, c, &diff(&m, g.lm()), p),
            None => {
                done.push((m, c));
                f.terms.remove(0);
            }
        }
    }
    Poly { terms: done }
}

/// Outcome of a bounded Groebner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    /// The ideal contains 1: no common zero over the algebraic closure.
    Inconsistent,
    /// The reduced basis is not `{1}`.
    Consistent,
    /// Step budget exhausted or a coefficient denominator vanished mod `p`.
    Unknown,
}

/// Decide whether polynomials with rational coefficients (given as maps from
/// exponent vectors to coefficients) have a common zero, working mod `p`.
/// Inconsistency mod `p` for a prime not dividing any denominator implies
/// inconsistency over `Q` unless `p` divides the cofactors of the
/// certificate `1 = sum g_i f_i`, which callers guard against by using
/// several large primes.
pub fn consistency_mod_p(polys: &[BTreeMap<Vec<u32>, Rational>], p: u64, max_pairs: usize) -> Consistency {
    let mut input = Vec::new();
    for f in polys {
        let mut map = BTreeMap::new();
        for (e, c) in f {
            let Some(v) = reduce_rational(c, p) else {
                return Consistency::Unknown;
            };
            let m: Mono = e.iter().map(|&x| x as u16).collect();
            map.insert(m, v);
        }
        let poly = Poly::from_map(map);
        if !poly.is_zero() {
            input.push(poly);
        }
    }
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |mut g: Poly, basis: &mut Vec<Poly>, pairs: &mut Vec<(usize, usize)>| -> bool {
        g.make_monic(p);
        if g.lm().iter().all(|&x| x == 0) {
            return true;
        }
        let k = basis.len();
        for i in 0..k {
            pairs.push((i, k));
        }
        basis.push(g);
        false
    };
    for f in input {
        let f = normal_form(f, &basis, p);
        if f.is_zero() {
            continue;
        }
        if add(f, &mut basis, &mut pairs) {
            return Consistency::Inconsistent;
        }
    }
    let mut steps = 0;
    while !pairs.is_empty() {
        steps += 1;
        if steps > max_pairs {
            return Consistency::Unknown;
        }
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                grevlex(&lcm(basis[a.0].lm(), basis[a.1].lm()), &lcm(basis[b.0].lm(), basis[b.1].lm()))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let (gi, gj) = (&basis[i], &basis[j]);
        let l = lcm(gi.lm(), gj.lm());
        // coprime leading monomials reduce to zero
        if l.iter().zip(gi.lm()).zip(gj.lm()).all(|((a, b), c)| *a == b + c) {
            continue;
        }
        // chain criterion
        if (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        }) {
            continue;
        }
        let s = Poly { terms: Vec::new() }.sub_scaled(gi, p - 1, &diff(&l, gi.lm()), p).sub_scaled(
            gj,
            1,
            &diff(&l, gj.lm()),
            p,
        );
        let r = normal_form(s, &basis, p);
        if r.is_zero() {
            continue;
        }
        if add(r, &mut basis, &mut pairs) {
            return Consistency::Inconsistent;
        }
    }
    Consistency::Consistent
}

/// Inconsistent only if every prime in `primes` says so; consistent if any
/// prime finds a proper ideal.
pub fn has_no_common_zero(polys: &[BTreeMap<Vec<u32>, Rational>], primes: &[u64], max_pairs: usize) -> Consistency {
    let mut verdict = Consistency::Inconsistent;
    for &p in primes {
        match consistency_mod_p(polys, p, max_pairs) {
            Consistency::Consistent => return Consistency::Consistent,
            Consistency::Unknown => verdict = Consistency::Unknown,
            Consistency::Inconsistent => {}
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn poly(terms: &[(&[u32], i64)]) -> BTreeMap<Vec<u32>, Rational> {
        terms.iter().map(|(e, c)| (e.to_vec(), int(*c))).collect()
    }

    #[test]
    fn line_and_circle() {
        // x^2 + y^2 - 1, x - y: consistent
        let f = poly(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
        let g = poly(&[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(has_no_common_zero(&[f.clone(), g], &DEFAULT_PRIMES, 1000), Consistency::Consistent);
        // x^2 + y^2 - 1, x, y: inconsistent
        let x = poly(&[(&[1, 0], 1)]);
        let y = poly(&[(&[0, 1], 1)]);
        assert_eq!(has_no_common_zero(&[f, x, y], &DEFAULT_PRIMES, 1000), Consistency::Inconsistent);
    }

    #[test]
    fn hidden_inconsistency() {
        // xy - 1, x^2 - y, y^3 - 2: x = y^2... x y = y^3 = 1 vs 2
        let f = poly(&[(&[1, 1], 1), (&[0, 0], -1)]);
        let g = poly(&[(&[2, 0], 1), (&[0, 1], -1)]);
        let h = poly(&[(&[0, 3], 1), (&[0, 0], -2)]);
        assert_eq!(has_no_common_zero(&[f, g, h], &DEFAULT_PRIMES, 1000), Consistency::Inconsistent);
    }
}
