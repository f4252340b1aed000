use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over the rationals.
///
/// Exponent vectors follow the order of `vars`. Two polynomials combined by
/// arithmetic must share the same variable list (see [`MultiPoly::with_vars`]).
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[String], name: &str) -> Result<Self> {
        let idx =
            vars.iter().position(|v| v == name).ok_or_else(|| Error::Shape(format!("unknown variable {name}")))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = MultiPoly::zero(vars);
        p.add_term(e, Rational::one());
        Ok(p)
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Total degree counted over the variables selected by `mask`.
    pub fn degree_in(&self, mask: &[bool]) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().zip(mask).filter(|(_, &m)| m).map(|(x, _)| *x).sum()).max()
    }

    /// Re-express over a superset (or reordering) of the variables.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Shape(format!("variable {v} missing from target list")))
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] = x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert_eq!(self.vars, other.vars, "MultiPoly variable lists differ");
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        self.check_vars(other);
        let mut out = MultiPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::constant(&self.vars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replace variable `idx` by the polynomial `value` (same variable list).
    pub fn substitute(&self, idx: usize, value: &MultiPoly) -> Self {
        self.check_vars(value);
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::constant(&self.vars, Rational::one())];
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[idx] = 0;
            let mono = MultiPoly::from_terms(&self.vars, [(rest, c.clone())]);
            out = out.add(&mono.mul(&powers[k]));
        }
        out
    }

    /// Evaluate every variable at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Collect by the monomials in every variable except `t_idx`, giving
    /// coefficients that are polynomials in that variable.
    pub fn coefficients_in(&self, t_idx: usize) -> BTreeMap<Vec<u32>, UniPoly> {
        let mut buckets: BTreeMap<Vec<u32>, Vec<(usize, Rational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest.remove(t_idx) as usize;
            buckets.entry(rest).or_default().push((k, c.clone()));
        }
        buckets
            .into_iter()
            .filter_map(|(m, list)| {
                let deg = list.iter().map(|(k, _)| *k).max().unwrap();
                let mut v = vec![Rational::zero(); deg + 1];
                for (k, c) in list {
                    v[k] += c;
                }
                let p = UniPoly::new(v);
                (!p.is_zero()).then_some((m, p))
            })
            .collect()
    }

    /// Divide by the rational content so that all coefficients are coprime
    /// integers; the sign of the polynomial is kept.
    pub fn normalize_content(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        // content = gcd(numerators) / lcm(denominators)
        self.scale(&Rational::new(den, num.abs()))
    }

    pub fn has_integer_content_one(&self) -> bool {
        if self.terms.values().any(|c| !c.denom().is_one()) {
            return false;
        }
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        g.is_one()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Variable list `t, m_a, ..., m_b`.
pub fn moment_vars(range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    std::iter::once("t".to_string()).chain(range.map(|k| format!("m{k}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn vars() -> Vec<String> {
        vec!["t".into(), "x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_and_substitution() {
        let v = vars();
        let x = MultiPoly::var(&v, "x").unwrap();
        let y = MultiPoly::var(&v, "y").unwrap();
        let t = MultiPoly::var(&v, "t").unwrap();
        let p = x.mul(&x).sub(&y);
        // y := x^2 makes p vanish
        assert!(p.substitute(2, &x.mul(&x)).is_zero());
        let q = p.substitute(1, &t);
        assert_eq!(q.eval(&[int(3), int(0), int(2)]), int(7));
    }

    #[test]
    fn content_normalization_keeps_sign() {
        let v = vars();
        let p = MultiPoly::from_terms(&v, [(vec![1, 0, 0], rat(-3, 2)), (vec![0, 1, 0], rat(9, 4))]);
        let n = p.normalize_content();
        assert_eq!(n.coeff(&[1, 0, 0]), int(-2));
        assert_eq!(n.coeff(&[0, 1, 0]), int(3));
        assert!(n.has_integer_content_one());
    }

    #[test]
    fn coefficients_in_t() {
        let v = vars();
        let p = MultiPoly::from_terms(&v, [(vec![2, 1, 0], int(1)), (vec![0, 1, 0], int(-1)), (vec![3, 0, 0], int(5))]);
        let c = p.coefficients_in(0);
        assert_eq!(c[&vec![1, 0]], UniPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(c[&vec![0, 0]], UniPoly::from_i64(&[0, 0, 0, 5]));
    }
}
