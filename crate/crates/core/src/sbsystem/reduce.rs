use std::collections::BTreeMap;

use num_traits::Zero;

use super::moments::{build_moment_matrices, MomentMatrices};
use super::params::DesignParams;
use super::quadrics::magnitude_quadric;
use crate::error::{Error, Result};
use crate::exactalg::multipoly::{moment_vars, MultiPoly};
use crate::exactalg::rational::Rational;
use crate::exactalg::unipoly::UniPoly;

/// `m_k` as `base(t) + sum_j coeffs[j] * m_{2L+3+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureRow {
    pub base: UniPoly,
    pub coeffs: Vec<Rational>,
}

/// The reduced system: one equation per magnitude condition
/// `i = L+2..M`, in `t = m_1` and the free moments `m_{2L+3}..m_{L+M}`.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub params: DesignParams,
    /// `t, m_{2L+3}, ..., m_{L+M}`
    pub vars: Vec<String>,
    pub equations: Vec<MultiPoly>,
    /// Magnitude order `i` that produced each equation.
    pub orders: Vec<usize>,
    pub closure: BTreeMap<usize, ClosureRow>,
    pub matrices: MomentMatrices,
}

impl ReducedSystem {
    /// Number of free moment variables.
    pub fn num_moment_vars(&self) -> usize {
        self.vars.len() - 1
    }

    /// Index of the first free moment, `2L+3`.
    pub fn first_moment(&self) -> usize {
        self.params.first_free_moment()
    }

    /// `m_k` as a polynomial in the system variables.
    pub fn moment_form(&self, k: usize) -> MultiPoly {
        moment_form(&self.params, &self.vars, &self.closure, k)
    }

    /// Equations that are linear in the free moments (`i <= 2L+2`).
    pub fn linear_count(&self) -> usize {
        self.orders.iter().filter(|&&i| i <= 2 * self.params.l + 2).count()
    }

    /// Equation `e` collected by moment monomials with coefficients in `t`.
    pub fn coefficient_form(&self, e: usize) -> BTreeMap<Vec<u32>, UniPoly> {
        self.equations[e].coefficients_in(0)
    }

    /// Linear equations as an augmented matrix `[A | c]` with
    /// `A x + c = 0`, `x = (m_{2L+3}, ...)`.
    pub fn linear_part(&self) -> (Vec<Vec<UniPoly>>, Vec<UniPoly>) {
        let n = self.num_moment_vars();
        let mut a = Vec::new();
        let mut c = Vec::new();
        for e in 0..self.linear_count() {
            let form = self.coefficient_form(e);
            let mut row = vec![UniPoly::zero(); n];
            let mut constant = UniPoly::zero();
            for (mono, coef) in form {
                match mono.iter().position(|&x| x > 0) {
                    None => constant = coef,
                    Some(j) => row[j] = coef,
                }
            }
            a.push(row);
            c.push(constant);
        }
        (a, c)
    }
}

fn moment_form(p: &DesignParams, vars: &[String], closure: &BTreeMap<usize, ClosureRow>, k: usize) -> MultiPoly {
    let nv = vars.len();
    let first = p.first_free_moment();
    if k <= p.top_moment() && (k < first) {
        // m_0 = 1 and m_k = t^k
        let mut e = vec![0u32; nv];
        e[0] = k as u32;
        return MultiPoly::from_terms(vars, [(e, Rational::from_integer(1.into()))]);
    }
    if k <= p.top_moment() {
        let mut e = vec![0u32; nv];
        e[1 + k - first] = 1;
        return MultiPoly::from_terms(vars, [(e, Rational::from_integer(1.into()))]);
    }
    let row = &closure[&k];
    let mut out = MultiPoly::zero(vars);
    for (d, c) in row.base.coeffs().iter().enumerate() {
        let mut e = vec![0u32; nv];
        e[0] = d as u32;
        out.add_term(e, c.clone());
    }
    for (j, c) in row.coeffs.iter().enumerate() {
        let mut e = vec![0u32; nv];
        e[1 + j] = 1;
        out.add_term(e, c.clone());
    }
    out
}

/// Closure rows with `m_0 = 1` and `m_j = t^j` (`j < 2L+3`) substituted.
pub(crate) fn substituted_closure(p: &DesignParams, mm: &MomentMatrices) -> BTreeMap<usize, ClosureRow> {
    let first = p.first_free_moment();
    let top = p.top_moment();
    let mut out = BTreeMap::new();
    for (&k, row) in &mm.closure_rows {
        let mut base = vec![Rational::zero(); first.min(top + 1)];
        let mut coeffs = Vec::new();
        for (j, c) in row.iter().enumerate() {
            if j < first {
                base[j] = c.clone();
            } else {
                coeffs.push(c.clone());
            }
        }
        out.insert(k, ClosureRow { base: UniPoly::new(base), coeffs });
    }
    out
}

/// Form the reduced system for `M > L`.
pub fn reduce_system(p: DesignParams) -> Result<ReducedSystem> {
    if p.m <= p.l {
        return Err(Error::Param(format!("reduced system needs M > L, got {p}")));
    }
    let mm = build_moment_matrices(p)?;
    let first = p.first_free_moment();
    let top = p.top_moment();
    let vars = if first <= top { moment_vars(first..=top) } else { moment_vars(1..=0) };
    let closure = substituted_closure(&p, &mm);
    let mut equations = Vec::new();
    let mut orders = Vec::new();
    for i in (p.l + 2)..=p.m {
        let q = magnitude_quadric(i);
        let forms: Vec<MultiPoly> = (0..=2 * i).map(|k| moment_form(&p, &vars, &closure, k)).collect();
        let mut eq = MultiPoly::zero(&vars);
        for (e, c) in q.terms() {
            // e indexes (t, m_1, ..., m_{2i}); quadric terms have degree <= 2
            let mut term = MultiPoly::constant(&vars, c.clone());
            for (k, &x) in e.iter().enumerate().skip(1) {
                for _ in 0..x {
                    term = term.mul(&forms[k]);
                }
            }
            eq = eq.add(&term);
        }
        equations.push(eq.normalize_content());
        orders.push(i);
    }
    Ok(ReducedSystem { params: p, vars, equations, orders, closure, matrices: mm })
}

/// `p(K + L + M - t)`
pub fn time_reverse_poly(poly: &UniPoly, params: &DesignParams) -> UniPoly {
    poly.reflect(&Rational::from_integer((params.span() as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn mono(vars: &[String], terms: &[(&[(usize, u32)], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            terms.iter().map(|(pows, c)| {
                let mut e = vec![0u32; vars.len()];
                for &(i, x) in pows.iter() {
                    e[i] = x;
                }
                (e, int(*c))
            }),
        )
    }

    #[test]
    fn worked_example_equations() {
        let sys = reduce_system(DesignParams::new(2, 2, 10).unwrap()).unwrap();
        assert_eq!(sys.equations.len(), 7);
        assert_eq!(sys.vars.len(), 7);
        let v = &sys.vars;
        // positions: t=0, m7=1, m8=2, ..., m12=6
        let a1 = mono(v, &[(&[(0, 8)], 7), (&[(2, 1)], 1), (&[(0, 1), (1, 1)], -8)]);
        assert_eq!(sys.equations[0], a1);
        let a2 = mono(
            v,
            &[
                (&[(0, 10)], -84),
                (&[(4, 1)], -1),
                (&[(0, 1), (3, 1)], 10),
                (&[(0, 2), (2, 1)], -45),
                (&[(0, 3), (1, 1)], 120),
            ],
        );
        assert_eq!(sys.equations[1], a2);
        let a3 = mono(
            v,
            &[
                (&[(0, 12)], 462),
                (&[(6, 1)], 1),
                (&[(0, 1), (5, 1)], -12),
                (&[(0, 2), (4, 1)], 66),
                (&[(0, 3), (3, 1)], -220),
                (&[(0, 4), (2, 1)], 495),
                (&[(0, 5), (1, 1)], -792),
            ],
        );
        assert_eq!(sys.equations[2], a3);
        assert_eq!(sys.linear_count(), 3);
    }

    #[test]
    fn reverse() {
        let p = DesignParams::new(1, 1, 5).unwrap();
        assert_eq!(time_reverse_poly(&UniPoly::from_i64(&[0, 1]), &p), UniPoly::from_i64(&[7, -1]));
    }

    #[test]
    fn needs_m_above_l() {
        assert!(matches!(reduce_system(DesignParams::new(1, 3, 3).unwrap()), Err(Error::Param(_))));
    }
}
