use num_bigint::BigInt;
use num_traits::One;

use crate::exactalg::multipoly::{moment_vars, MultiPoly};
use crate::exactalg::rational::{binomial, Rational};

fn add_product(p: &mut MultiPoly, a: usize, b: usize, c: Rational) {
    // t sits at position 0 and m_k at position k; m_0 is the constant 1
    let mut e = vec![0u32; p.vars().len()];
    if a > 0 {
        e[a] += 1;
    }
    if b > 0 {
        e[b] += 1;
    }
    p.add_term(e, c);
}

/// Magnitude flatness quadric of order `i`, in variables `t, m_1..m_{2i}`:
/// `C(2i,i) m_i^2 + 2 sum_{l<i} C(2i,l) (-1)^(i+l) m_l m_{2i-l}`.
pub fn magnitude_quadric(i: usize) -> MultiPoly {
    assert!(i >= 1);
    let vars = moment_vars(1..=2 * i);
    let mut p = MultiPoly::zero(&vars);
    let n = 2 * i as u64;
    add_product(&mut p, i, i, Rational::from_integer(binomial(n, i as u64)));
    for l in 0..i {
        let sign = if (i + l) % 2 == 0 { 1 } else { -1 };
        let c = binomial(n, l as u64) * BigInt::from(2 * sign);
        add_product(&mut p, l, 2 * i - l, Rational::from_integer(c));
    }
    p
}

/// Group delay flatness quadric of order `j`, in variables
/// `t, m_1..m_{2j+1}`, scaled to coprime integer coefficients:
/// `sum_{l<=j} (1 - 2l/(2j+1)) C(2j+1,l) (-1)^l m_l m_{2j+1-l}`.
pub fn group_delay_quadric(j: usize) -> MultiPoly {
    assert!(j >= 1);
    let vars = moment_vars(1..=2 * j + 1);
    let mut p = MultiPoly::zero(&vars);
    let n = 2 * j + 1;
    for l in 0..=j {
        let w = Rational::one() - Rational::new(BigInt::from(2 * l), BigInt::from(n));
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let c = w * Rational::from_integer(binomial(n as u64, l as u64) * BigInt::from(sign));
        add_product(&mut p, l, n - l, c);
    }
    p.normalize_content()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn coeff(p: &MultiPoly, idx: &[usize]) -> Rational {
        let mut e = vec![0u32; p.vars().len()];
        for &k in idx {
            e[k] += 1;
        }
        p.coeff(&e)
    }

    #[test]
    fn low_order_magnitude_quadrics() {
        let q1 = magnitude_quadric(1);
        assert_eq!(q1.len(), 2);
        assert_eq!(coeff(&q1, &[1, 1]), int(2));
        assert_eq!(coeff(&q1, &[2]), int(-2));

        let q2 = magnitude_quadric(2);
        assert_eq!(q2.len(), 3);
        assert_eq!(coeff(&q2, &[2, 2]), int(6));
        assert_eq!(coeff(&q2, &[4]), int(2));
        assert_eq!(coeff(&q2, &[1, 3]), int(-8));

        let q4 = magnitude_quadric(4);
        let want = [(vec![4, 4], 70), (vec![8], 2), (vec![1, 7], -16), (vec![2, 6], 56), (vec![3, 5], -112)];
        assert_eq!(q4.len(), want.len());
        for (idx, c) in want {
            assert_eq!(coeff(&q4, &idx), int(c));
        }
    }

    #[test]
    fn group_delay_first_order() {
        let g = group_delay_quadric(1);
        assert_eq!(g.len(), 2);
        assert_eq!(coeff(&g, &[3]), int(1));
        assert_eq!(coeff(&g, &[1, 2]), int(-1));
    }
}
