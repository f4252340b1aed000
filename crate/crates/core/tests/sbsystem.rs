use num_traits::Zero;

use sbflat::exactalg::rational::{int, rat, Rational};
use sbflat::exactalg::UniPoly;
use sbflat::sbsystem::{
    build_moment_matrices, group_delay_quadric, magnitude_quadric, reduce_system, time_reverse_poly, DesignParams,
    Region,
};

/// `m_k = t^k` at a point, laid out as the quadric variables expect
/// (`t` first, then `m_1..`).
fn power_point(t: &Rational, top: usize) -> Vec<Rational> {
    let mut v = vec![t.clone()];
    let mut p = Rational::from_integer(1.into());
    for _ in 1..=top {
        p *= t;
        v.push(p.clone());
    }
    v
}

#[test]
fn powers_annihilate_low_order_quadrics() {
    for l in 0..=6usize {
        // degree in t is at most 4L+4; vanishing at more points is identical vanishing
        let pts: Vec<Rational> = (0..(4 * l + 6) as i64).map(|i| rat(2 * i - 7, 3)).collect();
        for i in 1..=l + 1 {
            let q = magnitude_quadric(i);
            for t in &pts {
                assert!(q.eval(&power_point(t, 2 * i)).is_zero(), "magnitude {i} at L={l}");
            }
        }
        for j in 1..=l {
            let q = group_delay_quadric(j);
            for t in &pts {
                assert!(q.eval(&power_point(t, 2 * j + 1)).is_zero(), "group delay {j} at L={l}");
            }
        }
    }
}

#[test]
fn printed_linear_equations_hold_on_closure() {
    // four linear conditions of the (1,1,5) example, coefficients on m_0..m_10
    let printed: [&[i64]; 4] = [
        &[-315, 14496, -30184, 23912, -9310, 1904, -196, 8, 0, 0, 0],
        &[-2205, 91392, -185152, 141120, -51632, 9408, -728, 0, 2, 0, 0],
        &[-72765, 2784096, -5529048, 4105160, -1445010, 247380, -17052, 0, 0, 4, 0],
        &[-231525, 8326080, -16288944, 11869200, -4070200, 670320, -43407, 0, 0, 0, 1],
    ];
    let p = DesignParams::new(1, 1, 5).unwrap();
    let mm = build_moment_matrices(p).unwrap();
    let top = p.top_moment();
    for eq in printed {
        let mut acc = vec![Rational::zero(); top + 1];
        for (k, &c) in eq.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if k <= top {
                acc[k] += int(c);
            } else {
                for (a, r) in acc.iter_mut().zip(&mm.closure_rows[&k]) {
                    *a += int(c) * r;
                }
            }
        }
        assert!(acc.iter().all(Zero::is_zero), "{eq:?} -> {acc:?}");
    }
}

#[test]
fn reduced_system_shape() {
    for m in 1..=12usize {
        for l in 0..m {
            let p = DesignParams::new(1, l, m).unwrap();
            if p.region() != Region::II {
                continue;
            }
            let sys = reduce_system(p).unwrap();
            assert_eq!(sys.equations.len(), m - l - 1, "{p}");
            assert_eq!(sys.num_moment_vars() + 1, m - l - 1, "{p}");
            for (e, q) in sys.equations.iter().enumerate() {
                assert!(q.has_integer_content_one(), "{p} eq {e}");
                let deg = sys.coefficient_form(e).keys().map(|mono| mono.iter().sum::<u32>()).max().unwrap();
                let order = sys.orders[e];
                assert_eq!(deg == 1, order <= 2 * l + 2, "{p} eq {e} (order {order})");
                assert!(deg <= 2);
            }
        }
    }
}

#[test]
fn worked_first_equation() {
    // 7t^8 + m_8 - 8t m_7 for (2,2,10)
    let sys = reduce_system(DesignParams::new(2, 2, 10).unwrap()).unwrap();
    let form = sys.coefficient_form(0);
    let n = sys.num_moment_vars();
    let mut unit = vec![0u32; n];
    assert_eq!(form[&unit], UniPoly::monomial(int(7), 8));
    unit[0] = 1;
    assert_eq!(form[&unit], UniPoly::monomial(int(-8), 1));
    unit[0] = 0;
    unit[1] = 1;
    assert_eq!(form[&unit], UniPoly::one());
}

#[test]
fn reversal_is_an_involution() {
    let p = DesignParams::new(1, 1, 5).unwrap();
    let f = UniPoly::from_i64(&[3, -1, 4, 1, -5]);
    assert_eq!(time_reverse_poly(&time_reverse_poly(&f, &p), &p), f);
    assert_eq!(time_reverse_poly(&UniPoly::t(), &p), UniPoly::from_i64(&[7, -1]));
}
