mod common;

use num_traits::Zero;

use common::{interpolate, iterated_resultant};

use sbflat::eliminate::{eliminate, is_reversal_symmetric, Backend};
use sbflat::exactalg::rational::int;
use sbflat::exactalg::{Rational, UniPoly};
use sbflat::findiff::proportionality;
use sbflat::sbsystem::{reduce_system, time_reverse_poly, DesignParams};

fn params(k: usize, l: usize, m: usize) -> DesignParams {
    DesignParams::new(k, l, m).unwrap()
}

#[test]
fn iterated_sylvester_contains_stripped() {
    let p = params(1, 1, 5);
    let sys = reduce_system(p).unwrap();
    assert_eq!(sys.num_moment_vars(), 2);
    // every equation has degree one in the last variable
    for e in 0..3 {
        assert!(sys.coefficient_form(e).keys().all(|m| m[1] <= 1));
    }
    // interpolate R(t) with plenty of points, confirm the degree on extra ones
    let n = 60;
    let ts: Vec<Rational> = (0..n as i64).map(|i| int(i) - int(20)).collect();
    let vals: Vec<Rational> = ts.iter().map(|t| iterated_resultant(&sys, t, 4)).collect();
    let mut coeffs = interpolate(&ts, &vals);
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    assert!(coeffs.len() < n - 10, "degree bound too tight");
    let r = UniPoly::new(coeffs);
    for t in [int(77), int(-41)] {
        assert_eq!(r.eval(&t), iterated_resultant(&sys, &t, 4));
    }
    let e = eliminate(p, None, 0).unwrap();
    assert_eq!(e.degree(), 16);
    assert!(e.stripped.divides(&r));
}

#[test]
fn backends_agree() {
    for (p, diag) in [(params(1, 1, 5), Backend::DiagQ3), (params(1, 1, 6), Backend::DiagQ4)] {
        let a = eliminate(p, Some(diag), 0).unwrap();
        let b = eliminate(p, Some(Backend::Dixon), 0).unwrap();
        assert!(proportionality(&a.stripped, &b.stripped).is_some(), "{p}");
    }
}

#[test]
fn dixon_is_seed_independent() {
    let p = params(1, 1, 6);
    let a = eliminate(p, Some(Backend::Dixon), 0).unwrap();
    let b = eliminate(p, Some(Backend::Dixon), 17).unwrap();
    assert_eq!(a.stripped, b.stripped);
    assert_eq!(a.degree(), 26);
}

#[test]
fn stripped_divides_raw_and_is_symmetric() {
    for (k, l, m) in [(1, 0, 3), (1, 1, 4), (2, 1, 5), (1, 1, 5), (3, 1, 5), (1, 2, 7), (2, 0, 5), (1, 1, 6)] {
        let p = params(k, l, m);
        let e = eliminate(p, None, 0).unwrap();
        assert!(is_reversal_symmetric(&e.stripped, &p), "{p}");
        let r = time_reverse_poly(&e.stripped, &p);
        assert!(r == e.stripped || r == -&e.stripped);
        assert!(e.stripped.lc() > Rational::zero());
        if !e.raw.is_zero() {
            assert!(e.stripped.divides(&e.raw), "{p}");
        }
        for f in &e.removed_factors {
            assert!(!f.factor.is_constant());
        }
    }
}

#[test]
fn backend_rejects_wrong_shape() {
    assert!(eliminate(params(1, 1, 6), Some(Backend::DiagQ3), 0).is_err());
    assert!(eliminate(params(1, 0, 1), Some(Backend::Dixon), 0).is_err());
    assert!("nonsense".parse::<Backend>().is_err());
    assert_eq!("diag_q4".parse::<Backend>().unwrap(), Backend::DiagQ4);
}

#[test]
fn dixon_matrix_shape() {
    let d = eliminate(params(1, 1, 5), Some(Backend::Dixon), 0).unwrap().dixon.unwrap();
    let sub = d.submatrix();
    assert_eq!(sub.rows(), d.rank);
    assert_eq!(sub.cols(), d.rank);
    assert!(d.unit_row().is_some());
}
