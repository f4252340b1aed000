mod common;

use num_traits::Signed;

use common::check_flat;

use sbflat::eliminate::eliminate;
use sbflat::exactalg::rational::{int, pow2, to_f64};
use sbflat::exactalg::Rational;
use sbflat::sbsystem::DesignParams;
use sbflat::solvefilter::{
    classify_response, magnitude_response, pair_roots, solve, FilterSolution, ResponseClass, SolveConfig,
};

fn run(k: usize, l: usize, m: usize) -> (DesignParams, Vec<FilterSolution>) {
    let p = DesignParams::new(k, l, m).unwrap();
    let e = eliminate(p, None, 0).unwrap();
    let sols = solve(&e, &SolveConfig::default()).unwrap();
    (p, sols)
}

#[test]
fn solutions_satisfy_the_design_conditions() {
    let (p, sols) = run(1, 1, 5);
    assert_eq!(sols.len(), 6);
    for s in &sols {
        check_flat(&p, s);
        assert!(s.residual <= pow2(16 - 256));
    }
}

#[test]
fn region_one_solutions() {
    for (k, l, m, count) in [(1, 0, 1, 2), (1, 1, 2, 4), (1, 2, 3, 6), (2, 2, 5, 6)] {
        let (p, sols) = run(k, l, m);
        assert_eq!(sols.len(), count, "{p}");
        for s in &sols {
            check_flat(&p, s);
            assert!(s.partner.is_some());
        }
    }
}

#[test]
fn partners_are_time_reversals() {
    let (p, sols) = run(1, 1, 5);
    let sum = int((p.k + p.l + p.m) as i64);
    for (i, s) in sols.iter().enumerate() {
        let j = s.partner.expect("every root is paired");
        assert_eq!(sols[j].partner, Some(i));
        assert!((&s.t + &sols[j].t - &sum).abs() < pow2(-200));
        for (a, b) in s.coeffs.iter().zip(sols[j].coeffs.iter().rev()) {
            assert!((a - b).abs() < pow2(-150));
        }
        assert_eq!(s.response_class, sols[j].response_class);
    }
    // roots listed in increasing order, partner of the i-th is the mirror
    let ts: Vec<Rational> = sols.iter().map(|s| s.t.clone()).collect();
    let pairs = pair_roots(&ts, &p, &pow2(-100));
    assert_eq!(pairs, (0..6).map(|i| Some(5 - i)).collect::<Vec<_>>());
}

#[test]
fn listed_roots() {
    let (_, sols) = run(1, 1, 5);
    let want = [0.04470426799, 1.233505559, 2.558981682, 4.441018318, 5.766494441, 6.955295732];
    for (s, w) in sols.iter().zip(want) {
        assert!((to_f64(&s.t) - w).abs() < 1e-9);
    }
}

#[test]
fn response_endpoints() {
    let (_, sols) = run(1, 1, 5);
    for s in &sols {
        let f = magnitude_response(&s.coeffs_f64(), 256).unwrap();
        assert_eq!(f.len(), 256);
        assert!((f[0].1 - 1.0).abs() < 1e-12);
        assert!(f[255].1.abs() < 1e-12);
        assert!((f[255].0 - std::f64::consts::PI).abs() < 1e-12);
    }
}

#[test]
fn classifier_on_synthetic_curves() {
    let grid = |f: &dyn Fn(f64) -> f64| -> Vec<(f64, f64)> {
        (0..200)
            .map(|i| {
                let w = std::f64::consts::PI * i as f64 / 199.0;
                (w, f(w))
            })
            .collect()
    };
    let mono = grid(&|w| (1.0 + w.cos()) / 2.0);
    let bump = grid(&|w| (1.0 + w.cos()) / 2.0 * (1.0 + w.sin()));
    let wiggle = grid(&|w| (1.0 + w.cos()) / 2.0 * (1.0 + 0.3 * (5.0 * w).sin()));
    assert_eq!(classify_response(&mono).unwrap(), ResponseClass::Monotone);
    assert_eq!(classify_response(&bump).unwrap(), ResponseClass::OneExtremum);
    assert_eq!(classify_response(&wiggle).unwrap(), ResponseClass::MultiExtremum);
    assert!(classify_response(&mono[..3]).is_err());
}

#[test]
fn too_few_samples_is_an_error() {
    let p = DesignParams::new(1, 1, 5).unwrap();
    let e = eliminate(p, None, 0).unwrap();
    assert!(solve(&e, &SolveConfig { precision_bits: 256, samples: 8 }).is_err());
}
