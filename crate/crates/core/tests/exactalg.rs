use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

use sbflat::exactalg::modp::PRIMES;
use sbflat::exactalg::polymatrix::{
    det_cofactor, det_fraction_free, eliminate_mod_p, rank_over_function_field, smith_normal_form, solve_approx,
    solve_rational, PolyMatrix,
};
use sbflat::exactalg::rational::{pow2, rat, Rational};
use sbflat::exactalg::{sturm_real_roots, UniPoly};

fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-9i64..=9, 0..=max_deg + 1).prop_map(|c| UniPoly::from_i64(&c))
}

fn poly_matrix(n: usize, max_deg: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(small_poly(max_deg), n * n).prop_map(move |e| PolyMatrix::new(n, n, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in small_poly(5), b in small_poly(5), c in small_poly(5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn division_and_gcd(a in small_poly(4), b in small_poly(4), g in small_poly(3)) {
        prop_assume!(!b.is_zero() && !g.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.degree().unwrap_or(0) < b.degree().unwrap().max(1) || r.is_zero());
        let ag = &a * &g;
        let bg = &b * &g;
        let d = ag.gcd(&bg).unwrap();
        // g divides the gcd, and the gcd divides both
        prop_assert!(g.divides(&d));
        prop_assert!(d.divides(&ag) && d.divides(&bg));
    }

    #[test]
    fn det_paths_agree(m in poly_matrix(6, 2)) {
        let a = det_cofactor(&m);
        let b = det_fraction_free(&m).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn det_interpolation_path(m in poly_matrix(9, 1)) {
        // above the Bareiss cutoff; compare with the value at a point
        let d = det_fraction_free(&m).unwrap();
        let x = rat(7, 3);
        let direct = sbflat::exactalg::polymatrix::det_rational(&m.eval(&x));
        prop_assert_eq!(d.eval(&x), direct);
    }

    #[test]
    fn smith_product_is_det(m in poly_matrix(3, 2)) {
        let d = det_fraction_free(&m).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        let prod = snf.iter().fold(UniPoly::one(), |acc, p| &acc * p);
        if d.is_zero() {
            prop_assert!(prod.is_zero());
        } else {
            prop_assert_eq!(prod, d.monic());
            for w in snf.windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
        }
    }

    #[test]
    fn sturm_counts_distinct_roots(roots in prop::collection::btree_set(-20i64..=20, 1..7), extra in 0usize..3) {
        // product of (2t - r) with one factor repeated `extra` more times
        let mut p = UniPoly::one();
        for &r in &roots {
            p = &p * &UniPoly::from_i64(&[-r, 2]);
        }
        let first = *roots.iter().next().unwrap();
        for _ in 0..extra {
            p = &p * &UniPoly::from_i64(&[-first, 2]);
        }
        // an irreducible quadratic adds no real roots
        p = &p * &UniPoly::from_i64(&[1, 0, 1]);
        let iv = sturm_real_roots(&p, 40).unwrap();
        prop_assert_eq!(iv.len(), roots.len());
        for (r, i) in roots.iter().zip(&iv) {
            prop_assert!(i.contains(&rat(*r, 2)));
        }
    }

    #[test]
    fn rank_is_seed_invariant(m in poly_matrix(4, 2), s1 in 0u64..1000, s2 in 0u64..1000) {
        prop_assert_eq!(rank_over_function_field(&m, s1), rank_over_function_field(&m, s2));
    }

    #[test]
    fn approx_solve_matches_exact(
        entries in prop::collection::vec(-50i64..=50, 16),
        rhs in prop::collection::vec(-50i64..=50, 4),
    ) {
        let a: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        let b: Vec<Rational> = rhs.iter().map(|&x| rat(x, 7)).collect();
        if let Some(x) = solve_rational(&a, &b) {
            let y = solve_approx(&a, &b, 300).unwrap();
            let scale = x.iter().map(|v| v.abs()).fold(Rational::one(), |m, v| if v > m { v } else { m });
            for (u, v) in x.iter().zip(&y) {
                prop_assert!((u - v).abs() <= &scale * pow2(-200));
            }
        }
    }

    #[test]
    fn mod_p_rank_is_a_lower_bound(entries in prop::collection::vec(-3i64..=3, 20)) {
        let a: Vec<Vec<Rational>> = entries.chunks(5).map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        let p = PRIMES[0];
        let am: Vec<Vec<u64>> = entries
            .chunks(5)
            .map(|r| r.iter().map(|&x| sbflat::exactalg::modp::reduce_int(&BigInt::from(x), p)).collect())
            .collect();
        let e = eliminate_mod_p(&am, &[], p);
        let exact = sbflat::exactalg::polymatrix::rank_rational(&a);
        prop_assert!(e.rank <= exact);
        // entries are tiny, so no minor is a multiple of p
        prop_assert_eq!(e.rank, exact);
    }
}

#[test]
fn golden_squarefree() {
    // (t-1)^3 (t+2)
    let p = &UniPoly::from_i64(&[-1, 1]).pow(3) * &UniPoly::from_i64(&[2, 1]);
    let sf = p.squarefree_part().unwrap();
    assert_eq!(sf, UniPoly::from_i64(&[-2, 1, 1]));
}
