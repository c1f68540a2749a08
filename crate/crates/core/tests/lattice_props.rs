mod common;

use common::{any_matroid, geometry, matrix_matroid};
use hodge_matroid::corpus::corpus;
use hodge_matroid::lattice::{
    char_poly, f_vector_polynomial, is_log_concave, is_positive, mu_vector, reduced_char_poly,
    whitney_first, CharPolyAlgorithm, FlatLattice, IncidenceFn,
};
use hodge_matroid::oracle::BruteMatroid;
use hodge_matroid::IntPolynomial;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_algorithms_agree_with_oracle((p, rows) in matrix_matroid(4, 7)) {
        let m = common::from_rows(p, &rows);
        let brute = if m.has_loops() {
            IntPolynomial::zero()
        } else {
            IntPolynomial::new(BruteMatroid::from_matrix(p, &rows).char_poly())
        };
        for alg in CharPolyAlgorithm::ALL {
            prop_assert_eq!(&char_poly(&m, alg).unwrap(), &brute, "{:?}", alg);
        }
    }

    #[test]
    fn chi_vanishes_at_one(m in any_matroid(4, 7)) {
        prop_assert_eq!(char_poly(&m, CharPolyAlgorithm::Moebius).unwrap().eval(1), 0);
    }

    #[test]
    fn moebius_inversion_round_trip(m in any_matroid(3, 6), seed in prop::collection::vec(-5i64..5, 64 * 64)) {
        let l = FlatLattice::new(&m);
        prop_assume!(l.len() <= 64);
        let zeta = IncidenceFn::zeta(&l);
        let mu = l.moebius().as_incidence(&l);
        prop_assert_eq!(mu.convolve(&zeta, &l), IncidenceFn::delta(&l));
        prop_assert_eq!(zeta.convolve(&mu, &l), IncidenceFn::delta(&l));
        let f = IncidenceFn::from_fn(&l, |x, y| seed[x * 64 + y]);
        let g = zeta.convolve(&f, &l);
        prop_assert_eq!(mu.convolve(&g, &l), f);
    }

    #[test]
    fn weisner_and_sign_alternation(m in geometry(4, 7)) {
        let l = FlatLattice::new(&m);
        prop_assert!(l.is_graded());
        prop_assert!(l.moebius_sign_check());
        for a in 0..l.len() {
            if a != l.bottom() {
                prop_assert!(l.weisner_check(a));
            }
        }
    }

    #[test]
    fn sequences_are_log_concave(m in geometry(4, 7)) {
        let mu = mu_vector(&m).unwrap();
        prop_assert!(is_positive(&mu) && is_log_concave(&mu), "{:?}", mu);
        let w = whitney_first(&m);
        prop_assert!(is_log_concave(&w));
        prop_assert!(w.iter().all(|&x| x >= 0));
        let f: Vec<i64> = m.f_vector().unwrap().into_iter().map(|x| x as i64).collect();
        prop_assert!(is_log_concave(&f), "{:?}", f);
    }

    #[test]
    fn free_coextension_reproduces_f_vector(m in any_matroid(3, 6)) {
        let c = m.free_coextension().unwrap();
        prop_assert_eq!(c.rank(), m.rank() + 1);
        prop_assert_eq!(
            reduced_char_poly(&c).unwrap(),
            f_vector_polynomial(&m.f_vector().unwrap())
        );
    }
}

#[test]
fn corpus_triple_agreement_and_brylawski() {
    for e in corpus().unwrap() {
        let m = &e.matroid;
        let polys: Vec<IntPolynomial> = CharPolyAlgorithm::ALL
            .iter()
            .map(|&a| char_poly(m, a).unwrap())
            .collect();
        assert!(polys.windows(2).all(|w| w[0] == w[1]), "{}", e.name);
        if m.ground_size() > 0 {
            assert_eq!(polys[0].eval(1), 0, "{}", e.name);
        }
        if m.ground_size() <= 9 {
            let c = m.free_coextension().unwrap();
            assert_eq!(
                reduced_char_poly(&c).unwrap(),
                f_vector_polynomial(&m.f_vector().unwrap()),
                "{}",
                e.name
            );
        }
    }
}

#[test]
fn corpus_product_rule() {
    let c = corpus().unwrap();
    let small: Vec<_> = c.iter().filter(|e| e.matroid.ground_size() <= 5).collect();
    for a in &small {
        for b in small.iter().take(4) {
            let s = a.matroid.direct_sum(&b.matroid).unwrap();
            let chi = |m| char_poly(m, CharPolyAlgorithm::Moebius).unwrap();
            assert_eq!(
                chi(&s),
                &chi(&a.matroid) * &chi(&b.matroid),
                "{} + {}",
                a.name,
                b.name
            );
        }
    }
}
