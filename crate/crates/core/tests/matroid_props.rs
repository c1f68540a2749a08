mod common;

use common::{any_matroid, from_rows, graph, matrix_matroid};
use hodge_matroid::lattice::{char_poly, CharPolyAlgorithm};
use hodge_matroid::matroid::{boolean, fano, fano_matrix, uniform, validate_flats};
use hodge_matroid::oracle::BruteMatroid;
use hodge_matroid::{Error, Matroid, Subset};
use proptest::prelude::*;

fn brute_of(m: &Matroid) -> BruteMatroid {
    BruteMatroid::from_independent(
        m.ground_size(),
        m.independent_sets().unwrap().into_iter().map(Subset::bits),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn flats_satisfy_both_axioms(m in any_matroid(4, 7)) {
        prop_assert!(validate_flats(m.ground_size(), m.flats()).is_ok());
    }

    #[test]
    fn flats_match_definitional_oracle((p, rows) in matrix_matroid(4, 7)) {
        let m = from_rows(p, &rows);
        let brute = BruteMatroid::from_matrix(p, &rows);
        let mut flats: Vec<u64> = m.flats().iter().map(|f| f.bits()).collect();
        flats.sort_unstable();
        prop_assert_eq!(flats, brute.flats());
        for s in 0u64..1 << m.ground_size() {
            prop_assert_eq!(m.rank_of(Subset(s)), brute.rank(s));
            prop_assert_eq!(m.closure(Subset(s)).bits(), brute.closure(s));
        }
    }

    #[test]
    fn rank_is_submodular_and_monotone(m in any_matroid(4, 6)) {
        let n = m.ground_size();
        for a in 0u64..1 << n {
            for b in 0u64..1 << n {
                let (a, b) = (Subset(a), Subset(b));
                prop_assert!(
                    m.rank_of(a.union(b)) + m.rank_of(a.intersection(b)) <= m.rank_of(a) + m.rank_of(b)
                );
                if a.is_subset_of(b) {
                    prop_assert!(m.rank_of(a) <= m.rank_of(b));
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent(m in any_matroid(4, 7), s in any::<u64>()) {
        let s = Subset(s & m.ground().bits());
        let c = m.closure(s);
        prop_assert!(s.is_subset_of(c));
        prop_assert_eq!(m.closure(c), c);
        prop_assert_eq!(m.rank_of(c), m.rank_of(s));
        prop_assert_eq!(m.corank_of(m.ground()), 0);
    }

    #[test]
    fn dual_rank_identity(m in any_matroid(4, 7)) {
        let d = m.dual().unwrap();
        let (n, e) = (m.ground_size(), m.ground());
        for a in 0u64..1 << n {
            let a = Subset(a);
            prop_assert_eq!(
                d.rank_of(a) as i64 - m.rank_of(e.difference(a)) as i64,
                a.len() as i64 - m.rank() as i64
            );
        }
        prop_assert_eq!(d.dual().unwrap(), m);
    }

    #[test]
    fn minor_rank_identities(m in any_matroid(4, 7), f in any::<u64>()) {
        let e = m.ground();
        let f = Subset(f & e.bits());
        let (con, cmap) = m.contraction_with_map(f).unwrap();
        let (res, rmap) = m.restriction_with_map(e.difference(f)).unwrap();
        for a in e.difference(f).subsets() {
            prop_assert_eq!(con.rank_of(a.remap(&cmap)), m.rank_of(a.union(f)) - m.rank_of(f));
            prop_assert_eq!(res.rank_of(a.remap(&rmap)), m.rank_of(a));
        }
    }

    #[test]
    fn deletion_contraction_recurrence(m in any_matroid(4, 7), e in 0usize..7) {
        let n = m.ground_size();
        let e = e % n;
        prop_assume!(!m.is_loop(e) && !m.is_coloop(e));
        let x = Subset::singleton(e);
        let chi = |m: &Matroid| char_poly(m, CharPolyAlgorithm::SubsetSum).unwrap();
        prop_assert_eq!(chi(&m), &chi(&m.deletion(x).unwrap()) - &chi(&m.contraction(x).unwrap()));
    }

    #[test]
    fn direct_sum_multiplies_char_poly(a in any_matroid(2, 4), b in any_matroid(2, 4)) {
        let s = a.direct_sum(&b).unwrap();
        let chi = |m: &Matroid| char_poly(m, CharPolyAlgorithm::Moebius).unwrap();
        prop_assert_eq!(chi(&s), &chi(&a) * &chi(&b));
        prop_assert_eq!(s.rank(), a.rank() + b.rank());
    }

    #[test]
    fn simplification_keeps_the_lattice(m in any_matroid(4, 8)) {
        let (s, map) = m.simplify();
        prop_assert!(s.is_simple());
        prop_assert_eq!(s.whitney_second(), m.whitney_second());
        prop_assert_eq!(map.len(), m.ground_size());
        for (i, t) in map.iter().enumerate() {
            prop_assert_eq!(t.is_none(), m.is_loop(i));
        }
        // covering pairs correspond
        let covers = |m: &Matroid| -> usize {
            let f = m.flats();
            f.iter().map(|&p| f.iter().filter(|&&q| p.is_proper_subset_of(q) && m.rank_of(q) == m.rank_of(p) + 1).count()).sum()
        };
        prop_assert_eq!(covers(&s), covers(&m));
    }

    #[test]
    fn graphic_independence_is_forests(g in graph(5, 7)) {
        let m = Matroid::from_graph(&g).unwrap();
        let brute = BruteMatroid::from_graph(g.vertices(), g.edges());
        for s in 0u64..1 << g.edges().len() {
            prop_assert_eq!(m.is_independent(Subset(s)), brute.is_independent(s));
        }
    }

    #[test]
    fn bases_and_circuits_round_trip(m in any_matroid(4, 7)) {
        let n = m.ground_size();
        prop_assert_eq!(Matroid::from_bases(n, &m.bases().unwrap()).unwrap(), m.clone());
        prop_assert_eq!(Matroid::from_circuits(n, &m.circuits().unwrap()).unwrap(), m.clone());
        let brute = brute_of(&m);
        for s in 0u64..1 << n {
            prop_assert_eq!(m.rank_of(Subset(s)), brute.rank(s));
        }
    }

    #[test]
    fn truncation_lowers_rank(m in any_matroid(4, 7), k in 0usize..4) {
        prop_assume!(k + 2 <= m.rank());
        let t = m.truncate(k).unwrap();
        prop_assert_eq!(t.rank(), k + 2);
        prop_assert!(validate_flats(t.ground_size(), t.flats()).is_ok());
        prop_assert_eq!(m.truncate(m.rank() - 2).unwrap(), m);
    }
}

#[test]
fn rank_one_and_rank_zero_single_element() {
    let m = Matroid::from_flats(1, &[Subset::EMPTY, Subset::singleton(0)]).unwrap();
    assert_eq!(m.rank(), 1);
    let l = Matroid::from_flats(1, &[Subset::singleton(0)]).unwrap();
    assert_eq!(l.rank(), 0);
    assert!(l.is_loop(0));
}

#[test]
fn bad_families_are_rejected() {
    // {0} and {1} meet in the empty set, which is missing
    let err = Matroid::from_flats(
        2,
        &[Subset::singleton(0), Subset::singleton(1), Subset::full(2)],
    )
    .unwrap_err();
    assert!(matches!(err, Error::AxiomViolation { .. }));
    let bases = [Subset::from_elems([0, 1]), Subset::from_elems([2, 3])];
    assert!(matches!(
        Matroid::from_bases(4, &bases),
        Err(Error::ExchangeViolation { .. })
    ));
    // the two bases of this family do satisfy exchange
    let ok = [Subset::from_elems([0, 1]), Subset::from_elems([1, 2])];
    assert!(Matroid::from_bases(3, &ok).is_ok());
}

#[test]
fn constructors_agree_on_named_instances() {
    let u23 = Matroid::from_flats(
        3,
        &[Subset::EMPTY, Subset(1), Subset(2), Subset(4), Subset(7)],
    )
    .unwrap();
    assert_eq!(uniform(2, 3).unwrap(), u23);
    assert_eq!(
        Matroid::from_graph(&hodge_matroid::Graph::complete(3)).unwrap(),
        u23
    );
    assert_eq!(
        Matroid::from_bases(2, &[Subset(1), Subset(2)]).unwrap(),
        uniform(1, 2).unwrap()
    );
    assert_eq!(
        fano().unwrap(),
        Matroid::from_matrix(&fano_matrix()).unwrap()
    );
    assert_eq!(boolean(3).unwrap().num_flats(), 8);
    assert_eq!(uniform(2, 3).unwrap().circuits().unwrap(), vec![Subset(7)]);
    assert_eq!(uniform(2, 3).unwrap().f_vector().unwrap(), vec![1, 3, 3]);
    assert!(boolean(4).unwrap().circuits().unwrap().is_empty());
    let looped = hodge_matroid::Graph::new(1, vec![(0, 0)]).unwrap();
    let m = Matroid::from_graph(&looped).unwrap();
    assert_eq!((m.rank(), m.loops()), (0, Subset(1)));
}

#[test]
fn simplify_examples() {
    let (s, map) = uniform(1, 3).unwrap().simplify();
    assert_eq!(s, uniform(1, 1).unwrap());
    assert_eq!(map, vec![Some(0); 3]);
    // a loop next to a coloop
    let m = Matroid::from_flats(2, &[Subset(1), Subset(3)]).unwrap();
    assert_eq!(m.simplify().0, uniform(1, 1).unwrap());
    assert_eq!(fano().unwrap().simplify().0, fano().unwrap());
}
