use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braidfree::arrangement::MultiplicityJson;
use braidfree::freeness::{is_cor64_constructible, verify_construction};
use braidfree::signed::{
    check_ordering, is_eliminable_bruteforce, is_eliminable_characterization, verify_obstruction, EliminationCertificate,
};
use braidfree::subsets::{members, Combinations};
use braidfree::verify::{random_balanced, random_signed_graph};
use braidfree::{
    ann_decompose, criterion2, decide, eliminate_free_vertex, find_free_vertices, verify_certificate, verify_decomposition,
    FreenessStatus, MultiBraid, SignedGraph, VertexSubset,
};

fn multiplicity(min_n: usize, max_n: usize, max_m: i64) -> impl Strategy<Value = MultiBraid> {
    (min_n..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1..=max_m, n * (n - 1) / 2).prop_map(move |values| {
            let mut it = values.into_iter();
            MultiBraid::from_fn(n, |_, _| it.next().unwrap()).unwrap()
        })
    })
}

fn balanced(min_n: usize, max_n: usize, max_m: i64) -> impl Strategy<Value = MultiBraid> {
    (min_n..=max_n, any::<u64>()).prop_map(move |(n, seed)| random_balanced(n, max_m, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn signed_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, seed)| random_signed_graph(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn four_cycle_value_has_dihedral_symmetry(m in multiplicity(4, 7, 30), pick in any::<prop::sample::Index>()) {
        let n = m.vertex_count();
        let quads: Vec<u32> = Combinations::new(n, 4).collect();
        let q = members(quads[pick.index(quads.len())]);
        let (i, j, s, t) = (q[0], q[2], q[1], q[3]);
        let v = m.four_cycle_value(i, j, s, t);
        for (a, b, c, d) in [(j, s, t, i), (s, t, i, j), (t, i, j, s), (t, s, j, i), (s, j, i, t), (j, i, t, s), (i, t, s, j)] {
            prop_assert_eq!(m.four_cycle_value(a, b, c, d), v);
        }
    }

    #[test]
    fn deviation_commutes_with_restriction(m in multiplicity(2, 8, 20), bits in any::<u32>()) {
        let u = VertexSubset::from_mask(bits & ((1u32 << m.vertex_count()) - 1));
        let direct = m.deviation(&u);
        if u.len() >= 2 {
            prop_assert_eq!(m.restrict(&u).unwrap().total_deviation(), direct);
        } else {
            prop_assert_eq!(direct, 0);
        }
    }

    #[test]
    fn closed_form_matches_enumeration(m in multiplicity(2, 9, 40)) {
        prop_assert_eq!(m.deviation_closed_form(), m.total_deviation());
    }

    #[test]
    fn sum_of_squares_residual_vanishes(m in balanced(2, 9, 60)) {
        let r = m.mixed_products().unwrap();
        prop_assert_eq!(r.sos_residual, 0);
        prop_assert!(r.most_balanced_gmp2 <= r.gmp2_bound);
    }

    #[test]
    fn zero_deviation_iff_all_cycles_vanish(m in multiplicity(4, 7, 3)) {
        let all_zero = Combinations::new(m.vertex_count(), 4).all(|mask| {
            let q = members(mask);
            m.inscribed_cycles([q[0], q[1], q[2], q[3]]).iter().all(|&(_, v)| v == 0)
        });
        prop_assert_eq!(m.total_deviation() == 0, all_zero);
    }

    #[test]
    fn constants_are_balanced_with_zero_deviation(n in 2usize..=12, c in 1i64..=100) {
        let m = MultiBraid::constant(n, c).unwrap();
        prop_assert!(m.is_balanced());
        prop_assert_eq!(m.total_deviation(), 0);
    }

    #[test]
    fn decompositions_reconstruct(m in multiplicity(2, 8, 10)) {
        if let Ok(d) = ann_decompose(&m) {
            prop_assert!(verify_decomposition(&m, &d).unwrap());
        }
    }

    #[test]
    fn four_subset_hypothesis_gives_decomposition(m in balanced(4, 6, 8)) {
        let hypothesis = Combinations::new(m.vertex_count(), 4).all(|mask| {
            let q = members(mask);
            m.quad_deviation([q[0], q[1], q[2], q[3]]) <= 3 * m.restrict(&VertexSubset::from_mask(mask)).unwrap()
                .odd_triangle_count(&VertexSubset::all(4)).unwrap() as i64
        });
        if hypothesis {
            let d = ann_decompose(&m);
            prop_assert!(d.is_ok(), "{:?}: {:?}", m, d);
        }
    }

    #[test]
    fn eliminability_is_sign_symmetric(g in signed_graph(2, 7)) {
        let a = is_eliminable_bruteforce(&g).unwrap().is_eliminable();
        let b = is_eliminable_bruteforce(&g.swap_signs()).unwrap().is_eliminable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn characterization_matches_bruteforce(g in signed_graph(2, 7)) {
        let brute = is_eliminable_bruteforce(&g).unwrap();
        let charac = is_eliminable_characterization(&g).unwrap();
        prop_assert_eq!(brute.is_eliminable(), charac.is_eliminable());
        match charac {
            EliminationCertificate::Ordering { nu } => prop_assert!(check_ordering(&g, &nu).unwrap()),
            EliminationCertificate::Obstruction { obstruction } => {
                prop_assert!(verify_obstruction(&g, &obstruction));
            }
        }
        if let Some(nu) = brute.ordering() {
            prop_assert!(check_ordering(&g, nu).unwrap());
        }
    }

    #[test]
    fn obstructions_are_not_eliminable(g in signed_graph(4, 8)) {
        if let EliminationCertificate::Obstruction { obstruction } = is_eliminable_characterization(&g).unwrap() {
            let vertices: Vec<usize> = match &obstruction {
                braidfree::Obstruction::SigmaCycle { vertices, .. }
                | braidfree::Obstruction::Mountain { vertices, .. }
                | braidfree::Obstruction::Hill { vertices, .. } => vertices.clone(),
                braidfree::Obstruction::ForbiddenFour { vertices } => vertices.to_vec(),
                braidfree::Obstruction::OrderingExhausted => (0..g.vertex_count()).collect(),
            };
            prop_assert!(!is_eliminable_bruteforce(&g.induced(&vertices)).unwrap().is_eliminable());
        }
    }

    #[test]
    fn certificates_reverify(m in prop_oneof![multiplicity(2, 7, 5), balanced(2, 7, 8)]) {
        let v = decide(&m).unwrap();
        prop_assert!(verify_certificate(&m, &v).unwrap(), "{:?}: {:?}", m, v);
    }

    #[test]
    fn free_implies_restrictions_pass(m in balanced(4, 7, 6)) {
        if decide(&m).unwrap().status == FreenessStatus::Free {
            for mask in 0u32..(1 << m.vertex_count()) {
                if mask.count_ones() < 4 {
                    continue;
                }
                let sub = m.restrict(&VertexSubset::from_mask(mask)).unwrap();
                prop_assert_eq!(criterion2(&sub, false).unwrap(), None);
            }
        }
    }

    #[test]
    fn free_vertex_removal_preserves_status(m in prop_oneof![multiplicity(4, 7, 4), balanced(4, 7, 6)], pick in any::<prop::sample::Index>()) {
        let free = find_free_vertices(&m);
        if !free.is_empty() {
            let v = free[pick.index(free.len())];
            let before = decide(&m).unwrap().status;
            let after = decide(&eliminate_free_vertex(&m, v).unwrap()).unwrap().status;
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn free_verdicts_are_constructible(m in prop_oneof![multiplicity(3, 6, 4), balanced(3, 6, 6)]) {
        let status = decide(&m).unwrap().status;
        let construction = is_cor64_constructible(&m);
        if let Some(c) = &construction {
            prop_assert!(verify_construction(&m, c));
            prop_assert_eq!(status, FreenessStatus::Free);
        }
        if status == FreenessStatus::Free {
            prop_assert!(construction.is_some());
        }
    }

    #[test]
    fn json_round_trips(m in multiplicity(2, 8, 100), g in signed_graph(1, 8)) {
        let text = m.to_json_string();
        prop_assert_eq!(MultiBraid::from_json_str(&text).unwrap(), m.clone());
        let raw: MultiplicityJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(raw.vertices, m.vertex_count());
        let gtext = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(SignedGraph::from_json_str(&gtext).unwrap(), g);
        if let Ok(d) = ann_decompose(&m) {
            let dtext = serde_json::to_string(&d).unwrap();
            prop_assert_eq!(serde_json::from_str::<braidfree::AnnDecomposition>(&dtext).unwrap(), d);
        }
    }
}
