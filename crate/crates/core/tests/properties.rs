use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::sample::subsequence;

use frachyp::alon::{solve_alon, AlonParams};
use frachyp::coloring::{
    from_panchromatic, is_panchromatic, is_proper, monochromatic_pairs, random_fractional_coloring, to_panchromatic,
    FractionalColoring, PanchromaticColoring,
};
use frachyp::construction::{bad_prob_inclusion_exclusion, s_sums, telescoping_check};
use frachyp::exact::{brute_force_colorable, chi_f_dual, chi_f_primal, chi_f_via_ab_search, Budget};
use frachyp::hypergraph::{
    gen_complete_uniform, gen_random_uniform, parse_hypergraph, serialize_hypergraph, Hypergraph,
};
use frachyp::theorem1::{classify_failure, solve_theorem1, SolverParams};
use frachyp::Error;

fn hypergraph(max_v: usize, max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n)
        .prop_flat_map(move |n| (Just(n), n..=max_v))
        .prop_flat_map(move |(n, v)| {
            let edge = subsequence((0..v).collect::<Vec<_>>(), n).prop_shuffle();
            (Just(v), Just(n), proptest::collection::vec(edge, 0..=max_m))
        })
        .prop_map(|(v, n, edges)| Hypergraph::new(v, n, edges).unwrap())
}

fn graph(max_v: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (3..=max_v)
        .prop_flat_map(move |v| {
            let edge = subsequence((0..v).collect::<Vec<_>>(), 2);
            (Just(v), proptest::collection::vec(edge, 1..=max_m))
        })
        .prop_map(|(v, edges)| {
            let distinct: Vec<_> = edges.into_iter().collect::<HashSet<_>>().into_iter().sorted().collect();
            Hypergraph::new(v, 2, distinct).unwrap()
        })
}

fn palette() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=5).prop_flat_map(|a| (Just(a), 1..a))
}

/// Every map `0..v -> 0..a`, in lexicographic order.
fn all_maps(v: usize, a: u32) -> impl Iterator<Item = Vec<u32>> {
    (0..v)
        .map(|_| 0..a)
        .multi_cartesian_product()
        .chain((v == 0).then(Vec::new))
}

fn has_proper_coloring(h: &Hypergraph, a: u32) -> bool {
    all_maps(h.vertex_count(), a).any(|c| h.edges().iter().all(|e| e.iter().any(|&v| c[v] != c[e[0]])))
}

fn has_panchromatic_coloring(h: &Hypergraph, a: u32) -> bool {
    all_maps(h.vertex_count(), a).any(|c| {
        h.edges()
            .iter()
            .all(|e| e.iter().map(|&v| c[v]).collect::<HashSet<_>>().len() == a as usize)
    })
}

fn bad_fraction(chi: &FractionalColoring, n: usize) -> BigRational {
    let mut bad = 0i64;
    let mut total = 0i64;
    for set in (0..chi.len()).combinations(n) {
        total += 1;
        if chi.common_colors(&set) != 0 {
            bad += 1;
        }
    }
    BigRational::new(BigInt::from(bad), BigInt::from(total))
}

fn unlimited() -> Budget {
    Budget {
        assignments: u128::MAX,
        ..Budget::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_format_round_trips(h in hypergraph(12, 5, 20)) {
        let back = parse_hypergraph(&serialize_hypergraph(&h)).unwrap();
        prop_assert_eq!(back, h.canonical());
    }

    #[test]
    fn random_generator_is_seeded(v in 5usize..40, n in 2usize..5, m in 0usize..60, seed: u64, distinct: bool) {
        let m = if distinct { m.min(5) } else { m };
        let first = gen_random_uniform(v, n, m, seed, distinct).unwrap();
        prop_assert_eq!(&first, &gen_random_uniform(v, n, m, seed, distinct).unwrap());
        prop_assert_eq!(first.edge_count(), m);
        for e in first.edges() {
            prop_assert_eq!(e.iter().collect::<HashSet<_>>().len(), n);
            prop_assert!(e.iter().all(|&x| x < v));
        }
        if distinct {
            prop_assert!(first.duplicate_edges().is_empty());
        }
    }

    #[test]
    fn proper_iff_no_monochromatic_pair(h in hypergraph(10, 4, 12), (a, b) in palette(), seed: u64) {
        let chi = random_fractional_coloring(&h, a, b, seed).unwrap();
        prop_assert_eq!(is_proper(&h, &chi).unwrap(), monochromatic_pairs(&h, &chi).unwrap().is_empty());
    }

    #[test]
    fn blow_up_multiplies_monochromatic_pairs(h in hypergraph(10, 4, 12), (a, b) in palette(), k in 2u32..=3, seed: u64) {
        let chi = random_fractional_coloring(&h, a, b, seed).unwrap();
        let big = chi.blow_up(k).unwrap();
        prop_assert_eq!((big.a(), big.b()), (k * a, k * b));
        prop_assert_eq!(is_proper(&h, &big).unwrap(), is_proper(&h, &chi).unwrap());
        let pairs = monochromatic_pairs(&h, &chi).unwrap();
        let big_pairs = monochromatic_pairs(&h, &big).unwrap();
        prop_assert_eq!(big_pairs.len(), k as usize * pairs.len());
    }

    #[test]
    fn panchromatic_conversion_is_inverse(a in 2u32..=6, colors in proptest::collection::vec(0u32..6, 0..12)) {
        let colors: Vec<u32> = colors.into_iter().map(|c| c % a).collect();
        let pan = PanchromaticColoring::new(a, colors).unwrap();
        let chi = from_panchromatic(&pan).unwrap();
        prop_assert_eq!(chi.b(), a - 1);
        prop_assert_eq!(to_panchromatic(&chi).unwrap(), pan);
    }

    #[test]
    fn properness_matches_panchromatic_image(h in hypergraph(8, 4, 10), a in 2u32..=5, seed: u64) {
        let chi = random_fractional_coloring(&h, a, a - 1, seed).unwrap();
        let pan = to_panchromatic(&chi).unwrap();
        prop_assert_eq!(&from_panchromatic(&pan).unwrap(), &chi);
        prop_assert_eq!(is_proper(&h, &chi).unwrap(), is_panchromatic(&h, &pan).unwrap());
    }

    #[test]
    fn inclusion_exclusion_matches_enumeration((a, b) in palette(), n in 2usize..=4, v in 4usize..=10, seed: u64) {
        let h = Hypergraph::new(v, n, Vec::<Vec<usize>>::new()).unwrap();
        let chi = random_fractional_coloring(&h, a, b, seed).unwrap();
        prop_assert_eq!(bad_prob_inclusion_exclusion(&chi, v, n).unwrap(), bad_fraction(&chi, n));
    }

    #[test]
    fn telescoping_holds((a, b) in palette(), n in 2usize..=4, v in 4usize..=12, seed: u64) {
        let h = Hypergraph::new(v, n, Vec::<Vec<usize>>::new()).unwrap();
        let chi = random_fractional_coloring(&h, a, b, seed).unwrap();
        for x in 0..a {
            let table = s_sums(&chi, x, v, n).unwrap();
            prop_assert!(telescoping_check(&table, b as usize));
            if b <= 3 {
                prop_assert!(table.counting_violations().is_empty());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theorem1_outcome_invariants(v in 20usize..80, n in 3usize..8, m in 0usize..60, a in 4u32..8, seed: u64, p in 0.01f64..0.9) {
        let b = 2 + (seed % (a as u64 - 3)) as u32;
        let h = gen_random_uniform(v, n, m, seed, false).unwrap();
        let params = SolverParams { p_override: Some(p), ..SolverParams::new(a, b, seed.rotate_left(7)) };
        let out = solve_theorem1(&h, &params).unwrap();
        let mut touched = HashSet::new();
        for ev in &out.events {
            prop_assert!(touched.insert(ev.vertex));
            prop_assert!(ev.weight < out.threshold);
            let initial = out.initial_coloring.get(ev.vertex);
            prop_assert!(initial.contains(ev.removed_color) && !initial.contains(ev.added_color));
            let shared = out.initial_coloring.common_colors(h.edge(ev.triggering_edge));
            prop_assert!(h.edge(ev.triggering_edge).contains(&ev.vertex));
            prop_assert!(shared >> ev.removed_color & 1 == 1);
        }
        for x in 0..v {
            if !touched.contains(&x) {
                prop_assert_eq!(out.final_coloring.get(x), out.initial_coloring.get(x));
            }
        }
        prop_assert_eq!(out.is_proper(), is_proper(&h, &out.final_coloring).unwrap());
        if !out.is_proper() {
            prop_assert!(!classify_failure(&h, &out).unwrap().is_empty());
        }
        if monochromatic_pairs(&h, &out.initial_coloring).unwrap().is_empty() {
            prop_assert!(out.events.is_empty());
            prop_assert!(out.is_proper());
        }
        prop_assert_eq!(solve_theorem1(&h, &params).unwrap(), out);
    }

    #[test]
    fn alon_respects_reserve_capacity(v in 10usize..40, m in 0usize..40, seed: u64) {
        let (n, a, b) = (3usize, 9u32, 1u32);
        let h = gen_random_uniform(v, n, m, seed, false).unwrap();
        let params = AlonParams::new(a, b, seed);
        if let Ok((chi, ledger)) = solve_alon(&h, &params) {
            prop_assert!(is_proper(&h, &chi).unwrap());
            prop_assert!(ledger.usage.iter().all(|&u| u < n));
            prop_assert!(ledger.attempt >= 1 && ledger.attempt <= params.max_attempts);
            prop_assert!(chi.sets().iter().all(|s| s.len() == b));
        }
    }

    #[test]
    fn colorability_is_monotone(h in hypergraph(5, 3, 6), (a, b) in (2u32..=4).prop_flat_map(|a| (Just(a), 1..a))) {
        let budget = unlimited();
        if brute_force_colorable(&h, a, b, &budget).unwrap().is_some() {
            prop_assert!(brute_force_colorable(&h, a + 1, b, &budget).unwrap().is_some());
            prop_assert!(brute_force_colorable(&h, 2 * a, 2 * b, &budget).unwrap().is_some());
        }
    }

    #[test]
    fn one_color_per_vertex_is_ordinary_coloring(h in hypergraph(6, 3, 8), a in 1u32..=4) {
        let found = brute_force_colorable(&h, a.max(2), 1, &Budget::default()).unwrap();
        prop_assert_eq!(found.is_some(), has_proper_coloring(&h, a.max(2)));
    }

    #[test]
    fn all_but_one_color_is_panchromatic(h in hypergraph(6, 4, 8), a in 2u32..=4) {
        let found = brute_force_colorable(&h, a, a - 1, &Budget::default()).unwrap();
        prop_assert_eq!(found.is_some(), has_panchromatic_coloring(&h, a));
    }

    #[test]
    fn lp_primal_equals_dual(h in graph(9, 16)) {
        let budget = Budget::default();
        let primal = chi_f_primal(&h, &budget).unwrap();
        let dual = chi_f_dual(&h, &budget).unwrap();
        prop_assert!(primal.value.is_some());
        prop_assert_eq!(&primal.value, &dual.value);
        let chi_f = primal.value.unwrap();
        match chi_f_via_ab_search(&h, 4, &unlimited()) {
            Ok(ab) => prop_assert!(ab.ratio >= chi_f),
            Err(e) => {
                prop_assert_eq!(e, Error::NotFound { a_max: 4 });
                prop_assert!(chi_f > BigRational::from_integer(2.into()));
            }
        }
    }
}

#[test]
fn complete_hypergraph_lists_every_subset_once() {
    for v in 1..=9 {
        for n in 1..=v {
            let h = gen_complete_uniform(v, n).unwrap();
            let distinct: HashSet<_> = h.edges().iter().collect();
            assert_eq!(distinct.len(), h.edge_count());
            assert_eq!(
                h.edge_count() as u128,
                frachyp::combinatorics::binomial_u128(v as u64, n as u64).unwrap()
            );
        }
    }
}
