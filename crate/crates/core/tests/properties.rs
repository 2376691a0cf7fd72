use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use subword_core::clusters::{check_sorting, w0_sorting_word};
use subword_core::graph::{acyclic_orientations_brute_force, acyclic_orientations_chromatic};
use subword_core::hopf::key::commutation_normal_form;
use subword_core::hopf::verify::verify_key;
use subword_core::subsystem::{restrict_inversions, RootSubsystem};
use subword_core::*;

const TYPES: [&str; 6] = ["A3", "B3", "At2", "G2", "A1xA2", "At1"];
const FINITE_TYPES: [&str; 5] = ["A3", "B3", "C3", "G2", "A1xA2"];

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::from_type(name).unwrap()
}

fn word_in(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..rank, 0..=max_len).prop_map(Word)
}

fn system_and_word(types: &'static [&'static str], max_len: usize) -> impl Strategy<Value = (CoxeterSystem, Word)> {
    prop::sample::select(types).prop_flat_map(move |t| {
        let sys = system(t);
        let rank = sys.rank();
        (Just(sys), word_in(rank, max_len))
    })
}

/// A word together with a subset of positions; the subset's letters give `π`.
fn instance_strategy(max_len: usize) -> impl Strategy<Value = (CoxeterSystem, Word, Vec<bool>)> {
    system_and_word(&TYPES, max_len).prop_flat_map(|(sys, w)| {
        let len = w.len();
        (Just(sys), Just(w), prop::collection::vec(any::<bool>(), len))
    })
}

fn build_instance(sys: &CoxeterSystem, w: &Word, mask: &[bool]) -> SubwordInstance {
    let pi_word = Word(
        w.letters()
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(&l, _)| l)
            .collect(),
    );
    SubwordInstance::from_words(sys.clone(), w.clone(), &pi_word).unwrap()
}

fn brute_force_facets(inst: &SubwordInstance) -> Vec<Facet> {
    let sys = inst.system();
    let r = inst.len();
    let ell = inst.pi_length();
    if ell > r {
        return Vec::new();
    }
    let mut out: Vec<Facet> = (0..r)
        .combinations(r - ell)
        .map(Facet::new)
        .filter(|f| {
            let comp = inst.complement_word(f);
            sys.is_reduced(&comp) && sys.word_to_element(&comp) == *inst.pi()
        })
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn roots_are_positive_or_negative((sys, w) in system_and_word(&TYPES, 12)) {
        let g = sys.word_to_element(&w);
        for i in 0..sys.rank() {
            let r = g.image_of_simple(i);
            prop_assert!(r.is_positive() ^ r.is_negative(), "{r}");
        }
    }

    #[test]
    fn generators_are_involutions((sys, w) in system_and_word(&TYPES, 10)) {
        let g = sys.word_to_element(&w);
        for i in 0..sys.rank() {
            let twice = sys.right_multiply(&sys.right_multiply(&g, i), i);
            prop_assert_eq!(&twice, &g);
        }
        let inv = sys.inverse(&g);
        prop_assert!(g.compose(&inv).is_identity());
        prop_assert_eq!(sys.word_to_element(&w.reversed()), inv);
    }

    #[test]
    fn reduced_inversions_are_distinct_positive((sys, w) in system_and_word(&TYPES, 10)) {
        let g = sys.word_to_element(&w);
        let reduced = sys.reduced_word(&g);
        prop_assert!(sys.is_reduced(&reduced));
        prop_assert_eq!(sys.word_to_element(&reduced), g.clone());
        prop_assert_eq!(sys.element_length(&g), reduced.len());
        prop_assert!(reduced.len() <= w.len());
        prop_assert_eq!(reduced.len() % 2, w.len() % 2);
        let inv = sys.inversion_sequence(&reduced);
        let distinct: BTreeSet<_> = inv.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), inv.len());
        prop_assert!(inv.iter().all(RootVector::is_positive));
    }

    #[test]
    fn form_is_invariant((sys, w) in system_and_word(&TYPES, 10)) {
        let g = sys.word_to_element(&w);
        for i in 0..sys.rank() {
            for j in 0..sys.rank() {
                let x = sys.simple_root(i);
                let y = sys.simple_root(j);
                prop_assert_eq!(sys.form(&g.apply(&x), &g.apply(&y)), sys.form(&x, &y));
            }
        }
    }

    #[test]
    fn facets_match_brute_force((sys, w, mask) in instance_strategy(8)) {
        let inst = build_instance(&sys, &w, &mask);
        let facets = inst.facets();
        prop_assert_eq!(&facets, &brute_force_facets(&inst));
        let expected = inst.len() - inst.pi_length();
        prop_assert!(facets.iter().all(|f| f.len() == expected));
        prop_assert!(!facets.is_empty());
    }

    #[test]
    fn flips_connect_and_update_roots((sys, w, mask) in instance_strategy(8)) {
        let inst = build_instance(&sys, &w, &mask);
        let facets = inst.facets();
        prop_assert!(flip_graph_connected_ok(&facets));
        let all: BTreeSet<&Facet> = facets.iter().collect();
        for f in facets.iter().take(6) {
            let roots = inst.root_function(f).unwrap();
            for &i in f.positions() {
                match inst.flip(f, i).unwrap() {
                    FlipOutcome::Flipped { facet, partner } => {
                        prop_assert!(all.contains(&facet));
                        prop_assert!(roots[partner] == roots[i] || roots[partner] == -roots[i].clone());
                        let new_roots = inst.root_function(&facet).unwrap();
                        let (lo, hi) = (i.min(partner), i.max(partner));
                        for k in 0..inst.len() {
                            let expected = if lo < k && k <= hi {
                                sys.reflect(&roots[i], &roots[k])
                            } else {
                                roots[k].clone()
                            };
                            prop_assert_eq!(&new_roots[k], &expected);
                        }
                        let back = inst.flip(&facet, partner).unwrap();
                        prop_assert_eq!(back, FlipOutcome::Flipped { facet: f.clone(), partner: i });
                    }
                    FlipOutcome::NonFlippable => {
                        let comp = inst.complement(f);
                        prop_assert!(comp.iter().all(|&j| roots[j] != roots[i] && roots[j] != -roots[i].clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone((sys, w, mask) in instance_strategy(8), pick in prop::collection::vec(any::<bool>(), 8)) {
        let inst = build_instance(&sys, &w, &mask);
        let facet = inst.facets()[0].clone();
        let t = Tuple::new(inst, facet).unwrap();
        let j: Vec<usize> = (0..t.len()).filter(|&p| pick[p]).collect();
        let c = t.closure(&j);
        prop_assert!(j.iter().all(|&p| c.contains(p)));
        prop_assert_eq!(&t.closure(c.positions()), &c);
        let bigger: Vec<usize> = (0..t.len()).filter(|&p| pick[p] || p == 0).collect();
        let cb = t.closure(&bigger);
        prop_assert!(c.positions().iter().all(|&p| cb.contains(p)));
    }

    #[test]
    fn decomposition_theorem_on_random_tuples((sys, w, mask) in instance_strategy(7)) {
        let inst = build_instance(&sys, &w, &mask);
        for facet in inst.facets().into_iter().take(3) {
            let t = Tuple::new(inst.clone(), facet).unwrap();
            for flat in t.enumerate_flats() {
                let report = t.verify_decomposition_theorem(&flat);
                prop_assert!(report.passed, "{:?}", report.message);
            }
        }
    }

    #[test]
    fn inversions_restrict_to_subsystems(
        (sys, w) in system_and_word(&["A3", "B3", "At2"], 10),
        gens in prop::collection::vec(any::<bool>(), 3),
        extra in 0usize..6,
    ) {
        let rank = sys.rank();
        let mut rows: Vec<Vec<i64>> = (0..rank).filter(|&i| gens[i % gens.len()]).map(|i| sys.simple_root(i).0).collect();
        let inv = sys.inversion_sequence(&w);
        if extra < inv.len() {
            rows.push(inv[extra].abs().0);
        }
        let sub = RootSubsystem::Subspace(Subspace::span(rank, rows.iter().map(|r| r.as_slice())));
        let r = restrict_inversions(&sys, &w, &sub).unwrap();
        prop_assert!(r.is_consistent());
        prop_assert!(r.first_is_simple);
        prop_assert_eq!(r.word.len(), r.filtered.len());
    }

    #[test]
    fn orientation_count_matches_chromatic(n in 1usize..7, bits in prop::collection::vec(any::<bool>(), 15)) {
        let edges = (0..n).tuple_combinations().zip(bits.iter()).filter(|(_, &b)| b).map(|(e, _)| e);
        let g = SimpleGraph::from_edges(n, edges);
        let brute = acyclic_orientations_brute_force(&g).unwrap();
        prop_assert_eq!(brute, acyclic_orientations_chromatic(&g));
    }
}

fn flip_graph_connected_ok(facets: &[Facet]) -> bool {
    subword_core::subword::flip_graph_connected(facets)
}

/// Tuples small enough for exhaustive Hopf checks: irreducible, degree ≤ 3.
fn small_key_strategy() -> impl Strategy<Value = BasisKey> {
    let types: &'static [&'static str] = &["A1", "A2", "B2", "A1xA1", "A3", "A1xA2"];
    (prop::sample::select(types), any::<u64>()).prop_filter_map("reducible tuple", |(t, seed)| {
        let sys = system(t);
        let rank = sys.rank();
        let mut state = seed;
        let mut next = |m: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % m as u64) as usize
        };
        let len = rank + next(4);
        let word = Word((0..len).map(|_| next(rank)).collect());
        let facet = Facet::new((0..len).filter(|_| next(2) == 0).collect());
        let tuple = Tuple::from_word_and_facet(sys, word, facet).ok()?;
        if !tuple.is_irreducible() {
            return None;
        }
        canonicalize(&tuple).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hopf_axioms_on_random_keys(x in small_key_strategy()) {
        let r = verify_key(&x).unwrap();
        prop_assert!(r.passed(), "{}: {:?}", x, r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn canonicalization_ignores_commutations_and_labels(x in small_key_strategy(), perm_seed in 0usize..6, swap in 0usize..8) {
        let m = x.coxeter_matrix();
        let n = m.len();
        let perm: Vec<usize> = (0..n).permutations(n).nth(perm_seed % (1..=n).product::<usize>()).unwrap();
        let relabeled: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]]).collect()).collect();
        let inverse: Vec<usize> = (0..n).map(|i| perm.iter().position(|&p| p == i).unwrap()).collect();
        let mut letters: Vec<usize> = x.word().letters().iter().map(|&l| inverse[l]).collect();
        let mut facet: Vec<usize> = x.facet().positions().to_vec();
        let sys = CoxeterSystem::new(relabeled.clone()).unwrap();
        if letters.len() >= 2 {
            let p = swap % (letters.len() - 1);
            if sys.commute(letters[p], letters[p + 1]) && letters[p] != letters[p + 1] {
                letters.swap(p, p + 1);
                for q in facet.iter_mut() {
                    if *q == p { *q = p + 1 } else if *q == p + 1 { *q = p }
                }
            }
        }
        let y = BasisKey::from_parts(&relabeled, &Word(letters), &Facet::new(facet)).unwrap();
        prop_assert_eq!(y, x);
    }

    #[test]
    fn normal_form_is_commutation_invariant((sys, w) in system_and_word(&TYPES, 9), swap in 0usize..8) {
        let commute = |a: usize, b: usize| sys.commute(a, b);
        let (nf, order) = commutation_normal_form(w.letters(), commute);
        let mut v = w.0.clone();
        if v.len() >= 2 {
            let p = swap % (v.len() - 1);
            if v[p] != v[p + 1] && sys.commute(v[p], v[p + 1]) {
                v.swap(p, p + 1);
            }
        }
        prop_assert_eq!(&commutation_normal_form(&v, commute).0, &nf);
        let permuted: Vec<usize> = order.iter().map(|&i| w.0[i]).collect();
        prop_assert_eq!(permuted, nf);
    }
}

#[test]
fn sorting_words_satisfy_omega_criterion() {
    for t in FINITE_TYPES.iter().chain(["A4", "B4", "C4", "D4", "F4", "A2xA2", "A1xA1xA1"].iter()) {
        let sys = system(t);
        let n = sys.rank();
        for c in (0..n).permutations(n) {
            let c = Word(c);
            let w0c = w0_sorting_word(&sys, &c).unwrap().word();
            assert!(check_sorting(&sys, &c, &w0c).unwrap(), "{t} c={c}");
        }
    }
}
