use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wordlab::complexity::{
    check_profile_theorems, complexity_sequence, complexity_sequence_with, special_subwords,
    valence_table, Engine,
};
use wordlab::debruijn::{build_graph, de_bruijn_word, eulerian_circuit, hamiltonian_cycle};
use wordlab::{PackedBinary, Word};

fn word_strategy(max_k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (2..=max_k).prop_flat_map(move |k| {
        prop::collection::vec(0..k as u8, 0..=max_len)
            .prop_map(move |letters| Word::new(k, letters).unwrap())
    })
}

fn nonempty(max_k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word_strategy(max_k, max_len).prop_filter("nonempty", |w| !w.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn subword_counts_are_bounded(w in nonempty(5, 60)) {
        let k = w.alphabet_size();
        for n in 0..=w.len() {
            let subs = w.subwords(n).unwrap();
            let cap = (k as f64).powi(n as i32).min((w.len() - n + 1) as f64);
            prop_assert!(subs.len() as f64 <= cap);
        }
        prop_assert!(w.subwords(w.len() + 1).is_err());
    }

    #[test]
    fn multiplicities_sum_to_window_count(w in nonempty(4, 50), n in 1usize..8) {
        prop_assume!(n <= w.len());
        let total: usize = w
            .subwords(n)
            .unwrap()
            .iter()
            .map(|u| w.multiplicity(u).unwrap())
            .sum();
        prop_assert_eq!(total, w.len() - n + 1);
    }

    #[test]
    fn occurrences_are_sorted_matches(w in nonempty(3, 40), start in 0usize..40, len in 1usize..5) {
        prop_assume!(start + len <= w.len());
        let u = w.factor(start, len);
        let occ = w.occurrences(&u).unwrap();
        prop_assert_eq!(occ.len(), w.multiplicity(&u).unwrap());
        prop_assert!(occ.windows(2).all(|p| p[0].start < p[1].start));
        for o in occ {
            prop_assert_eq!(o.end - o.start + 1, len);
            prop_assert_eq!(w.factor(o.start - 1, len), u.clone());
        }
    }

    #[test]
    fn concatenation_identities(u in word_strategy(3, 20), v in word_strategy(3, 20), n in 0usize..5) {
        let v = v.with_alphabet(u.alphabet_size().max(v.alphabet_size())).unwrap();
        let u = u.with_alphabet(v.alphabet_size()).unwrap();
        let uv = u.concat(&v);
        prop_assert_eq!(uv.len(), u.len() + v.len());
        prop_assert_eq!(u.pow(n).len(), n * u.len());
        prop_assert_eq!(uv.reverse(), v.reverse().concat(&u.reverse()));
        prop_assert_eq!(u.reverse().reverse(), u);
    }

    #[test]
    fn packed_round_trip(bits in prop::collection::vec(0u8..2, 0..=64)) {
        let w = Word::new(2, bits).unwrap();
        let p = PackedBinary::try_from(&w).unwrap();
        prop_assert!(p == w && w == p);
        prop_assert_eq!(Word::from(p), w);
    }

    #[test]
    fn engines_and_theorems_agree(w in nonempty(6, 120)) {
        let fast = complexity_sequence_with(&w, Engine::Automaton).unwrap();
        let slow = complexity_sequence_with(&w, Engine::Naive).unwrap();
        prop_assert_eq!(&fast, &slow);
        let report = check_profile_theorems(&w).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report.failures().collect::<Vec<_>>());
        prop_assert_eq!(fast.p(fast.r_param), fast.peak_value);
    }

    #[test]
    fn valence_table_matches_special_subwords(w in nonempty(4, 40)) {
        let table = valence_table(&w).unwrap();
        let p = complexity_sequence(&w).unwrap();
        let zeros: usize = (1..=w.len()).map(|n| table.get(n, 0)).sum();
        prop_assert_eq!(zeros, w.len() - p.k_param + 1);
        for n in 1..=w.len() {
            prop_assert_eq!(table.row(n).iter().sum::<usize>(), p.p(n));
            prop_assert_eq!(special_subwords(&w, n).unwrap().len(), table.special_count(n));
        }
    }
}

#[test]
fn de_bruijn_words_dominate_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (k, len) in [(2, 10), (2, 12), (3, 20), (4, 33), (5, 40)] {
        let best = complexity_sequence(&de_bruijn_word(k, len).unwrap()).unwrap();
        for _ in 0..1000 {
            let letters = (0..len).map(|_| rng.gen_range(0..k as u8)).collect();
            let other = complexity_sequence(&Word::new(k, letters).unwrap()).unwrap();
            for n in 1..=len {
                assert!(other.p(n) <= best.p(n), "k = {k}, N = {len}, n = {n}");
            }
        }
    }
}

#[test]
fn tours_cover_their_graphs() {
    for (k, order) in [(2, 1), (2, 2), (2, 5), (3, 1), (3, 3), (4, 2), (5, 2)] {
        let g = build_graph(k, order).unwrap();
        let circuit = eulerian_circuit(&g);
        assert!(circuit.is_closed() && circuit.is_valid());
        assert_eq!(circuit.len() as u64, g.edge_count());
        let word = circuit.to_word();
        assert_eq!(word.len(), order + circuit.len());
        let edges: Vec<Word> = circuit.edge_words();
        for (i, e) in edges.iter().enumerate() {
            assert_eq!(&word.factor(i, order + 1), e);
        }

        let cycle = hamiltonian_cycle(k, order).unwrap();
        assert!(cycle.is_closed());
        let mut seen = cycle.vertex_ids();
        seen.pop();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len() as u64, g.vertex_count());
    }
}
