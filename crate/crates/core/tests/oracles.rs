//! Brute-force oracles for the packed-word combinatorics.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use wqsym_core::packedword::*;
use wqsym_core::WQSymElement;

fn all_words(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

fn is_packed(w: &[u32]) -> bool {
    let set: BTreeSet<u32> = w.iter().copied().collect();
    set.iter().copied().eq(1..=set.len() as u32)
}

fn words_up_to(n: usize) -> Vec<PackedWord> {
    (0..=n).flat_map(|k| enumerate_packed_words(k).unwrap().to_vec()).collect()
}

#[test]
fn fubini_counts_match_filtered_words() {
    let expected = [1usize, 1, 3, 13, 75, 541];
    for (n, &want) in expected.iter().enumerate() {
        let brute: BTreeSet<Vec<u32>> = all_words(n, n as u32).into_iter().filter(|w| is_packed(w)).collect();
        assert_eq!(brute.len(), want);
        let got: BTreeSet<Vec<u32>> = enumerate_packed_words(n).unwrap().iter().map(PackedWord::to_vec).collect();
        assert_eq!(got, brute, "n = {n}");
    }
    assert_eq!(enumerate_packed_words(6).unwrap().len(), 4683);
    assert!(enumerate_packed_words(8).is_err());
}

#[test]
fn enumeration_is_canonically_ordered() {
    let w = words_up_to(4);
    assert!(w.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn pack_is_idempotent() {
    for n in 0..=6 {
        for w in all_words(n, 6) {
            let p = pack(&w);
            assert!(is_packed(&p.to_vec()));
            assert_eq!(pack(&p.to_vec()), p);
            assert_eq!(descents(&w), descents(p.letters()));
        }
    }
}

#[test]
fn set_compositions_round_trip() {
    for u in words_up_to(5) {
        let s = to_set_composition(&u);
        assert_eq!(s.blocks().len(), u.breadth());
        assert_eq!(from_set_composition(&s), u);
        assert_eq!(to_set_composition(&from_set_composition(&s)), s);
    }
}

/// `{w = u'v' : pack(u') = u, pack(v') = v}` as a multiset.
fn quasi_shuffle_oracle(u: &PackedWord, v: &PackedWord) -> BTreeMap<Vec<u32>, usize> {
    let m = u.breadth() + v.breadth();
    let mut out = BTreeMap::new();
    for a in realize(u, m) {
        for b in realize(v, m) {
            let w: Vec<u32> = a.iter().chain(&b).copied().collect();
            if is_packed(&w) {
                *out.entry(w).or_insert(0) += 1;
            }
        }
    }
    out
}

#[test]
fn quasi_shuffle_matches_realization_oracle() {
    let words = words_up_to(5);
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= 6) {
            let oracle = quasi_shuffle_oracle(u, v);
            assert!(oracle.values().all(|&c| c == 1), "{u} {v}");
            let got: Vec<Vec<u32>> = quasi_shuffle_indices(u, v).iter().map(PackedWord::to_vec).collect();
            let want: Vec<Vec<u32>> = oracle.into_keys().collect();
            let mut sorted = got.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), got.len(), "duplicates in {u} * {v}");
            assert_eq!(sorted, want, "{u} * {v}");
        }
    }
}

#[test]
fn realization_of_the_running_example() {
    let u = PackedWord::new(&[1, 3, 1, 3, 2]).unwrap();
    let got: Vec<String> = realize(&u, 5)
        .iter()
        .map(|w| w.iter().map(u32::to_string).collect())
        .collect();
    let mut want = vec![
        "13132", "14142", "14143", "24243", "15152", "15153", "25253", "15154", "25254", "35354",
    ];
    want.sort();
    assert_eq!(got, want);
    for w in realize(&u, 6) {
        assert_eq!(pack(&w), u);
    }
}

#[test]
fn shifted_concat_is_associative_and_additive() {
    let words = words_up_to(3);
    for u in &words {
        for v in &words {
            let uv = shifted_concat(u, v);
            assert_eq!(uv.breadth(), u.breadth() + v.breadth());
            for w in words.iter().filter(|w| w.len() <= 2) {
                assert_eq!(shifted_concat(&uv, w), shifted_concat(u, &shifted_concat(v, w)));
            }
        }
    }
}

#[test]
fn composition_of_surjections_is_associative() {
    let words = words_up_to(4);
    let by_len = |n: usize| words.iter().filter(move |w| w.len() == n);
    let mut checked = 0;
    for u in words.iter().filter(|u| !u.is_empty()) {
        for v in by_len(u.breadth()) {
            for w in by_len(v.breadth()) {
                let wv = compose_surjections(v, w).unwrap();
                let vu = compose_surjections(u, v).unwrap();
                assert_eq!(compose_surjections(u, &wv), compose_surjections(&vu, w));
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
    let u = PackedWord::new(&[1, 2]).unwrap();
    assert!(compose_surjections(&u, &PackedWord::new(&[1]).unwrap()).is_none());
}

#[test]
fn reverse_swaps_ascents_and_descents() {
    for u in words_up_to(5) {
        let n = u.len();
        let r = reverse(&u);
        assert_eq!(reverse(&r), u);
        let ascents: BTreeSet<usize> = (1..n).filter(|&i| u.at(i) < u.at(i + 1)).map(|i| n - i).collect();
        assert_eq!(descents(r.letters()), ascents, "{u}");
    }
}

/// Lyndon by the rotation test: strictly smaller than every nontrivial rotation.
fn lyndon_by_rotation(c: &[u32]) -> bool {
    (1..c.len()).all(|i| {
        let rot: Vec<u32> = c[i..].iter().chain(&c[..i]).copied().collect();
        c < rot.as_slice()
    })
}

#[test]
fn lyndon_compositions_match_rotation_oracle() {
    let mut counts = vec![];
    for n in 1..=7 {
        let oracle: Vec<Composition> = compositions_of(n)
            .into_iter()
            .filter(|c| lyndon_by_rotation(c.parts()))
            .collect();
        assert_eq!(lyndon_compositions(n), oracle, "n = {n}");
        counts.push(oracle.len());
    }
    assert_eq!(counts, vec![1, 1, 2, 3, 6, 9, 18]);
    assert_eq!(compositions_of(5).len(), 16);
}

#[test]
fn evaluation_and_descent_sets() {
    let u = PackedWord::new(&[1, 3, 1, 3, 2]).unwrap();
    assert_eq!(evaluation(&u).parts(), &[2, 1, 2]);
    let c = Composition::new(&[2, 1, 3]).unwrap();
    assert_eq!(c.descent_set(), BTreeSet::from([2, 3]));
    assert_eq!(c.reverse_descent_set(), BTreeSet::from([3, 4]));
    assert_eq!(Composition::from_descent_set(6, &c.descent_set()), c);
}

fn packed_word_strategy(max_len: usize) -> impl Strategy<Value = PackedWord> {
    prop::collection::vec(1u32..=6, 0..=max_len).prop_map(|w| pack(&w))
}

proptest! {
    #[test]
    fn value_split_reassembles(u in packed_word_strategy(6)) {
        for i in 0..=u.breadth() {
            let (lo, hi) = value_split(&u, i);
            prop_assert_eq!(lo.len() + hi.len(), u.len());
            prop_assert_eq!(lo.breadth(), i);
            prop_assert_eq!(hi.breadth(), u.breadth() - i);
        }
    }

    #[test]
    fn outer_product_grading(u in packed_word_strategy(3), v in packed_word_strategy(3)) {
        let p = WQSymElement::basis(u.clone()).outer(&WQSymElement::basis(v.clone()));
        prop_assert!(p.terms().all(|(w, _)| w.len() == u.len() + v.len()));
        let one = wqsym_core::rational::one();
        for (w, c) in p.terms() {
            let (a, b) = w.letters().split_at(u.len());
            let widen = |x: &[u8]| x.iter().map(|&l| l as u32).collect::<Vec<_>>();
            prop_assert_eq!(c, &one);
            prop_assert_eq!(pack(&widen(a)), u.clone());
            prop_assert_eq!(pack(&widen(b)), v.clone());
        }
    }

    #[test]
    fn json_round_trip(u in packed_word_strategy(5)) {
        let s = serde_json::to_string(&u).unwrap();
        prop_assert_eq!(serde_json::from_str::<PackedWord>(&s).unwrap(), u);
    }
}
