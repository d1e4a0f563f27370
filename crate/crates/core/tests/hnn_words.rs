//! HNN extensions over S3 × S3: defining relations, Britton's lemma,
//! confluence of the rewriting, and the action on the Bass–Serre tree.

use displace_core::checkers::{check_binate, check_mitotic, GeneratorMap};
use displace_core::group::{conj, FgSubgroup, FiniteGroup, Group, Pair};
use displace_core::hnn::{
    b_tower, b_tower_embed, cc_witness_search_b1, distinct_elements, mitosis_check, BrittonWord,
    HnnGroup, Letter,
};
use displace_core::perm::{Permutation, SymmetricGroup};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Hnn = HnnGroup<SymmetricGroup>;

fn s3() -> SymmetricGroup {
    SymmetricGroup::new(3)
}

fn both() -> [Hnn; 2] {
    [HnnGroup::binate(s3()), HnnGroup::mitosis(s3())]
}

fn raw_word(g: &Hnn, letters: usize, rng: &mut ChaCha8Rng) -> BrittonWord<Permutation> {
    let bases = g.base_group().elements(100).unwrap();
    let alphabet = g.letters();
    let mut w = BrittonWord {
        bases: vec![bases[rng.gen_range(0..bases.len())].clone()],
        letters: Vec::new(),
    };
    for _ in 0..letters {
        w.letters.push(alphabet[rng.gen_range(0..alphabet.len())]);
        // bias towards associated-subgroup elements so pinches happen often
        let b = bases[rng.gen_range(0..bases.len())].clone();
        let b = if rng.gen_bool(0.5) {
            match w.letters.last().unwrap() {
                Letter::D => Pair(b.1.clone(), b.1),
                Letter::DInv | Letter::S => Pair(g.gamma.identity(), b.1),
                Letter::SInv => Pair(b.0, g.gamma.identity()),
            }
        } else {
            b
        };
        w.bases.push(b);
    }
    w
}

/// Value of a raw word: product of its letters, computed one factor at a time.
fn evaluate(g: &Hnn, w: &BrittonWord<Permutation>) -> BrittonWord<Permutation> {
    let mut acc = g.base_word(w.bases[0].clone());
    for (sigma, b) in w.letters.iter().zip(&w.bases[1..]) {
        acc = g.op(&acc, &g.letter(*sigma));
        acc = g.op(&acc, &g.base_word(b.clone()));
    }
    acc
}

#[test]
fn defining_relations_hold() {
    for g in s3().elements(6).unwrap() {
        let b = HnnGroup::binate(s3());
        let d = b.letter(Letter::D);
        assert_eq!(conj(&b, &d, &b.plus(g.clone())).unwrap(), b.diagonal(g.clone()));
        let m = HnnGroup::mitosis(s3());
        let (d, s) = (m.letter(Letter::D), m.letter(Letter::S));
        assert_eq!(conj(&m, &d, &m.plus(g.clone())).unwrap(), m.diagonal(g.clone()));
        assert_eq!(conj(&m, &s, &m.minus(g.clone())).unwrap(), m.plus(g.clone()));
        if !g.is_identity() {
            assert_ne!(conj(&m, &s, &m.plus(g.clone())).unwrap(), m.minus(g.clone()));
        }
    }
}

#[test]
fn brittons_lemma_on_one_letter_words() {
    for g in both() {
        let words = g.reduced_words(1).unwrap();
        assert_eq!(words.len(), 36 * 36 * g.letters().len());
        for w in &words {
            assert!(!g.represents_identity(w).unwrap(), "{w}");
        }
    }
}

#[test]
fn normal_forms_are_distinct_elements() {
    for g in both() {
        for m in 0..=2 {
            let nf = g.normal_forms(m).unwrap();
            assert_eq!(distinct_elements(&g, &nf).unwrap(), nf.len());
            for w in nf.iter().take(2000) {
                assert_eq!(&g.normal_form(w).unwrap(), w);
            }
        }
    }
}

#[test]
fn rewriting_is_confluent_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for g in both() {
        for _ in 0..500 {
            let n = rng.gen_range(0..=6);
            let w = raw_word(&g, n, &mut rng);
            let nf = g.normal_form(&w).unwrap();
            let shuffled = g.reduce_random_order(&w, &mut rng).unwrap();
            assert_eq!(g.normal_form(&shuffled).unwrap(), nf, "{w}");
            assert_eq!(evaluate(&g, &w), nf);
            let reduced = g.britton_reduce(&w).unwrap();
            assert!(reduced.letters.len() <= w.letters.len());
            assert_eq!(g.normal_form(&reduced).unwrap(), nf);
        }
    }
}

#[test]
fn stabilizers_at_radius_one_are_conjugated_edge_groups() {
    for g in both() {
        let ball = g.ball(1).unwrap();
        assert_eq!(ball.len(), 1 + 6 * g.letters().len());
        let base = g.base_group();
        for x in base.elements(100).unwrap() {
            let xw = g.base_word(x.clone());
            for (v, _) in ball.iter().skip(1) {
                let r = &v.word.bases[0];
                let sigma = v.word.letters[0];
                let inner = base.op(&base.op(&base.inverse(r), &x), r);
                assert_eq!(g.fixes(&xw, v), g.in_associated(sigma, &inner), "{x} at {v}");
            }
            assert!(g.fixes(&xw, &ball[0].0));
        }
    }
}

#[test]
fn minus_elements_fix_only_the_base_vertex() {
    let g = HnnGroup::binate(s3());
    for x in s3().elements(6).unwrap().into_iter().skip(1) {
        let fixed = g.bass_serre_fixed_vertices(&g.minus(x.clone()), 3).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].distance(), 0);
        let diag = g.bass_serre_fixed_vertices(&g.diagonal(x), 1).unwrap();
        assert!(diag.len() >= 2);
    }
}

#[test]
fn fixed_edges_of_minus_in_mitosis() {
    let m = HnnGroup::mitosis(s3());
    let gens = s3().standard_generators().into_iter().map(|x| m.minus(x)).collect();
    let h = FgSubgroup::new(&m, "Gamma_-", gens).unwrap();
    let counts: Vec<_> = (1..=3).map(|r| m.fixed_edge_count(&h, r).unwrap()).collect();
    assert!(counts[0] >= 1);
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_action_is_a_left_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in both() {
            let a = g.normal_form(&raw_word(&g, 2, &mut rng)).unwrap();
            let b = g.normal_form(&raw_word(&g, 2, &mut rng)).unwrap();
            let v = g.vertex_of(&g.normal_form(&raw_word(&g, 2, &mut rng)).unwrap());
            prop_assert_eq!(g.act(&g.op(&a, &b), &v), g.act(&a, &g.act(&b, &v)));
            // distance to the base vertex is preserved by base elements
            let x = g.base_word(a.bases[0].clone());
            prop_assert_eq!(g.act(&x, &v).distance(), v.distance());
        }
    }

    #[test]
    fn centralizing_elements_permute_fixed_vertices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in both() {
            let x = g.base_word(raw_word(&g, 0, &mut rng).bases[0].clone());
            let fixed = g.bass_serre_fixed_vertices(&x, 2).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(0..=2);
                let u = g.normal_form(&raw_word(&g, n, &mut rng)).unwrap();
                if g.op(&u, &x) != g.op(&x, &u) {
                    continue;
                }
                for v in &fixed {
                    prop_assert!(g.fixes(&x, &g.act(&u, v)));
                }
            }
        }
    }

    #[test]
    fn inverse_and_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in both() {
            let w = raw_word(&g, 4, &mut rng);
            let mut ww = g.concat(&w, &BrittonWord {
                bases: w.bases.iter().rev().map(|b| g.base_group().inverse(b)).collect(),
                letters: w.letters.iter().rev().map(|l| l.inverse()).collect(),
            });
            ww = g.britton_reduce(&ww).unwrap();
            prop_assert!(ww.letters.is_empty());
            prop_assert!(g.represents_identity(&ww).unwrap());
        }
    }
}

#[test]
fn no_cc_witness_with_one_stable_letter() {
    let search = cc_witness_search_b1(&s3(), &s3().standard_generators(), 1).unwrap();
    assert!(search.witness.is_none());
    assert_eq!(search.words_per_length[0], 36);
    let empty = cc_witness_search_b1(&s3(), &s3().standard_generators(), 0).unwrap();
    assert!(empty.witness.is_none());
    assert_eq!(empty.words_examined(), 36);
}

#[test]
fn mitosis_and_binate_instantiations() {
    let r = mitosis_check(&s3(), &s3().standard_generators()).unwrap();
    assert!(r.is_success(), "{r:?}");
    let m = HnnGroup::mitosis(s3());
    let h = FgSubgroup::new(&m, "Gamma_-", s3().standard_generators().into_iter().map(|x| m.minus(x)).collect())
        .unwrap();
    let s = m.letter(Letter::S);
    let d = m.letter(Letter::D);
    let ds = m.op(&d, &s);
    assert!(check_mitotic(&m, &h, &s, &ds).unwrap().is_success());
    let f = GeneratorMap::new(h.generators().iter().map(|x| conj(&m, &s, x).unwrap()).collect());
    assert!(check_binate(&m, &h, &f, &d).unwrap().is_success());
    // t = d·s is not a binate witness for f = ^s
    assert!(check_binate(&m, &h, &f, &ds).unwrap().is_fail());
}

#[test]
fn binate_tower_stages_embed() {
    let (b1, b2, b3) = b_tower(s3());
    let d1 = b1.letter(Letter::D);
    let e2 = b_tower_embed(&b2, &d1).unwrap();
    let e3 = b_tower_embed(&b3, &e2).unwrap();
    assert!(b2.check(&e2).is_ok());
    assert!(b3.check(&e3).is_ok());
    assert!(!b3.is_identity(&e3));
    let sq = b1.op(&d1, &d1);
    assert_eq!(b_tower_embed(&b2, &sq).unwrap(), b2.op(&e2, &e2));
}
