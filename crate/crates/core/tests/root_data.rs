use std::sync::Arc;

use assf_core::cartan::{AffineRoot, CartanData, Family};
use assf_core::weyl::{translation_from_coords, WeylElement, WeylGroup};
use assf_core::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn families() -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for n in f.min_rank()..=5 {
            out.push((f, n));
        }
    }
    out
}

#[test]
fn null_vectors_kill_cartan_matrix() {
    for (f, n) in families() {
        let cd = CartanData::new(f, n).unwrap();
        let a = cd.cartan_matrix();
        let (marks, comarks) = (cd.marks(), cd.comarks());
        for (i, a_i) in a.iter().enumerate().take(n + 1) {
            let row: i64 = (0..=n).map(|j| a_i[j] * marks[j]).sum();
            let col: i64 = (0..=n).map(|j| comarks[j] * a[j][i]).sum();
            assert_eq!((row, col), (0, 0), "{f}{n} index {i}");
        }
    }
}

#[test]
fn coweights_dual_to_simple_roots() {
    for (f, n) in families() {
        let cd = CartanData::new(f, n).unwrap();
        for i in 1..=n {
            let nu = cd.nu_fundamental_coweight(i).unwrap();
            for j in 1..=n {
                let mut e = vec![Rational::zero(); n];
                e[j - 1] = Rational::one();
                let want = if i == j { Rational::one() } else { Rational::zero() };
                assert_eq!(cd.finite_form(&nu.0, &e), want, "{f}{n} ({i},{j})");
            }
        }
    }
}

#[test]
fn coroots_odd_up_to_third_level() {
    for (f, n) in families() {
        let cd = CartanData::new(f, n).unwrap();
        for r in cd.positive_roots().to_vec() {
            for k in -3..=3 {
                let beta = AffineRoot { finite: r.clone(), delta: k };
                let c = cd.coroot_of(&beta).unwrap();
                let m = cd.coroot_of(&beta.neg()).unwrap();
                assert_eq!(m, c.neg());
            }
        }
    }
}

fn group_and_word() -> impl Strategy<Value = ((Family, usize), Vec<usize>)> {
    prop::sample::select(vec![(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::B, 4)])
        .prop_flat_map(|(f, n)| (Just((f, n)), prop::collection::vec(0..=n, 0..10)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_has_same_length(((f, n), word) in group_and_word()) {
        let g = WeylGroup::new(f, n).unwrap();
        let w = g.from_word(&word).unwrap();
        prop_assert_eq!(w.length(), w.inverse().length());
        prop_assert!(w.multiply(&w.inverse()).is_identity());
    }

    #[test]
    fn canonical_word_reproduces_element(((f, n), word) in group_and_word()) {
        let g = WeylGroup::new(f, n).unwrap();
        let w = g.from_word(&word).unwrap();
        let again = g.from_word(w.canonical_word()).unwrap();
        prop_assert_eq!(again.length(), w.canonical_word().len());
        prop_assert_eq!(again.linear_part(), w.linear_part());
        prop_assert_eq!(again.translation_part(), w.translation_part());
        prop_assert_eq!(again, w);
    }

    #[test]
    fn descents_match_lengths(((f, n), word) in group_and_word()) {
        let g = WeylGroup::new(f, n).unwrap();
        let w = g.from_word(&word).unwrap();
        for i in 0..=n {
            let mut left = vec![i];
            left.extend_from_slice(w.canonical_word());
            let shorter = g.from_word(&left).unwrap().length() + 1 == w.length();
            prop_assert_eq!(w.left_descents().contains(&i), shorter);
            let mut right = w.canonical_word().to_vec();
            right.push(i);
            let shorter = g.from_word(&right).unwrap().length() + 1 == w.length();
            prop_assert_eq!(w.right_descents().contains(&i), shorter);
        }
    }

    #[test]
    fn lower_covers_are_one_letter_deletions(((f, n), word) in group_and_word()) {
        let g = WeylGroup::new(f, n).unwrap();
        let w = g.from_word(&word).unwrap();
        prop_assume!(w.length() <= 6);
        let cw = w.canonical_word();
        let mut expected: Vec<WeylElement> = (0..cw.len())
            .map(|k| {
                let mut d = cw.to_vec();
                d.remove(k);
                g.from_word(&d).unwrap()
            })
            .filter(|v| v.length() + 1 == w.length())
            .collect();
        expected.sort();
        expected.dedup();
        let mut covers = w.lower_covers();
        covers.sort();
        for v in &covers {
            prop_assert!(v.bruhat_leq(&w));
        }
        prop_assert_eq!(covers, expected);
    }

    #[test]
    fn translations_add(
        idx in 0usize..4,
        a in prop::collection::vec(-2i64..=2, 4),
        b in prop::collection::vec(-2i64..=2, 4),
    ) {
        let (f, n) = [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)][idx];
        let cd = Arc::new(CartanData::new(f, n).unwrap());
        let (a, b) = (&a[..n], &b[..n]);
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let ta = translation_from_coords(&cd, a).unwrap();
        let tb = translation_from_coords(&cd, b).unwrap();
        prop_assert_eq!(ta.multiply(&tb).unwrap(), translation_from_coords(&cd, &sum).unwrap());
    }
}
