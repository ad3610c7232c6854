use assf_core::cartan::Family;
use assf_core::nilcox::{reduced_words, NilCoxContext};
use assf_core::nilhecke::{coassociative, multiplicative_on, CoproductCache};
use assf_core::pieri::{
    element_of, partition_of, pieri_factors, pieri_factors_typefree, segment_factorization, segments,
    support_profile_of_word,
};
use assf_core::weyl::WeylGroup;
use proptest::prelude::*;

#[test]
fn typefree_factors_agree() {
    let cases = [(Family::A, 5), (Family::B, 4), (Family::C, 4), (Family::D, 4)];
    for (f, top) in cases {
        for n in f.min_rank()..=top {
            let g = WeylGroup::new(f, n).unwrap();
            let a = pieri_factors(&g).unwrap();
            let b = pieri_factors_typefree(&g).unwrap();
            assert!(a.same_elements(&b), "{f}{n}");
        }
    }
}

#[test]
fn grassmannian_factors_are_segments() {
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::D, 4), (Family::D, 5)] {
        let g = WeylGroup::new(f, n).unwrap();
        let segs: Vec<_> = segments(&g).unwrap().into_iter().map(|s| s.element).collect();
        for w in pieri_factors(&g).unwrap().iter() {
            let one_grass = w.right_descents().iter().all(|&i| i == 1);
            if !w.is_identity() && (w.is_grassmannian() || one_grass) {
                assert!(segs.contains(w), "{f}{n}: {w}");
            }
        }
    }
}

#[test]
fn segment_factorizations_round_trip() {
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::D, 4)] {
        let g = WeylGroup::new(f, n).unwrap();
        for level in g.grassmannian_elements(7) {
            for w in level {
                let lens: Vec<usize> = segment_factorization(&w, &g).unwrap().iter().map(|s| s.length).collect();
                assert!(lens.windows(2).all(|p| p[0] >= p[1]), "{w}: {lens:?}");
                let lam = partition_of(&w, &g).unwrap();
                assert_eq!(element_of(&lam, &g).unwrap(), w);
            }
        }
    }
}

#[test]
fn type_b_rho_unique() {
    for n in 2..=4 {
        let g = WeylGroup::new(Family::B, n).unwrap();
        let pf = pieri_factors(&g).unwrap();
        for i in 1..=2 * n - 1 {
            assert_eq!(pf.grassmannian_at(i).len(), 1, "B{n} i={i}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn support_is_word_independent(
        idx in 0usize..3,
        pick in prop::collection::vec(any::<prop::sample::Index>(), 3),
        k in 0usize..1000,
    ) {
        let (f, n) = [(Family::B, 3), (Family::C, 3), (Family::D, 4)][idx];
        let g = WeylGroup::new(f, n).unwrap();
        let pf = pieri_factors(&g).unwrap();
        let all: Vec<_> = pf.iter().cloned().collect();
        let w = &all[k % all.len()];
        let words = reduced_words(w);
        let base = support_profile_of_word(f, n, w.canonical_word());
        for p in pick {
            let other = support_profile_of_word(f, n, p.get(&words));
            prop_assert_eq!(&other.support, &base.support);
            prop_assert_eq!(other.cc, base.cc);
            prop_assert_eq!(other.c, base.c);
        }
    }
}

#[test]
fn pieri_elements_match_solver() {
    let mut cases = vec![(Family::A, 5)];
    for f in Family::ALL {
        for n in f.min_rank()..=4 {
            cases.push((f, n));
        }
    }
    for (f, n) in cases {
        let ctx = NilCoxContext::new(f, n).unwrap();
        for r in 1..=ctx.max_pieri_index() {
            let p = ctx.pieri_element(r).unwrap();
            assert!(ctx.verify_in_b(&p).unwrap().passed, "{f}{n} r={r}");
            assert_eq!(ctx.pieri_via_solver(r).unwrap(), p, "{f}{n} r={r}");
        }
    }
}

#[test]
fn cover_identities() {
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::D, 4)] {
        let ctx = NilCoxContext::new(f, n).unwrap();
        let sums = ctx.check_cover_coroot_sums().unwrap();
        assert!(!sums.is_empty());
        assert!(sums.iter().all(|c| c.holds), "{f}{n}");
    }
    let d4 = NilCoxContext::new(Family::D, 4).unwrap();
    assert!(d4.check_epsilon_covers().unwrap().iter().all(|c| c.holds));
}

#[test]
fn epsilon_has_two_grassmannian_terms() {
    for n in [4, 5] {
        let ctx = NilCoxContext::new(Family::D, n).unwrap();
        let eps = ctx.epsilon().unwrap();
        assert!(ctx.verify_in_b(&eps).unwrap().passed);
        assert_eq!(eps.terms().keys().filter(|w| w.is_grassmannian()).count(), 2);
    }
}

#[test]
fn type_b_solver_is_integral() {
    let ctx = NilCoxContext::new(Family::B, 3).unwrap();
    for level in ctx.group().grassmannian_elements(6) {
        for w in level {
            assert!(ctx.kschur_solver(&w).unwrap().integral, "{w}");
        }
    }
}

#[test]
fn coproduct_multiplicative_on_short_products() {
    for (f, n) in [(Family::B, 3), (Family::D, 4)] {
        let g = WeylGroup::new(f, n).unwrap();
        let mut cache = CoproductCache::default();
        for lw in 1..=3 {
            for w in g.elements_of_length(lw) {
                for lv in 1..=4 - lw {
                    for v in g.elements_of_length(lv) {
                        assert!(multiplicative_on(&w, &v, &mut cache).unwrap(), "{f}{n}: {w} {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn coproduct_word_independent() {
    for (f, n) in [(Family::B, 3), (Family::D, 4)] {
        let g = WeylGroup::new(f, n).unwrap();
        let mut cache = CoproductCache::default();
        for l in 1..=5 {
            for w in g.elements_of_length(l) {
                cache.phi0_coproduct_basis(&w).unwrap();
            }
        }
    }
}

#[test]
fn coproduct_coassociative_on_pieri() {
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::D, 4)] {
        let ctx = NilCoxContext::new(f, n).unwrap();
        let mut cache = CoproductCache::default();
        for r in 1..=3 {
            assert!(coassociative(&ctx.pieri_element(r).unwrap(), &mut cache).unwrap(), "{f}{n} r={r}");
        }
    }
}
