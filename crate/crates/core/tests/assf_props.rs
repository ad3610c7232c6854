use assf_core::assf::AssfContext;
use assf_core::cartan::Family;
use assf_core::partition::sort_parts;
use assf_core::pieri::partition_of;
use assf_core::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn pow2(e: i64) -> Rational {
    let two = Rational::from_integer(2.into());
    if e >= 0 {
        (0..e).fold(Rational::one(), |a, _| a * &two)
    } else {
        (0..-e).fold(Rational::one(), |a, _| a / &two)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn factorization_counts_are_symmetric(
        idx in 0usize..4,
        word in prop::collection::vec(0usize..=4, 1..7),
        shuffle in any::<u64>(),
    ) {
        let (f, n) = [(Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::A, 3)][idx];
        let cx = AssfContext::new(f, n).unwrap();
        let word: Vec<usize> = word.into_iter().map(|i| i % (n + 1)).collect();
        let w = cx.nilcox().group().from_word(&word).unwrap();
        prop_assume!(w.length() > 0);
        let assf = cx.assf(&w).unwrap().value;
        for (lam, c) in assf.terms() {
            if lam.len() > 3 {
                continue;
            }
            let mut comp = lam.clone();
            let len = comp.len();
            comp.rotate_left((shuffle as usize) % len);
            if comp.len() > 1 && (shuffle / 5) % 2 == 1 {
                comp.swap(0, 1);
            }
            prop_assert_eq!(sort_parts(&comp), lam.clone());
            prop_assert_eq!(&cx.factorization_count(&w, &comp), c, "{} at {:?}", w, comp);
        }
    }
}

#[test]
fn type_b_is_unitriangular_up_to_a_power_of_two() {
    for (n, top) in [(3, 5), (4, 6)] {
        let cx = AssfContext::new(Family::B, n).unwrap();
        for d in 1..=top {
            for w in cx.grassmannian(d) {
                let lam = partition_of(&w, cx.nilcox().group()).unwrap();
                let f = cx.assf(&w).unwrap().value;
                for mu in f.terms().keys() {
                    assert!(mu <= &lam.parts, "B{n} {w}: m{mu:?} above {lam}");
                }
                assert_eq!(f.coeff(&lam.parts), pow2(-(lam.p_geq(n) as i64)), "B{n} {w}");
            }
        }
    }
}

#[test]
fn kschur_duality() {
    for (n, top) in [(3, 5), (4, 6)] {
        let cx = AssfContext::new(Family::B, n).unwrap();
        for d in 1..=top {
            let bad = cx.duality_failures(d).unwrap();
            assert!(bad.is_empty(), "B{n} degree {d}: {bad:?}");
        }
    }
}

#[test]
fn assf_agrees_with_kernel_expansion() {
    for (f, n) in [(Family::B, 3), (Family::D, 4)] {
        let cx = AssfContext::new(f, n).unwrap();
        for d in 1..=6 {
            for w in cx.grassmannian(d) {
                assert_eq!(cx.assf(&w).unwrap().value, cx.assf_via_kernel(&w).unwrap().value, "{f}{n} {w}");
            }
        }
    }
}

#[test]
fn kernel_identity_holds() {
    for (f, n) in [(Family::B, 3), (Family::D, 4)] {
        let cx = AssfContext::new(f, n).unwrap();
        for d in 1..=5 {
            assert!(cx.kernel_identity(d).unwrap(), "{f}{n} degree {d}");
        }
    }
}

#[test]
fn identity_gives_one() {
    let cx = AssfContext::new(Family::B, 3).unwrap();
    let e = cx.nilcox().group().identity();
    let f = cx.assf(&e).unwrap().value;
    assert_eq!(f.terms().len(), 1);
    assert_eq!(f.coeff(&[]), Rational::one());
    assert!(f.coeff(&[1]).is_zero());
}
