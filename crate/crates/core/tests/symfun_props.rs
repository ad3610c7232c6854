use assf_core::partition::{partitions, strict_partitions};
use assf_core::symfun::{m_multiply, shifted_kostka, shifted_tableaux, Basis, SymEngine, SymFunc};
use assf_core::Rational;
use num_traits::Zero;
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A random monomial expansion of degree `d`.
fn monomial_of_degree(d: usize) -> impl Strategy<Value = SymFunc> {
    let keys = partitions(d);
    prop::collection::vec(-3i64..=3, keys.len())
        .prop_map(move |cs| SymFunc::from_terms(Basis::Monomial, keys.iter().cloned().zip(cs.into_iter().map(r))))
}

fn small_monomial() -> impl Strategy<Value = SymFunc> {
    (1usize..=3).prop_flat_map(monomial_of_degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn monomial_product_commutes(f in small_monomial(), g in small_monomial()) {
        prop_assert_eq!(m_multiply(&f, &g), m_multiply(&g, &f));
    }

    #[test]
    fn monomial_product_associates(f in small_monomial(), g in small_monomial(), h in monomial_of_degree(1)) {
        prop_assert_eq!(m_multiply(&m_multiply(&f, &g), &h), m_multiply(&f, &m_multiply(&g, &h)));
    }

    #[test]
    fn schur_q_expansion_round_trips(d in 1usize..=6, seed in prop::collection::vec(-4i64..=4, 12)) {
        let sym = SymEngine::new();
        let strict = strict_partitions(d);
        let mut f = SymFunc::zero(Basis::Monomial);
        let mut want = SymFunc::zero(Basis::SchurQ);
        for (lam, &c) in strict.iter().zip(&seed) {
            f = f.add(&sym.schur_q(lam).unwrap().scale(&r(c))).unwrap();
            want.add_term(lam.clone(), &r(c));
        }
        prop_assert_eq!(sym.expand_schur_q(&f).unwrap(), want);
    }

    #[test]
    fn shifted_kostka_is_symmetric(d in 1usize..=7, k in 0usize..64, perm in any::<u64>()) {
        let strict = strict_partitions(d);
        let lam = &strict[k % strict.len()];
        let all = partitions(d);
        let mu = &all[(perm as usize) % all.len()];
        let mut content = mu.clone();
        // rotate and pad with a zero to get a non-sorted composition
        let len = content.len();
        content.rotate_left((perm as usize / 7) % len);
        content.insert((perm as usize / 3) % (len + 1), 0);
        prop_assert_eq!(shifted_kostka(lam, &content), shifted_kostka(lam, mu));
    }
}

#[test]
fn schur_q_matches_brute_force_tableaux() {
    let sym = SymEngine::new();
    for d in 1..=5 {
        for lam in strict_partitions(d) {
            let q = sym.schur_q(&lam).unwrap();
            // d letters suffice: one more letter changes no coefficient
            for letters in [d, d + 1] {
                let tableaux = shifted_tableaux(&lam, letters);
                for mu in partitions(d) {
                    let count = tableaux.iter().filter(|t| t.content() == mu).count() as i64;
                    assert_eq!(q.coeff(&mu), r(count), "Q{lam:?} at m{mu:?} with {letters} letters");
                }
            }
        }
    }
}

#[test]
fn q_relations_vanish() {
    let sym = SymEngine::new();
    for i in 1..=5 {
        assert!(sym.q_relation(i).unwrap().is_zero(), "i = {i}");
    }
}

#[test]
fn q_coproduct_on_two_alphabets() {
    let sym = SymEngine::new();
    for r in 0..=5 {
        assert!(sym.coproduct_holds(r), "r = {r}");
    }
}

#[test]
fn schur_q_and_p_are_dual() {
    let sym = SymEngine::new();
    for d in 1..=6 {
        for lam in strict_partitions(d) {
            let q = sym.schur_q(&lam).unwrap();
            for mu in strict_partitions(d) {
                let want = if lam == mu { r(1) } else { Rational::zero() };
                assert_eq!(sym.hl_pairing(&q, &sym.schur_p(&mu).unwrap()).unwrap(), want, "{lam:?} {mu:?}");
            }
        }
    }
}

#[test]
fn theta_turns_hall_into_hl_pairing() {
    let sym = SymEngine::new();
    for d in 1..=5 {
        for lam in partitions(d) {
            let h = SymFunc::basis_element(Basis::Complete, lam.clone());
            let th = sym.theta(&h).unwrap();
            for mu in strict_partitions(d) {
                let p = sym.schur_p(&mu).unwrap();
                assert_eq!(sym.hall_pairing(&h, &p).unwrap(), sym.hl_pairing(&th, &p).unwrap(), "{lam:?} {mu:?}");
            }
        }
    }
}

#[test]
fn truncation_drops_large_first_parts() {
    let sym = SymEngine::new();
    let f = sym.q_product(&[3, 2]).truncate_first_part(3);
    assert!(f.terms().keys().all(|l| l[0] <= 3));
    assert_eq!(f.coeff(&[3, 2]), sym.q_product(&[3, 2]).coeff(&[3, 2]));
    assert!(f.coeff(&[5]).is_zero());
}

#[test]
fn schur_p_expansion_scales_by_length() {
    let sym = SymEngine::new();
    let f = sym.schur_p(&[3, 1]).unwrap().scale(&r(3)).add(&sym.schur_p(&[4]).unwrap()).unwrap();
    let p = sym.expand_schur_p(&f).unwrap();
    assert_eq!(p.coeff(&[3, 1]), r(3));
    assert_eq!(p.coeff(&[4]), r(1));
    assert_eq!(sym.to_monomial(&p).unwrap(), f);
}
