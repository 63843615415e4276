mod common;

use proptest::prelude::*;
use rootres::amalgam::{AmalgamScheme, Word};
use rootres::catalog::lookup;
use rootres::{
    is_k_closed, residual_core, separate_free_word, separate_in_power, verify_certificate, Error, FreeWord, Perm,
    RootClassSpec,
};

use common::*;

fn power_word(name: &'static str, sub: &'static str, copies: usize) -> impl Strategy<Value = (AmalgamScheme, Word)> {
    let e = lookup(name).unwrap();
    let scheme = AmalgamScheme::power(&e.group, e.subgroup(sub).unwrap(), copies).unwrap();
    let letters: Vec<(usize, Perm)> = (0..copies)
        .flat_map(|c| e.group.elements().iter().map(move |x| (c, x.clone())))
        .collect();
    prop::collection::vec(prop::sample::select(letters), 1..=5)
        .prop_map(move |w| (scheme.clone(), Word::from(w)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_certificates_verify((scheme, w) in prop_oneof![
        power_word("S3", "A3", 2),
        power_word("D4", "Z", 2),
        power_word("C4", "C2", 3),
    ]) {
        match separate_in_power(&scheme, &w, RootClassSpec::FiniteP(2)) {
            Ok(cert) => prop_assert!(verify_certificate(&cert).unwrap().accepted),
            Err(Error::TrivialWord) => prop_assert!(scheme.reduce(&w).unwrap().is_identity()),
            Err(Error::Hypothesis(_)) => {
                let nf = scheme.reduce(&w).unwrap();
                let x = nf.tail.iter().fold(nf.head.clone(), |acc, s| acc.mul(&s.elt));
                let core = residual_core(scheme.factor(0), RootClassSpec::FiniteP(2));
                prop_assert!(nf.length() <= 1 && core.core.contains(&x));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn free_word_certificates_verify(w in prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2, 3, -3]), 1..=6), m in prop::sample::select(vec![0u64, 2, 3])) {
        let w = FreeWord::new(w);
        match separate_free_word(&w, m, 8) {
            Ok(cert) => prop_assert!(verify_certificate(&cert).unwrap().accepted),
            Err(Error::TrivialWord) => prop_assert!(w.is_freely_trivial()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn closedness_witnesses_verify(i in 0..rootres::catalog::catalog().len(), j in any::<prop::sample::Index>(), k in 0..4usize) {
        let e = &rootres::catalog::catalog()[i];
        let subs = rootres::all_subgroups(&e.group);
        let h = &subs[j.index(subs.len())];
        let class = classes()[k];
        let report = is_k_closed(&e.group, h, class).unwrap();
        prop_assert_eq!(report.closed, report.failing_elements.is_empty());
        for (a, _) in report.witnesses.iter().take(3) {
            let cert = report.certificate(a).unwrap();
            prop_assert!(verify_certificate(&cert).unwrap().accepted);
        }
    }
}
