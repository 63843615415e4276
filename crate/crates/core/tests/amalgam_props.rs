mod common;

use proptest::prelude::*;
use rootres::amalgam::{inverse_word, AmalgamScheme, Word};
use rootres::catalog::lookup;
use rootres::Perm;

fn scheme(name: &str, sub: &str, copies: usize) -> AmalgamScheme {
    let e = lookup(name).unwrap();
    AmalgamScheme::power(&e.group, e.subgroup(sub).unwrap(), copies).unwrap()
}

fn word(scheme: &AmalgamScheme, max_len: usize) -> impl Strategy<Value = Word> {
    let letters: Vec<(usize, Perm)> = (0..scheme.copies())
        .flat_map(|c| scheme.factor(c).elements().iter().map(move |x| (c, x.clone())))
        .collect();
    prop::collection::vec(prop::sample::select(letters), 0..=max_len).prop_map(Word::from)
}

fn schemes() -> Vec<AmalgamScheme> {
    vec![scheme("S3", "A3", 2), scheme("C4", "C2", 3), scheme("D4", "Z", 2)]
}

fn scheme_and_words(n: usize) -> impl Strategy<Value = (usize, Vec<Word>)> {
    (0..3usize).prop_flat_map(move |i| {
        let s = &schemes()[i];
        (Just(i), prop::collection::vec(word(s, 5), n))
    })
}

proptest! {
    #[test]
    fn reduction_is_idempotent((i, ws) in scheme_and_words(1)) {
        let s = &schemes()[i];
        let nf = s.reduce(&ws[0]).unwrap();
        prop_assert_eq!(s.reduce(&nf.to_word()).unwrap(), nf.clone());
        prop_assert!(nf.length() <= ws[0].len());
    }

    #[test]
    fn multiplication_is_associative((i, ws) in scheme_and_words(3)) {
        let s = &schemes()[i];
        let ab = s.multiply(&ws[0], &ws[1]).unwrap().to_word();
        let bc = s.multiply(&ws[1], &ws[2]).unwrap().to_word();
        prop_assert_eq!(s.multiply(&ab, &ws[2]).unwrap(), s.multiply(&ws[0], &bc).unwrap());
    }

    #[test]
    fn inverses_cancel((i, ws) in scheme_and_words(1)) {
        let s = &schemes()[i];
        let inv = s.invert(&ws[0]).unwrap().to_word();
        prop_assert!(s.multiply(&ws[0], &inv).unwrap().is_identity());
        prop_assert!(s.equal(&inverse_word(&ws[0]), &inv).unwrap());
    }

    #[test]
    fn copy_permutations_preserve_length((i, ws) in scheme_and_words(1)) {
        let s = &schemes()[i];
        let pi: Vec<usize> = (0..s.copies()).rev().collect();
        let moved = s.copy_automorphism(&pi, &ws[0]).unwrap();
        prop_assert_eq!(s.reduce(&moved).unwrap().length(), s.reduce(&ws[0]).unwrap().length());
    }
}
