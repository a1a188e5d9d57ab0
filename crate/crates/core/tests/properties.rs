use braidgen::certify::{build_rewrite_certificate, emit_json, parse_json, verify_certificate};
use braidgen::rewrite::{rewrite_full, sigma1_decomposition, sigma1_word, RewriteParams};
use braidgen::{equal, equal_via_lk, normal_form, BraidWord, Letter};
use proptest::prelude::*;

fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n, any::<bool>()), 0..max_len).prop_map(move |v| {
        let letters = v
            .into_iter()
            .map(|(i, p)| if p { Letter::pos(i) } else { Letter::neg(i) })
            .collect();
        BraidWord::new(n, letters).unwrap()
    })
}

/// Zero exponent sum by pairing every letter with an inverse letter elsewhere.
fn arb_zero_sum(n: usize, max_pairs: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n, 1..n, any::<bool>()), 0..max_pairs).prop_map(move |v| {
        let mut letters = Vec::new();
        for (a, b, front) in v {
            if front {
                letters.push(Letter::pos(a));
                letters.push(Letter::neg(b));
            } else {
                letters.insert(0, Letter::neg(b));
                letters.push(Letter::pos(a));
            }
        }
        BraidWord::new(n, letters).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracles_agree(a in arb_word(5, 20), b in arb_word(5, 20)) {
        prop_assert_eq!(equal(&a, &b).unwrap(), equal_via_lk(&a, &b).unwrap());
        let ab = a.concat_raw(&b).unwrap();
        let ba_conj = b.concat_raw(&a).unwrap();
        // ab and ba are conjugate, so equal exactly when a and b commute
        prop_assert_eq!(equal(&ab, &ba_conj).unwrap(), equal_via_lk(&ab, &ba_conj).unwrap());
    }

    #[test]
    fn sigma1_decomposition_is_sound(w in arb_zero_sum(6, 5)) {
        let letters = sigma1_decomposition(&w).unwrap();
        prop_assert!(equal(&sigma1_word(6, &letters), &w).unwrap());
    }

    #[test]
    fn rewrites_expand_or_certify(w in arb_zero_sum(7, 4)) {
        let p = RewriteParams::new(7, 3).unwrap();
        let slp = rewrite_full(p, &w).unwrap();
        if slp.flat_len() <= 1_000_000 {
            prop_assert!(equal(&slp.artin_expansion(1_000_000).unwrap(), &w).unwrap());
        }
        let cert = build_rewrite_certificate(p, &w).unwrap();
        prop_assert!(verify_certificate(&cert).pass);
        prop_assert_eq!(parse_json(&emit_json(&cert)).unwrap(), cert);
    }

    #[test]
    fn normal_form_is_a_class_invariant(w in arb_word(6, 30)) {
        let text = w.to_string();
        let back = BraidWord::parse(6, &text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(normal_form(&back), normal_form(&w.free_reduce()));
    }
}
