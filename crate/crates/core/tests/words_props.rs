mod common;

use std::cmp::Ordering;

use common::composition;
use nsymm_core::words::{
    beta, canonical_factorization, compare, enumerate_compositions, enumerate_compositions_up_to, enumerate_lyndon,
    is_lyndon, Composition, OrderKind,
};
use proptest::prelude::*;

#[test]
fn orders_are_total_on_small_weights() {
    let words: Vec<Composition> = (1..=5).flat_map(enumerate_compositions).collect();
    for kind in [OrderKind::Lex, OrderKind::Wll] {
        for a in &words {
            for b in &words {
                let ab = compare(kind, a, b);
                assert_eq!(ab, compare(kind, b, a).reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
            }
        }
    }
}

#[test]
fn empty_word_is_smallest() {
    for kind in [OrderKind::Lex, OrderKind::Wll] {
        for a in enumerate_compositions(4) {
            assert_eq!(compare(kind, &Composition::empty(), &a), Ordering::Less);
        }
    }
}

#[test]
fn factorization_closure() {
    for n in 1..=8 {
        let lyn = enumerate_lyndon(n);
        assert_eq!(lyn.len() as u64, beta(n));
        for a in lyn.iter().filter(|a| a.len() >= 2) {
            let (l, r) = canonical_factorization(a).unwrap();
            assert!(is_lyndon(&l) && is_lyndon(&r), "{a} = {l}·{r}");
            assert_eq!(&l.concat(&r), a);
        }
    }
}

#[test]
fn enumeration_is_sorted_by_wll() {
    let all = enumerate_compositions_up_to(6);
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(all.len(), 64);
}

proptest! {
    #[test]
    fn orders_are_transitive(
        a in composition(4, 4, 8), b in composition(4, 4, 8), c in composition(4, 4, 8),
    ) {
        for kind in [OrderKind::Lex, OrderKind::Wll] {
            if compare(kind, &a, &b) != Ordering::Greater && compare(kind, &b, &c) != Ordering::Greater {
                prop_assert_ne!(compare(kind, &a, &c), Ordering::Greater);
            }
        }
    }

    #[test]
    fn scale_then_reduce(a in composition(6, 5, 20), n in 1u32..=4) {
        prop_assert_eq!(a.scale(n).reduce().unwrap(), a.reduce().unwrap());
        prop_assert_eq!(a.scale(n).unscale(n), Some(a.clone()));
        prop_assert_eq!(a.scale(n).gcd_of_parts().unwrap(), n * a.gcd_of_parts().unwrap());
    }

    #[test]
    fn lyndon_iff_smaller_than_rotations(a in composition(3, 6, 14)) {
        let parts = a.parts();
        let strictly_smallest = (1..parts.len()).all(|i| {
            let rot: Vec<u32> = parts[i..].iter().chain(&parts[..i]).copied().collect();
            parts < rot.as_slice()
        });
        prop_assert_eq!(is_lyndon(&a), strictly_smallest);
    }
}
