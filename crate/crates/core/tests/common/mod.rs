#![allow(dead_code)]

use nsymm_core::algebra::{AlgebraElement, Alphabet, Letter, Word};
use nsymm_core::linear::LinearCombination;
use nsymm_core::qsymm::QElement;
use nsymm_core::rational::int;
use nsymm_core::words::Composition;
use proptest::prelude::*;

/// Nonempty compositions with parts in `1..=max_part` and weight at most `max_weight`.
pub fn composition(max_part: u32, max_len: usize, max_weight: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 1..=max_len)
        .prop_filter("weight bound", move |v| v.iter().sum::<u32>() <= max_weight)
        .prop_map(Composition::new)
}

/// Up to `terms` words with small integer coefficients.
pub fn z_element(max_weight: u32, terms: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((composition(3, 3, max_weight), -3i64..=3), 0..=terms).prop_map(|ts| {
        let lc: LinearCombination<Composition> = ts.into_iter().map(|(c, k)| (c, int(k))).collect();
        AlgebraElement::from_compositions(&lc)
    })
}

pub fn q_element(max_weight: u32, terms: usize) -> impl Strategy<Value = QElement> {
    prop::collection::vec((composition(3, 3, max_weight), -3i64..=3), 0..=terms)
        .prop_map(|ts| ts.into_iter().map(|(c, k)| (c, int(k))).collect())
}

/// A homogeneous Z-element of the given weight.
pub fn homogeneous_z(weight: u32, terms: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((composition(weight, weight as usize, weight), -3i64..=3), 1..=terms).prop_map(move |ts| {
        let lc: LinearCombination<Composition> =
            ts.into_iter().filter(|(c, _)| c.weight() == weight).map(|(c, k)| (c, int(k))).collect();
        AlgebraElement::from_compositions(&lc)
    })
}

pub fn u_element(max_weight: u32, terms: usize) -> impl Strategy<Value = AlgebraElement> {
    z_element(max_weight, terms).prop_map(|x| {
        x.substitute(nsymm_core::Family::U, |l| Ok(AlgebraElement::letter(Letter::new(Alphabet::U, l.index)))).unwrap()
    })
}

pub fn zword(parts: &[u32]) -> Word {
    Word::from_composition(Alphabet::Z, &Composition::from(parts))
}
