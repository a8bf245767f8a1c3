mod common;

use common::{composition, q_element, z_element};
use nsymm_core::algebra::AlgebraElement;
use nsymm_core::nsymm::{coproduct, frobenius, newton_p, verschiebung};
use nsymm_core::qsymm::{cut_coproduct, frobenius_q, osh_product, pairing, QElement, QTensor};
use nsymm_core::rational::int;
use nsymm_core::{Composition, Rational};
use proptest::prelude::*;

/// Overlapping shuffles by brute force: place the letters of `a` and `b` into
/// `r` ordered slots, each slot receiving at most one letter from each word
/// and at least one letter overall.
fn osh_by_slots(a: &Composition, b: &Composition) -> QElement {
    fn increasing(p: usize, r: usize) -> Vec<Vec<usize>> {
        fn go(start: usize, left: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for s in start..r {
                cur.push(s);
                go(s + 1, left - 1, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, p, r, &mut Vec::new(), &mut out);
        out
    }
    let (p, q) = (a.len(), b.len());
    let mut out = QElement::zero();
    for r in p.max(q)..=p + q {
        for fa in increasing(p, r) {
            for fb in increasing(q, r) {
                let mut slots = vec![0u32; r];
                for (i, &s) in fa.iter().enumerate() {
                    slots[s] += a.parts()[i];
                }
                for (j, &s) in fb.iter().enumerate() {
                    slots[s] += b.parts()[j];
                }
                if slots.iter().all(|&x| x > 0) {
                    out.add_term(Composition::new(slots), int(1));
                }
            }
        }
    }
    out
}

fn pair_tensor(x: &AlgebraElement, y: &QTensor) -> Rational {
    let mut acc = int(0);
    for ((u, v), c) in coproduct(x).terms() {
        acc += c * y.coeff(&(u.to_composition(), v.to_composition()));
    }
    acc
}

#[test]
fn triple_product_of_one() {
    let one = QElement::word(&[1]);
    let cube = osh_product(&osh_product(&one, &one), &one);
    let mut expected = QElement::zero();
    for (w, c) in [(vec![1, 1, 1], 6), (vec![1, 2], 3), (vec![2, 1], 3), (vec![3], 1)] {
        expected.add_term(Composition::new(w), int(c));
    }
    assert_eq!(cube, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn osh_matches_slot_enumeration(a in composition(3, 3, 7), b in composition(3, 3, 7)) {
        prop_assert_eq!(osh_product(&QElement::word(a.parts()), &QElement::word(b.parts())), osh_by_slots(&a, &b));
    }

    #[test]
    fn osh_is_commutative_and_associative(x in q_element(3, 2), y in q_element(2, 2), z in q_element(2, 2)) {
        prop_assert_eq!(osh_product(&x, &y), osh_product(&y, &x));
        prop_assert_eq!(osh_product(&osh_product(&x, &y), &z), osh_product(&x, &osh_product(&y, &z)));
    }

    #[test]
    fn concatenation_is_dual_to_cut(x in z_element(3, 2), y in z_element(3, 2), w in q_element(6, 3)) {
        let lhs = pairing(&(&x * &y), &w).unwrap();
        let cut = cut_coproduct(&w);
        let mut rhs = int(0);
        for ((u, v), c) in &cut {
            rhs += c * pairing(&x, &QElement::word(u.parts())).unwrap() * pairing(&y, &QElement::word(v.parts())).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn osh_is_dual_to_coproduct(z in z_element(6, 3), u in q_element(3, 2), v in q_element(3, 2)) {
        let lhs = pairing(&z, &osh_product(&u, &v)).unwrap();
        let mut uv = QTensor::zero();
        for (a, ca) in &u {
            for (b, cb) in &v {
                uv.add_term((a.clone(), b.clone()), ca * cb);
            }
        }
        prop_assert_eq!(lhs, pair_tensor(&z, &uv));
    }

    #[test]
    fn primitives_kill_decomposables(n in 2u32..=6, a in composition(3, 2, 5), b in composition(3, 2, 5)) {
        prop_assume!(a.weight() + b.weight() == n);
        let prod = osh_product(&QElement::word(a.parts()), &QElement::word(b.parts()));
        prop_assert_eq!(pairing(&newton_p(n).unwrap(), &prod).unwrap(), int(0));
    }

    #[test]
    fn frobenius_composes(x in q_element(4, 3), n in 1u32..=3, m in 1u32..=3) {
        let lhs = frobenius_q(n, &frobenius_q(m, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, frobenius_q(n * m, &x).unwrap());
    }

    #[test]
    fn verschiebung_adjoint_to_frobenius(x in z_element(6, 3), y in q_element(3, 3), n in 1u32..=2) {
        let lhs = pairing(&verschiebung(n, &x).unwrap(), &y).unwrap();
        prop_assert_eq!(lhs, pairing(&x, &frobenius_q(n, &y).unwrap()).unwrap());
    }
}

#[test]
fn nsymm_frobenius_composes_on_generators() {
    for k in 1..=2 {
        for (n, m) in [(2, 2), (2, 3), (3, 2)] {
            let z = AlgebraElement::z(k);
            let lhs = frobenius(n, &frobenius(m, &z).unwrap()).unwrap();
            assert_eq!(lhs, frobenius(n * m, &z).unwrap(), "k={k} n={n} m={m}");
        }
    }
}
