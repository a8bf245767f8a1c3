use nsymm::eval::{Evaluator, Value};
use nsymm_core::algebra::{AlgebraElement, Alphabet, Family, Letter, Word};
use nsymm_core::linear::LinearCombination;
use nsymm_core::qsymm::QElement;
use nsymm_core::rational::ratio;
use nsymm_core::Composition;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=4).prop_filter("nonzero", |(p, _)| *p != 0)
}

fn n_element() -> impl Strategy<Value = AlgebraElement> {
    let family = prop_oneof![Just(Family::Z), Just(Family::XY), Just(Family::U)];
    (family, prop::collection::vec((prop::collection::vec((any::<bool>(), 1u32..=3), 0..=3), coeff()), 0..=4)).prop_map(
        |(family, terms)| {
            let mut lc = LinearCombination::zero();
            for (letters, (p, q)) in terms {
                let word = letters
                    .into_iter()
                    .map(|(flag, k)| {
                        let a = match family {
                            Family::Z => Alphabet::Z,
                            Family::U => Alphabet::U,
                            Family::XY if flag => Alphabet::X,
                            Family::XY => Alphabet::Y,
                        };
                        Letter::new(a, k)
                    })
                    .collect();
                lc.add_term(Word::new(word), ratio(p, q));
            }
            AlgebraElement::from_terms(family, lc)
        },
    )
}

fn q_element() -> impl Strategy<Value = QElement> {
    prop::collection::vec((prop::collection::vec(1u32..=3, 0..=3), coeff()), 0..=4)
        .prop_map(|ts| ts.into_iter().map(|(w, (p, q))| (Composition::new(w), ratio(p, q))).collect())
}

proptest! {
    #[test]
    fn n_elements_round_trip(x in n_element()) {
        let printed = x.to_string();
        let v = Evaluator::new(12).eval_str(&printed).unwrap();
        let back = match v {
            Value::N(y) => y,
            Value::Scalar(q) => AlgebraElement::scalar(x.family(), q),
            other => panic!("{printed} evaluated to {other}"),
        };
        // a scalar prints without its family; compare terms in that case
        prop_assert_eq!(back.terms(), x.terms(), "{}", printed);
    }

    #[test]
    fn q_elements_round_trip(x in q_element()) {
        let printed = x.display().to_string();
        let v = Evaluator::new(12).eval_str(&printed).unwrap();
        let back = match v {
            Value::Q(y) => y,
            Value::Scalar(q) => QElement::one().scale(&q),
            other => panic!("{printed} evaluated to {other}"),
        };
        prop_assert_eq!(back, x, "{}", printed);
    }

    #[test]
    fn evaluated_values_round_trip(k in 1u32..=4, n in 2u32..=3) {
        let mut ev = Evaluator::new(12);
        for src in [format!("fN({n}, Zn({k}))"), format!("vN({n}, P({}))", n * k), format!("E([{k}]) * h({n})")] {
            let v = ev.eval_str(&src).unwrap();
            let again = ev.eval_str(&v.to_string()).unwrap();
            let same = match (&v, &again) {
                (Value::N(a), Value::N(b)) => a.terms() == b.terms(),
                (Value::N(a), Value::Scalar(q)) => a.terms() == AlgebraElement::scalar(Family::Z, q.clone()).terms(),
                (a, b) => a == b,
            };
            prop_assert!(same, "{} -> {} -> {}", src, v, again);
        }
    }
}
