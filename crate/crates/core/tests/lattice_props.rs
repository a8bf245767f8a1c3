use nsymm_core::lattice::{hermite_normal_form, sublattice_index, LatticeIndex};
use nsymm_core::IntegerLattice;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows)
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #[test]
    fn hnf_is_idempotent(m in matrix(4, 3, 9)) {
        let h = hermite_normal_form(&big(&m), 3);
        prop_assert_eq!(hermite_normal_form(&h, 3), h);
    }

    #[test]
    fn hnf_ignores_generator_order(m in matrix(4, 3, 9), rot in 0usize..4) {
        let mut p = m.clone();
        p.rotate_left(rot);
        p.reverse();
        prop_assert_eq!(hermite_normal_form(&big(&m), 3), hermite_normal_form(&big(&p), 3));
    }

    #[test]
    fn index_is_multiplicative_on_towers(c in matrix(3, 3, 4), s in matrix(3, 3, 3), t in matrix(3, 3, 3)) {
        let b = mul(&s, &c);
        let a = mul(&t, &b);
        let la = IntegerLattice::from_i64(3, &a).unwrap();
        let lb = IntegerLattice::from_i64(3, &b).unwrap();
        let lc = IntegerLattice::from_i64(3, &c).unwrap();
        prop_assume!(la.rank() == 3);
        let idx = |x, y| match sublattice_index(x, y).unwrap() {
            LatticeIndex::Finite(n) => n,
            LatticeIndex::Infinite => unreachable!(),
        };
        prop_assert_eq!(idx(&la, &lc), idx(&la, &lb) * idx(&lb, &lc));
    }

    #[test]
    fn self_index_is_one(m in matrix(3, 4, 9)) {
        let l = IntegerLattice::from_i64(4, &m).unwrap();
        prop_assert_eq!(sublattice_index(&l, &l).unwrap(), LatticeIndex::Finite(BigInt::from(1)));
    }
}

#[test]
fn small_examples() {
    let l = IntegerLattice::from_i64(2, &[vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
    assert_eq!(l.hnf(), &big(&[vec![1, 1], vec![0, 2]]));
    let twice = IntegerLattice::from_i64(2, &[vec![2, 0], vec![0, 2]]).unwrap();
    let std2 = IntegerLattice::standard(2);
    assert_eq!(sublattice_index(&twice, &std2).unwrap(), LatticeIndex::Finite(BigInt::from(4)));
    assert_eq!(IntegerLattice::from_i64(3, &[]).unwrap().rank(), 0);
}
