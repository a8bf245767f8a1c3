//! The Hopf structure of NSymm = Z⟨Z_1, Z_2, …⟩ and its relatives.
//!
//! `Z` and `{X, Y}` letters are divided-power generators
//! (`μ(A_n) = Σ_{i+j=n} A_i ⊗ A_j`), `U` letters are primitive.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::algebra::{AlgebraElement, Alphabet, Family, Letter, TensorElement, Word};
use crate::error::{Error, Result};
use crate::linear::LinearCombination;
use crate::qsymm::{self, QElement};
use crate::rational::{factorial, int, sign, Rational};
use crate::words::{canonical_factorization, enumerate_compositions, is_lyndon, Composition};

/// A sequence `d(0) = 1, d(1), …, d(W)` in some algebra family.
///
/// The entries are expected to be homogeneous, with `d(k)` of weight `k·w`
/// for a fixed step `w` (the step is 1 for `(1, Z_1, Z_2, …)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DividedPowerSequence {
    entries: Vec<AlgebraElement>,
}

/// Outcome of [`DividedPowerSequence::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpsCheck {
    pub ok: bool,
    /// Largest degree actually checked.
    pub checked_up_to: usize,
    pub first_failure: Option<usize>,
}

impl DividedPowerSequence {
    /// `entries[0]` must be the unit.
    pub fn new(entries: Vec<AlgebraElement>) -> Result<Self> {
        let first = entries.first().ok_or(Error::ConstantTermNotOne)?;
        if *first != AlgebraElement::one(first.family()) {
            return Err(Error::ConstantTermNotOne);
        }
        if entries.iter().any(|e| e.family() != first.family()) {
            return Err(Error::AlphabetMismatch { left: first.family().name(), right: "mixed" });
        }
        Ok(DividedPowerSequence { entries })
    }

    /// `(1, A_1, A_2, …, A_bound)` for a divided-power alphabet.
    pub fn standard(alphabet: Alphabet, bound: usize) -> Self {
        DividedPowerSequence { entries: (0..=bound).map(|k| AlgebraElement::generator(alphabet, k as u32)).collect() }
    }

    /// `(1, 0, 0, …)`.
    pub fn trivial(family: Family, bound: usize) -> Self {
        let mut entries = vec![AlgebraElement::zero(family); bound + 1];
        entries[0] = AlgebraElement::one(family);
        DividedPowerSequence { entries }
    }

    pub fn family(&self) -> Family {
        self.entries[0].family()
    }

    pub fn bound(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Result<&AlgebraElement> {
        self.entries.get(k).ok_or(Error::InsufficientBound { needed: k, bound: self.bound() })
    }

    pub fn truncate(&self, bound: usize) -> Self {
        DividedPowerSequence { entries: self.entries[..=bound.min(self.bound())].to_vec() }
    }

    /// Checks `μ(d(n)) = Σ_{i+j=n} d(i) ⊗ d(j)` for every `n ≤ bound`.
    pub fn check(&self) -> DpsCheck {
        for n in 0..=self.bound() {
            let lhs = coproduct(&self.entries[n]);
            let mut rhs = TensorElement::zero(self.family());
            for i in 0..=n {
                rhs = &rhs + &TensorElement::tensor(&self.entries[i], &self.entries[n - i]);
            }
            if lhs != rhs {
                return DpsCheck { ok: false, checked_up_to: n, first_failure: Some(n) };
            }
        }
        DpsCheck { ok: true, checked_up_to: self.bound(), first_failure: None }
    }

    pub fn is_dps(&self) -> bool {
        self.check().ok
    }
}

/// The coproduct, multiplicative on words, with `μ(A_n) = Σ A_i ⊗ A_j`
/// for `Z`, `X`, `Y` letters and `μ(U_n) = 1 ⊗ U_n + U_n ⊗ 1`.
pub fn coproduct(x: &AlgebraElement) -> TensorElement {
    let mut out = LinearCombination::zero();
    for (w, c) in x.terms() {
        // (left letters, right letters) pairs with multiplicity 1 each
        let mut partial: Vec<(Vec<Letter>, Vec<Letter>)> = vec![(Vec::new(), Vec::new())];
        for &l in w.letters() {
            let mut next = Vec::with_capacity(partial.len() * (l.index as usize + 1));
            for (left, right) in &partial {
                if l.alphabet == Alphabet::U {
                    let mut a = left.clone();
                    a.push(l);
                    next.push((a, right.clone()));
                    let mut b = right.clone();
                    b.push(l);
                    next.push((left.clone(), b));
                } else {
                    for i in 0..=l.index {
                        let mut a = left.clone();
                        let mut b = right.clone();
                        if i > 0 {
                            a.push(Letter::new(l.alphabet, i));
                        }
                        if i < l.index {
                            b.push(Letter::new(l.alphabet, l.index - i));
                        }
                        next.push((a, b));
                    }
                }
            }
            partial = next;
        }
        for (a, b) in partial {
            out.add_term((Word::new(a), Word::new(b)), c.clone());
        }
    }
    TensorElement::from_terms(x.family(), out)
}

/// `ε(x)`, the coefficient of the empty word.
pub fn counit(x: &AlgebraElement) -> Rational {
    x.counit()
}

/// True iff `μ(x) = 1 ⊗ x + x ⊗ 1`.
pub fn is_primitive(x: &AlgebraElement) -> bool {
    let one = AlgebraElement::one(x.family());
    let expected = &TensorElement::tensor(&one, x) + &TensorElement::tensor(x, &one);
    coproduct(x) == expected
}

fn require_z(x: &AlgebraElement) -> Result<()> {
    if x.family() != Family::Z {
        return Err(Error::WrongAlphabet { expected: "Z", found: x.family().name() });
    }
    Ok(())
}

fn positive(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::NonPositiveIndex(n))
    } else {
        Ok(())
    }
}

/// `P_n(Z) = Σ_{r_1+⋯+r_k=n} (−1)^{k+1} r_k Z_{r_1}⋯Z_{r_k}`.
pub fn newton_p(n: u32) -> Result<AlgebraElement> {
    newton_closed(n, |r| *r.parts().last().expect("nonempty"))
}

/// `P′_n(Z)`: as [`newton_p`] with the first part as coefficient.
pub fn newton_p_prime(n: u32) -> Result<AlgebraElement> {
    newton_closed(n, |r| r.parts()[0])
}

fn newton_closed(n: u32, weight_of: impl Fn(&Composition) -> u32) -> Result<AlgebraElement> {
    positive(n)?;
    let terms = enumerate_compositions(n)
        .into_iter()
        .map(|r| {
            let c = sign(r.len() as u32 + 1) * int(weight_of(&r) as i64);
            (r, c)
        })
        .collect();
    Ok(AlgebraElement::from_compositions(&terms))
}

/// `P_1, …, P_n` from `nZ_n = P_n + Z_1P_{n−1} + ⋯ + Z_{n−1}P_1`.
pub fn newton_p_recursive(n: u32) -> Result<Vec<AlgebraElement>> {
    positive(n)?;
    let mut ps: Vec<AlgebraElement> = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let mut p = AlgebraElement::z(m).scale(&int(m as i64));
        for i in 1..m {
            p = &p - &(&AlgebraElement::z(i) * &ps[(m - i - 1) as usize]);
        }
        ps.push(p);
    }
    Ok(ps)
}

/// `P′_1, …, P′_n` from `nZ_n = P′_n + P′_{n−1}Z_1 + ⋯ + P′_1Z_{n−1}`.
pub fn newton_p_prime_recursive(n: u32) -> Result<Vec<AlgebraElement>> {
    positive(n)?;
    let mut ps: Vec<AlgebraElement> = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let mut p = AlgebraElement::z(m).scale(&int(m as i64));
        for i in 1..m {
            p = &p - &(&ps[(m - i - 1) as usize] * &AlgebraElement::z(i));
        }
        ps.push(p);
    }
    Ok(ps)
}

/// `v_n`: the algebra endomorphism `A_k ↦ A_{k/n}` if `n | k`, else 0, on
/// the divided-power alphabets (`Z`, and `X`, `Y` alike).
pub fn verschiebung(n: u32, x: &AlgebraElement) -> Result<AlgebraElement> {
    positive(n)?;
    if x.family() == Family::U {
        return Err(Error::WrongAlphabet { expected: "Z or XY", found: "U" });
    }
    x.substitute(x.family(), |l| {
        Ok(if l.index % n == 0 {
            AlgebraElement::letter(Letter::new(l.alphabet, l.index / n))
        } else {
            AlgebraElement::zero(x.family())
        })
    })
}

/// The rational Frobenius `f_n` on NSymm, the algebra endomorphism with
/// `f_n(P_k) = P_{nk}`.
///
/// Keeps the expressions of `Z_k` in the Newton generators, so repeated
/// applications share work.
#[derive(Debug, Default)]
pub struct Frobenius {
    // Z_k written in formal generators; U_j stands for P_j
    z_in_p: Vec<AlgebraElement>,
    newton: BTreeMap<u32, AlgebraElement>,
}

impl Frobenius {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Z_k` as a noncommutative polynomial in the Newton primitives, with
    /// the formal letter `U_j` standing for `P_j`.
    pub fn z_in_newton_generators(&mut self, k: u32) -> &AlgebraElement {
        while self.z_in_p.len() < k as usize {
            let m = self.z_in_p.len() as u32 + 1;
            // mZ_m = P_m + Σ_{i<m} Z_i P_{m−i}
            let mut acc = AlgebraElement::letter(Letter::new(Alphabet::U, m));
            for i in 1..m {
                let p = AlgebraElement::letter(Letter::new(Alphabet::U, m - i));
                acc = &acc + &(&self.z_in_p[(i - 1) as usize] * &p);
            }
            self.z_in_p.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        &self.z_in_p[k as usize - 1]
    }

    fn newton(&mut self, n: u32) -> Result<AlgebraElement> {
        if let Some(p) = self.newton.get(&n) {
            return Ok(p.clone());
        }
        let p = newton_p(n)?;
        self.newton.insert(n, p.clone());
        Ok(p)
    }

    /// `f_n(Z_k)`.
    pub fn on_generator(&mut self, n: u32, k: u32) -> Result<AlgebraElement> {
        positive(n)?;
        let expr = self.z_in_newton_generators(k).clone();
        expr.substitute(Family::Z, |l| self.newton(n * l.index))
    }

    pub fn apply(&mut self, n: u32, x: &AlgebraElement) -> Result<AlgebraElement> {
        require_z(x)?;
        positive(n)?;
        x.substitute(Family::Z, |l| self.on_generator(n, l.index))
    }
}

/// One-shot `f_n(x)`; see [`Frobenius`].
pub fn frobenius(n: u32, x: &AlgebraElement) -> Result<AlgebraElement> {
    Frobenius::new().apply(n, x)
}

/// The projection `Z_α ↦ h_{a_1}⋯h_{a_m}` into Symm ⊂ QSymm.
pub fn project_to_symm(x: &AlgebraElement) -> Result<QElement> {
    require_z(x)?;
    let mut h_cache: BTreeMap<u32, QElement> = BTreeMap::new();
    let mut out = QElement::zero();
    for (w, c) in x.terms() {
        let mut prod = QElement::one();
        for l in w.letters() {
            let h = h_cache.entry(l.index).or_insert_with(|| qsymm::complete_h(l.index));
            prod = qsymm::osh_product(&prod, h);
        }
        out.add_scaled(&prod, c);
    }
    Ok(out)
}

/// `φ(Z_n) = Σ_{i_1+⋯+i_k=n} U_{i_1}⋯U_{i_k} / k!`.
pub fn exp_iso(n: u32) -> AlgebraElement {
    if n == 0 {
        return AlgebraElement::one(Family::U);
    }
    let mut out = AlgebraElement::zero(Family::U);
    for alpha in enumerate_compositions(n) {
        let k = Rational::from_integer(factorial(alpha.len() as u64));
        out = &out + &AlgebraElement::u_word(&alpha).scale(&(Rational::one() / k));
    }
    out
}

/// `φ` extended to an algebra morphism NSymm_Q → u_Q.
pub fn exp_iso_element(x: &AlgebraElement) -> Result<AlgebraElement> {
    require_z(x)?;
    x.substitute(Family::U, |l| Ok(exp_iso(l.index)))
}

/// `Q_α`: `Q_[i] = gen(i)`, `Q_α = [Q_α′, Q_α″]` along the canonical
/// factorization.
pub fn lyndon_bracket(
    alpha: &Composition,
    generator: &mut impl FnMut(u32) -> Result<AlgebraElement>,
) -> Result<AlgebraElement> {
    if !is_lyndon(alpha) {
        return Err(Error::NotLyndon(alpha.clone()));
    }
    if alpha.len() == 1 {
        return generator(alpha.parts()[0]);
    }
    let (left, right) = canonical_factorization(alpha)?;
    let a = lyndon_bracket(&left, generator)?;
    let b = lyndon_bracket(&right, generator)?;
    a.try_bracket(&b)
}

/// Coordinates of a homogeneous Z-element over the compositions of `n`
/// (wll order). Returns `None` if some term has a different weight.
pub fn coordinates(x: &AlgebraElement, n: u32) -> Option<Vec<Rational>> {
    if x.terms().keys().any(|w| w.weight() != n) {
        return None;
    }
    Some(enumerate_compositions(n).iter().map(|c| x.coeff(&Word::from_composition(Alphabet::Z, c))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn zw<const N: usize>(p: [u32; N]) -> AlgebraElement {
        AlgebraElement::z_word(&Composition::from(p))
    }
    fn uw<const N: usize>(p: [u32; N]) -> AlgebraElement {
        AlgebraElement::u_word(&Composition::from(p))
    }
    fn one() -> AlgebraElement {
        AlgebraElement::one(Family::Z)
    }
    fn t(a: &AlgebraElement, b: &AlgebraElement) -> TensorElement {
        TensorElement::tensor(a, b)
    }

    #[test]
    fn coproduct_examples() {
        let z = AlgebraElement::z;
        let expected = &(&t(&one(), &z(2)) + &t(&z(1), &z(1))) + &t(&z(2), &one());
        assert_eq!(coproduct(&z(2)), expected);
        assert_eq!(coproduct(&one()), t(&one(), &one()));
        let z11 = zw([1, 1]);
        let expected = &(&t(&one(), &z11) + &t(&z(1), &z(1)).scale(&int(2))) + &t(&z11, &one());
        assert_eq!(coproduct(&z11), expected);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&AlgebraElement::z(5)), int(0));
        assert_eq!(counit(&one()), int(1));
        assert_eq!(counit(&(&one().scale(&int(3)) + &AlgebraElement::z(1))), int(3));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&AlgebraElement::z(1)));
        assert!(!is_primitive(&AlgebraElement::z(2)));
        assert!(is_primitive(&newton_p(3).unwrap()));
        assert!(is_primitive(&AlgebraElement::letter(Letter::new(Alphabet::U, 4))));
    }

    #[test]
    fn dps_predicate() {
        assert!(DividedPowerSequence::standard(Alphabet::Z, 5).is_dps());
        let bad =
            DividedPowerSequence::new(vec![one(), AlgebraElement::z(1), AlgebraElement::zero(Family::Z)]).unwrap();
        let check = bad.check();
        assert!(!check.ok);
        assert_eq!(check.first_failure, Some(2));
        assert!(DividedPowerSequence::trivial(Family::Z, 4).is_dps());
        assert!(DividedPowerSequence::new(vec![AlgebraElement::z(1)]).is_err());
    }

    #[test]
    fn newton_examples() {
        assert_eq!(newton_p(1).unwrap(), AlgebraElement::z(1));
        assert_eq!(newton_p(2).unwrap(), &zw([2]).scale(&int(2)) - &zw([1, 1]));
        let p3 = &(&(&zw([3]).scale(&int(3)) - &zw([1, 2]).scale(&int(2))) - &zw([2, 1])) + &zw([1, 1, 1]);
        assert_eq!(newton_p(3).unwrap(), p3);
        assert!(newton_p(0).is_err());
        let rec = newton_p_recursive(5).unwrap();
        let rec_prime = newton_p_prime_recursive(5).unwrap();
        for n in 1..=5 {
            assert_eq!(newton_p(n).unwrap(), rec[n as usize - 1]);
            assert_eq!(newton_p_prime(n).unwrap(), rec_prime[n as usize - 1]);
        }
    }

    #[test]
    fn verschiebung_examples() {
        let z = AlgebraElement::z;
        assert_eq!(verschiebung(2, &z(4)).unwrap(), z(2));
        assert!(verschiebung(2, &z(3)).unwrap().is_zero());
        let p4 = newton_p(4).unwrap();
        let p2 = newton_p(2).unwrap();
        assert_eq!(verschiebung(2, &p4).unwrap(), p2.scale(&int(2)));
        assert!(verschiebung(2, &uw([2])).is_err());
    }

    #[test]
    fn frobenius_coefficients() {
        let z = AlgebraElement::z;
        assert_eq!(frobenius(2, &z(1)).unwrap(), &zw([2]).scale(&int(2)) - &zw([1, 1]));
        let expected: LinearCombination<Composition> = [
            (Composition::from([4]), int(2)),
            (Composition::from([1, 3]), ratio(-3, 2)),
            (Composition::from([3, 1]), ratio(-1, 2)),
            (Composition::from([2, 2]), int(1)),
            (Composition::from([1, 2, 1]), ratio(1, 2)),
            (Composition::from([2, 1, 1]), ratio(-1, 2)),
        ]
        .into_iter()
        .collect();
        let f2z2 = frobenius(2, &z(2)).unwrap();
        assert_eq!(f2z2, AlgebraElement::from_compositions(&expected));
        // (P_4 + P_2²)/2, and it descends to h_2(x²) = [4] + [2,2] in Symm
        let by_hand = (&newton_p(4).unwrap() + &newton_p(2).unwrap().pow(2)).scale(&ratio(1, 2));
        assert_eq!(f2z2, by_hand);
        let sq = |p: &[u32]| QElement::basis(Composition::from(p));
        assert_eq!(project_to_symm(&f2z2).unwrap(), &sq(&[4]) + &sq(&[2, 2]));
        for k in 1..=4 {
            assert_eq!(frobenius(1, &z(k)).unwrap(), z(k));
        }
    }

    #[test]
    fn projection_examples() {
        let z = AlgebraElement::z;
        let q = |p: &[u32]| QElement::basis(Composition::from(p));
        assert_eq!(project_to_symm(&z(1)).unwrap(), q(&[1]));
        assert_eq!(project_to_symm(&z(2)).unwrap(), &q(&[2]) + &q(&[1, 1]));
        let p2 = &zw([2]).scale(&int(2)) - &zw([1, 1]);
        assert_eq!(project_to_symm(&p2).unwrap(), q(&[2]));
    }

    #[test]
    fn exp_iso_examples() {
        assert_eq!(exp_iso(1), uw([1]));
        assert_eq!(exp_iso(2), &uw([2]) + &uw([1, 1]).scale(&ratio(1, 2)));
        let e3 = &(&uw([3]) + &(&uw([1, 2]) + &uw([2, 1])).scale(&ratio(1, 2))) + &uw([1, 1, 1]).scale(&ratio(1, 6));
        assert_eq!(exp_iso(3), e3);
    }

    #[test]
    fn lyndon_bracket_examples() {
        let mut ugen = |i: u32| Ok(AlgebraElement::letter(Letter::new(Alphabet::U, i)));
        assert_eq!(lyndon_bracket(&Composition::from([2]), &mut ugen).unwrap(), uw([2]));
        assert_eq!(lyndon_bracket(&Composition::from([1, 2]), &mut ugen).unwrap(), &uw([1, 2]) - &uw([2, 1]));
        let mut pgen = |i: u32| newton_p(i);
        assert_eq!(
            lyndon_bracket(&Composition::from([1, 2]), &mut pgen).unwrap(),
            (&zw([1, 2]) - &zw([2, 1])).scale(&int(2))
        );
        assert!(lyndon_bracket(&Composition::from([2, 1]), &mut pgen).is_err());
    }
}
