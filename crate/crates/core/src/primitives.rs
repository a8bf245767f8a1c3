//! Divided power sequences `d_α` and the primitives `P_α` for Lyndon `α`,
//! plus the lattices used to compare them with iterated commutators of the
//! Newton primitives.
//!
//! `d_[n] = (1, Z_1, Z_2, …)`; for longer `α` with canonical factorization
//! `α = α′α″`, `d_α(k) = L_{k·g(α′)/g(α), k·g(α″)/g(α)}(d_α′, d_α″)`, and
//! `P_α = P_{g(α)}(d_α)`. The entry `d_α(k)` has weight `k·wt(α_red)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{AlgebraElement, Alphabet, Family, Series, TensorElement, Word};
use crate::error::{Error, Result};
use crate::isobaric::{substitute_curve, substitute_dps, IsobaricTable, TableKind};
use crate::lattice::{left_kernel, sublattice_index, IntegerLattice, LatticeIndex};
use crate::nsymm::{coordinates, coproduct, lyndon_bracket, newton_p, verschiebung, DividedPowerSequence};
use crate::rational::Rational;
use crate::words::{canonical_factorization, enumerate_compositions, enumerate_lyndon, Composition};

fn to_series(d: &DividedPowerSequence, bound: usize) -> Series {
    Series::from_fn(d.family(), bound, |k| d.entries()[k].clone())
}

fn from_series(s: &Series) -> DividedPowerSequence {
    DividedPowerSequence::new(s.coeffs().to_vec()).expect("series with unit constant term")
}

/// The inverse curve `d(t)^{-1}`.
pub fn curve_inverse(d: &DividedPowerSequence) -> Result<DividedPowerSequence> {
    Ok(from_series(&to_series(d, d.bound()).invert()?))
}

/// `d_1(t)·d_2(t)`, truncated at the smaller bound.
pub fn curve_product(d1: &DividedPowerSequence, d2: &DividedPowerSequence) -> Result<DividedPowerSequence> {
    if d1.family() != d2.family() {
        return Err(Error::AlphabetMismatch { left: d1.family().name(), right: d2.family().name() });
    }
    let b = d1.bound().min(d2.bound());
    Ok(from_series(&to_series(d1, b).mul(&to_series(d2, b))?))
}

/// `d(t^n)`; the bound grows to `n·bound`.
pub fn curve_shift(d: &DividedPowerSequence, n: u32) -> Result<DividedPowerSequence> {
    if n == 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    let n = n as usize;
    let family = d.family();
    let entries = (0..=n * d.bound())
        .map(|k| if k % n == 0 { d.entries()[k / n].clone() } else { AlgebraElement::zero(family) })
        .collect();
    DividedPowerSequence::new(entries)
}

/// One element of the primitive basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveBasisEntry {
    pub alpha: Composition,
    pub dps: DividedPowerSequence,
    pub primitive: AlgebraElement,
}

impl PrimitiveBasisEntry {
    /// `P_α = g(α)·Z_α + wll-larger terms`.
    pub fn leading_term_holds(&self) -> bool {
        let g = self.alpha.gcd_of_parts().unwrap_or(0);
        self.primitive.leading_composition() == Some((self.alpha.clone(), Rational::from_integer(g.into())))
    }
}

/// Builds `d_α` and `P_α` for all Lyndon `α` up to a weight bound, sharing
/// one `L` table and memoizing every sequence it builds.
#[derive(Debug)]
pub struct PrimitiveBuilder {
    bound: usize,
    l_table: Option<IsobaricTable>,
    dps: BTreeMap<Composition, DividedPowerSequence>,
    prims: BTreeMap<Composition, AlgebraElement>,
}

impl PrimitiveBuilder {
    pub fn new(bound: usize) -> Self {
        PrimitiveBuilder { bound, l_table: None, dps: BTreeMap::new(), prims: BTreeMap::new() }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn table(&mut self) -> Result<&IsobaricTable> {
        if self.l_table.is_none() {
            self.l_table = Some(IsobaricTable::build(TableKind::L, self.bound)?);
        }
        Ok(self.l_table.as_ref().expect("just built"))
    }

    /// `d_α` with every entry of weight at most the bound.
    pub fn build_dps(&mut self, alpha: &Composition) -> Result<DividedPowerSequence> {
        if !alpha.is_lyndon() {
            return Err(Error::NotLyndon(alpha.clone()));
        }
        if let Some(d) = self.dps.get(alpha) {
            return Ok(d.clone());
        }
        let d = if alpha.len() == 1 {
            DividedPowerSequence::standard(Alphabet::Z, self.bound)
        } else {
            let (left, right) = canonical_factorization(alpha)?;
            let d1 = self.build_dps(&left)?;
            let d2 = self.build_dps(&right)?;
            let g = alpha.gcd_of_parts()?;
            let (g1, g2) = (left.gcd_of_parts()? / g, right.gcd_of_parts()? / g);
            let step = (alpha.weight() / g) as usize;
            let mut entries = alloc::vec![AlgebraElement::one(Family::Z)];
            for k in 1..=(self.bound / step) as u32 {
                let l = self.table()?.get(k * g1, k * g2)?;
                entries.push(substitute_dps(&l, &d1, &d2)?);
            }
            DividedPowerSequence::new(entries)?
        };
        self.dps.insert(alpha.clone(), d.clone());
        Ok(d)
    }

    /// `P_α = P_{g(α)}(d_α)`.
    pub fn build_p(&mut self, alpha: &Composition) -> Result<AlgebraElement> {
        if let Some(p) = self.prims.get(alpha) {
            return Ok(p.clone());
        }
        if !alpha.is_lyndon() {
            return Err(Error::NotLyndon(alpha.clone()));
        }
        if alpha.weight() as usize > self.bound {
            return Err(Error::InsufficientBound { needed: alpha.weight() as usize, bound: self.bound });
        }
        let d = self.build_dps(alpha)?;
        let p = substitute_curve(&newton_p(alpha.gcd_of_parts()?)?, &d)?;
        self.prims.insert(alpha.clone(), p.clone());
        Ok(p)
    }

    pub fn entry(&mut self, alpha: &Composition) -> Result<PrimitiveBasisEntry> {
        Ok(PrimitiveBasisEntry { alpha: alpha.clone(), dps: self.build_dps(alpha)?, primitive: self.build_p(alpha)? })
    }

    /// The entries for all Lyndon words of weight `n`, in wll order.
    pub fn basis(&mut self, n: u32) -> Result<Vec<PrimitiveBasisEntry>> {
        enumerate_lyndon(n).iter().map(|a| self.entry(a)).collect()
    }

    /// `v_n(P_α)` together with the expected `n·P_{α/n}` (or 0).
    pub fn verschiebung_on_p(&mut self, n: u32, alpha: &Composition) -> Result<VerschiebungOnP> {
        let value = verschiebung(n, &self.build_p(alpha)?)?;
        let expected = match alpha.unscale(n) {
            Some(small) => self.build_p(&small)?.scale(&Rational::from_integer(n.into())),
            None => AlgebraElement::zero(Family::Z),
        };
        Ok(VerschiebungOnP { holds: value == expected, value, expected })
    }

    /// The lattice spanned by `{P_α : α ∈ LYN_n}` in the `Z_β` coordinates.
    pub fn prim_basis_span(&mut self, n: u32) -> Result<IntegerLattice> {
        let rows: Vec<AlgebraElement> = enumerate_lyndon(n).iter().map(|a| self.build_p(a)).collect::<Result<_>>()?;
        span_of(n, &rows)
    }

    /// `[prim_basis_span(n) : frlie_span(n)]`.
    pub fn frlie_index(&mut self, n: u32) -> Result<BigInt> {
        let basis = self.prim_basis_span(n)?;
        let frlie = frlie_span(n)?;
        match sublattice_index(&frlie, &basis)? {
            LatticeIndex::Finite(i) => Ok(i),
            LatticeIndex::Infinite => Err(Error::RankDeficient { expected: basis.rank(), found: frlie.rank() }),
        }
    }
}

/// Outcome of [`PrimitiveBuilder::verschiebung_on_p`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerschiebungOnP {
    pub value: AlgebraElement,
    pub expected: AlgebraElement,
    pub holds: bool,
}

fn span_of(n: u32, elements: &[AlgebraElement]) -> Result<IntegerLattice> {
    let dim = 1usize << (n - 1);
    let rows: Vec<Vec<Rational>> = elements
        .iter()
        .map(|e| coordinates(e, n).ok_or(Error::Other(alloc::format!("element not homogeneous of weight {n}"))))
        .collect::<Result<_>>()?;
    IntegerLattice::from_rational(dim, &rows)
}

/// The lattice spanned by the iterated commutators `Q_α(P_1, P_2, …)`,
/// `α ∈ LYN_n`.
pub fn frlie_span(n: u32) -> Result<IntegerLattice> {
    if n == 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    let mut newton: BTreeMap<u32, AlgebraElement> = BTreeMap::new();
    let mut generator = |k: u32| -> Result<AlgebraElement> {
        if let Some(p) = newton.get(&k) {
            return Ok(p.clone());
        }
        let p = newton_p(k)?;
        newton.insert(k, p.clone());
        Ok(p)
    };
    let rows: Vec<AlgebraElement> =
        enumerate_lyndon(n).iter().map(|a| lyndon_bracket(a, &mut generator)).collect::<Result<_>>()?;
    span_of(n, &rows)
}

/// `∏ k(α)/g(α)` over `α ∈ LYN_n`.
pub fn expected_frlie_index(n: u32) -> Result<BigInt> {
    let mut out = BigInt::one();
    for a in enumerate_lyndon(n) {
        out *= BigInt::from(a.product_of_parts()? / a.gcd_of_parts()? as u64);
    }
    Ok(out)
}

/// The primitives of weight `n`, computed directly as the integer left
/// kernel of `Z_β ↦ μ(Z_β) − 1 ⊗ Z_β − Z_β ⊗ 1`.
pub fn primitive_kernel(n: u32) -> Result<IntegerLattice> {
    if n == 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    let basis = enumerate_compositions(n);
    let one = AlgebraElement::one(Family::Z);
    let reduced: Vec<TensorElement> = basis
        .iter()
        .map(|b| {
            let z = AlgebraElement::z_word(b);
            &(&coproduct(&z) - &TensorElement::tensor(&one, &z)) - &TensorElement::tensor(&z, &one)
        })
        .collect();
    let mut columns: BTreeMap<(Word, Word), usize> = BTreeMap::new();
    for t in &reduced {
        for k in t.terms().keys() {
            let next = columns.len();
            columns.entry(k.clone()).or_insert(next);
        }
    }
    let ncols = columns.len();
    let matrix: Vec<Vec<BigInt>> = reduced
        .iter()
        .map(|t| {
            let mut row = alloc::vec![BigInt::from(0); ncols];
            for (k, c) in t.terms() {
                row[columns[k]] = c.to_integer();
            }
            row
        })
        .collect();
    Ok(left_kernel(&matrix, ncols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isobaric::IsobaricTable;
    use crate::nsymm::is_primitive;
    use crate::rational::int;

    fn c<const N: usize>(p: [u32; N]) -> Composition {
        Composition::from(p)
    }

    #[test]
    fn curve_operations() {
        let d = DividedPowerSequence::standard(Alphabet::Z, 4);
        let inv = curve_inverse(&d).unwrap();
        let z = AlgebraElement::z;
        assert_eq!(inv.get(2).unwrap(), &(&(&z(1) * &z(1)) - &z(2)));
        assert!(inv.is_dps());
        let prod = curve_product(&d, &inv).unwrap();
        assert_eq!(prod, DividedPowerSequence::trivial(Family::Z, 4));
        let sh = curve_shift(&d, 2).unwrap();
        assert_eq!(sh.get(2).unwrap(), &z(1));
        assert!(sh.get(3).unwrap().is_zero());
        assert!(sh.is_dps());
    }

    #[test]
    fn small_dps_and_primitives() {
        let mut b = PrimitiveBuilder::new(6);
        assert_eq!(b.build_dps(&c([3])).unwrap(), DividedPowerSequence::standard(Alphabet::Z, 6));
        let d12 = b.build_dps(&c([1, 2])).unwrap();
        assert_eq!(d12, b.build_dps(&c([2, 4])).unwrap());
        let l12 = IsobaricTable::build(TableKind::L, 3).unwrap().get(1, 2).unwrap();
        let std = DividedPowerSequence::standard(Alphabet::Z, 3);
        assert_eq!(d12.get(1).unwrap(), &substitute_dps(&l12, &std, &std).unwrap());
        assert!(d12.is_dps());
        assert_eq!(b.build_p(&c([4])).unwrap(), newton_p(4).unwrap());
        let p24 = b.build_p(&c([2, 4])).unwrap();
        let expected = &d12.get(2).unwrap().scale(&int(2)) - &(d12.get(1).unwrap() * d12.get(1).unwrap());
        assert_eq!(p24, expected);
        assert!(is_primitive(&p24));
        assert!(b.entry(&c([2, 4])).unwrap().leading_term_holds());
        assert!(matches!(b.build_p(&c([2, 1])), Err(Error::NotLyndon(_))));
        assert!(matches!(b.build_p(&c([1, 6])), Err(Error::InsufficientBound { .. })));
    }

    #[test]
    fn verschiebung_examples() {
        let mut b = PrimitiveBuilder::new(6);
        let r = b.verschiebung_on_p(2, &c([2, 4])).unwrap();
        assert!(r.holds);
        assert_eq!(r.value, b.build_p(&c([1, 2])).unwrap().scale(&int(2)));
        let r = b.verschiebung_on_p(3, &c([1, 2])).unwrap();
        assert!(r.holds && r.value.is_zero());
        let r = b.verschiebung_on_p(1, &c([1, 1, 2])).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn spans_and_index() {
        assert_eq!(frlie_span(1).unwrap().hnf(), &alloc::vec![alloc::vec![BigInt::from(1)]]);
        assert_eq!(frlie_span(3).unwrap().rank(), 2);
        let mut b = PrimitiveBuilder::new(4);
        assert_eq!(b.prim_basis_span(4).unwrap().rank(), 3);
        for (n, want) in [(1, 1), (2, 1), (3, 2), (4, 6)] {
            assert_eq!(b.frlie_index(n).unwrap(), BigInt::from(want));
            assert_eq!(expected_frlie_index(n).unwrap(), BigInt::from(want));
        }
        assert_eq!(primitive_kernel(3).unwrap().hnf(), b.prim_basis_span(3).unwrap().hnf());
    }
}
