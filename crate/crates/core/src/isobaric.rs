//! The two bi-isobaric decompositions.
//!
//! `L`: `X(s)^{-1} Y(t)^{-1} X(s) Y(t)` over `Z⟨X, Y⟩`, and
//! `N`: `Z(s)^{-1} Z(t)^{-1} Z(s+t)` over NSymm, are each written as an
//! ordered product, over coprime directions `(a, b)` in `≺_wl` order, of
//! factors `1 + Σ_r T_{ra,rb} s^{ra} t^{rb}`.
//!
//! Extraction: the coefficient at `(u, v)` of the product is `T_{u,v}` plus
//! products of at least two entries of strictly smaller total degree. So
//! after all entries of total degree `< n` are known, every entry of degree
//! `n` is the target coefficient minus the product of the known factors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::{AlgebraElement, Alphabet, BiSeries, Family, Letter, Series, TensorElement};
use crate::error::{Error, Result};
use crate::nsymm::{coproduct, verschiebung, DividedPowerSequence};
use crate::rational::{binomial, Rational};
use crate::words::{wl_pair_cmp, PairOrderKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    L,
    N,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::L => "L",
            TableKind::N => "N",
        }
    }

    pub fn family(self) -> Family {
        match self {
            TableKind::L => Family::XY,
            TableKind::N => Family::Z,
        }
    }
}

/// `T_{u,v}` for `u, v ≥ 1`, `u + v ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsobaricTable {
    kind: TableKind,
    bound: usize,
    entries: BTreeMap<(u32, u32), AlgebraElement>,
}

/// Index pairs `(u, v)`, `u, v ≥ 1`, `u + v ≤ bound`, in `≺_wl` order.
pub fn index_pairs(bound: usize) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = (2..=bound as u32).flat_map(|n| (1..n).map(move |u| (u, n - u))).collect();
    pairs.sort_by(|a, b| wl_pair_cmp(PairOrderKey::new(a.0, a.1), PairOrderKey::new(b.0, b.1)));
    pairs
}

/// Coprime directions `(a, b)` with `a + b ≤ bound`, in `≺_wl` order.
pub fn directions(bound: usize) -> Vec<(u32, u32)> {
    index_pairs(bound).into_iter().filter(|(a, b)| a.gcd(b) == 1).collect()
}

/// The left-hand series of the decomposition, truncated at `bound`.
pub fn target_series(kind: TableKind, bound: usize) -> Result<BiSeries> {
    match kind {
        TableKind::L => {
            let x = Series::generator_curve(Alphabet::X, bound);
            let y = Series::generator_curve(Alphabet::Y, bound);
            let xs = BiSeries::in_s(&x);
            let yt = BiSeries::in_t(&y);
            let xs_inv = BiSeries::in_s(&x.invert()?);
            let yt_inv = BiSeries::in_t(&y.invert()?);
            BiSeries::product(Family::XY, bound, [&xs_inv, &yt_inv, &xs, &yt])
        }
        TableKind::N => {
            let z = Series::generator_curve(Alphabet::Z, bound);
            let zi = z.invert()?;
            let zs_inv = BiSeries::in_s(&zi);
            let zt_inv = BiSeries::in_t(&zi);
            let zst = z.substitute_sum();
            BiSeries::product(Family::Z, bound, [&zs_inv, &zt_inv, &zst])
        }
    }
}

impl IsobaricTable {
    /// Builds the unique table for the given kind up to total degree `bound`.
    pub fn build(kind: TableKind, bound: usize) -> Result<Self> {
        let bound = bound.max(2);
        let target = target_series(kind, bound)?;
        let mut table = IsobaricTable { kind, bound, entries: BTreeMap::new() };
        for n in 2..=bound as u32 {
            let partial = table.ordered_product()?;
            for u in 1..n {
                let v = n - u;
                let entry = target.coeff(u as usize, v as usize) - partial.coeff(u as usize, v as usize);
                table.entries.insert((u, v), entry);
            }
        }
        Ok(table)
    }

    /// The table with a single entry replaced; used to probe uniqueness.
    pub fn with_entry(&self, u: u32, v: u32, element: AlgebraElement) -> Self {
        let mut out = self.clone();
        out.entries.insert((u, v), element);
        out
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn family(&self) -> Family {
        self.kind.family()
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), AlgebraElement> {
        &self.entries
    }

    /// `T_{u,v}`; `T_{0,0} = 1` and other pairs outside the table are 0.
    pub fn get(&self, u: u32, v: u32) -> Result<AlgebraElement> {
        if u == 0 && v == 0 {
            return Ok(AlgebraElement::one(self.family()));
        }
        if u == 0 || v == 0 {
            return Ok(AlgebraElement::zero(self.family()));
        }
        self.entries
            .get(&(u, v))
            .cloned()
            .ok_or(Error::InsufficientBound { needed: (u + v) as usize, bound: self.bound })
    }

    /// `1 + Σ_r T_{ra,rb} s^{ra} t^{rb}` using the entries present.
    pub fn factor(&self, a: u32, b: u32) -> BiSeries {
        let mut f = BiSeries::one(self.family(), self.bound);
        let mut r = 1;
        while ((a + b) * r) as usize <= self.bound {
            if let Some(e) = self.entries.get(&(r * a, r * b)) {
                f.set((r * a) as usize, (r * b) as usize, e.clone());
            }
            r += 1;
        }
        f
    }

    /// The `≺_wl`-ordered product of all factors.
    pub fn ordered_product(&self) -> Result<BiSeries> {
        let factors: Vec<BiSeries> = directions(self.bound).into_iter().map(|(a, b)| self.factor(a, b)).collect();
        BiSeries::product(self.family(), self.bound, &factors)
    }

    /// The ordered product equals the target series up to the bound.
    pub fn reconstructs(&self) -> Result<bool> {
        Ok(self.ordered_product()? == target_series(self.kind, self.bound)?)
    }

    /// `μ(T_{ra,rb}) = Σ_{r_1+r_2=r} T_{r_1a,r_1b} ⊗ T_{r_2a,r_2b}` for all
    /// multiples within the bound.
    pub fn factor_is_2curve(&self, a: u32, b: u32) -> Result<bool> {
        let mut r = 1;
        while ((a + b) * r) as usize <= self.bound {
            let lhs = coproduct(&self.get(r * a, r * b)?);
            let mut rhs = TensorElement::zero(self.family());
            for r1 in 0..=r {
                let r2 = r - r1;
                rhs = &rhs + &TensorElement::tensor(&self.get(r1 * a, r1 * b)?, &self.get(r2 * a, r2 * b)?);
            }
            if lhs != rhs {
                return Ok(false);
            }
            r += 1;
        }
        Ok(true)
    }

    /// `v_n(T_{u,v}) = T_{u/n, v/n}` when `n | u, v`, else 0, for every entry.
    pub fn verschiebung_compat(&self, n: u32) -> Result<bool> {
        Ok(self.verschiebung_failures(n)?.is_empty())
    }

    /// The entries at which [`Self::verschiebung_compat`] fails.
    pub fn verschiebung_failures(&self, n: u32) -> Result<Vec<(u32, u32)>> {
        let mut out = Vec::new();
        for (&(u, v), e) in &self.entries {
            let lhs = verschiebung(n, e)?;
            let rhs =
                if u % n == 0 && v % n == 0 { self.get(u / n, v / n)? } else { AlgebraElement::zero(self.family()) };
            if lhs != rhs {
                out.push((u, v));
            }
        }
        Ok(out)
    }

    pub fn all_integral(&self) -> bool {
        self.entries.values().all(AlgebraElement::is_integral)
    }

    /// `L_{u,v}` has X-weight `u` and Y-weight `v`; `N_{u,v}` has weight `u+v`.
    pub fn homogeneity_holds(&self) -> bool {
        self.entries.iter().all(|(&(u, v), e)| {
            e.terms().keys().all(|w| match self.kind {
                TableKind::L => w.weight_in(Alphabet::X) == u && w.weight_in(Alphabet::Y) == v,
                TableKind::N => w.weight() == u + v,
            })
        })
    }

    /// The expected low-length part: `[X_u, Y_v]` for `L` (length ≤ 2),
    /// `C(u+v, u)·Z_{u+v}` for `N` (length ≤ 1).
    pub fn leading_part(&self, u: u32, v: u32) -> Result<(AlgebraElement, AlgebraElement)> {
        let e = self.get(u, v)?;
        let (max_len, expected) = match self.kind {
            TableKind::L => {
                let x = AlgebraElement::letter(Letter::new(Alphabet::X, u));
                let y = AlgebraElement::letter(Letter::new(Alphabet::Y, v));
                (2, x.bracket(&y))
            }
            TableKind::N => {
                let c = Rational::from_integer(binomial((u + v) as u64, u as u64));
                (1, AlgebraElement::z(u + v).scale(&c))
            }
        };
        let low = AlgebraElement::from_terms(self.family(), e.terms().filter(|w| w.len() <= max_len));
        Ok((low, expected))
    }

    pub fn leading_terms_hold(&self) -> Result<bool> {
        for &(u, v) in self.entries.keys() {
            let (low, expected) = self.leading_part(u, v)?;
            if low != expected {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Substitutes `d1(k)` for `X_k` and `d2(l)` for `Y_l` in `poly`.
pub fn substitute_dps(
    poly: &AlgebraElement,
    d1: &DividedPowerSequence,
    d2: &DividedPowerSequence,
) -> Result<AlgebraElement> {
    if poly.family() != Family::XY {
        return Err(Error::WrongAlphabet { expected: "XY", found: poly.family().name() });
    }
    if d1.family() != d2.family() {
        return Err(Error::AlphabetMismatch { left: d1.family().name(), right: d2.family().name() });
    }
    poly.substitute(d1.family(), |l| {
        let d = if l.alphabet == Alphabet::X { d1 } else { d2 };
        d.get(l.index as usize).cloned()
    })
}

/// Substitutes `d(k)` for `Z_k` in a Z-family polynomial.
pub fn substitute_curve(poly: &AlgebraElement, d: &DividedPowerSequence) -> Result<AlgebraElement> {
    if poly.family() != Family::Z {
        return Err(Error::WrongAlphabet { expected: "Z", found: poly.family().name() });
    }
    poly.substitute(d.family(), |l| d.get(l.index as usize).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsymm::newton_p;
    use crate::rational::int;

    fn x(n: u32) -> AlgebraElement {
        AlgebraElement::letter(Letter::new(Alphabet::X, n))
    }
    fn y(n: u32) -> AlgebraElement {
        AlgebraElement::letter(Letter::new(Alphabet::Y, n))
    }

    #[test]
    fn orders_of_pairs() {
        assert_eq!(index_pairs(4), alloc::vec![(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)]);
        assert_eq!(directions(4), alloc::vec![(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]);
    }

    #[test]
    fn l_table_small() {
        let t = IsobaricTable::build(TableKind::L, 4).unwrap();
        assert_eq!(t.get(1, 1).unwrap(), x(1).bracket(&y(1)));
        let (low, expected) = t.leading_part(1, 2).unwrap();
        assert_eq!(low, expected);
        assert!(t.reconstructs().unwrap());
        let target = target_series(TableKind::L, 4).unwrap();
        for k in 1..=4 {
            assert!(target.coeff(k, 0).is_zero());
            assert!(target.coeff(0, k).is_zero());
        }
    }

    #[test]
    fn n_table_small() {
        let t = IsobaricTable::build(TableKind::N, 4).unwrap();
        let z = AlgebraElement::z;
        assert_eq!(t.get(1, 1).unwrap(), &z(2).scale(&int(2)) - &(&z(1) * &z(1)));
        for n in 2..=4 {
            assert_eq!(t.get(1, n - 1).unwrap(), newton_p(n).unwrap());
        }
        let (low, expected) = t.leading_part(2, 1).unwrap();
        assert_eq!(low, expected);
        assert_eq!(expected, z(3).scale(&int(3)));
    }

    #[test]
    fn substitution_examples() {
        let std = DividedPowerSequence::standard(Alphabet::Z, 4);
        let comm = x(1).bracket(&y(1));
        assert!(substitute_dps(&comm, &std, &std).unwrap().is_zero());
        assert_eq!(substitute_dps(&x(3), &std, &std).unwrap(), AlgebraElement::z(3));
        let short = DividedPowerSequence::standard(Alphabet::Z, 1);
        assert!(matches!(substitute_dps(&x(3), &short, &std), Err(Error::InsufficientBound { .. })));
        assert!(substitute_dps(&AlgebraElement::z(1), &std, &std).is_err());
    }
}
