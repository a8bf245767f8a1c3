//! Compositions (words over the positive integers), their statistics, the
//! three total orders used throughout, Lyndon words and Witt counts.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite word over the positive integers. The empty word is allowed.
///
/// The `Ord` impl is the wll order (weight, then length, then lex), which is
/// the canonical order for basis enumeration and term maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Panics if any part is zero.
    pub fn new(parts: Vec<u32>) -> Self {
        Self::try_new(parts).expect("composition parts must be positive")
    }

    pub fn try_new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositiveIndex(0));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `g(α)`, the gcd of the parts.
    pub fn gcd_of_parts(&self) -> Result<u32> {
        if self.0.is_empty() {
            return Err(Error::UndefinedStatistic("gcd"));
        }
        Ok(self.0.iter().fold(0u32, |g, &a| g.gcd(&a)))
    }

    /// `k(α)`, the product of the parts.
    pub fn product_of_parts(&self) -> Result<u64> {
        if self.0.is_empty() {
            return Err(Error::UndefinedStatistic("product"));
        }
        Ok(self.0.iter().map(|&a| a as u64).product())
    }

    /// `α_red`: every part divided by `g(α)`.
    pub fn reduce(&self) -> Result<Composition> {
        let g = self.gcd_of_parts()?;
        Ok(Composition(self.0.iter().map(|a| a / g).collect()))
    }

    pub fn scale(&self, n: u32) -> Composition {
        assert!(n >= 1, "scale factor must be positive");
        Composition(self.0.iter().map(|a| a * n).collect())
    }

    /// Inverse of [`scale`](Self::scale); `None` unless `n` divides every part.
    pub fn unscale(&self, n: u32) -> Option<Composition> {
        if n == 0 || self.0.iter().any(|a| a % n != 0) {
            return None;
        }
        Some(Composition(self.0.iter().map(|a| a / n).collect()))
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// Prepends a letter.
    pub fn cons(a: u32, rest: &Composition) -> Composition {
        let mut parts = Vec::with_capacity(rest.len() + 1);
        parts.push(a);
        parts.extend_from_slice(&rest.0);
        Composition(parts)
    }

    pub fn slice(&self, start: usize, end: usize) -> Composition {
        Composition(self.0[start..end].to_vec())
    }

    pub fn is_lyndon(&self) -> bool {
        is_lyndon(self)
    }
}

impl From<&[u32]> for Composition {
    fn from(parts: &[u32]) -> Self {
        Composition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Composition {
    fn from(parts: [u32; N]) -> Self {
        Composition::new(parts.to_vec())
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        wll_cmp(self, other)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Key for the `≺_wl` order on pairs of nonnegative integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairOrderKey {
    pub u: u32,
    pub v: u32,
}

impl PairOrderKey {
    pub fn new(u: u32, v: u32) -> Self {
        PairOrderKey { u, v }
    }
}

impl Ord for PairOrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        wl_pair_cmp(*self, *other)
    }
}

impl PartialOrd for PairOrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dictionary order; a proper prefix is smaller, the empty word is smallest.
pub fn lex_cmp(a: &Composition, b: &Composition) -> Ordering {
    // slice Ord is exactly this order
    a.0.cmp(&b.0)
}

/// Weight first, then length, then lexicographic.
pub fn wll_cmp(a: &Composition, b: &Composition) -> Ordering {
    a.weight().cmp(&b.weight()).then(a.len().cmp(&b.len())).then_with(|| lex_cmp(a, b))
}

/// `(u,v) ≺_wl (u',v')` iff `u+v < u'+v'`, or equal sums and `u < u'`.
pub fn wl_pair_cmp(a: PairOrderKey, b: PairOrderKey) -> Ordering {
    (a.u as u64 + a.v as u64).cmp(&(b.u as u64 + b.v as u64)).then(a.u.cmp(&b.u))
}

/// Which of the three total orders to use in [`compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Wll,
}

pub fn compare(order: OrderKind, a: &Composition, b: &Composition) -> Ordering {
    match order {
        OrderKind::Lex => lex_cmp(a, b),
        OrderKind::Wll => wll_cmp(a, b),
    }
}

/// True iff `α` is nonempty and lex-smaller than each of its proper tails.
pub fn is_lyndon(alpha: &Composition) -> bool {
    let p = alpha.parts();
    !p.is_empty() && (1..p.len()).all(|i| p < &p[i..])
}

/// Splits a Lyndon word of length ≥ 2 at its lex-smallest proper tail.
pub fn canonical_factorization(alpha: &Composition) -> Result<(Composition, Composition)> {
    if alpha.len() < 2 || !is_lyndon(alpha) {
        return Err(Error::NoCanonicalFactorization(alpha.clone()));
    }
    let p = alpha.parts();
    let split = (1..p.len()).min_by(|&i, &j| p[i..].cmp(&p[j..])).expect("length >= 2");
    let left = alpha.slice(0, split);
    let right = alpha.slice(split, p.len());
    debug_assert!(is_lyndon(&left) && is_lyndon(&right));
    Ok((left, right))
}

/// All compositions of `n` in increasing wll order; `[[]]` for `n = 0`.
pub fn enumerate_compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::with_capacity(1usize << (n - 1).min(30));
    // each subset of the n-1 gaps between unit cells is a composition
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1u32;
        for gap in 0..(n - 1) {
            if mask & (1 << gap) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(Composition(parts));
    }
    out.sort();
    out
}

/// Compositions of every weight `0..=n`, wll sorted.
pub fn enumerate_compositions_up_to(n: u32) -> Vec<Composition> {
    (0..=n).flat_map(enumerate_compositions).collect()
}

/// `LYN_n`: Lyndon words of weight `n`, in increasing wll order.
pub fn enumerate_lyndon(n: u32) -> Vec<Composition> {
    if n == 0 {
        return Vec::new();
    }
    enumerate_compositions(n).into_iter().filter(is_lyndon).collect()
}

pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut result = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `β_n`, the number of Lyndon words of weight `n`, by Möbius inversion of
/// `Σ_{d | m} d·β_d = 2^m − 1`.
pub fn beta(n: u32) -> u64 {
    assert!((1..63).contains(&n), "beta defined for 1 <= n < 63");
    let n = n as u64;
    let total: i128 =
        (1..=n).filter(|&d| n.is_multiple_of(d)).map(|d| mobius(n / d) as i128 * ((1i128 << d) - 1)).sum();
    debug_assert!(total % n as i128 == 0);
    (total / n as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c<const N: usize>(p: [u32; N]) -> Composition {
        Composition::from(p)
    }

    #[test]
    fn statistics() {
        assert_eq!(Composition::empty().weight(), 0);
        assert_eq!(c([1, 2, 1, 3]).weight(), 7);
        assert_eq!(c([5]).weight(), 5);
        assert_eq!(c([2, 4]).gcd_of_parts().unwrap(), 2);
        assert_eq!(c([1, 2]).gcd_of_parts().unwrap(), 1);
        assert_eq!(c([6]).gcd_of_parts().unwrap(), 6);
        assert_eq!(c([2, 3]).product_of_parts().unwrap(), 6);
        assert_eq!(c([1, 1, 1, 2]).product_of_parts().unwrap(), 2);
        assert_eq!(c([5]).product_of_parts().unwrap(), 5);
        assert!(Composition::empty().gcd_of_parts().is_err());
        assert!(Composition::empty().product_of_parts().is_err());
        assert!(Composition::try_new(alloc::vec![1, 0]).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(lex_cmp(&c([1, 2]), &c([2])), Ordering::Less);
        assert_eq!(lex_cmp(&c([1, 1]), &c([1])), Ordering::Greater);
        assert_eq!(wll_cmp(&c([3]), &c([1, 2])), Ordering::Less);
        assert_eq!(wl_pair_cmp(PairOrderKey::new(1, 2), PairOrderKey::new(2, 1)), Ordering::Less);
        for o in [OrderKind::Lex, OrderKind::Wll] {
            assert_eq!(compare(o, &Composition::empty(), &c([1])), Ordering::Less);
        }
    }

    #[test]
    fn lyndon_predicate_and_factorization() {
        assert!(is_lyndon(&c([1, 2, 1, 3])));
        assert!(is_lyndon(&c([1, 3, 2])));
        assert!(is_lyndon(&c([4])));
        assert!(!is_lyndon(&c([2, 1, 3])));
        assert!(!is_lyndon(&c([1, 2, 1])));
        assert!(!is_lyndon(&Composition::empty()));
        assert_eq!(canonical_factorization(&c([1, 2, 1, 3])).unwrap(), (c([1, 2]), c([1, 3])));
        assert_eq!(canonical_factorization(&c([1, 2])).unwrap(), (c([1]), c([2])));
        assert_eq!(canonical_factorization(&c([1, 1, 2])).unwrap(), (c([1]), c([1, 2])));
        assert!(canonical_factorization(&c([3])).is_err());
        assert!(canonical_factorization(&c([2, 1])).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_compositions(0), alloc::vec![Composition::empty()]);
        assert_eq!(enumerate_compositions(2), alloc::vec![c([2]), c([1, 1])]);
        assert_eq!(enumerate_compositions(3), alloc::vec![c([3]), c([1, 2]), c([2, 1]), c([1, 1, 1])]);
        assert_eq!(enumerate_lyndon(1), alloc::vec![c([1])]);
        assert_eq!(enumerate_lyndon(3), alloc::vec![c([3]), c([1, 2])]);
        assert_eq!(enumerate_lyndon(4), alloc::vec![c([4]), c([1, 3]), c([1, 1, 2])]);
    }

    #[test]
    fn witt_counts() {
        assert_eq!(beta(1), 1);
        assert_eq!(beta(5), 6);
        assert_eq!(beta(6), 9);
        for n in 1..=10 {
            assert_eq!(beta(n) as usize, enumerate_lyndon(n).len(), "n = {n}");
        }
    }

    #[test]
    fn reduce_and_scale() {
        assert_eq!(c([2, 4]).reduce().unwrap(), c([1, 2]));
        assert_eq!(c([3]).reduce().unwrap(), c([1]));
        assert_eq!(c([1, 2]).reduce().unwrap(), c([1, 2]));
        assert_eq!(c([1, 2]).scale(3), c([3, 6]));
        assert_eq!(Composition::empty().scale(5), Composition::empty());
        assert_eq!(c([2]).scale(1), c([2]));
        assert_eq!(c([2, 4]).unscale(2), Some(c([1, 2])));
        assert_eq!(c([2, 3]).unscale(2), None);
    }
}
