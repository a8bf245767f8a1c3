//! Finite linear combinations of basis keys with exact rational coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::rational::{is_integral, Rational};

/// A sparse vector `Σ c_k · k` over an ordered basis. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCombination<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinearCombination<K> {
    fn default() -> Self {
        LinearCombination { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinearCombination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scalar: &Rational) {
        if scalar.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scalar);
        }
    }

    pub fn scale(&self, scalar: &Rational) -> Self {
        if scalar.is_zero() {
            return Self::zero();
        }
        LinearCombination { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * scalar)).collect() }
    }

    /// True iff every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    /// Relabels basis keys; colliding images are summed.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinearCombination<L> {
        let mut out = LinearCombination::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Linear extension of `f` on basis keys.
    pub fn linear_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinearCombination<L>) -> LinearCombination<L> {
        let mut out = LinearCombination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinearCombination {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Bilinear pairing where basis keys are orthonormal.
    pub fn dot(&self, other: &Self) -> Rational {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.terms.iter().filter_map(|(k, c)| large.terms.get(k).map(|d| c * d)).fold(Rational::zero(), |a, b| a + b)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinearCombination<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinearCombination<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&LinearCombination<K>> for LinearCombination<K> {
    fn add_assign(&mut self, rhs: &LinearCombination<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&LinearCombination<K>> for LinearCombination<K> {
    fn sub_assign(&mut self, rhs: &LinearCombination<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl<K: Ord + Clone> Add for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn add(self, rhs: Self) -> LinearCombination<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn sub(self, rhs: Self) -> LinearCombination<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Neg for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn neg(self) -> LinearCombination<K> {
        LinearCombination { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }
}

impl<K: Ord + core::fmt::Debug> core::fmt::Debug for LinearCombination<K> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| (k, DisplayQ(c)))).finish()
    }
}

struct DisplayQ<'a>(&'a Rational);

impl core::fmt::Debug for DisplayQ<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}
