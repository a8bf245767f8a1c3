//! Free monoid algebras over tagged alphabets with exact rational
//! coefficients, their tensor squares, and truncated one- and two-variable
//! power series with such coefficients.
//!
//! Three alphabet families occur: `Z` (NSymm), `U` (the Lie Hopf algebra u)
//! and `{X, Y}` (the two-curve algebra 2NSymm). An element carries its family
//! and mixing families is an error; the `+`/`*` operators panic on mismatch,
//! the `try_*` methods report it.

use alloc::collections::{btree_map, BTreeMap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linear::LinearCombination;
use crate::rational::{binomial, Rational};
use crate::words::Composition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    Z,
    X,
    Y,
    U,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Z => "Z",
            Alphabet::X => "X",
            Alphabet::Y => "Y",
            Alphabet::U => "U",
        }
    }

    pub fn from_name(s: &str) -> Option<Alphabet> {
        Some(match s {
            "Z" => Alphabet::Z,
            "X" => Alphabet::X,
            "Y" => Alphabet::Y,
            "U" => Alphabet::U,
            _ => return None,
        })
    }
}

/// The permitted alphabet set of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Z,
    U,
    XY,
}

impl Family {
    pub fn allows(self, a: Alphabet) -> bool {
        matches!(
            (self, a),
            (Family::Z, Alphabet::Z) | (Family::U, Alphabet::U) | (Family::XY, Alphabet::X | Alphabet::Y)
        )
    }

    pub fn of(a: Alphabet) -> Family {
        match a {
            Alphabet::Z => Family::Z,
            Alphabet::U => Family::U,
            Alphabet::X | Alphabet::Y => Family::XY,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Z => "Z",
            Family::U => "U",
            Family::XY => "XY",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Some(match s {
            "Z" => Family::Z,
            "U" => Family::U,
            "XY" => Family::XY,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub alphabet: Alphabet,
    pub index: u32,
}

impl Letter {
    pub fn new(alphabet: Alphabet, index: u32) -> Self {
        assert!(index >= 1, "letter indices are positive");
        Letter { alphabet, index }
    }

    pub fn weight(self) -> u32 {
        self.index
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.alphabet.name(), self.index)
    }
}

/// A word of letters, ordered by length then letterwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_composition(alphabet: Alphabet, c: &Composition) -> Self {
        Word(c.parts().iter().map(|&i| Letter::new(alphabet, i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.index).sum()
    }

    /// Weight carried by letters of one alphabet.
    pub fn weight_in(&self, a: Alphabet) -> u32 {
        self.0.iter().filter(|l| l.alphabet == a).map(|l| l.index).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The index sequence, ignoring alphabet tags.
    pub fn to_composition(&self) -> Composition {
        Composition::new(self.0.iter().map(|l| l.index).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(self, f)
    }
}

fn fmt_word(w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if w.is_empty() {
        return f.write_str("1");
    }
    if w.0.iter().all(|l| l.alphabet == Alphabet::Z) {
        return write!(f, "Z({})", w.to_composition());
    }
    for (i, l) in w.0.iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// Writes `Σ c·w` as `c*w + ... - ...`, omitting unit coefficients.
pub(crate) fn fmt_terms<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Rational)>,
    mut fmt_key: impl FnMut(&K, &mut fmt::Formatter<'_>) -> fmt::Result,
    mut is_unit: impl FnMut(&K) -> bool,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if is_unit(k) {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            fmt_key(k, f)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// A finite rational linear combination of words over one alphabet family.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    family: Family,
    terms: LinearCombination<Word>,
}

impl AlgebraElement {
    pub fn zero(family: Family) -> Self {
        AlgebraElement { family, terms: LinearCombination::zero() }
    }

    pub fn one(family: Family) -> Self {
        Self::scalar(family, Rational::one())
    }

    pub fn scalar(family: Family, q: Rational) -> Self {
        AlgebraElement { family, terms: LinearCombination::term(Word::empty(), q) }
    }

    pub fn from_word(family: Family, w: Word) -> Self {
        Self::from_terms(family, LinearCombination::basis(w))
    }

    /// Panics if a word uses a letter outside `family`.
    pub fn from_terms(family: Family, terms: LinearCombination<Word>) -> Self {
        for w in terms.keys() {
            for l in w.letters() {
                assert!(family.allows(l.alphabet), "letter {l} not in family {}", family.name());
            }
        }
        AlgebraElement { family, terms }
    }

    pub fn letter(l: Letter) -> Self {
        Self::from_word(Family::of(l.alphabet), Word::letter(l))
    }

    /// `Z_n`, with `Z_0 = 1`.
    pub fn z(n: u32) -> Self {
        Self::generator(Alphabet::Z, n)
    }

    /// Generator of index `n` of a DPS-type alphabet, index 0 meaning 1.
    pub fn generator(a: Alphabet, n: u32) -> Self {
        if n == 0 {
            Self::one(Family::of(a))
        } else {
            Self::letter(Letter::new(a, n))
        }
    }

    /// The monomial `Z_α`.
    pub fn z_word(alpha: &Composition) -> Self {
        Self::from_word(Family::Z, Word::from_composition(Alphabet::Z, alpha))
    }

    pub fn u_word(alpha: &Composition) -> Self {
        Self::from_word(Family::U, Word::from_composition(Alphabet::U, alpha))
    }

    /// Builds a Z-family element from coefficients on compositions.
    pub fn from_compositions(c: &LinearCombination<Composition>) -> Self {
        AlgebraElement { family: Family::Z, terms: c.map_keys(|k| Word::from_composition(Alphabet::Z, k)) }
    }

    /// Coefficients indexed by the letter index sequences.
    pub fn to_compositions(&self) -> LinearCombination<Composition> {
        self.terms.map_keys(Word::to_composition)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> &LinearCombination<Word> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.coeff(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.is_integral()
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> Rational {
        self.terms.coeff(&Word::empty())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.keys().map(Word::weight);
        match w.next() {
            None => true,
            Some(first) => w.all(|x| x == first),
        }
    }

    /// The weight of a homogeneous nonzero element.
    pub fn weight(&self) -> Option<u32> {
        let first = self.terms.keys().next()?.weight();
        self.terms.keys().all(|w| w.weight() == first).then_some(first)
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn homogeneous_component(&self, weight: u32) -> Self {
        AlgebraElement { family: self.family, terms: self.terms.filter(|w| w.weight() == weight) }
    }

    fn check_family(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::AlphabetMismatch { left: self.family.name(), right: other.family.name() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        Ok(AlgebraElement { family: self.family, terms: &self.terms + &other.terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        Ok(AlgebraElement { family: self.family, terms: &self.terms - &other.terms })
    }

    /// Concatenation product extended bilinearly.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        let mut out = LinearCombination::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        Ok(AlgebraElement { family: self.family, terms: out })
    }

    /// The commutator `xy − yx`.
    pub fn try_bracket(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.try_bracket(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        AlgebraElement { family: self.family, terms: self.terms.scale(q) }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.family), |acc, _| &acc * self)
    }

    /// The algebra morphism out of the free algebra sending each letter `l`
    /// to `image(l)`, applied to `self`. Images must share `target`.
    pub fn substitute(
        &self,
        target: Family,
        mut image: impl FnMut(Letter) -> Result<AlgebraElement>,
    ) -> Result<AlgebraElement> {
        let mut cache: BTreeMap<Letter, AlgebraElement> = BTreeMap::new();
        let mut out = AlgebraElement::zero(target);
        for (w, c) in &self.terms {
            let mut prod = AlgebraElement::scalar(target, c.clone());
            for &l in w.letters() {
                let img = match cache.entry(l) {
                    btree_map::Entry::Occupied(e) => e.into_mut(),
                    btree_map::Entry::Vacant(e) => {
                        let img = image(l)?;
                        if img.family != target {
                            return Err(Error::WrongAlphabet { expected: target.name(), found: img.family.name() });
                        }
                        e.insert(img)
                    }
                };
                prod = prod.try_mul(img)?;
                if prod.is_zero() {
                    break;
                }
            }
            out.terms += &prod.terms;
        }
        Ok(out)
    }

    /// Leading term of a Z-family element under wll order on index words.
    pub fn leading_composition(&self) -> Option<(Composition, Rational)> {
        self.terms.iter().map(|(w, c)| (w.to_composition(), c.clone())).min_by(|a, b| a.0.cmp(&b.0))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter(), fmt_word, Word::is_empty)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⟨{}⟩", self.family.name(), self)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { family: self.family, terms: -&self.terms }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// An element of the tensor square `A ⊗ A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    family: Family,
    terms: LinearCombination<(Word, Word)>,
}

impl TensorElement {
    pub fn zero(family: Family) -> Self {
        TensorElement { family, terms: LinearCombination::zero() }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> &LinearCombination<(Word, Word)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn from_terms(family: Family, terms: LinearCombination<(Word, Word)>) -> Self {
        TensorElement { family, terms }
    }

    /// `x ⊗ y`.
    pub fn tensor(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        assert_eq!(x.family, y.family, "tensor of mixed families");
        let mut terms = LinearCombination::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                terms.add_term((a.clone(), b.clone()), ca * cb);
            }
        }
        TensorElement { family: x.family, terms }
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn scale(&self, q: &Rational) -> Self {
        TensorElement { family: self.family, terms: self.terms.scale(q) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.family, other.family, "tensor of mixed families");
        let mut terms = LinearCombination::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                terms.add_term((a.concat(c), b.concat(d)), c1 * c2);
            }
        }
        TensorElement { family: self.family, terms }
    }

    /// Applies `f ⊗ g`, both linear maps on elements.
    pub fn map_both(
        &self,
        target: Family,
        mut f: impl FnMut(&AlgebraElement) -> AlgebraElement,
        mut g: impl FnMut(&AlgebraElement) -> AlgebraElement,
    ) -> Self {
        let mut out = TensorElement::zero(target);
        for ((a, b), c) in &self.terms {
            let fa = f(&AlgebraElement::from_word(self.family, a.clone()));
            let gb = g(&AlgebraElement::from_word(self.family, b.clone()));
            out.terms.add_scaled(&TensorElement::tensor(&fa, &gb).terms, c);
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.family, rhs.family, "tensor of mixed families");
        TensorElement { family: self.family, terms: &self.terms + &rhs.terms }
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.family, rhs.family, "tensor of mixed families");
        TensorElement { family: self.family, terms: &self.terms - &rhs.terms }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(
            f,
            self.terms.iter(),
            |(a, b), f| {
                fmt_word(a, f)?;
                f.write_str(" ⊗ ")?;
                fmt_word(b, f)
            },
            |_| false,
        )
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A one-variable power series `Σ_{d ≤ bound} c_d t^d` with algebra
/// coefficients. Coefficients above the bound are unknown, not zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    family: Family,
    coeffs: Vec<AlgebraElement>,
}

impl Series {
    pub fn one(family: Family, bound: usize) -> Self {
        let mut coeffs = vec![AlgebraElement::zero(family); bound + 1];
        coeffs[0] = AlgebraElement::one(family);
        Series { family, coeffs }
    }

    /// Builds `Σ f(d) t^d` for `d ≤ bound`.
    pub fn from_fn(family: Family, bound: usize, mut f: impl FnMut(usize) -> AlgebraElement) -> Self {
        let coeffs: Vec<_> = (0..=bound).map(&mut f).collect();
        assert!(coeffs.iter().all(|c| c.family == family), "series of mixed families");
        Series { family, coeffs }
    }

    /// The curve `1 + A_1 t + A_2 t² + …` of a DPS-type alphabet.
    pub fn generator_curve(alphabet: Alphabet, bound: usize) -> Self {
        Self::from_fn(Family::of(alphabet), bound, |d| AlgebraElement::generator(alphabet, d as u32))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &AlgebraElement {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    /// Truncated Cauchy product; the order of factors is preserved.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch(self.bound(), other.bound()));
        }
        if self.family != other.family {
            return Err(Error::AlphabetMismatch { left: self.family.name(), right: other.family.name() });
        }
        let d = self.bound();
        let mut out = Series { family: self.family, coeffs: vec![AlgebraElement::zero(self.family); d + 1] };
        for i in 0..=d {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(d - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let p = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j] = &out.coeffs[i + j] + &p;
            }
        }
        Ok(out)
    }

    /// The two-sided inverse, computed as `Σ_k (−(s − 1))^k` truncated at the
    /// bound. Requires constant term 1.
    pub fn invert(&self) -> Result<Series> {
        if self.coeffs[0] != AlgebraElement::one(self.family) {
            return Err(Error::ConstantTermNotOne);
        }
        let d = self.bound();
        let mut minus_tail = -&self.clone();
        minus_tail.coeffs[0] = AlgebraElement::zero(self.family);
        let mut power = Series::one(self.family, d);
        let mut sum = Series::one(self.family, d);
        // (−(s−1))^k has no terms below degree k
        for _ in 1..=d {
            power = power.mul(&minus_tail)?;
            sum = &sum + &power;
        }
        Ok(sum)
    }

    /// `d(t) ↦ d(t^n)`, keeping the bound.
    pub fn shift(&self, n: usize) -> Series {
        assert!(n >= 1);
        let d = self.bound();
        Series::from_fn(self.family, d, |k| {
            if k % n == 0 {
                self.coeffs[k / n].clone()
            } else {
                AlgebraElement::zero(self.family)
            }
        })
    }

    /// `s(x + y)` as a series in two variables: the coefficient at `(i, j)`
    /// is `C(i+j, i) · c_{i+j}`.
    pub fn substitute_sum(&self) -> BiSeries {
        let d = self.bound();
        let mut out = BiSeries::zero(self.family, d);
        for n in 0..=d {
            for i in 0..=n {
                let b = Rational::from_integer(binomial(n as u64, i as u64));
                out.set(i, n - i, self.coeffs[n].scale(&b));
            }
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        assert_eq!(self.bound(), rhs.bound(), "series bound mismatch");
        Series { family: self.family, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { family: self.family, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// A two-variable series `Σ_{u+v ≤ bound} c_{u,v} s^u t^v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    family: Family,
    bound: usize,
    // coeffs[u][v], u + v <= bound
    coeffs: Vec<Vec<AlgebraElement>>,
}

impl BiSeries {
    pub fn zero(family: Family, bound: usize) -> Self {
        let coeffs = (0..=bound).map(|u| vec![AlgebraElement::zero(family); bound - u + 1]).collect();
        BiSeries { family, bound, coeffs }
    }

    pub fn one(family: Family, bound: usize) -> Self {
        let mut out = Self::zero(family, bound);
        out.coeffs[0][0] = AlgebraElement::one(family);
        out
    }

    /// A one-variable series placed in the `s` variable.
    pub fn in_s(series: &Series) -> Self {
        let mut out = Self::zero(series.family, series.bound());
        for (u, c) in series.coeffs.iter().enumerate() {
            out.coeffs[u][0] = c.clone();
        }
        out
    }

    /// A one-variable series placed in the `t` variable.
    pub fn in_t(series: &Series) -> Self {
        let mut out = Self::zero(series.family, series.bound());
        for (v, c) in series.coeffs.iter().enumerate() {
            out.coeffs[0][v] = c.clone();
        }
        out
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeff(&self, u: usize, v: usize) -> &AlgebraElement {
        &self.coeffs[u][v]
    }

    pub fn set(&mut self, u: usize, v: usize, c: AlgebraElement) {
        assert!(u + v <= self.bound, "({u},{v}) beyond bound {}", self.bound);
        assert_eq!(c.family, self.family, "series of mixed families");
        self.coeffs[u][v] = c;
    }

    /// Every `(u, v, coefficient)` with `u + v ≤ bound`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &AlgebraElement)> {
        self.coeffs.iter().enumerate().flat_map(|(u, row)| row.iter().enumerate().map(move |(v, c)| (u, v, c)))
    }

    /// Truncated Cauchy product, factor order preserved.
    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound, other.bound));
        }
        if self.family != other.family {
            return Err(Error::AlphabetMismatch { left: self.family.name(), right: other.family.name() });
        }
        let d = self.bound;
        let mut out = BiSeries::zero(self.family, d);
        for (u1, v1, a) in self.iter() {
            if a.is_zero() {
                continue;
            }
            for u2 in 0..=(d - u1 - v1) {
                for v2 in 0..=(d - u1 - v1 - u2) {
                    let b = &other.coeffs[u2][v2];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    let slot = &mut out.coeffs[u1 + u2][v1 + v2];
                    *slot = &*slot + &p;
                }
            }
        }
        Ok(out)
    }

    /// Ordered product `a_1 a_2 ⋯ a_k`.
    pub fn product<'a>(
        family: Family,
        bound: usize,
        factors: impl IntoIterator<Item = &'a BiSeries>,
    ) -> Result<BiSeries> {
        let mut acc = BiSeries::one(family, bound);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x(n: u32) -> AlgebraElement {
        AlgebraElement::letter(Letter::new(Alphabet::X, n))
    }
    fn y(n: u32) -> AlgebraElement {
        AlgebraElement::letter(Letter::new(Alphabet::Y, n))
    }
    fn zw<const N: usize>(p: [u32; N]) -> AlgebraElement {
        AlgebraElement::z_word(&Composition::from(p))
    }

    #[test]
    fn linear_arithmetic() {
        let z = AlgebraElement::z;
        assert_eq!(&(&z(1) + &z(2)) + &(-z(2)), z(1));
        assert!(z(3).scale(&int(0)).is_zero());
        let half = z(1).scale(&int(2)).scale(&ratio(1, 2));
        assert_eq!(half, z(1));
        assert!(half.is_integral());
        assert!(!z(1).scale(&ratio(1, 3)).is_integral());
    }

    #[test]
    fn concat_product() {
        let z = AlgebraElement::z;
        assert_eq!(&z(1) * &z(2), zw([1, 2]));
        assert_eq!(&(&z(1) + &z(2)) * &z(1), &zw([1, 1]) + &zw([2, 1]));
        let comm = &(&x(1) * &y(1)) - &(&y(1) * &x(1));
        assert!(!comm.is_zero());
        assert_eq!(comm.num_terms(), 2);
        assert_eq!(AlgebraElement::one(Family::Z) * z(4), z(4));
    }

    #[test]
    fn brackets() {
        let z = AlgebraElement::z;
        assert!(z(1).bracket(&z(1)).is_zero());
        assert_eq!(x(1).bracket(&y(2)), &(&x(1) * &y(2)) - &(&y(2) * &x(1)));
    }

    #[test]
    fn family_mismatch_is_reported() {
        assert!(matches!(AlgebraElement::z(1).try_add(&x(1)), Err(Error::AlphabetMismatch { .. })));
        assert!(AlgebraElement::z(1).try_mul(&AlgebraElement::one(Family::U)).is_err());
    }

    #[test]
    fn series_inverse() {
        let z = AlgebraElement::z;
        let one = Series::one(Family::Z, 4);
        assert_eq!(one.invert().unwrap(), one);

        let s = Series::from_fn(Family::Z, 2, |d| if d <= 1 { z(d as u32) } else { AlgebraElement::zero(Family::Z) });
        let inv = s.invert().unwrap();
        assert_eq!(*inv.coeff(1), -z(1));
        assert_eq!(*inv.coeff(2), zw([1, 1]));

        let curve = Series::generator_curve(Alphabet::Z, 2);
        let inv = curve.invert().unwrap();
        assert_eq!(*inv.coeff(2), &zw([1, 1]) - &z(2));

        let bad = Series::from_fn(Family::Z, 2, |_| z(1));
        assert_eq!(bad.invert(), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn biseries_products() {
        let xs = Series::generator_curve(Alphabet::X, 3);
        let yt = Series::generator_curve(Alphabet::Y, 3);
        let a = BiSeries::in_s(&xs);
        let b = BiSeries::in_t(&yt);
        let one = BiSeries::one(Family::XY, 3);
        assert_eq!(one.mul(&a).unwrap(), a);
        assert_eq!(*a.mul(&b).unwrap().coeff(1, 1), &x(1) * &y(1));
        assert_eq!(*b.mul(&a).unwrap().coeff(1, 1), &y(1) * &x(1));
        assert!(a.mul(&BiSeries::one(Family::XY, 2)).is_err());
    }

    #[test]
    fn sum_substitution() {
        let z = AlgebraElement::z;
        let curve = Series::generator_curve(Alphabet::Z, 4);
        let bi = curve.substitute_sum();
        assert_eq!(*bi.coeff(1, 1), z(2).scale(&int(2)));
        assert_eq!(*bi.coeff(0, 3), z(3));
        assert_eq!(*bi.coeff(2, 1), z(3).scale(&int(3)));
    }

    #[test]
    fn shift_places_entries() {
        let curve = Series::generator_curve(Alphabet::Z, 4);
        let sh = curve.shift(2);
        assert!(sh.coeff(1).is_zero());
        assert_eq!(*sh.coeff(2), AlgebraElement::z(1));
        assert_eq!(*sh.coeff(4), AlgebraElement::z(2));
    }

    #[test]
    fn display_is_readable() {
        let e = &zw([2]).scale(&int(2)) - &zw([1, 1]);
        assert_eq!(alloc::format!("{e}"), "2*Z([2]) - Z([1,1])");
        let c = &x(1) * &y(2);
        assert_eq!(alloc::format!("{c}"), "X(1)*Y(2)");
        assert_eq!(alloc::format!("{}", AlgebraElement::scalar(Family::Z, ratio(-3, 2))), "-3/2");
        assert_eq!(alloc::format!("{}", AlgebraElement::zero(Family::Z)), "0");
    }
}
