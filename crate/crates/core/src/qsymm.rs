//! QSymm, the graded dual of NSymm: words with the cut coproduct and the
//! overlapping shuffle product, the pairing with NSymm, the Frobenius
//! `f_n`, and the realization by quasi-monomial polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::algebra::{fmt_terms, AlgebraElement, Family};
use crate::error::{Error, Result};
use crate::linear::LinearCombination;
use crate::rational::Rational;
use crate::words::{enumerate_compositions, Composition};

/// A QSymm element: a rational combination of words.
pub type QElement = LinearCombination<Composition>;

/// An element of `QSymm ⊗ QSymm`.
pub type QTensor = LinearCombination<(Composition, Composition)>;

impl LinearCombination<Composition> {
    /// The unit `[]`.
    pub fn one() -> Self {
        Self::basis(Composition::empty())
    }

    pub fn word(parts: &[u32]) -> Self {
        Self::basis(Composition::from(parts))
    }

    pub fn homogeneous_component(&self, weight: u32) -> Self {
        self.filter(|c| c.weight() == weight)
    }

    pub fn max_weight(&self) -> u32 {
        self.keys().map(Composition::weight).max().unwrap_or(0)
    }

    pub fn display(&self) -> DisplayQ<'_> {
        DisplayQ(self)
    }
}

/// Formats a QElement as `3*[1,2] - [2]`, with `[]` for the unit word.
pub struct DisplayQ<'a>(&'a QElement);

impl fmt::Display for DisplayQ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.0.iter(), |c, f| write!(f, "{c}"), |_| false)
    }
}

fn prepend(a: u32, x: &QElement) -> QElement {
    x.map_keys(|w| Composition::cons(a, w))
}

fn shuffle_words(a: &Composition, b: &Composition, overlapping: bool) -> QElement {
    let (a, b) = (a.parts(), b.parts());
    let (m, n) = (a.len(), b.len());
    // table[i][j] = a[i..] * b[j..]
    let mut table: Vec<Vec<QElement>> = vec![vec![QElement::zero(); n + 1]; m + 1];
    for j in 0..=n {
        table[m][j] = QElement::word(&b[j..]);
    }
    for i in 0..=m {
        table[i][n] = QElement::word(&a[i..]);
    }
    for i in (0..m).rev() {
        for j in (0..n).rev() {
            let mut acc = prepend(a[i], &table[i + 1][j]);
            acc += &prepend(b[j], &table[i][j + 1]);
            if overlapping {
                acc += &prepend(a[i] + b[j], &table[i + 1][j + 1]);
            }
            table[i][j] = acc;
        }
    }
    core::mem::take(&mut table[0][0])
}

fn bilinear(x: &QElement, y: &QElement, overlapping: bool) -> QElement {
    let mut out = QElement::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&shuffle_words(a, b, overlapping), &(ca * cb));
        }
    }
    out
}

/// The overlapping shuffle product, i.e. the product of QSymm.
pub fn osh_product(x: &QElement, y: &QElement) -> QElement {
    bilinear(x, y, true)
}

/// The shuffle product: the non-overlapping stratum of [`osh_product`].
pub fn shuffle_product(x: &QElement, y: &QElement) -> QElement {
    bilinear(x, y, false)
}

pub fn osh_power(x: &QElement, k: u32) -> QElement {
    (0..k).fold(QElement::one(), |acc, _| osh_product(&acc, x))
}

/// `Δ[a_1..a_m] = Σ_i [a_1..a_i] ⊗ [a_{i+1}..a_m]`.
pub fn cut_coproduct(x: &QElement) -> QTensor {
    let mut out = QTensor::zero();
    for (w, c) in x {
        for i in 0..=w.len() {
            out.add_term((w.slice(0, i), w.slice(i, w.len())), c.clone());
        }
    }
    out
}

/// `⟨x, y⟩` with `⟨Z_α, β⟩ = δ_{α,β}`.
pub fn pairing(x: &AlgebraElement, y: &QElement) -> Result<Rational> {
    if x.family() != Family::Z {
        return Err(Error::WrongAlphabet { expected: "Z", found: x.family().name() });
    }
    Ok(x.to_compositions().dot(y))
}

/// `f_n[a_1, …, a_m] = [na_1, …, na_m]`.
pub fn frobenius_q(n: u32, x: &QElement) -> Result<QElement> {
    if n == 0 {
        return Err(Error::NonPositiveIndex(0));
    }
    Ok(x.map_keys(|w| w.scale(n)))
}

/// `h_n`: the sum of all compositions of `n`.
pub fn complete_h(n: u32) -> QElement {
    enumerate_compositions(n).into_iter().map(|c| (c, Rational::one())).collect()
}

/// `e_n = [1, 1, …, 1]`.
pub fn elementary_e(n: u32) -> QElement {
    QElement::basis(Composition::new(vec![1; n as usize]))
}

/// A polynomial in `nvars` commuting variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedPolynomial {
    nvars: usize,
    terms: LinearCombination<Vec<u32>>,
}

impl RealizedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        RealizedPolynomial { nvars, terms: LinearCombination::zero() }
    }

    pub fn one(nvars: usize) -> Self {
        RealizedPolynomial { nvars, terms: LinearCombination::basis(vec![0; nvars]) }
    }

    pub fn from_terms(nvars: usize, terms: LinearCombination<Vec<u32>>) -> Self {
        assert!(terms.keys().all(|e| e.len() == nvars), "exponent vector length");
        RealizedPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &LinearCombination<Vec<u32>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        RealizedPolynomial { nvars: self.nvars, terms: &self.terms + &other.terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = LinearCombination::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                terms.add_term(e, ca * cb);
            }
        }
        RealizedPolynomial { nvars: self.nvars, terms }
    }
}

/// `M_α = Σ_{i_1<⋯<i_m} x_{i_1}^{a_1} ⋯ x_{i_m}^{a_m}` in `nvars` variables.
pub fn realize(alpha: &Composition, nvars: usize) -> RealizedPolynomial {
    let m = alpha.len();
    let mut out = RealizedPolynomial::zero(nvars);
    if m > nvars {
        return out;
    }
    // walk all strictly increasing index tuples
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let mut e = vec![0u32; nvars];
        for (k, &i) in idx.iter().enumerate() {
            e[i] = alpha.parts()[k];
        }
        out.terms.add_term(e, Rational::one());
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < nvars - m + k {
                idx[k] += 1;
                for j in k + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn realize_element(x: &QElement, nvars: usize) -> RealizedPolynomial {
    let mut out = RealizedPolynomial::zero(nvars);
    for (w, c) in x {
        out.terms.add_scaled(&realize(w, nvars).terms, c);
    }
    out
}
