//! Exact arithmetic for the Hopf algebras of noncommutative symmetric
//! functions (NSymm) and quasisymmetric functions (QSymm) over the integers.
//!
//! Everything here is pure and allocation-only: no IO, no global state. The
//! crate builds under `#![no_std]` with `alloc`. Coefficients are exact
//! rationals; modules that promise integrality check denominators at their
//! boundary.
//!
//! Layout:
//! - [`words`]: compositions, orders, Lyndon words, Witt counts.
//! - [`linear`] and [`algebra`]: sparse linear combinations, free monoid
//!   algebras over tagged alphabets, truncated one- and two-variable series.
//! - [`nsymm`]: coproduct, Newton primitives, Verschiebung, Frobenius,
//!   projection to Symm, the exponential isomorphism, Lyndon brackets.
//! - [`qsymm`]: overlapping shuffle, cut coproduct, pairing, realization.
//! - [`isobaric`]: the `L_{u,v}` and `N_{u,v}` correction polynomials.
//! - [`primitives`]: divided power sequences `d_α` and primitives `P_α`.
//! - [`generators`]: λ-operations, the generators `E_α`, filtrations and
//!   the `τ_n`-Verschiebung family.
//! - [`lattice`]: Hermite/Smith normal forms over big integers.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub mod generators;
pub mod isobaric;
pub mod lattice;
pub mod linear;
pub mod nsymm;
pub mod primitives;
pub mod qsymm;
pub mod rational;
pub mod words;

pub use algebra::{AlgebraElement, Alphabet, BiSeries, Family, Letter, Series, TensorElement, Word};
pub use error::{Error, Result};
pub use lattice::IntegerLattice;
pub use linear::LinearCombination;
pub use qsymm::{QElement, QTensor, RealizedPolynomial};
pub use rational::Rational;
pub use words::Composition;
