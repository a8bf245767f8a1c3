//! The λ-ring operations on QSymm, the free generators `E_α`, expansion
//! into E-monomials, the filtrations `F_i`/`G_i`, and the Verschiebung
//! family `v_φ` built from the characters `τ_n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{determinant, inverse, IntegerLattice, Matrix};
use crate::linear::LinearCombination;
use crate::primitives::PrimitiveBuilder;
use crate::qsymm::{complete_h, cut_coproduct, elementary_e, frobenius_q, osh_product, pairing, QElement, QTensor};
use crate::rational::{factorial, int, sign, Rational};
use crate::words::{enumerate_compositions, enumerate_lyndon, Composition};

/// A monomial in the `E_α`: its factors in non-decreasing wll order.
pub type Monomial = Vec<Composition>;

/// A polynomial in the `E_α`.
pub type EPolynomial = LinearCombination<Monomial>;

/// `p_n(α) = [na_1, …, na_m]`.
pub fn adams_p(n: u32, alpha: &Composition) -> Result<QElement> {
    if n == 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    if alpha.is_empty() {
        return Err(Error::Other("λ-operations need a nonempty word".into()));
    }
    Ok(QElement::basis(alpha.scale(n)))
}

/// `e_n(α)`, solved from
/// `p_n = p_{n−1}e_1 − p_{n−2}e_2 + ⋯ + (−1)^{n−2}p_1e_{n−1} + (−1)^{n−1}n e_n`.
pub fn lambda_e(n: u32, alpha: &Composition) -> Result<QElement> {
    adams_p(n, alpha)?;
    let mut es: Vec<QElement> = vec![QElement::one()];
    for m in 1..=n {
        let mut acc = adams_p(m, alpha)?;
        for i in 1..m {
            let t = osh_product(&adams_p(m - i, alpha)?, &es[i as usize]);
            acc.add_scaled(&t, &-sign(i - 1));
        }
        let e = acc.scale(&(sign(m - 1) / int(m as i64)));
        if !e.is_integral() {
            return Err(Error::NotIntegral("e_n(α)"));
        }
        es.push(e);
    }
    Ok(es.pop().expect("n ≥ 1"))
}

/// `E_α = e_{g(α)}(α_red)`.
pub fn build_e(alpha: &Composition) -> Result<QElement> {
    if !alpha.is_lyndon() {
        return Err(Error::NotLyndon(alpha.clone()));
    }
    lambda_e(alpha.gcd_of_parts()?, &alpha.reduce()?)
}

/// Multisets of Lyndon words of total weight `n`, each sorted by wll,
/// listed by number of factors and then lexicographically.
pub fn lyndon_multisets(n: u32) -> Vec<Monomial> {
    let gens: Vec<Composition> = (1..=n).flat_map(enumerate_lyndon).collect::<Vec<_>>();
    let mut gens = gens;
    gens.sort();
    let mut out = Vec::new();
    fn go(gens: &[Composition], start: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            let w = gens[i].weight();
            if w <= left {
                cur.push(gens[i].clone());
                go(gens, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    go(&gens, 0, n, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// The E-monomials of one weight and their coordinates over the
/// compositions of that weight.
#[derive(Clone, Debug)]
pub struct EMonomialBasis {
    pub weight: u32,
    pub monomials: Vec<Monomial>,
    pub expansions: Vec<QElement>,
    pub columns: Vec<Composition>,
    pub matrix: Matrix,
    inverse: Vec<Vec<Rational>>,
}

impl EMonomialBasis {
    pub fn build(n: u32, generators: &mut BTreeMap<Composition, QElement>) -> Result<Self> {
        let monomials = lyndon_multisets(n);
        let columns = enumerate_compositions(n);
        let mut expansions = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let mut x = QElement::one();
            for g in m {
                if !generators.contains_key(g) {
                    generators.insert(g.clone(), build_e(g)?);
                }
                x = osh_product(&x, &generators[g]);
            }
            expansions.push(x);
        }
        if monomials.len() != columns.len() {
            return Err(Error::RankDeficient { expected: columns.len(), found: monomials.len() });
        }
        let matrix: Matrix =
            expansions.iter().map(|x| columns.iter().map(|c| x.coeff(c).to_integer()).collect()).collect();
        let det = determinant(&matrix);
        if det.clone() * det.clone() != BigInt::one() {
            return Err(Error::NotUnimodular(n));
        }
        let rational: Vec<Vec<Rational>> =
            matrix.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect();
        let inverse = inverse(&rational).ok_or(Error::NotUnimodular(n))?;
        Ok(EMonomialBasis { weight: n, monomials, expansions, columns, matrix, inverse })
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.matrix)
    }

    /// Solves `Σ y_m · expansion_m = x` for a homogeneous `x` of this weight.
    pub fn solve(&self, x: &QElement) -> Result<EPolynomial> {
        let coords: Vec<Rational> = self.columns.iter().map(|c| x.coeff(c)).collect();
        let mut out = EPolynomial::zero();
        for (i, m) in self.monomials.iter().enumerate() {
            let y: Rational = coords.iter().zip(&self.inverse).map(|(c, row)| c * &row[i]).sum();
            out.add_term(m.clone(), y);
        }
        Ok(out)
    }
}

/// Filtration kind: `F_i` (generated by short generators) or `G_i`
/// (spanned by short words).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    F,
    G,
}

/// Caches the generators `E_α` and the per-weight E-monomial bases.
#[derive(Debug, Default)]
pub struct Generators {
    generators: BTreeMap<Composition, QElement>,
    bases: BTreeMap<u32, EMonomialBasis>,
    tau: BTreeMap<(u32, Composition), Rational>,
}

impl Generators {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn e(&mut self, alpha: &Composition) -> Result<QElement> {
        if let Some(x) = self.generators.get(alpha) {
            return Ok(x.clone());
        }
        let x = build_e(alpha)?;
        self.generators.insert(alpha.clone(), x.clone());
        Ok(x)
    }

    pub fn basis(&mut self, n: u32) -> Result<&EMonomialBasis> {
        if n == 0 {
            return Err(Error::NonPositiveIndex(n));
        }
        if !self.bases.contains_key(&n) {
            let b = EMonomialBasis::build(n, &mut self.generators)?;
            self.bases.insert(n, b);
        }
        Ok(&self.bases[&n])
    }

    /// The unique integral polynomial in the `E_α` expanding to `x`.
    pub fn express_in_e(&mut self, x: &QElement) -> Result<EPolynomial> {
        if !x.is_integral() {
            return Err(Error::NotIntegral("express_in_E input"));
        }
        let mut out = EPolynomial::zero();
        out.add_term(Vec::new(), x.coeff(&Composition::empty()));
        for w in 1..=x.max_weight() {
            let part = x.homogeneous_component(w);
            if part.is_zero() {
                continue;
            }
            out += &self.basis(w)?.solve(&part)?;
        }
        if !out.is_integral() {
            return Err(Error::NotIntegral("express_in_E result"));
        }
        Ok(out)
    }

    /// Expands a polynomial in the `E_α` back into QSymm.
    pub fn expand(&mut self, p: &EPolynomial) -> Result<QElement> {
        let mut out = QElement::zero();
        for (m, c) in p {
            let mut x = QElement::one();
            for g in m {
                x = osh_product(&x, &self.e(g)?);
            }
            out.add_scaled(&x, c);
        }
        Ok(out)
    }

    /// `τ_n`: the ring character with `τ_n(E_[n]) = (−1)^{n−1}` and every
    /// other generator sent to 0.
    pub fn tau(&mut self, n: u32, x: &QElement) -> Result<Rational> {
        if n == 0 {
            return Err(Error::NonPositiveIndex(n));
        }
        let mut total = Rational::zero();
        for (w, c) in x {
            total += self.tau_word(n, w)? * c;
        }
        Ok(total)
    }

    fn tau_word(&mut self, n: u32, w: &Composition) -> Result<Rational> {
        let key = (n, w.clone());
        if let Some(t) = self.tau.get(&key) {
            return Ok(t.clone());
        }
        let p = self.express_in_e(&QElement::basis(w.clone()))?;
        let gen = Composition::new(vec![n]);
        let mut t = Rational::zero();
        for (m, c) in &p {
            if m.iter().all(|g| *g == gen) {
                t += sign((n - 1) * m.len() as u32) * c;
            }
        }
        self.tau.insert(key, t.clone());
        Ok(t)
    }

    /// `v_{τ_n}`.
    pub fn v_tau(&mut self, n: u32, x: &QElement) -> Result<QElement> {
        v_phi(&mut |w: &Composition| self.tau_word(n, w), n, x)
    }

    /// The weight-`n` part of `F_i` or `G_i`, in composition coordinates.
    pub fn filtration_span(&mut self, i: u32, n: u32, kind: FiltrationKind) -> Result<IntegerLattice> {
        let columns = enumerate_compositions(n);
        let rows: Vec<Vec<Rational>> = match kind {
            FiltrationKind::G => columns
                .iter()
                .filter(|c| c.len() as u32 <= i)
                .map(|c| columns.iter().map(|d| if d == c { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
            FiltrationKind::F => {
                let b = self.basis(n)?;
                b.monomials
                    .iter()
                    .zip(&b.expansions)
                    .filter(|(m, _)| m.iter().all(|g| g.len() as u32 <= i))
                    .map(|(_, x)| columns.iter().map(|c| x.coeff(c)).collect())
                    .collect()
            }
        };
        IntegerLattice::from_rational(columns.len(), &rows)
    }

    /// Spanning set of the weight-`n` part of `F_i`: its E-monomials.
    pub fn filtration_generators(&mut self, i: u32, n: u32) -> Result<Vec<QElement>> {
        let b = self.basis(n)?;
        Ok(b.monomials
            .iter()
            .zip(&b.expansions)
            .filter(|(m, _)| m.iter().all(|g| g.len() as u32 <= i))
            .map(|(_, x)| x.clone())
            .collect())
    }

    /// Is the homogeneous weight-`n` element `x` in `F_i`? `F_0` holds only
    /// constants.
    pub fn in_filtration(&mut self, i: u32, n: u32, x: &QElement) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if i == 0 || n == 0 {
            return Ok(false);
        }
        let coords: Vec<Rational> = enumerate_compositions(n).iter().map(|c| x.coeff(c)).collect();
        Ok(self.filtration_span(i, n, FiltrationKind::F)?.contains_rational(&coords))
    }

    /// The weight-`n` pairing matrix `(⟨P_α, E_β⟩)` over `LYN_n × LYN_n`.
    pub fn pairing_matrix(&mut self, n: u32, prims: &mut PrimitiveBuilder) -> Result<(Vec<Composition>, Matrix)> {
        let lyn = enumerate_lyndon(n);
        let mut rows = Vec::with_capacity(lyn.len());
        for a in &lyn {
            let p = prims.build_p(a)?;
            let mut row = Vec::with_capacity(lyn.len());
            for b in &lyn {
                let q = pairing(&p, &self.e(b)?)?;
                if !q.is_integer() {
                    return Err(Error::NotIntegral("pairing matrix entry"));
                }
                row.push(q.to_integer());
            }
            rows.push(row);
        }
        Ok((lyn, rows))
    }

    /// Checks on `v_n = v_{τ_n}` with every word involved of weight at most
    /// `maxweight`:
    /// (i) `v_n[a_1, …, a_m] ≡ n^m[a_1/n, …, a_m/n]` (or 0) modulo shorter words;
    /// (ii) agreement with the Symm Verschiebung on `h_k` and `e_k`;
    /// (iii) `v_2v_3 = v_3v_2` on the E-monomials spanning `F_2`;
    /// (iv) `v_nf_n(α) − n^{lg α}α ∈ F_{lg α − 1}`.
    pub fn tau_verschiebung_suite(&mut self, n: u32, maxweight: u32) -> Result<SuiteReport> {
        if n < 2 {
            return Err(Error::Other(format!("suite needs n ≥ 2, got {n}")));
        }
        let clauses = vec![
            self.clause_leading_term(n, maxweight)?,
            self.clause_extends_symm(n, maxweight)?,
            self.clause_commute_on_f2(maxweight)?,
            self.clause_frobenius(n, maxweight)?,
        ];
        Ok(SuiteReport { n, maxweight, clauses })
    }

    fn clause_leading_term(&mut self, n: u32, maxweight: u32) -> Result<ClauseReport> {
        let mut r = ClauseReport::new("i");
        for w in 1..=maxweight {
            for alpha in enumerate_compositions(w) {
                let v = self.v_tau(n, &QElement::basis(alpha.clone()))?;
                let mut rest = v.clone();
                if let Some(small) = alpha.unscale(n) {
                    let c = Rational::from_integer(BigInt::from(n).pow(alpha.len() as u32));
                    rest.add_term(small, -c);
                }
                r.record(rest.keys().all(|k| k.len() < alpha.len()), || format!("v_{n}({alpha}) = {}", v.display()));
            }
        }
        Ok(r)
    }

    fn clause_extends_symm(&mut self, n: u32, maxweight: u32) -> Result<ClauseReport> {
        let mut r = ClauseReport::new("ii");
        for k in 1..=maxweight {
            for (name, x, elementary) in [("h", complete_h(k), false), ("e", elementary_e(k), true)] {
                let got = self.v_tau(n, &x)?;
                let want = symm_verschiebung(n, k, elementary);
                r.record(got == want, || format!("v_{n}({name}_{k}) = {}, expected {}", got.display(), want.display()));
            }
        }
        Ok(r)
    }

    fn clause_commute_on_f2(&mut self, maxweight: u32) -> Result<ClauseReport> {
        let mut r = ClauseReport::new("iii");
        let (p, q) = (2, 3);
        for w in 1..=maxweight {
            for x in self.filtration_generators(2, w)? {
                let vq = self.v_tau(q, &x)?;
                let vp = self.v_tau(p, &x)?;
                let pq = self.v_tau(p, &vq)?;
                let qp = self.v_tau(q, &vp)?;
                r.record(pq == qp, || format!("v_{p}v_{q} ≠ v_{q}v_{p} on {}", x.display()));
            }
        }
        Ok(r)
    }

    fn clause_frobenius(&mut self, n: u32, maxweight: u32) -> Result<ClauseReport> {
        let mut r = ClauseReport::new("iv");
        for w in 1..=maxweight / n {
            for alpha in enumerate_compositions(w) {
                let x = QElement::basis(alpha.clone());
                let mut diff = self.v_tau(n, &frobenius_q(n, &x)?)?;
                let c = Rational::from_integer(BigInt::from(n).pow(alpha.len() as u32));
                diff.add_term(alpha.clone(), -c);
                let ok = self.in_filtration(alpha.len() as u32 - 1, w, &diff)?;
                r.record(ok, || format!("v_{n}f_{n}({alpha}) − n^lg·α = {}", diff.display()));
            }
        }
        Ok(r)
    }
}

/// `v_φ(α) = Σ φ(α_1)⋯φ(α_r) [wt(α_1)/n, …, wt(α_r)/n]` over splittings
/// `α = α_1 ⋯ α_r` into nonempty blocks with `n | wt(α_j)`.
pub fn v_phi(phi: &mut impl FnMut(&Composition) -> Result<Rational>, n: u32, x: &QElement) -> Result<QElement> {
    if n == 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    let mut out = QElement::zero();
    for (alpha, c) in x {
        let parts = alpha.parts();
        let m = parts.len();
        // tails[i]: v_φ of the suffix starting at i
        let mut tails: Vec<QElement> = vec![QElement::zero(); m + 1];
        tails[m] = QElement::one();
        for i in (0..m).rev() {
            let mut acc = QElement::zero();
            let mut wt = 0;
            for j in i + 1..=m {
                wt += parts[j - 1];
                if wt % n != 0 || tails[j].is_zero() {
                    continue;
                }
                let f = phi(&alpha.slice(i, j))?;
                if f.is_zero() {
                    continue;
                }
                let head = wt / n;
                for (rest, d) in &tails[j] {
                    acc.add_term(Composition::cons(head, rest), &f * d);
                }
            }
            tails[i] = acc;
        }
        out.add_scaled(&tails[0], c);
    }
    Ok(out)
}

fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `v_n` on `h_k` (or `e_k`) in Symm, computed through power sums:
/// `h_k = Σ_λ p_λ/z_λ`, `e_k = Σ_λ ε_λ p_λ/z_λ`, `v_n(p_j) = n·p_{j/n}`
/// (0 unless `n | j`), and `p_j = [j]` in QSymm.
pub fn symm_verschiebung(n: u32, k: u32, elementary: bool) -> QElement {
    let mut out = QElement::zero();
    for lambda in partitions(k, k) {
        if lambda.iter().any(|&p| p % n != 0) {
            continue;
        }
        let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
        for &p in &lambda {
            *mult.entry(p).or_default() += 1;
        }
        let z: BigInt = mult.iter().map(|(&i, &m)| BigInt::from(i).pow(m as u32) * factorial(m)).product();
        let mut c = Rational::new(BigInt::from(n).pow(lambda.len() as u32), z);
        if elementary {
            c *= sign(k - lambda.len() as u32);
        }
        let mut p = QElement::one();
        for &part in &lambda {
            p = osh_product(&p, &QElement::basis(Composition::new(vec![part / n])));
        }
        out.add_scaled(&p, &c);
    }
    out
}

/// `Δ(v(α))` against `(v ⊗ v)(Δα)` for a single word.
pub fn coalgebra_defect(v: &mut impl FnMut(&QElement) -> Result<QElement>, alpha: &Composition) -> Result<QTensor> {
    let lhs = cut_coproduct(&v(&QElement::basis(alpha.clone()))?);
    let mut rhs = QTensor::zero();
    for i in 0..=alpha.len() {
        let a = v(&QElement::basis(alpha.slice(0, i)))?;
        let b = v(&QElement::basis(alpha.slice(i, alpha.len())))?;
        for (x, c) in &a {
            for (y, d) in &b {
                rhs.add_term((x.clone(), y.clone()), c * d);
            }
        }
    }
    Ok(&lhs - &rhs)
}

/// Pass/fail for one clause, with the first failing witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseReport {
    pub clause: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl ClauseReport {
    fn new(clause: &'static str) -> Self {
        ClauseReport { clause, passed: true, checked: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub n: u32,
    pub maxweight: u32,
    pub clauses: Vec<ClauseReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}
