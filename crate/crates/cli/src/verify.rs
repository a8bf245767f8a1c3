//! Named verification suites behind `nsymm verify`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use nsymm_core::algebra::AlgebraElement;
use nsymm_core::generators::{FiltrationKind, Generators};
use nsymm_core::isobaric::{directions, IsobaricTable, TableKind};
use nsymm_core::lattice::determinant;
use nsymm_core::nsymm::{
    coproduct, is_primitive, newton_p, newton_p_prime, newton_p_prime_recursive, newton_p_recursive, project_to_symm,
    verschiebung, Frobenius,
};
use nsymm_core::primitives::{expected_frlie_index, primitive_kernel, PrimitiveBuilder};
use nsymm_core::qsymm::{
    cut_coproduct, frobenius_q, osh_power, osh_product, pairing, realize, realize_element, QElement,
};
use nsymm_core::rational::int;
use nsymm_core::words::{beta, enumerate_compositions, enumerate_compositions_up_to, enumerate_lyndon};
use nsymm_core::Composition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Newton,
    Dps,
    Isobaric,
    Basis,
    Freeness,
    Duality,
    Frobven,
    /// The τ_n-Verschiebung family and the filtrations it preserves.
    #[value(name = "tau", alias = "6.15")]
    Tau,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Newton => "newton",
            Suite::Dps => "dps",
            Suite::Isobaric => "isobaric",
            Suite::Basis => "basis",
            Suite::Freeness => "freeness",
            Suite::Duality => "duality",
            Suite::Frobven => "frobven",
            Suite::Tau => "tau",
        }
    }

    pub fn default_maxweight(self) -> u32 {
        match self {
            Suite::Newton | Suite::Frobven => 8,
            Suite::Basis => 5,
            _ => 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub maxweight: u32,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub maxweight: u32,
    pub n: Option<u32>,
    pub seed: u64,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Check) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult { name: name.into(), passed, detail });
    }
}

pub fn run(suite: Suite, opts: &Options) -> SuiteResult {
    let w = opts.maxweight;
    let mut rec = Recorder::default();
    match suite {
        Suite::Newton => newton(&mut rec, w),
        Suite::Dps => dps(&mut rec, w),
        Suite::Isobaric => isobaric(&mut rec, w as usize),
        Suite::Basis => basis(&mut rec, w),
        Suite::Freeness => freeness(&mut rec, w, opts.seed),
        Suite::Duality => duality(&mut rec, w, opts.seed),
        Suite::Frobven => frobven(&mut rec, w),
        Suite::Tau => tau(&mut rec, w, opts.n),
    }
    SuiteResult {
        suite: suite.name().to_string(),
        maxweight: w,
        seed: opts.seed,
        passed: rec.checks.iter().all(|c| c.passed),
        checks: rec.checks,
    }
}

fn newton(rec: &mut Recorder, w: u32) {
    rec.run("closed form equals recursion", || {
        let rec_p = newton_p_recursive(w).map_err(err)?;
        let rec_pp = newton_p_prime_recursive(w).map_err(err)?;
        for n in 1..=w {
            ensure(newton_p(n).map_err(err)? == rec_p[n as usize - 1], || format!("P_{n}"))?;
            ensure(newton_p_prime(n).map_err(err)? == rec_pp[n as usize - 1], || format!("P'_{n}"))?;
        }
        Ok(format!("n ≤ {w}"))
    });
    rec.run("primitivity", || {
        for n in 1..=w {
            ensure(is_primitive(&newton_p(n).map_err(err)?), || format!("P_{n} not primitive"))?;
            ensure(is_primitive(&newton_p_prime(n).map_err(err)?), || format!("P'_{n} not primitive"))?;
        }
        Ok(format!("P_n and P'_n for n ≤ {w}"))
    });
}

fn dps(rec: &mut Recorder, w: u32) {
    let mut prims = PrimitiveBuilder::new(w as usize);
    rec.run("d_α and P_α", || {
        let mut count = 0;
        for n in 1..=w {
            for e in prims.basis(n).map_err(err)? {
                let a = &e.alpha;
                ensure(e.dps.is_dps(), || format!("d_{a} is not a divided power sequence"))?;
                ensure(e.dps.entries().iter().all(|x| x.is_integral()), || format!("d_{a} not integral"))?;
                ensure(is_primitive(&e.primitive), || format!("P_{a} not primitive"))?;
                ensure(e.primitive.is_integral(), || format!("P_{a} not integral"))?;
                ensure(e.leading_term_holds(), || format!("leading term of P_{a}"))?;
                count += 1;
            }
        }
        Ok(format!("{count} Lyndon words of weight ≤ {w}"))
    });
    rec.run("scale invariance", || {
        let mut count = 0;
        for n in 1..=w {
            for a in enumerate_lyndon(n) {
                for r in [2, 3] {
                    if r * n <= w {
                        let d = prims.build_dps(&a).map_err(err)?;
                        ensure(prims.build_dps(&a.scale(r)).map_err(err)? == d, || format!("d_{a} vs scale {r}"))?;
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} pairs"))
    });
}

fn isobaric(rec: &mut Recorder, d: usize) {
    for kind in [TableKind::L, TableKind::N] {
        let name = kind.name();
        let table = match IsobaricTable::build(kind, d) {
            Ok(t) => t,
            Err(e) => {
                rec.run(format!("{name}: extraction"), || Err(e.to_string()));
                continue;
            }
        };
        rec.run(format!("{name}: reconstruction"), || {
            ensure(table.reconstructs().map_err(err)?, || "ordered product differs from the target".into())?;
            Ok(format!("D = {d}"))
        });
        rec.run(format!("{name}: integrality and homogeneity"), || {
            ensure(table.all_integral(), || "nonintegral entry".into())?;
            ensure(table.homogeneity_holds(), || "inhomogeneous entry".into())?;
            Ok(format!("{} entries", table.entries().len()))
        });
        rec.run(format!("{name}: leading terms"), || {
            ensure(table.leading_terms_hold().map_err(err)?, || "leading part mismatch".into())?;
            Ok("all entries".into())
        });
        rec.run(format!("{name}: 2-curve factors"), || {
            for (a, b) in directions(d) {
                ensure(table.factor_is_2curve(a, b).map_err(err)?, || format!("factor ({a},{b})"))?;
            }
            Ok(format!("{} directions", directions(d).len()))
        });
        if kind == TableKind::N {
            rec.run("N: N(1,n-1) = P_n", || {
                for n in 2..=d as u32 {
                    ensure(table.get(1, n - 1).map_err(err)? == newton_p(n).map_err(err)?, || format!("n = {n}"))?;
                }
                Ok(format!("n ≤ {d}"))
            });
        }
        for m in [2, 3] {
            rec.run(format!("{name}: Verschiebung v_{m} compatibility"), || {
                let bad = table.verschiebung_failures(m).map_err(err)?;
                if bad.is_empty() {
                    return Ok("all entries".into());
                }
                let list: Vec<String> = bad.iter().map(|(u, v)| format!("({u},{v})")).collect();
                Err(format!("fails at {}", list.join(" ")))
            });
        }
    }
}

fn basis(rec: &mut Recorder, w: u32) {
    let mut prims = PrimitiveBuilder::new(w as usize);
    rec.run("span equals primitive kernel", || {
        for n in 1..=w {
            let span = prims.prim_basis_span(n).map_err(err)?;
            ensure(span.rank() as u64 == beta(n), || format!("rank {} at n = {n}", span.rank()))?;
            let kernel = primitive_kernel(n).map_err(err)?;
            ensure(span.hnf() == kernel.hnf(), || format!("span differs from kernel at n = {n}"))?;
        }
        Ok(format!("n ≤ {w}"))
    });
    rec.run("free Lie index", || {
        let mut values = Vec::new();
        for n in 1..=w {
            let i = prims.frlie_index(n).map_err(err)?;
            let e = expected_frlie_index(n).map_err(err)?;
            ensure(i == e, || format!("n = {n}: index {i}, expected {e}"))?;
            values.push(i.to_string());
        }
        Ok(values.join(", "))
    });
}

fn random_element(rng: &mut ChaCha8Rng, w: u32) -> QElement {
    let mut x = QElement::zero();
    for c in enumerate_compositions(w) {
        if rng.gen_bool(0.5) {
            x.add_term(c, int(rng.gen_range(-5..=5)));
        }
    }
    x
}

fn random_z(rng: &mut ChaCha8Rng, w: u32) -> AlgebraElement {
    let x = random_element(rng, w);
    AlgebraElement::from_compositions(&x)
}

fn freeness(rec: &mut Recorder, w: u32, seed: u64) {
    let mut gens = Generators::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rec.run("E-monomial basis", || {
        for n in 1..=w {
            let b = gens.basis(n).map_err(err)?;
            ensure(b.monomials.len() == 1 << (n - 1), || format!("{} monomials at n = {n}", b.monomials.len()))?;
            ensure(b.determinant().abs().is_one(), || format!("det {} at n = {n}", b.determinant()))?;
        }
        Ok(format!("n ≤ {w}, |det| = 1"))
    });
    rec.run("express_in_E round trip", || {
        for n in 1..=w {
            for _ in 0..20 {
                let x = random_element(&mut rng, n);
                let p = gens.express_in_e(&x).map_err(err)?;
                ensure(gens.expand(&p).map_err(err)? == x, || format!("fails on {}", x.display()))?;
            }
        }
        Ok(format!("20 random elements per weight ≤ {w}"))
    });
    let mut prims = PrimitiveBuilder::new(w as usize);
    rec.run("pairing matrix", || {
        for n in 1..=w {
            let (labels, m) = gens.pairing_matrix(n, &mut prims).map_err(err)?;
            for i in 0..labels.len() {
                ensure(m[i][i].abs().is_one(), || format!("⟨P_{0}, E_{0}⟩ = {1}", labels[i], m[i][i]))?;
                for j in 0..i {
                    ensure(m[i][j].is_zero(), || format!("⟨P_{}, E_{}⟩ = {}", labels[i], labels[j], m[i][j]))?;
                }
            }
            ensure(determinant(&m).abs() == BigInt::one(), || format!("det at n = {n}"))?;
        }
        Ok(format!("triangular with unit diagonal, n ≤ {w}"))
    });
}

fn duality(rec: &mut Recorder, w: u32, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    for _ in 0..10 {
        let a = rng.gen_range(1..w.max(2));
        let b = rng.gen_range(1..=(w.max(2) - a));
        samples.push((a, b));
    }
    rec.run("concatenation dual to cut", || {
        for &(a, b) in &samples {
            let (x, y, g) = (random_z(&mut rng, a), random_z(&mut rng, b), random_element(&mut rng, a + b));
            let lhs = pairing(&(&x * &y), &g).map_err(err)?;
            let mut rhs = int(0);
            for ((u, v), c) in &cut_coproduct(&g) {
                let pu = pairing(&x, &QElement::basis(u.clone())).map_err(err)?;
                let pv = pairing(&y, &QElement::basis(v.clone())).map_err(err)?;
                rhs += c * pu * pv;
            }
            ensure(lhs == rhs, || format!("weights {a}, {b}"))?;
        }
        Ok(format!("{} random triples", samples.len()))
    });
    rec.run("overlapping shuffle dual to coproduct", || {
        for &(a, b) in &samples {
            let (u, v, z) = (random_element(&mut rng, a), random_element(&mut rng, b), random_z(&mut rng, a + b));
            let lhs = pairing(&z, &osh_product(&u, &v)).map_err(err)?;
            let mut rhs = int(0);
            for ((l, r), c) in coproduct(&z).terms() {
                rhs += c * u.coeff(&l.to_composition()) * v.coeff(&r.to_composition());
            }
            ensure(lhs == rhs, || format!("weights {a}, {b}"))?;
        }
        Ok(format!("{} random triples", samples.len()))
    });
    rec.run("primitives orthogonal to products", || {
        for n in 2..=w {
            let p = newton_p(n).map_err(err)?;
            for a in enumerate_compositions_up_to(n - 1).into_iter().filter(|a| !a.is_empty()) {
                for b in enumerate_compositions(n - a.weight()) {
                    let prod = osh_product(&QElement::basis(a.clone()), &QElement::basis(b.clone()));
                    ensure(pairing(&p, &prod).map_err(err)?.is_zero(), || format!("⟨P_{n}, {a}×{b}⟩"))?;
                }
            }
        }
        Ok(format!("P_n, n ≤ {w}"))
    });
    rec.run("v_n adjoint to f_n", || {
        for n in 1..=3u32 {
            for alpha in enumerate_compositions_up_to(w).into_iter().filter(|a| !a.is_empty()) {
                if alpha.weight() % n != 0 {
                    continue;
                }
                let v = verschiebung(n, &AlgebraElement::z_word(&alpha)).map_err(err)?;
                for beta in enumerate_compositions(alpha.weight() / n) {
                    let lhs = pairing(&v, &QElement::basis(beta.clone())).map_err(err)?;
                    let fb = frobenius_q(n, &QElement::basis(beta.clone())).map_err(err)?;
                    let rhs = pairing(&AlgebraElement::z_word(&alpha), &fb).map_err(err)?;
                    ensure(lhs == rhs, || format!("n = {n}, Z_{alpha}, {beta}"))?;
                }
            }
        }
        Ok(format!("n ≤ 3, weight ≤ {w}"))
    });
    rec.run("quasi-monomial realization", || {
        let words: Vec<Composition> = enumerate_compositions_up_to(w).into_iter().filter(|a| !a.is_empty()).collect();
        let mut count = 0;
        for a in &words {
            for b in &words {
                if a.len() + b.len() > 4 || a.weight() + b.weight() > w {
                    continue;
                }
                let lhs = realize(a, 4).mul(&realize(b, 4));
                let prod = osh_product(&QElement::basis(a.clone()), &QElement::basis(b.clone()));
                ensure(lhs == realize_element(&prod, 4), || format!("M_{a}·M_{b}"))?;
                count += 1;
            }
        }
        Ok(format!("{count} pairs in 4 variables"))
    });
}

fn frobven(rec: &mut Recorder, w: u32) {
    let z = AlgebraElement::z;
    let mut f = Frobenius::new();
    rec.run("v_n v_m = v_nm", || {
        for n in 1..=3u32 {
            for m in 1..=3u32 {
                for k in 1..=w {
                    let lhs = verschiebung(n, &verschiebung(m, &z(k)).map_err(err)?).map_err(err)?;
                    ensure(lhs == verschiebung(n * m, &z(k)).map_err(err)?, || format!("n={n} m={m} Z_{k}"))?;
                }
            }
        }
        Ok(format!("n, m ≤ 3, Z_k for k ≤ {w}"))
    });
    rec.run("f_n f_m = f_nm", || {
        for n in 1..=3u32 {
            for m in 1..=3u32 {
                for k in (1..=w).filter(|k| n * m * k <= w) {
                    let fm = f.on_generator(m, k).map_err(err)?;
                    let lhs = f.apply(n, &fm).map_err(err)?;
                    ensure(lhs == f.on_generator(n * m, k).map_err(err)?, || format!("n={n} m={m} Z_{k}"))?;
                }
            }
        }
        Ok(format!("output weight ≤ {w}"))
    });
    rec.run("f_m v_n = v_n f_m for coprime n, m", || {
        for n in 1..=3u32 {
            for m in (1..=3u32).filter(|&m| num_integer::gcd(n, m) == 1) {
                for k in (1..=w).filter(|k| m * k <= w) {
                    let a = f.apply(m, &verschiebung(n, &z(k)).map_err(err)?).map_err(err)?;
                    let b = verschiebung(n, &f.on_generator(m, k).map_err(err)?).map_err(err)?;
                    ensure(a == b, || format!("n={n} m={m} Z_{k}"))?;
                }
            }
        }
        Ok("checked".into())
    });
    rec.run("f_p ≡ p-th power mod p", || {
        for p in [2u32, 3] {
            for a in enumerate_compositions_up_to(w.min(5)).into_iter().filter(|a| !a.is_empty()) {
                let x = QElement::basis(a.clone());
                let diff = &frobenius_q(p, &x).map_err(err)? - &osh_power(&x, p);
                ensure(diff.iter().all(|(_, c)| (c / int(p as i64)).is_integer()), || format!("p={p} {a}"))?;
            }
        }
        Ok(format!("weight ≤ {}", w.min(5)))
    });
    rec.run("descent to Symm", || {
        let top = w.min(6);
        for n in [2u32, 3] {
            for a in enumerate_compositions_up_to(top).into_iter().filter(|a| !a.is_empty()) {
                if n * a.weight() > top {
                    continue;
                }
                let x = AlgebraElement::z_word(&a);
                let pf = project_to_symm(&f.apply(n, &x).map_err(err)?).map_err(err)?;
                let fp = frobenius_q(n, &project_to_symm(&x).map_err(err)?).map_err(err)?;
                ensure(pf == fp, || format!("π f_{n}(Z_{a})"))?;
            }
        }
        Ok(format!("weight ≤ {top}"))
    });
}

fn tau(rec: &mut Recorder, w: u32, n: Option<u32>) {
    let mut gens = Generators::new();
    let ns: Vec<u32> = n.map_or(vec![2, 3], |n| vec![n]);
    for n in ns {
        match gens.tau_verschiebung_suite(n, w) {
            Ok(report) => {
                for c in report.clauses {
                    rec.run(format!("n = {n}: clause ({})", c.clause), || {
                        if c.passed {
                            Ok(format!("{} checks", c.checked))
                        } else {
                            Err(c.witness.unwrap_or_default())
                        }
                    });
                }
            }
            Err(e) => rec.run(format!("n = {n}"), || Err(e.to_string())),
        }
    }
    rec.run("G_i ⊆ F_i", || {
        for i in 1..=3 {
            for k in 1..=w {
                let g = gens.filtration_span(i, k, FiltrationKind::G).map_err(err)?;
                let f = gens.filtration_span(i, k, FiltrationKind::F).map_err(err)?;
                ensure(f.contains_lattice(&g), || format!("i = {i}, weight {k}"))?;
            }
        }
        Ok(format!("i ≤ 3, weight ≤ {w}"))
    });
    rec.run("v_τn preserves F_i", || {
        for n in [2u32, 3] {
            for i in 1..=2 {
                for k in (n..=w).step_by(n as usize) {
                    for x in gens.filtration_generators(i, k).map_err(err)? {
                        let v = gens.v_tau(n, &x).map_err(err)?;
                        ensure(gens.in_filtration(i, k / n, &v).map_err(err)?, || format!("v_{n}({})", x.display()))?;
                    }
                }
            }
        }
        Ok(format!("i ≤ 2, weight ≤ {w}"))
    });
}
