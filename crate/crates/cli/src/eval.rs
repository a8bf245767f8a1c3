//! Evaluation of parsed expressions by dispatch to the core crate.

use std::collections::BTreeMap;
use std::fmt;

use nsymm_core::algebra::{AlgebraElement, Family, Letter, TensorElement};
use nsymm_core::generators::Generators;
use nsymm_core::isobaric::{IsobaricTable, TableKind};
use nsymm_core::nsymm::{coproduct, newton_p, newton_p_prime, project_to_symm, verschiebung, Frobenius};
use nsymm_core::primitives::PrimitiveBuilder;
use nsymm_core::qsymm::{
    complete_h, cut_coproduct, elementary_e, frobenius_q, osh_product, pairing, shuffle_product, QElement, QTensor,
};
use nsymm_core::rational::int;
use nsymm_core::{Composition, Rational};

use crate::expr::{parse, BinOp, Diagnostic, DiagnosticKind, Expr, ExprKind, Func, Table};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    N(AlgebraElement),
    Q(QElement),
    NTensor(TensorElement),
    QTensor(QTensor),
}

impl Value {
    pub fn mode_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::N(_) => "N",
            Value::Q(_) => "Q",
            Value::NTensor(_) => "N⊗N",
            Value::QTensor(_) => "Q⊗Q",
        }
    }

    /// Largest weight of a term; 0 for scalars.
    pub fn max_weight(&self) -> u32 {
        match self {
            Value::Scalar(_) => 0,
            Value::N(x) => x.max_weight(),
            Value::Q(x) => x.max_weight(),
            Value::NTensor(t) => t.terms().keys().map(|(a, b)| a.weight() + b.weight()).max().unwrap_or(0),
            Value::QTensor(t) => t.keys().map(|(a, b)| a.weight() + b.weight()).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(q) => write!(f, "{q}"),
            Value::N(x) => write!(f, "{x}"),
            Value::Q(x) => write!(f, "{}", x.display()),
            Value::NTensor(t) => write!(f, "{t}"),
            Value::QTensor(t) => {
                if t.is_zero() {
                    return f.write_str("0");
                }
                for (i, ((a, b), c)) in t.iter().enumerate() {
                    let sign = if c < &int(0) { "-" } else { "+" };
                    match (i, sign) {
                        (0, "-") => f.write_str("-")?,
                        (0, _) => {}
                        _ => write!(f, " {sign} ")?,
                    }
                    let abs = if c < &int(0) { -c } else { c.clone() };
                    if abs != int(1) {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "{a} ⊗ {b}")?;
                }
                Ok(())
            }
        }
    }
}

/// Evaluation state: the weight bound and lazily built caches.
pub struct Evaluator {
    bound: u32,
    prims: Option<PrimitiveBuilder>,
    gens: Generators,
    frob: Frobenius,
    tables: BTreeMap<u8, IsobaricTable>,
}

fn eval_error<T>(offset: usize, msg: impl fmt::Display) -> Result<T, Diagnostic> {
    Err(Diagnostic { kind: DiagnosticKind::Evaluation, offset, message: msg.to_string() })
}

impl Evaluator {
    pub fn new(bound: u32) -> Self {
        Evaluator { bound, prims: None, gens: Generators::new(), frob: Frobenius::new(), tables: BTreeMap::new() }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Parses and evaluates `src`.
    pub fn eval_str(&mut self, src: &str) -> Result<Value, Diagnostic> {
        let e = parse(src)?;
        self.eval(&e)
    }

    pub fn eval(&mut self, e: &Expr) -> Result<Value, Diagnostic> {
        let v = self.eval_inner(e)?;
        if v.max_weight() > self.bound {
            return eval_error(e.offset, format!("weight {} exceeds the bound {}", v.max_weight(), self.bound));
        }
        Ok(v)
    }

    fn check_weight(&self, offset: usize, w: u32) -> Result<(), Diagnostic> {
        if w > self.bound {
            return eval_error(offset, format!("weight {w} exceeds the bound {}", self.bound));
        }
        Ok(())
    }

    fn eval_inner(&mut self, e: &Expr) -> Result<Value, Diagnostic> {
        let at = e.offset;
        let core = |r: nsymm_core::Result<AlgebraElement>| r.or_else(|err| eval_error(at, err)).map(Value::N);
        Ok(match &e.kind {
            ExprKind::Number(q) => Value::Scalar(q.clone()),
            ExprKind::Index(n) => Value::Scalar(int(*n as i64)),
            ExprKind::Word(w) => Value::Q(QElement::basis(w.clone())),
            ExprKind::Letter(a, k) => {
                self.check_weight(at, *k)?;
                Value::N(AlgebraElement::letter(Letter::new(*a, *k)))
            }
            ExprKind::ZWord(w) => Value::N(AlgebraElement::z_word(w)),
            ExprKind::P(n) => {
                self.check_weight(at, *n)?;
                core(newton_p(*n))?
            }
            ExprKind::Pp(n) => {
                self.check_weight(at, *n)?;
                core(newton_p_prime(*n))?
            }
            ExprKind::Palpha(a) => {
                self.check_weight(at, a.weight())?;
                let bound = self.bound as usize;
                let prims = self.prims.get_or_insert_with(|| PrimitiveBuilder::new(bound));
                core(prims.build_p(a))?
            }
            ExprKind::E(a) => {
                self.check_weight(at, a.weight())?;
                Value::Q(self.gens.e(a).or_else(|err| eval_error(at, err))?)
            }
            ExprKind::H(n) => {
                self.check_weight(at, *n)?;
                Value::Q(complete_h(*n))
            }
            ExprKind::El(n) => {
                self.check_weight(at, *n)?;
                Value::Q(elementary_e(*n))
            }
            ExprKind::Table(t, u, v) => {
                self.check_weight(at, u + v)?;
                let (kind, key) = match t {
                    Table::L => (TableKind::L, 0),
                    Table::N => (TableKind::N, 1),
                };
                let degree = (u + v) as usize;
                if self.tables.get(&key).is_none_or(|tab| tab.bound() < degree) {
                    let tab = IsobaricTable::build(kind, degree).or_else(|err| eval_error(at, err))?;
                    self.tables.insert(key, tab);
                }
                core(self.tables[&key].get(*u, *v))?
            }
            ExprKind::Neg(x) => {
                let v = self.eval(x)?;
                self.scale(v, &int(-1))
            }
            ExprKind::Binary(op, a, b) => {
                let va = self.eval(a)?;
                let vb = self.eval(b)?;
                self.binary(*op, va, vb, at)?
            }
            ExprKind::Call(f, args) => self.call(*f, args, at)?,
        })
    }

    fn scale(&self, v: Value, q: &Rational) -> Value {
        match v {
            Value::Scalar(x) => Value::Scalar(x * q),
            Value::N(x) => Value::N(x.scale(q)),
            Value::Q(x) => Value::Q(x.scale(q)),
            Value::NTensor(t) => Value::NTensor(t.scale(q)),
            Value::QTensor(t) => Value::QTensor(t.scale(q)),
        }
    }

    /// Promotes a scalar to the unit of the other operand's mode.
    fn promote(q: &Rational, like: &Value) -> Value {
        match like {
            Value::Scalar(_) => Value::Scalar(q.clone()),
            Value::N(x) => Value::N(AlgebraElement::scalar(x.family(), q.clone())),
            Value::Q(_) => Value::Q(QElement::one().scale(q)),
            Value::NTensor(t) => {
                let one = AlgebraElement::one(t.family());
                Value::NTensor(TensorElement::tensor(&one, &one).scale(q))
            }
            Value::QTensor(_) => Value::QTensor(QTensor::term((Composition::empty(), Composition::empty()), q.clone())),
        }
    }

    fn binary(&mut self, op: BinOp, a: Value, b: Value, at: usize) -> Result<Value, Diagnostic> {
        if matches!(op, BinOp::Mul | BinOp::Osh | BinOp::Sh) {
            // scalars are multiples of the unit, which is neutral for every product
            match (&a, &b) {
                (Value::Scalar(q), _) => return Ok(self.scale(b.clone(), q)),
                (_, Value::Scalar(q)) => return Ok(self.scale(a.clone(), q)),
                _ => {}
            }
        }
        let (a, b) = match (&a, &b) {
            (Value::Scalar(q), other) if !matches!(other, Value::Scalar(_)) => (Self::promote(q, other), b),
            (other, Value::Scalar(q)) if !matches!(other, Value::Scalar(_)) => {
                let pb = Self::promote(q, other);
                (a, pb)
            }
            _ => (a, b),
        };
        let family_check = |x: Family, y: Family| {
            if x == y {
                Ok(())
            } else {
                eval_error(at, format!("alphabet mismatch: {} vs {}", x.name(), y.name()))
            }
        };
        Ok(match (op, a, b) {
            (BinOp::Add, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
            (BinOp::Sub, Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x - y),
            (BinOp::Add, Value::N(x), Value::N(y)) => Value::N(x.try_add(&y).or_else(|err| eval_error(at, err))?),
            (BinOp::Sub, Value::N(x), Value::N(y)) => Value::N(x.try_sub(&y).or_else(|err| eval_error(at, err))?),
            (BinOp::Mul, Value::N(x), Value::N(y)) => {
                self.check_weight(at, x.max_weight() + y.max_weight())?;
                Value::N(x.try_mul(&y).or_else(|err| eval_error(at, err))?)
            }
            (BinOp::Add, Value::Q(x), Value::Q(y)) => Value::Q(&x + &y),
            (BinOp::Sub, Value::Q(x), Value::Q(y)) => Value::Q(&x - &y),
            (BinOp::Mul | BinOp::Osh, Value::Q(x), Value::Q(y)) => {
                self.check_weight(at, x.max_weight() + y.max_weight())?;
                Value::Q(osh_product(&x, &y))
            }
            (BinOp::Sh, Value::Q(x), Value::Q(y)) => {
                self.check_weight(at, x.max_weight() + y.max_weight())?;
                Value::Q(shuffle_product(&x, &y))
            }
            (BinOp::Add, Value::NTensor(x), Value::NTensor(y)) => {
                family_check(x.family(), y.family())?;
                Value::NTensor(&x + &y)
            }
            (BinOp::Sub, Value::NTensor(x), Value::NTensor(y)) => {
                family_check(x.family(), y.family())?;
                Value::NTensor(&x - &y)
            }
            (BinOp::Mul, Value::NTensor(x), Value::NTensor(y)) => {
                family_check(x.family(), y.family())?;
                Value::NTensor(x.mul(&y))
            }
            (BinOp::Add, Value::QTensor(x), Value::QTensor(y)) => Value::QTensor(&x + &y),
            (BinOp::Sub, Value::QTensor(x), Value::QTensor(y)) => Value::QTensor(&x - &y),
            (op, a, b) => {
                return eval_error(at, format!("{op:?} is not defined for {} and {}", a.mode_name(), b.mode_name()));
            }
        })
    }

    fn call(&mut self, f: Func, args: &[Expr], at: usize) -> Result<Value, Diagnostic> {
        let index = |e: &Expr| match e.kind {
            ExprKind::Index(n) => n,
            _ => unreachable!("parser produces an index"),
        };
        let vals: Vec<Value> = match f {
            Func::VN | Func::FN | Func::VQ | Func::FQ => vec![self.eval(&args[1])?],
            _ => args.iter().map(|a| self.eval(a)).collect::<Result<_, _>>()?,
        };
        let lift = |r: nsymm_core::Result<AlgebraElement>| r.or_else(|err| eval_error(at, err));
        let as_n = |v: &Value| match v {
            Value::N(x) => x.clone(),
            Value::Scalar(q) => AlgebraElement::scalar(Family::Z, q.clone()),
            _ => unreachable!("mode checked"),
        };
        let as_q = |v: &Value| match v {
            Value::Q(x) => x.clone(),
            Value::Scalar(q) => QElement::one().scale(q),
            _ => unreachable!("mode checked"),
        };
        Ok(match f {
            Func::Bracket => match (&vals[0], &vals[1]) {
                (Value::Q(_), _) | (_, Value::Q(_)) => {
                    let (x, y) = (as_q(&vals[0]), as_q(&vals[1]));
                    Value::Q(&osh_product(&x, &y) - &osh_product(&y, &x))
                }
                (Value::Scalar(_), Value::Scalar(_)) => Value::Scalar(int(0)),
                _ => {
                    let (x, y) = (as_n(&vals[0]), as_n(&vals[1]));
                    self.check_weight(at, x.max_weight() + y.max_weight())?;
                    Value::N(lift(x.try_bracket(&y))?)
                }
            },
            Func::Pair => {
                let q = pairing(&as_n(&vals[0]), &as_q(&vals[1])).or_else(|err| eval_error(at, err))?;
                Value::Scalar(q)
            }
            Func::Delta => match &vals[0] {
                Value::N(x) => Value::NTensor(coproduct(x)),
                Value::Q(x) => Value::QTensor(cut_coproduct(x)),
                _ => unreachable!("mode checked"),
            },
            Func::VN => Value::N(lift(verschiebung(index(&args[0]), &as_n(&vals[0])))?),
            Func::FN => {
                let n = index(&args[0]);
                let x = as_n(&vals[0]);
                self.check_weight(at, n * x.max_weight())?;
                Value::N(lift(self.frob.apply(n, &x))?)
            }
            Func::VQ => {
                let x = as_q(&vals[0]);
                Value::Q(self.gens.v_tau(index(&args[0]), &x).or_else(|err| eval_error(at, err))?)
            }
            Func::FQ => {
                let n = index(&args[0]);
                let x = as_q(&vals[0]);
                self.check_weight(at, n * x.max_weight())?;
                Value::Q(frobenius_q(n, &x).or_else(|err| eval_error(at, err))?)
            }
            Func::Pi => Value::Q(project_to_symm(&as_n(&vals[0])).or_else(|err| eval_error(at, err))?),
        })
    }
}
