//! JSON formats. Coefficients are exact decimal strings (`"3"`, `"-3/2"`);
//! terms appear in the canonical order of the underlying maps, so output is
//! byte-stable.

use anyhow::{anyhow, bail, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use nsymm_core::algebra::{AlgebraElement, Alphabet, Family, Letter, Word};
use nsymm_core::isobaric::IsobaricTable;
use nsymm_core::linear::LinearCombination;
use nsymm_core::qsymm::QElement;
use nsymm_core::rational::{parse_exact, to_exact_string};
use nsymm_core::{Composition, Rational};

use crate::eval::Value;

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ElementJson {
    pub alphabet: String,
    pub terms: Vec<ElementTerm>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct ElementTerm {
    pub word: Vec<(String, u32)>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct QElementJson {
    pub terms: Vec<QTerm>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct QTerm {
    pub word: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize, Debug)]
pub struct TensorTerm<W> {
    pub left: W,
    pub right: W,
    pub coeff: String,
}

#[derive(Serialize, Debug)]
pub struct TableJson {
    pub kind: String,
    #[serde(rename = "D")]
    pub degree: usize,
    pub entries: Vec<TableEntry>,
}

#[derive(Serialize, Debug)]
pub struct TableEntry {
    pub u: u32,
    pub v: u32,
    pub element: ElementJson,
}

fn letters(w: &Word) -> Vec<(String, u32)> {
    w.letters().iter().map(|l| (l.alphabet.name().to_string(), l.index)).collect()
}

pub fn element_to_json(x: &AlgebraElement) -> ElementJson {
    ElementJson {
        alphabet: x.family().name().to_string(),
        terms: x.terms().iter().map(|(w, c)| ElementTerm { word: letters(w), coeff: to_exact_string(c) }).collect(),
    }
}

fn coeff(s: &str) -> Result<Rational> {
    parse_exact(s).ok_or_else(|| anyhow!("bad coefficient `{s}`"))
}

pub fn element_from_json(j: &ElementJson) -> Result<AlgebraElement> {
    let family = Family::from_name(&j.alphabet).ok_or_else(|| anyhow!("unknown alphabet `{}`", j.alphabet))?;
    let mut terms = LinearCombination::zero();
    for t in &j.terms {
        let mut ls = Vec::with_capacity(t.word.len());
        for (a, k) in &t.word {
            let a = Alphabet::from_name(a).ok_or_else(|| anyhow!("unknown letter `{a}`"))?;
            if !family.allows(a) || *k == 0 {
                bail!("letter {}({k}) not allowed in family {}", a.name(), family.name());
            }
            ls.push(Letter::new(a, *k));
        }
        terms.add_term(Word::new(ls), coeff(&t.coeff)?);
    }
    Ok(AlgebraElement::from_terms(family, terms))
}

pub fn q_to_json(x: &QElement) -> QElementJson {
    QElementJson {
        terms: x.iter().map(|(w, c)| QTerm { word: w.parts().to_vec(), coeff: to_exact_string(c) }).collect(),
    }
}

pub fn q_from_json(j: &QElementJson) -> Result<QElement> {
    let mut out = QElement::zero();
    for t in &j.terms {
        out.add_term(Composition::try_new(t.word.clone()).map_err(|e| anyhow!("{e}"))?, coeff(&t.coeff)?);
    }
    Ok(out)
}

/// `{"mode": ..., "value": ...}` for an evaluated expression.
pub fn value_to_json(v: &Value) -> serde_json::Value {
    let value = match v {
        Value::Scalar(q) => serde_json::Value::String(to_exact_string(q)),
        Value::N(x) => serde_json::to_value(element_to_json(x)).expect("serializable"),
        Value::Q(x) => serde_json::to_value(q_to_json(x)).expect("serializable"),
        Value::NTensor(t) => {
            let terms: Vec<_> = t
                .terms()
                .iter()
                .map(|((a, b), c)| TensorTerm { left: letters(a), right: letters(b), coeff: to_exact_string(c) })
                .collect();
            serde_json::json!({ "alphabet": t.family().name(), "terms": terms })
        }
        Value::QTensor(t) => {
            let terms: Vec<_> = t
                .iter()
                .map(|((a, b), c)| TensorTerm {
                    left: a.parts().to_vec(),
                    right: b.parts().to_vec(),
                    coeff: to_exact_string(c),
                })
                .collect();
            serde_json::json!({ "terms": terms })
        }
    };
    serde_json::json!({ "mode": v.mode_name(), "value": value })
}

pub fn table_to_json(t: &IsobaricTable, degree: usize) -> TableJson {
    TableJson {
        kind: t.kind().name().to_string(),
        degree,
        entries: t
            .entries()
            .iter()
            .filter(|((u, v), _)| (u + v) as usize <= degree)
            .map(|(&(u, v), x)| TableEntry { u, v, element: element_to_json(x) })
            .collect(),
    }
}

pub fn matrix_to_json(m: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn composition_json(c: &Composition) -> Vec<u32> {
    c.parts().to_vec()
}
