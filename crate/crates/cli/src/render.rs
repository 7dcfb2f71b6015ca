//! JSON views of library values. Every number is exact (integer or
//! rational strings, power-basis coordinates); field elements also carry a
//! decimal with `DIGITS` digits after the point.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use subdyn::bratteli::{FinitePath, OrderedDiagram};
use subdyn::clopen::{GroupComparison, LatticeGroup, Membership};
use subdyn::exact::{rational_string, FieldElement, FieldRef, IntMatrix, IntPolynomial, RatMatrix};
use subdyn::subst::{Substitution, Word};

pub const DIGITS: usize = 20;

/// Longest word written out as text; longer words are written as runs.
const TEXT_LIMIT: usize = 1 << 16;

pub fn rat(x: &BigRational) -> Value {
    Value::String(rational_string(x))
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn poly(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int).collect()))
            .collect(),
    )
}

pub fn rat_matrix(m: &RatMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(rat).collect()))
            .collect(),
    )
}

pub fn element(e: &FieldElement) -> Value {
    json!({
        "coords": e.coords().iter().map(rat).collect::<Vec<_>>(),
        "decimal": e.approx(DIGITS),
    })
}

pub fn elements(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element).collect())
}

pub fn field(f: &FieldRef) -> Value {
    let iv = f.isolation();
    json!({
        "min_poly": poly(f.min_poly()),
        "degree": f.degree(),
        "isolation": [rat(&iv.lo), rat(&iv.hi)],
        "lambda": FieldElement::generator(f).approx(DIGITS),
    })
}

fn letter_text(alphabet: &[String], letters: &[usize]) -> String {
    let sep = if alphabet.iter().all(|l| l.chars().count() == 1) {
        ""
    } else {
        " "
    };
    letters
        .iter()
        .map(|&l| alphabet[l].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn word(alphabet: &[String], w: &Word) -> Value {
    match w.to_letters(TEXT_LIMIT) {
        Some(ls) => Value::String(letter_text(alphabet, &ls)),
        None => json!({
            "runs": w.runs().iter().map(|r| json!([alphabet[r.letter], r.len.to_string()])).collect::<Vec<_>>(),
        }),
    }
}

pub fn words(alphabet: &[String], ws: impl IntoIterator<Item = Vec<usize>>) -> Value {
    Value::Array(
        ws.into_iter()
            .map(|w| Value::String(letter_text(alphabet, &w)))
            .collect(),
    )
}

pub fn substitution(s: &Substitution) -> Value {
    let mut rules = Map::new();
    for (i, l) in s.alphabet().iter().enumerate() {
        rules.insert(l.clone(), word(s.alphabet(), s.rule(i)));
    }
    json!({ "alphabet": s.alphabet(), "rules": rules })
}

pub fn diagram(d: &OrderedDiagram) -> Value {
    let names = d.vertices();
    let mut order = Map::new();
    for (v, o) in d.order().iter().enumerate() {
        order.insert(
            names[v].clone(),
            Value::Array(o.iter().map(|&u| Value::String(names[u].clone())).collect()),
        );
    }
    json!({
        "vertices": names,
        "incidence": int_matrix(d.incidence()),
        "level0": d.level0().iter().map(|m| Value::String(m.to_string())).collect::<Vec<_>>(),
        "order": order,
    })
}

pub fn path(d: &OrderedDiagram, p: &FinitePath) -> Value {
    json!({
        "terminal": d.vertices()[p.terminal],
        "indices": p.indices,
        "root_edge": p.level0_index.to_string(),
    })
}

pub fn group(g: &LatticeGroup) -> Value {
    let l = g.lattice();
    json!({
        "denominator": int(l.denominator()),
        "basis_columns": int_matrix(l.basis()),
        "basis": elements(&g.basis_elements()),
    })
}

pub fn comparison(c: &GroupComparison) -> Value {
    match c {
        GroupComparison::Equal(n) => json!({ "result": "equal", "n": n }),
        GroupComparison::Unequal => json!({ "result": "unequal" }),
        GroupComparison::UndecidedUpTo(n) => json!({ "result": "undecided", "up_to": n }),
    }
}

pub fn membership(m: &Membership) -> Value {
    match m {
        Membership::Member(n) => json!({ "result": "member", "n": n }),
        Membership::NotMemberUpTo(n) => json!({ "result": "not-member", "up_to": n }),
    }
}
