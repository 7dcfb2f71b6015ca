//! Input documents and their conversion to library values.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Deserialize;
use subdyn::bratteli::OrderedDiagram;
use subdyn::exact::IntMatrix;
use subdyn::subst::{parse_word, Substitution, Word};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or ill-formed input; exit status 3.
    Malformed(String),
    Lib(subdyn::Error),
}

impl From<subdyn::Error> for CliError {
    fn from(e: subdyn::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 3,
            CliError::Lib(subdyn::Error::Capability(_)) => 2,
            CliError::Lib(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        use subdyn::Error::*;
        match self {
            CliError::Malformed(_) => "malformed-input",
            CliError::Lib(e) => match e {
                Dimension(_) => "dimension",
                Domain(_) => "domain",
                Arithmetic(_) => "arithmetic",
                Rank(_) => "rank",
                Seed(_) => "seed",
                Path(_) => "path",
                Capability(_) => "capability",
                Internal(_) => "internal",
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Malformed(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

pub fn read_input(path: Option<&Path>) -> CliResult<String> {
    let mut s = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            s = std::fs::read_to_string(p)
                .map_err(|e| malformed(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| malformed(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(s)
}

pub fn parse_doc<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| malformed(format!("invalid input document: {e}")))
}

/// A rule word: a string of letters (whitespace separated when letter
/// names are longer than one character) or explicit runs.
#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum WordDoc {
    Text(String),
    Runs { runs: Vec<(String, Integer)> },
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionDoc {
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, WordDoc>,
}

/// An integer given as a JSON number or a decimal string.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum Integer {
    Num(i64),
    Str(String),
}

impl Integer {
    pub fn value(&self) -> CliResult<BigInt> {
        match self {
            Integer::Num(n) => Ok(BigInt::from(*n)),
            Integer::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| malformed(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum MatrixDoc {
    Rows(Vec<Vec<Integer>>),
    Wrapped(WrappedMatrix),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct WrappedMatrix {
    pub matrix: Vec<Vec<Integer>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub vertices: Vec<String>,
    pub incidence: Option<Vec<Vec<Integer>>>,
    pub level0: Vec<Integer>,
    pub order: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum DiagramInput {
    Substitution(SubstitutionDoc),
    Diagram(DiagramDoc),
}

/// A number of `Q(λ)`: a rational string or power-basis coordinates.
#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum ValueDoc {
    Rational(String),
    Coords { coords: Vec<String> },
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct MemberDoc {
    pub matrix: MatrixDoc,
    pub value: ValueDoc,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct GroupsDoc {
    pub first: MatrixDoc,
    pub second: MatrixDoc,
    /// The Perron root of `second` is that of `first` to this power.
    pub power: usize,
}

pub fn rational(s: &str) -> CliResult<BigRational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => n
            .trim()
            .parse::<BigInt>()
            .ok()
            .zip(d.trim().parse::<BigInt>().ok())
            .filter(|(_, d)| d != &BigInt::from(0))
            .map(|(n, d)| BigRational::new(n, d)),
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| malformed(format!("not a rational number: {s:?}")))
}

fn rows_to_matrix(rows: &[Vec<Integer>]) -> CliResult<IntMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(malformed("matrix must be a nonempty square array of rows"));
    }
    let data = rows
        .iter()
        .flatten()
        .map(Integer::value)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(IntMatrix::new(n, n, data)?)
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> CliResult<IntMatrix> {
        match self {
            MatrixDoc::Rows(r) => rows_to_matrix(r),
            MatrixDoc::Wrapped(w) => rows_to_matrix(&w.matrix),
        }
    }
}

fn word_of(alphabet: &[String], w: &WordDoc) -> CliResult<Word> {
    match w {
        WordDoc::Text(t) => Ok(parse_word(alphabet, t)?),
        WordDoc::Runs { runs } => {
            let mut out = Vec::with_capacity(runs.len());
            for (name, count) in runs {
                let l = alphabet.iter().position(|a| a == name).ok_or_else(|| {
                    malformed(format!("run letter {name:?} is not in the alphabet"))
                })?;
                let c: BigUint = count
                    .value()?
                    .to_biguint()
                    .ok_or_else(|| malformed("run lengths must be nonnegative"))?;
                out.push((l, c));
            }
            Ok(Word::from_runs(out))
        }
    }
}

impl SubstitutionDoc {
    pub fn to_substitution(&self) -> CliResult<Substitution> {
        if self.rules.len() != self.alphabet.len()
            || self.alphabet.iter().any(|l| !self.rules.contains_key(l))
        {
            return Err(malformed(
                "rules must have exactly one entry per alphabet letter",
            ));
        }
        let rules = self
            .alphabet
            .iter()
            .map(|l| word_of(&self.alphabet, &self.rules[l]))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Substitution::new(self.alphabet.clone(), rules)?)
    }
}

impl DiagramDoc {
    pub fn to_diagram(&self) -> CliResult<OrderedDiagram> {
        let index = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| malformed(format!("unknown vertex {name:?}")))
        };
        if self.order.len() != self.vertices.len()
            || self.vertices.iter().any(|v| !self.order.contains_key(v))
        {
            return Err(malformed("order must have exactly one entry per vertex"));
        }
        let order = self
            .vertices
            .iter()
            .map(|v| {
                self.order[v]
                    .iter()
                    .map(|s| index(s))
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        let level0 = self
            .level0
            .iter()
            .map(|m| {
                m.value()?
                    .to_biguint()
                    .ok_or_else(|| malformed("level-0 multiplicities must be nonnegative"))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let d = OrderedDiagram::new(self.vertices.clone(), level0, order)?;
        if let Some(rows) = &self.incidence {
            if rows_to_matrix(rows)? != *d.incidence() {
                return Err(CliError::Lib(subdyn::Error::Domain(
                    "incidence does not match the order lists".into(),
                )));
            }
        }
        Ok(d)
    }
}
