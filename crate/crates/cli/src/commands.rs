//! One function per subcommand; each returns the document to print.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use subdyn::bratteli::OrderedDiagram;
use subdyn::clopen::{groups_equal, lattice_of, s_membership};
use subdyn::construct::{
    build_oe_alphabet_family_with, build_soe_substitution_with, certify_enlargement,
    enlarge_to_size, enumerate_rational_y, minimize_vertices_with, MinimizeCaps, MinimizeReport,
    OeStep, SoeFamilyReport,
};
use subdyn::exact::{FieldElement, IntMatrix};
use subdyn::perron::{multiplication_matrices, perron_data};
use subdyn::subst::{complexity_profile, factor_language, Substitution};

use crate::io::{rational, CliError, CliResult, DiagramInput, GroupsDoc, MemberDoc, ValueDoc};
use crate::render::{self as r, DIGITS};

pub enum Output {
    Json(Value),
    Text(String),
}

pub fn perron(a: &IntMatrix) -> CliResult<Output> {
    let pd = perron_data(a)?;
    let mp = multiplication_matrices(&pd.field)?;
    Ok(Output::Json(json!({
        "matrix": r::int_matrix(a),
        "primitivity_exponent": a.primitivity_exponent()?,
        "field": r::field(&pd.field),
        "degree": pd.k,
        "eigenvector": r::elements(&pd.eigvec),
        "coords_matrix": r::rat_matrix(&pd.coords_matrix),
        "multiplication": {
            "c": r::int_matrix(&mp.c),
            "d": r::rat_matrix(&mp.d),
            "y1": r::elements(&mp.y1),
        },
        "decimal_digits": DIGITS,
    })))
}

pub fn complexity(s: &Substitution, n_max: usize) -> CliResult<Output> {
    let prof = complexity_profile(s, n_max.max(2))?;
    let p: Vec<u64> = prof.p[..n_max].to_vec();
    let periodic_at = (1..=n_max).find(|&n| prof.at(n) <= n as u64);
    let max_difference = prof.max_difference().filter(|(n, _)| *n < n_max);
    Ok(Output::Json(json!({
        "n_max": n_max,
        "profile": p,
        "differences": prof.diffs[..n_max - 1],
        "max_difference": max_difference.map(|(n, d)| json!({ "n": n, "difference": d })),
        "aperiodicity": match periodic_at {
            Some(n) => json!({ "result": "periodic", "n": n }),
            None => json!({ "result": "aperiodic-up-to", "n": n_max }),
        },
    })))
}

pub fn language(
    s: &Substitution,
    n: usize,
    seed: Option<&str>,
    prefix_len: usize,
) -> CliResult<Output> {
    let lang = factor_language(s, n)?;
    let alphabet = s.alphabet();
    let mut doc = json!({
        "n": n,
        "count": lang.words.len(),
        "words": r::words(alphabet, lang.words.iter().cloned()),
        "two_blocks": r::words(alphabet, lang.two_blocks.iter().map(|&(a, b)| vec![a, b])),
    });
    if let Some(name) = seed {
        let l = s.letter_index(name).ok_or_else(|| {
            CliError::Lib(subdyn::Error::Seed(format!("unknown seed letter {name:?}")))
        })?;
        let prefix = s.fixed_point_prefix(l, prefix_len)?;
        doc["fixed_point_prefix"] = r::words(alphabet, [prefix])[0].clone();
    }
    Ok(Output::Json(doc))
}

pub struct DiagramOptions {
    pub telescope: Option<usize>,
    pub dot: Option<usize>,
    pub paths: Option<usize>,
    pub measure: bool,
}

/// Largest number of paths listed by `--paths`.
const PATH_LIST_CAP: usize = 1 << 16;

pub fn diagram(input: &DiagramInput, opts: &DiagramOptions) -> CliResult<Output> {
    let mut d = match input {
        DiagramInput::Substitution(s) => OrderedDiagram::from_substitution(&s.to_substitution()?)?,
        DiagramInput::Diagram(doc) => doc.to_diagram()?,
    };
    if let Some(n) = opts.telescope {
        d = d.telescope(n)?;
    }
    if let Some(levels) = opts.dot {
        return Ok(Output::Text(d.export_dot(levels)?));
    }
    let mut doc = json!({
        "diagram": r::diagram(&d),
        "substitution": r::substitution(&d.substitution_read()),
        "simple": d.is_simple(),
        "properly_ordered": d.is_properly_ordered(),
    });
    if opts.measure {
        let (field, w) = d.measure_weights()?;
        doc["measure"] = json!({ "field": r::field(&field), "weights": r::elements(&w) });
    }
    if let Some(depth) = opts.paths {
        let mut list = Vec::new();
        let mut p = Some(d.minimal_path(depth)?);
        while let Some(q) = p {
            if list.len() >= PATH_LIST_CAP {
                return Err(
                    subdyn::Error::Capability(format!("more than {PATH_LIST_CAP} paths")).into(),
                );
            }
            list.push(r::path(&d, &q));
            p = d.vershik_successor(&q)?;
        }
        doc["paths"] = json!({ "depth": depth, "count": list.len(), "orbit": list });
    }
    Ok(Output::Json(doc))
}

pub fn enlarge(a: &IntMatrix, times: usize) -> CliResult<Output> {
    let chain = enlarge_to_size(a, a.rows() + times)?;
    let mut prev = a.clone();
    let mut steps = Vec::with_capacity(chain.len());
    let mut all = true;
    for e in &chain {
        let cert = certify_enlargement(&prev, e)?;
        all &= cert.all_pass();
        steps.push(json!({
            "k": e.k,
            "matrix": r::int_matrix(&e.matrix),
            "certificates": {
                "primitive": cert.primitive,
                "eigen_identity": cert.eigen_identity,
                "groups": r::comparison(&cert.groups),
            },
        }));
        prev = e.matrix.clone();
    }
    Ok(Output::Json(
        json!({ "input": r::int_matrix(a), "steps": steps, "all_pass": all }),
    ))
}

fn minimize_doc(rep: &MinimizeReport) -> Value {
    let c = &rep.certificates;
    json!({
        "field": r::field(&rep.field),
        "a_tilde": r::int_matrix(&rep.a_tilde),
        "n": rep.n,
        "m": rep.m,
        "step": rep.step,
        "total_power": rep.total_power,
        "f_basis": rep.f_basis.iter().map(|v| v.iter().map(r::rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "z": r::elements(&rep.z),
        "alpha": r::element(&rep.alpha),
        "b": r::int_matrix(&rep.b),
        "diagram": r::diagram(&rep.diagram),
        "certificates": {
            "dimension_is_degree": c.dimension_is_degree,
            "primitive": c.primitive,
            "min_poly_matches": c.min_poly_matches,
            "eigen_identity": c.eigen_identity,
            "decomposition": c.decomposition,
            "weights_group_equal": c.weights_group_equal,
            "groups": c.groups.as_ref().map(r::comparison),
            "scaled_groups": c.scaled_groups.as_ref().map(r::comparison),
        },
        "all_pass": c.all_pass(),
    })
}

pub fn minimize(a: &IntMatrix, caps: MinimizeCaps) -> CliResult<Output> {
    let rep = minimize_vertices_with(a, caps)?;
    Ok(Output::Json(minimize_doc(&rep)))
}

fn soe_doc(rep: &SoeFamilyReport) -> Value {
    let c = &rep.certificates;
    let alphabet = rep.input.alphabet();
    json!({
        "input": r::substitution(&rep.input),
        "l": rep.l,
        "n": rep.n,
        "zeta": r::substitution(&rep.zeta),
        "certificates": {
            "incidence_matches": c.incidence_matches,
            "prefix_suffix": c.prefix_suffix,
            "coverage_missing": r::words(alphabet, c.coverage_missing.iter().cloned()),
            "scan_len": c.scan_len,
            "max_difference": c.max_difference.map(|(n, d)| json!({ "n": n, "difference": d })),
            "required_jump": c.required_jump,
            "jump_found": c.jump_found(),
        },
        "all_pass": c.all_pass(),
    })
}

pub fn family_soe(s: &Substitution, l: usize, power_cap: usize, scan: usize) -> CliResult<Output> {
    let rep = build_soe_substitution_with(s, l, power_cap, scan)?;
    Ok(Output::Json(soe_doc(&rep)))
}

fn oe_doc(step: &OeStep) -> Value {
    let c = &step.certificates;
    json!({
        "c": step.c,
        "size": step.size,
        "enlargements": step.enlargements,
        "power": step.power,
        "total_power": step.total_power,
        "matrix": r::int_matrix(&step.matrix),
        "zeta": r::substitution(&step.zeta),
        "certificates": {
            "incidence_matches": c.incidence_matches,
            "proper": c.proper,
            "primitive": c.primitive,
            "growth_ok": c.growth_ok,
            "growth_scan": c.growth_scan,
            "groups": r::comparison(&c.groups),
        },
        "all_pass": c.all_pass(),
    })
}

pub fn family_oe(
    s: &Substitution,
    count: usize,
    probe: usize,
    c: Option<u64>,
) -> CliResult<Output> {
    let steps = build_oe_alphabet_family_with(s, count, probe, c)?;
    Ok(Output::Json(json!({
        "input": r::substitution(s),
        "probe": probe,
        "steps": steps.iter().map(oe_doc).collect::<Vec<_>>(),
        "all_pass": steps.iter().all(|s| s.certificates.all_pass()),
    })))
}

pub fn s_member(doc: &MemberDoc, n_max: usize) -> CliResult<Output> {
    let pd = perron_data(&doc.matrix.to_matrix()?)?;
    let group = lattice_of(&pd)?;
    let y = match &doc.value {
        ValueDoc::Rational(s) => FieldElement::from_rational(&pd.field, rational(s)?),
        ValueDoc::Coords { coords } => {
            let c = coords
                .iter()
                .map(|s| rational(s))
                .collect::<CliResult<Vec<BigRational>>>()?;
            FieldElement::new(&pd.field, c)?
        }
    };
    let m = s_membership(&y, &group, n_max)?;
    Ok(Output::Json(json!({
        "field": r::field(&pd.field),
        "group": r::group(&group),
        "value": r::element(&y),
        "membership": r::membership(&m),
    })))
}

pub fn groups(doc: &GroupsDoc, n_max: usize) -> CliResult<Output> {
    let p1 = perron_data(&doc.first.to_matrix()?)?;
    let p2 = perron_data(&doc.second.to_matrix()?)?;
    let (g1, g2) = (lattice_of(&p1)?, lattice_of(&p2)?);
    let cmp = groups_equal(&g1, &g2, doc.power, n_max)?;
    Ok(Output::Json(json!({
        "first": { "field": r::field(&p1.field), "group": r::group(&g1) },
        "second": { "field": r::field(&p2.field), "group": r::group(&g2) },
        "power": doc.power,
        "comparison": r::comparison(&cmp),
    })))
}

pub fn enumerate_y(q: u32) -> CliResult<Output> {
    let ys = enumerate_rational_y(q);
    Ok(Output::Json(json!({
        "q": q,
        "count": ys.len(),
        "multisets": ys.iter().map(|y| y.iter().map(r::rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "group_generator": r::rat(&BigRational::new(BigInt::from(1), BigInt::from(q))),
    })))
}
