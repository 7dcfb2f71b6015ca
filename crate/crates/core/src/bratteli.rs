//! Stationary ordered Bratteli diagrams.
//!
//! Level 0 is the root `v0`; every level `n >= 1` is a copy of the vertex
//! list. `F[v][w]` counts edges from `w` at level `n` to `v` at level
//! `n + 1`, and the edges into `v` are ordered by `order[v]`, a list of
//! source vertices. The root has `level0[v]` edges to `v` at level 1.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{FieldElement, FieldRef, IntMatrix};
use crate::perron::perron_data;
use crate::subst::{Substitution, Word};

/// Largest explicit order list a diagram may hold.
const ORDER_BUDGET: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedDiagram {
    vertices: Vec<String>,
    incidence: IntMatrix,
    level0: Vec<BigUint>,
    order: Vec<Vec<usize>>,
}

impl OrderedDiagram {
    /// Validates that `order[v]` lists `w` exactly `F[v][w]` times and that
    /// every level-0 multiplicity is positive.
    pub fn new(
        vertices: Vec<String>,
        level0: Vec<BigUint>,
        order: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let k = vertices.len();
        if k == 0 {
            return Err(Error::dim("a diagram needs at least one vertex"));
        }
        if level0.len() != k || order.len() != k {
            return Err(Error::dim(
                "level-0 multiplicities and orders need one entry per vertex",
            ));
        }
        if level0.iter().any(|m| m.is_zero()) {
            return Err(Error::domain(
                "every vertex needs at least one edge from the root",
            ));
        }
        let mut incidence = IntMatrix::zeros(k, k);
        for (v, ord) in order.iter().enumerate() {
            if ord.is_empty() {
                return Err(Error::domain(format!(
                    "vertex {} has no incoming edges",
                    vertices[v]
                )));
            }
            for &w in ord {
                if w >= k {
                    return Err(Error::domain("order refers to an unknown vertex"));
                }
                let c = incidence.get(v, w) + BigInt::one();
                incidence.set(v, w, c);
            }
        }
        Ok(OrderedDiagram {
            vertices,
            incidence,
            level0,
            order,
        })
    }

    /// Diagram with incidence `F` and the canonical proper order: into every
    /// vertex, first the first vertex, last the last vertex, the remaining
    /// edges by source in vertex order.
    pub fn with_proper_order(
        vertices: Vec<String>,
        f: &IntMatrix,
        level0: Vec<BigUint>,
    ) -> Result<Self> {
        let k = vertices.len();
        if f.rows() != k || f.cols() != k {
            return Err(Error::dim("incidence does not match the vertex count"));
        }
        let mut order = Vec::with_capacity(k);
        for v in 0..k {
            let mut counts: Vec<usize> = (0..k)
                .map(|w| {
                    f.get(v, w)
                        .to_usize()
                        .filter(|&c| c <= ORDER_BUDGET)
                        .ok_or_else(|| {
                            Error::cap("incidence entry too large for an explicit order")
                        })
                })
                .collect::<Result<_>>()?;
            let (first, last) = (0, k - 1);
            if counts[first] == 0 || counts[last] == 0 || (first == last && counts[first] < 2) {
                return Err(Error::domain(format!(
                    "vertex {} lacks the edges a proper order needs",
                    vertices[v]
                )));
            }
            counts[first] -= 1;
            counts[last] -= 1;
            let mut ord = vec![first];
            for (w, &c) in counts.iter().enumerate() {
                ord.extend(std::iter::repeat_n(w, c));
            }
            ord.push(last);
            order.push(ord);
        }
        Self::new(vertices, level0, order)
    }

    /// Vertices are the letters, `F = A_σᵀ`, the order into `v` reads
    /// `σ(v)`, and the root has one edge to every vertex.
    pub fn from_substitution(s: &Substitution) -> Result<Self> {
        let order = s
            .rules()
            .iter()
            .map(|w| {
                w.to_letters(ORDER_BUDGET)
                    .ok_or_else(|| Error::cap("rule word too long for an explicit order"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(s.alphabet().to_vec(), vec![BigUint::one(); s.size()], order)
    }

    /// Substitution whose rule for `v` is the order list into `v`.
    pub fn substitution_read(&self) -> Substitution {
        let rules = self.order.iter().map(|o| Word::from_letters(o)).collect();
        Substitution::new(self.vertices.clone(), rules).expect("orders are valid rule words")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn incidence(&self) -> &IntMatrix {
        &self.incidence
    }

    pub fn level0(&self) -> &[BigUint] {
        &self.level0
    }

    pub fn order(&self) -> &[Vec<usize>] {
        &self.order
    }

    pub fn is_simple(&self) -> bool {
        self.level0.iter().all(|m| m.is_one())
    }

    /// Both first-letter and last-letter maps of the read substitution
    /// become constant within `s` iterations.
    pub fn is_properly_ordered(&self) -> bool {
        self.substitution_read()
            .properness_witness(self.size())
            .is_some()
    }

    /// Telescoping along levels `0, 1, 1 + N, 1 + 2N, …`: incidence `F^N`,
    /// paths between kept levels ordered lexicographically with the top
    /// edge most significant. The root edges are unchanged.
    pub fn telescope(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("telescoping power must be at least 1"));
        }
        let mut cur = self.order.clone();
        for _ in 1..n {
            let mut next = Vec::with_capacity(self.size());
            for ord in &self.order {
                let mut o = Vec::new();
                for &u in ord {
                    if o.len() + cur[u].len() > ORDER_BUDGET {
                        return Err(Error::cap("telescoped orders too long"));
                    }
                    o.extend_from_slice(&cur[u]);
                }
                next.push(o);
            }
            cur = next;
        }
        Self::new(self.vertices.clone(), self.level0.clone(), cur)
    }

    /// `h^(n)`: numbers of paths from the root to each vertex at level `n`.
    pub fn path_counts(&self, n: usize) -> Result<Vec<BigInt>> {
        if n == 0 {
            return Err(Error::domain("levels start at 1"));
        }
        let mut h: Vec<BigInt> = self
            .level0
            .iter()
            .map(|m| BigInt::from(m.clone()))
            .collect();
        for _ in 1..n {
            h = self.incidence.mul_vec(&h)?;
        }
        Ok(h)
    }

    /// Perron field of `F` and the weights `w_v` with `F^T w = λ w` and
    /// `Σ_v level0_v w_v = 1`; the cylinder of a path ending at `v` on level
    /// `n` has measure `w_v λ^(1-n)`.
    pub fn measure_weights(&self) -> Result<(FieldRef, Vec<FieldElement>)> {
        let a = self.incidence.transpose();
        let pd = perron_data(&a)?;
        let field = pd.field.clone();
        let mut total = FieldElement::zero(&field);
        for (m, x) in self.level0.iter().zip(&pd.eigvec) {
            total = total.add(&x.scale(&BigRational::from_integer(BigInt::from(m.clone()))));
        }
        let inv = total.inv()?;
        Ok((field, pd.eigvec.iter().map(|x| x.mul(&inv)).collect()))
    }

    pub fn cylinder_measure(&self, v: usize, n: usize) -> Result<FieldElement> {
        if v >= self.size() {
            return Err(Error::domain("unknown vertex"));
        }
        if n == 0 {
            return Err(Error::domain("levels start at 1"));
        }
        let (field, w) = self.measure_weights()?;
        let lam = FieldElement::generator(&field);
        Ok(w[v].mul(&lam.pow(1 - n as i64)?))
    }

    /// The first path: minimal edges down from the first vertex.
    pub fn minimal_path(&self, depth: usize) -> Result<FinitePath> {
        if depth == 0 {
            return Err(Error::Path("depth must be at least 1".into()));
        }
        Ok(self.minimal_path_into(0, depth))
    }

    /// The last path: maximal edges down from the last vertex.
    pub fn maximal_path(&self, depth: usize) -> Result<FinitePath> {
        if depth == 0 {
            return Err(Error::Path("depth must be at least 1".into()));
        }
        let mut v = self.size() - 1;
        let mut indices = Vec::with_capacity(depth - 1);
        for _ in 1..depth {
            let i = self.order[v].len() - 1;
            indices.push(i);
            v = self.order[v][i];
        }
        Ok(FinitePath {
            terminal: self.size() - 1,
            indices,
            level0_index: &self.level0[v] - BigUint::one(),
        })
    }

    fn minimal_path_into(&self, terminal: usize, depth: usize) -> FinitePath {
        FinitePath {
            terminal,
            indices: vec![0; depth - 1],
            level0_index: BigUint::zero(),
        }
    }

    /// Vertices `v_n, v_(n-1), …, v_1` visited by the path, top first.
    pub fn path_vertices(&self, p: &FinitePath) -> Result<Vec<usize>> {
        if p.terminal >= self.size() {
            return Err(Error::Path("unknown terminal vertex".into()));
        }
        let mut v = p.terminal;
        let mut out = vec![v];
        for &i in &p.indices {
            let ord = &self.order[v];
            if i >= ord.len() {
                return Err(Error::Path(format!(
                    "edge index {i} out of range at vertex {}",
                    self.vertices[v]
                )));
            }
            v = ord[i];
            out.push(v);
        }
        if p.level0_index >= self.level0[v] {
            return Err(Error::Path("root edge index out of range".into()));
        }
        Ok(out)
    }

    /// Successor in the Vershik order on depth-`n` paths: the lowest edge
    /// that is not maximal is advanced and every edge below it is reset to
    /// the minimal path. When every edge is maximal the successor is the
    /// minimal path into the next vertex in vertex order, so the orbit of
    /// [`Self::minimal_path`] runs through all paths of that depth; `None`
    /// after [`Self::maximal_path`].
    pub fn vershik_successor(&self, p: &FinitePath) -> Result<Option<FinitePath>> {
        let verts = self.path_vertices(p)?;
        let depth = p.depth();
        let bottom = verts[depth - 1];
        // Level-0 edge first.
        if &p.level0_index + BigUint::one() < self.level0[bottom] {
            let mut q = p.clone();
            q.level0_index += BigUint::one();
            return Ok(Some(q));
        }
        // Edges from level 1 upwards: indices are stored top first.
        for lvl in (0..p.indices.len()).rev() {
            let target = verts[lvl];
            if p.indices[lvl] + 1 < self.order[target].len() {
                let mut q = p.clone();
                q.indices[lvl] += 1;
                for i in lvl + 1..q.indices.len() {
                    q.indices[i] = 0;
                }
                q.level0_index = BigUint::zero();
                return Ok(Some(q));
            }
        }
        if p.terminal + 1 < self.size() {
            return Ok(Some(self.minimal_path_into(p.terminal + 1, depth)));
        }
        Ok(None)
    }

    /// Deterministic DOT rendering of the first `levels` levels.
    pub fn export_dot(&self, levels: usize) -> Result<String> {
        if levels == 0 {
            return Err(Error::domain("at least one level is required"));
        }
        let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n  v0 [label=\"v0\"];\n");
        for lvl in 1..=levels {
            let _ = write!(out, "  {{ rank=same;");
            for (i, name) in self.vertices.iter().enumerate() {
                let _ = write!(out, " \"{lvl}_{i}\" [label=\"{}\"];", escape(name));
            }
            out.push_str(" }\n");
        }
        for (v, m) in self.level0.iter().enumerate() {
            let m = m
                .to_usize()
                .filter(|&m| m <= ORDER_BUDGET)
                .ok_or_else(|| Error::cap("too many root edges to draw"))?;
            for j in 0..m {
                let _ = writeln!(out, "  v0 -> \"1_{v}\" [label=\"{j}\"];");
            }
        }
        for lvl in 1..levels {
            for (v, ord) in self.order.iter().enumerate() {
                for (j, &w) in ord.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  \"{lvl}_{w}\" -> \"{}_{v}\" [label=\"{j}\"];",
                        lvl + 1
                    );
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Path from the root to level `depth = indices.len() + 1`, described from
/// the top: the terminal vertex, then for each level the index of the edge
/// in the order list of its target, then the root edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePath {
    pub terminal: usize,
    pub indices: Vec<usize>,
    pub level0_index: BigUint,
}

impl FinitePath {
    pub fn depth(&self) -> usize {
        self.indices.len() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn golden() -> OrderedDiagram {
        OrderedDiagram::from_substitution(
            &Substitution::from_pairs(&[("a", "ab"), ("b", "abb")]).unwrap(),
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn from_substitution_and_back() {
        let d = golden();
        assert_eq!(
            d.incidence(),
            &IntMatrix::from_i64(&[&[1, 1], &[1, 2]])
                .unwrap()
                .transpose()
        );
        assert_eq!(d.order(), &[vec![0, 1], vec![0, 1, 1]]);
        let s = Substitution::from_pairs(&[("a", "ab"), ("b", "abb")]).unwrap();
        assert_eq!(d.substitution_read(), s);
        let one = Substitution::from_pairs(&[("a", "aa")]).unwrap();
        let od = OrderedDiagram::from_substitution(&one).unwrap();
        assert_eq!(od.order(), &[vec![0, 0]]);
    }

    #[test]
    fn read_custom_order() {
        let d = OrderedDiagram::new(
            vec!["a".into(), "b".into()],
            vec![BigUint::one(), BigUint::one()],
            vec![vec![1, 0], vec![0, 1, 1]],
        )
        .unwrap();
        assert_eq!(
            d.substitution_read(),
            Substitution::from_pairs(&[("a", "ba"), ("b", "abb")]).unwrap()
        );
    }

    #[test]
    fn telescoping() {
        let d = golden();
        let t = d.telescope(2).unwrap();
        assert_eq!(
            t.substitution_read(),
            Substitution::from_pairs(&[("a", "ababb"), ("b", "ababbabb")]).unwrap()
        );
        assert_eq!(d.telescope(1).unwrap(), d);
        assert_eq!(
            d.telescope(3).unwrap().incidence(),
            &d.incidence().pow(3).unwrap()
        );
    }

    #[test]
    fn counts() {
        let d = golden();
        assert_eq!(d.path_counts(1).unwrap(), ints(&[1, 1]));
        assert_eq!(d.path_counts(2).unwrap(), ints(&[2, 3]));
        assert_eq!(d.path_counts(4).unwrap(), ints(&[13, 21]));
    }

    #[test]
    fn vershik_depth_two_into_a() {
        let d = golden();
        let min = d.minimal_path(2).unwrap();
        assert_eq!(d.path_vertices(&min).unwrap(), vec![0, 0]);
        let next = d.vershik_successor(&min).unwrap().unwrap();
        assert_eq!(next.terminal, 0);
        assert_eq!(d.path_vertices(&next).unwrap(), vec![0, 1]);
        assert!(d
            .vershik_successor(&d.maximal_path(3).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn vershik_orbit_covers_depth_four() {
        let d = golden();
        let mut p = d.minimal_path(4).unwrap();
        let mut seen = BTreeSet::new();
        seen.insert(p.clone());
        while let Some(q) = d.vershik_successor(&p).unwrap() {
            assert!(seen.insert(q.clone()));
            p = q;
        }
        assert_eq!(seen.len(), 34);
        assert_eq!(p, d.maximal_path(4).unwrap());
    }

    #[test]
    fn invalid_paths() {
        let d = golden();
        let bad = FinitePath {
            terminal: 0,
            indices: vec![5],
            level0_index: BigUint::zero(),
        };
        assert!(matches!(d.vershik_successor(&bad), Err(Error::Path(_))));
    }

    #[test]
    fn cylinder_measures() {
        let d = golden();
        let c1 = d.cylinder_measure(0, 1).unwrap();
        let f = c1.field().clone();
        let el = |a: i64, b: i64| {
            FieldElement::new(
                &f,
                vec![
                    BigRational::from_integer(a.into()),
                    BigRational::from_integer(b.into()),
                ],
            )
            .unwrap()
        };
        assert_eq!(c1, el(3, -1));
        let c2 = d.cylinder_measure(0, 2).unwrap();
        assert_eq!(c2, el(8, -3));
        assert_eq!(c2.mul(&FieldElement::generator(&f)), c1);
        for n in 1..=10 {
            let h = d.path_counts(n).unwrap();
            let mut total = FieldElement::zero(&f);
            for v in 0..2 {
                total = total.add(
                    &d.cylinder_measure(v, n)
                        .unwrap()
                        .scale(&BigRational::from_integer(h[v].clone())),
                );
            }
            assert!(total.is_one());
        }
    }

    #[test]
    fn dot_export() {
        let dot = golden().export_dot(2).unwrap();
        assert_eq!(dot.matches("->").count(), 7);
        assert_eq!(
            dot.matches("[label=").count() - dot.matches("->").count(),
            5
        );
        assert_eq!(dot, golden().export_dot(2).unwrap());
    }

    #[test]
    fn proper_order_builder() {
        let f = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let d = OrderedDiagram::with_proper_order(
            vec!["x".into(), "y".into()],
            &f,
            vec![BigUint::one(), BigUint::from(2u32)],
        )
        .unwrap();
        assert_eq!(d.order(), &[vec![0, 0, 1], vec![0, 1]]);
        assert!(d.is_properly_ordered());
        assert_eq!(d.incidence(), &f);
    }
}
