//! A `k × k` primitive matrix, `k = deg λ`, with the clopen values of a
//! given primitive matrix, and the diagram realising them.
//!
//! With `f_1, …, f_k` a basis of the lattice of the eigenvector entries
//! whose cone contains the dominant eigenvector `y_1` of multiplication by
//! `μ` (`μ = λ` or a power of it), `Ã` holds the integer coordinates of
//! `μ^M f_i` in that basis and `b` those of `μ^N x_i`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::letter_names;
use crate::bratteli::OrderedDiagram;
use crate::clopen::{groups_equal, lattice_of, GroupComparison, LatticeGroup};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, FieldRef, IntMatrix, RatMatrix, Sign};
use crate::perron::{multiplication_matrices, perron_data, perron_minimal_polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimizeCaps {
    /// Largest `N` tried for the cone condition on the `x_i`.
    pub n_cap: usize,
    /// Largest `M` tried for positivity of `Ã`.
    pub m_cap: usize,
    /// Largest number of basis exchanges when moving `y_1` into the cone.
    pub exchange_cap: usize,
    /// Largest exponent tried for `λ^M H ⊆ H` when realising a group.
    pub closure_cap: usize,
}

impl Default for MinimizeCaps {
    fn default() -> Self {
        MinimizeCaps {
            n_cap: 200,
            m_cap: 200,
            exchange_cap: 100_000,
            closure_cap: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizeCertificates {
    pub dimension_is_degree: bool,
    pub primitive: bool,
    /// The Perron root of `Ã` has the minimal polynomial of `λ^total_power`.
    pub min_poly_matches: bool,
    /// `Ã z = λ^total_power z` in `Q(λ)`.
    pub eigen_identity: bool,
    /// `x_i = Σ_j b_ij z_j` with all `b_ij >= 0`.
    pub decomposition: bool,
    /// The group of the measure weights of the output diagram equals
    /// `μ^-N H(x)`.
    pub weights_group_equal: bool,
    /// `⋃ λ^-N H(x)` against the output diagram, when `λ H(x) ⊆ H(x)`.
    pub groups: Option<GroupComparison>,
    /// `α^-1 ⋃ λ^-N H(x)` against `S(Ã)`, when `λ H(x) ⊆ H(x)`.
    pub scaled_groups: Option<GroupComparison>,
}

impl MinimizeCertificates {
    pub fn all_pass(&self) -> bool {
        let eq =
            |g: &Option<GroupComparison>| g.is_none_or(|g| matches!(g, GroupComparison::Equal(_)));
        self.dimension_is_degree
            && self.primitive
            && self.min_poly_matches
            && self.eigen_identity
            && self.decomposition
            && self.weights_group_equal
            && eq(&self.groups)
            && eq(&self.scaled_groups)
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeReport {
    pub field: FieldRef,
    pub a_tilde: IntMatrix,
    pub n: usize,
    pub m: usize,
    /// `μ = λ^step`; 1 for matrices, the closure exponent for groups.
    pub step: usize,
    /// Perron root of `Ã` is `λ^total_power`.
    pub total_power: usize,
    /// Columns `f_1, …, f_k`.
    pub f_basis: Vec<Vec<BigRational>>,
    /// `z_j = ⟨μ^-N f_j, n⟩`.
    pub z: Vec<FieldElement>,
    /// `α = Σ z_j`; `S(Ã) = α^-1 S(A)`.
    pub alpha: FieldElement,
    /// `s × k`, `x_i = Σ_j b_ij z_j`.
    pub b: IntMatrix,
    pub diagram: OrderedDiagram,
    pub certificates: MinimizeCertificates,
}

pub fn minimize_vertices(a: &IntMatrix) -> Result<MinimizeReport> {
    minimize_vertices_with(a, MinimizeCaps::default())
}

pub fn minimize_vertices_with(a: &IntMatrix, caps: MinimizeCaps) -> Result<MinimizeReport> {
    let pd = perron_data(a)?;
    let group = lattice_of(&pd)?;
    let mut report = reduce(&pd.field, &pd.eigvec, 1, caps)?;
    let total = report.total_power;
    let weights = weight_group(&report.diagram)?;
    report.certificates.groups = Some(groups_equal(&group, &weights, total, caps.n_cap)?);
    let scaled = group.scaled(&report.alpha.inv()?)?;
    let tilde = lattice_of(&perron_data(&report.a_tilde)?)?;
    report.certificates.scaled_groups = Some(groups_equal(&scaled, &tilde, total, caps.n_cap)?);
    Ok(report)
}

/// Primitive integer matrix whose clopen values are `⋃ λ^-N H(xs)`, for
/// positive `xs` summing to 1 whose coordinates span `Q^k`, provided some
/// `λ^M H ⊆ H` with `M <= caps.closure_cap`.
pub fn realize_group_matrix(
    field: &FieldRef,
    xs: &[FieldElement],
    caps: MinimizeCaps,
) -> Result<MinimizeReport> {
    if xs.is_empty() {
        return Err(Error::domain("no values given"));
    }
    if xs.iter().any(|x| x.field().min_poly() != field.min_poly()) {
        return Err(Error::domain("values lie in a different field"));
    }
    if xs.iter().any(|x| x.sign() != Sign::Positive) {
        return Err(Error::domain("values must be positive"));
    }
    let total = xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.add(x));
    if !total.is_one() {
        return Err(Error::domain("values must sum to 1"));
    }
    let group = match LatticeGroup::new(field, xs) {
        Ok(g) => g,
        Err(Error::Rank(msg)) => {
            return Err(Error::domain(format!("values do not span Q^k: {msg}")))
        }
        Err(e) => return Err(e),
    };
    let step = (1..=caps.closure_cap)
        .find(|&m| group.is_closed_under_power(m).unwrap_or(false))
        .ok_or_else(|| {
            Error::domain(format!(
                "no λ^M with M <= {} maps the group into itself",
                caps.closure_cap
            ))
        })?;
    reduce(field, xs, step, caps)
}

/// Group generated by the measure weights of a diagram, in the diagram's
/// own Perron field.
fn weight_group(d: &OrderedDiagram) -> Result<LatticeGroup> {
    let (field, w) = d.measure_weights()?;
    LatticeGroup::new(&field, &w)
}

fn rat_matrix_from_columns(cols: &[Vec<BigRational>]) -> Result<RatMatrix> {
    Ok(RatMatrix::from_rows(cols.to_vec())?.transpose())
}

/// Coordinates of a field-valued vector in the basis whose inverse matrix
/// is `inv`.
fn field_coords(inv: &RatMatrix, v: &[FieldElement]) -> Vec<FieldElement> {
    (0..inv.rows())
        .map(|i| {
            let mut acc = FieldElement::zero(v[0].field());
            for (j, vj) in v.iter().enumerate() {
                let c = inv.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&vj.scale(c));
                }
            }
            acc
        })
        .collect()
}

fn integer_coords(inv: &RatMatrix, v: &[BigRational]) -> Result<Vec<BigInt>> {
    let c = inv.mul_vec(v)?;
    c.into_iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::internal(
                    "lattice vector without integer coordinates",
                ))
            }
        })
        .collect()
}

fn reduce(
    field: &FieldRef,
    xs: &[FieldElement],
    step: usize,
    caps: MinimizeCaps,
) -> Result<MinimizeReport> {
    let k = field.degree();
    let lambda = FieldElement::generator(field);
    let mu = lambda.pow(step as i64)?;
    let group = LatticeGroup::new(field, xs)?;
    let y1 = multiplication_matrices(field)?.y1;

    // Move y_1 into the open cone of the basis by exchanges f_i -= f_j,
    // each of which adds β_i to β_j.
    let mut f = group.lattice().basis_vectors();
    let mut beta = field_coords(&rat_matrix_from_columns(&f)?.inverse()?, &y1);
    if beta.iter().all(|b| b.sign() != Sign::Positive) {
        for v in f.iter_mut() {
            for c in v.iter_mut() {
                *c = -c.clone();
            }
        }
        beta = beta.iter().map(|b| b.neg()).collect();
    }
    let mut exchanges = 0usize;
    while let Some(j) = beta.iter().position(|b| b.sign() != Sign::Positive) {
        let i = (0..k)
            .filter(|&i| beta[i].sign() == Sign::Positive)
            .max_by(|&p, &q| beta[p].to_f64().total_cmp(&beta[q].to_f64()))
            .ok_or_else(|| Error::internal("no positive cone coordinate"))?;
        while beta[j].sign() != Sign::Positive {
            exchanges += 1;
            if exchanges > caps.exchange_cap {
                return Err(Error::cap(format!(
                    "more than {} basis exchanges",
                    caps.exchange_cap
                )));
            }
            let fj = f[j].clone();
            for (c, d) in f[i].iter_mut().zip(&fj) {
                *c -= d;
            }
            beta[j] = beta[j].add(&beta[i]);
        }
    }
    // Narrow the cone around y_1 until every f_i is a positive number:
    // f_j += f_i for the two largest β, which takes β_j from β_i.
    let is_positive = |v: &[BigRational]| {
        FieldElement::new(field, v.to_vec()).map(|e| e.sign() == Sign::Positive)
    };
    while !f
        .iter()
        .map(|v| is_positive(v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|p| p)
    {
        exchanges += 1;
        if exchanges > caps.exchange_cap {
            return Err(Error::cap(format!(
                "more than {} basis exchanges",
                caps.exchange_cap
            )));
        }
        let mut by_size: Vec<usize> = (0..k).collect();
        by_size.sort_by(|&p, &q| beta[q].to_f64().total_cmp(&beta[p].to_f64()));
        let (i, j) = (by_size[0], by_size[1]);
        let fi = f[i].clone();
        for (c, d) in f[j].iter_mut().zip(&fi) {
            *c += d;
        }
        beta[i] = beta[i].sub(&beta[j]);
    }
    let inv = rat_matrix_from_columns(&f)?.inverse()?;

    // Smallest N with μ^N x_i in the open cone (coordinates >= 1).
    let mut cur: Vec<FieldElement> = xs.to_vec();
    let mut found = None;
    for n in 0..=caps.n_cap {
        let rows = cur
            .iter()
            .map(|x| integer_coords(&inv, x.coords()))
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().flatten().all(|c| c >= &BigInt::one()) {
            found = Some((n, rows));
            break;
        }
        cur = cur.iter().map(|x| x.mul(&mu)).collect();
    }
    let (n, b_rows) = found.ok_or_else(|| {
        Error::cap(format!(
            "cone condition fails for every N <= {}",
            caps.n_cap
        ))
    })?;

    // Smallest M >= 1 with every coordinate of μ^M f_i at least 1.
    let mut g: Vec<FieldElement> = f
        .iter()
        .map(|v| FieldElement::new(field, v.clone()))
        .collect::<Result<_>>()?;
    let mut found = None;
    for m in 1..=caps.m_cap {
        g = g.iter().map(|x| x.mul(&mu)).collect();
        let rows = g
            .iter()
            .map(|x| integer_coords(&inv, x.coords()))
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().flatten().all(|c| c >= &BigInt::one()) {
            found = Some((m, rows));
            break;
        }
    }
    let (m, a_rows) = found
        .ok_or_else(|| Error::cap(format!("no M <= {} gives a positive matrix", caps.m_cap)))?;
    let a_tilde = IntMatrix::from_rows(a_rows)?;
    let b = IntMatrix::from_rows(b_rows)?;
    let total_power = step
        .checked_mul(m)
        .ok_or_else(|| Error::cap("exponent overflow"))?;

    let shrink = mu.pow(-(n as i64))?;
    let z: Vec<FieldElement> = f
        .iter()
        .map(|v| FieldElement::new(field, v.clone()).map(|e| e.mul(&shrink)))
        .collect::<Result<_>>()?;
    let alpha = z.iter().skip(1).fold(z[0].clone(), |acc, x| acc.add(x));

    let level0: Vec<BigUint> = (0..k)
        .map(|j| {
            let total: BigInt = (0..b.rows()).map(|i| b.get(i, j).clone()).sum();
            total
                .to_biguint()
                .ok_or_else(|| Error::internal("negative root multiplicity"))
        })
        .collect::<Result<_>>()?;
    let names: Vec<String> = letter_names(k);
    let diagram = OrderedDiagram::with_proper_order(names, &a_tilde.transpose(), level0)?;

    let certificates = certify(field, xs, &a_tilde, &b, &z, &shrink, total_power, &diagram)?;
    Ok(MinimizeReport {
        field: field.clone(),
        a_tilde,
        n,
        m,
        step,
        total_power,
        f_basis: f,
        z,
        alpha,
        b,
        diagram,
        certificates,
    })
}

fn certify(
    field: &FieldRef,
    xs: &[FieldElement],
    a_tilde: &IntMatrix,
    b: &IntMatrix,
    z: &[FieldElement],
    shrink: &FieldElement,
    total_power: usize,
    diagram: &OrderedDiagram,
) -> Result<MinimizeCertificates> {
    let k = field.degree();
    let dimension_is_degree = a_tilde.rows() == k && a_tilde.cols() == k;
    let primitive = a_tilde.is_primitive()?;
    let lt = FieldElement::generator(field).pow(total_power as i64)?;
    let min_poly_matches = match (perron_minimal_polynomial(a_tilde), lt.integral_min_poly()) {
        (Ok((f2, _)), Some(p)) => f2.min_poly() == &p,
        _ => false,
    };
    let row_dot = |m: &IntMatrix, i: usize| {
        let mut acc = FieldElement::zero(field);
        for (j, zj) in z.iter().enumerate() {
            acc = acc.add(&zj.scale(&BigRational::from_integer(m.get(i, j).clone())));
        }
        acc
    };
    let eigen_identity = (0..k).all(|i| row_dot(a_tilde, i) == lt.mul(&z[i]));
    let decomposition = b.entries().iter().all(|c| !c.is_negative())
        && b.rows() == xs.len()
        && (0..xs.len()).all(|i| row_dot(b, i) == xs[i]);
    let weights = weight_group(diagram)?;
    let weights_group_equal =
        weights.pull_back(field, total_power)? == LatticeGroup::new(field, xs)?.scaled(shrink)?;
    Ok(MinimizeCertificates {
        dimension_is_degree,
        primitive,
        min_poly_matches,
        eigen_identity,
        decomposition,
        weights_group_equal,
        groups: None,
        scaled_groups: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{IntPolynomial, NumberField};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn from_enlarged_matrix() {
        let r = minimize_vertices(&m(&[&[1, 1, 1], &[2, 3, 1], &[8, 13, 0]])).unwrap();
        assert_eq!(r.a_tilde.rows(), 2);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
        assert_eq!(r.b.rows(), 3);
    }

    #[test]
    fn golden_is_already_minimal() {
        let r = minimize_vertices(&m(&[&[1, 1], &[1, 2]])).unwrap();
        assert_eq!(r.a_tilde.rows(), 2);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
    }

    #[test]
    fn natural_eigenvalue_gives_odometer() {
        let r = minimize_vertices(&m(&[&[1, 2], &[2, 1]])).unwrap();
        assert_eq!(r.a_tilde, m(&[&[3]]));
        assert_eq!(r.diagram.size(), 1);
        assert_eq!(r.diagram.level0(), &[BigUint::from(2u32)]);
        assert!(r.certificates.all_pass(), "{:?}", r.certificates);
    }

    #[test]
    fn realize_golden_values() {
        let field = NumberField::largest_root(IntPolynomial::from_i64(&[1, -3, 1])).unwrap();
        let q = |a: i64| BigRational::from_integer(a.into());
        let xs = vec![
            FieldElement::new(&field, vec![q(3), q(-1)]).unwrap(),
            FieldElement::new(&field, vec![q(-2), q(1)]).unwrap(),
        ];
        let r = realize_group_matrix(&field, &xs, MinimizeCaps::default()).unwrap();
        assert_eq!(r.a_tilde.rows(), 2);
        assert!(r.certificates.all_pass());
        assert_eq!(
            LatticeGroup::new(&field, &xs).unwrap().lattice().basis(),
            &IntMatrix::identity(2)
        );
    }

    #[test]
    fn realize_rational_values() {
        let field = NumberField::largest_root(IntPolynomial::from_i64(&[-2, 1])).unwrap();
        let xs = vec![
            FieldElement::from_rational(&field, BigRational::new(1.into(), 3.into())),
            FieldElement::from_rational(&field, BigRational::new(2.into(), 3.into())),
        ];
        let r = realize_group_matrix(&field, &xs, MinimizeCaps::default()).unwrap();
        assert_eq!(r.a_tilde, m(&[&[2]]));
        assert_eq!(r.diagram.level0(), &[BigUint::from(3u32)]);
        assert!(r.certificates.all_pass());
    }

    #[test]
    fn realize_rejects_rank_deficient() {
        let field = NumberField::largest_root(IntPolynomial::from_i64(&[1, -3, 1])).unwrap();
        let half = FieldElement::from_rational(&field, BigRational::new(1.into(), 2.into()));
        let r = realize_group_matrix(&field, &[half.clone(), half], MinimizeCaps::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
