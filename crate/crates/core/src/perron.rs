//! Exact Perron–Frobenius data of primitive integer matrices.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::factor::{self, DEFAULT_DEGREE_CAP};
use crate::exact::field::field_nullspace;
use crate::exact::roots::{self, Interval};
use crate::exact::{FieldElement, FieldRef, IntMatrix, NumberField, RatMatrix, Sign};

/// Minimal polynomial of the spectral radius of a primitive matrix, as a
/// number field, together with its degree.
pub fn perron_minimal_polynomial(m: &IntMatrix) -> Result<(FieldRef, usize)> {
    perron_minimal_polynomial_capped(m, DEFAULT_DEGREE_CAP)
}

pub fn perron_minimal_polynomial_capped(
    m: &IntMatrix,
    degree_cap: usize,
) -> Result<(FieldRef, usize)> {
    if !m.is_primitive()? {
        return Err(Error::domain("matrix is not primitive"));
    }
    let cp = m.charpoly()?;
    // The Perron root is the largest real root and is simple.
    let sqf = cp.squarefree_part();
    let top = roots::isolate_positive_roots(&sqf)
        .pop()
        .ok_or_else(|| Error::internal("primitive matrix without a positive eigenvalue"))?;
    let factors = factor::factor(&cp, degree_cap)?;
    let holds_root = |g: &crate::exact::IntPolynomial, iv: &Interval| {
        if iv.is_point() {
            g.sign_at(&iv.lo) == 0
        } else {
            roots::descartes_bound(g, &iv.lo, &iv.hi) == 1
        }
    };
    let (g, _) = factors
        .iter()
        .find(|(g, _)| holds_root(g, &top))
        .ok_or_else(|| Error::internal("no irreducible factor carries the Perron root"))?;
    let field = NumberField::with_isolation(g.clone(), top)?;
    let k = field.degree();
    Ok((field, k))
}

/// The field `Q(λ^m)` with generator `λ^m`, built from the minimal
/// polynomial of the power instead of a factorisation.
pub fn power_field(field: &FieldRef, m: usize) -> Result<FieldRef> {
    if m == 0 {
        return Err(Error::domain("power must be at least 1"));
    }
    if m == 1 {
        return Ok(field.clone());
    }
    let mu = FieldElement::generator(field).pow(m as i64)?;
    let mp = mu
        .integral_min_poly()
        .ok_or_else(|| Error::internal("power of an algebraic integer is not integral"))?;
    if let Some(q) = mu.as_rational() {
        return NumberField::with_isolation(
            mp,
            Interval {
                lo: q.clone(),
                hi: q,
            },
        );
    }
    let mut bits = 64;
    loop {
        let (lo, hi) = mu.enclosure(&crate::exact::pow2_inv(bits));
        if roots::descartes_bound(&mp, &lo, &hi) == 1 {
            return NumberField::with_isolation(mp, Interval { lo, hi });
        }
        if bits > 1 << 14 {
            return Err(Error::internal("cannot isolate a power of λ"));
        }
        bits *= 2;
    }
}

/// Perron eigenvalue and normalized positive eigenvector over `Q(λ)`.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub matrix: IntMatrix,
    pub field: FieldRef,
    pub k: usize,
    pub lambda: FieldElement,
    /// `x_1, …, x_s` with `A x = λ x` and `Σ x_i = 1`.
    pub eigvec: Vec<FieldElement>,
    /// `k × s`; column `i` holds the coordinates of `x_i`.
    pub coords_matrix: RatMatrix,
}

pub fn perron_data(a: &IntMatrix) -> Result<PerronData> {
    let (field, k) = perron_minimal_polynomial(a)?;
    perron_data_in(a, &field).map(|pd| PerronData { k, ..pd })
}

/// Perron data with the field supplied by the caller (its generator must
/// be the spectral radius of `a`).
pub fn perron_data_in(a: &IntMatrix, field: &FieldRef) -> Result<PerronData> {
    if !a.is_square() {
        return Err(Error::dim("Perron data of a non-square matrix"));
    }
    let s = a.rows();
    let lambda = FieldElement::generator(field);
    let system: Vec<Vec<FieldElement>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let e = FieldElement::from_rational(
                        field,
                        BigRational::from_integer(a.get(i, j).clone()),
                    );
                    if i == j {
                        e.sub(&lambda)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let mut ns = field_nullspace(&system)?;
    if ns.len() != 1 {
        return Err(Error::internal(format!(
            "Perron eigenspace has dimension {} instead of 1",
            ns.len()
        )));
    }
    let v = ns.pop().expect("one vector");
    let total = v.iter().skip(1).fold(v[0].clone(), |acc, x| acc.add(x));
    let inv = total.inv()?;
    let eigvec: Vec<FieldElement> = v.iter().map(|x| x.mul(&inv)).collect();
    if let Some(i) = eigvec.iter().position(|x| x.sign() != Sign::Positive) {
        return Err(Error::internal(format!(
            "eigenvector entry {i} is not positive"
        )));
    }
    let coords_rows: Vec<Vec<BigRational>> = eigvec.iter().map(|x| x.coords().to_vec()).collect();
    let coords_matrix = RatMatrix::from_rows(coords_rows)?.transpose();
    Ok(PerronData {
        matrix: a.clone(),
        field: field.clone(),
        k: field.degree(),
        lambda,
        eigvec,
        coords_matrix,
    })
}

impl PerronData {
    /// Coordinates of the eigenvector entries, one vector per entry.
    pub fn coordinate_vectors(&self) -> Vec<Vec<BigRational>> {
        self.eigvec.iter().map(|x| x.coords().to_vec()).collect()
    }

    /// `A x - λ x`, entrywise; all zero for valid data.
    pub fn residual(&self) -> Vec<FieldElement> {
        let s = self.matrix.rows();
        (0..s)
            .map(|i| {
                let mut acc = FieldElement::zero(&self.field);
                for j in 0..s {
                    let a = BigRational::from_integer(self.matrix.get(i, j).clone());
                    acc = acc.add(&self.eigvec[j].scale(&a));
                }
                acc.sub(&self.lambda.mul(&self.eigvec[i]))
            })
            .collect()
    }
}

/// Multiplication by `λ` and by `λ^-1` on coordinates, and the dominant
/// eigenvector of the former.
#[derive(Clone, Debug)]
pub struct MultiplicationPair {
    pub c: IntMatrix,
    pub d: RatMatrix,
    /// Eigenvector of `C` for `λ`, first nonzero coordinate 1, flipped so
    /// that `⟨y1, n⟩ > 0`.
    pub y1: Vec<FieldElement>,
}

pub fn multiplication_matrices(field: &FieldRef) -> Result<MultiplicationPair> {
    if field.min_poly().coeff(0).is_zero() {
        return Err(Error::domain("λ = 0 has no inverse"));
    }
    let c = field.companion();
    let d = c.to_rational().inverse()?;
    let k = field.degree();
    let lambda = FieldElement::generator(field);
    let system: Vec<Vec<FieldElement>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let e = FieldElement::from_rational(
                        field,
                        BigRational::from_integer(c.get(i, j).clone()),
                    );
                    if i == j {
                        e.sub(&lambda)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let mut ns = field_nullspace(&system)?;
    if ns.len() != 1 {
        return Err(Error::internal(
            "eigenspace of C for λ is not one-dimensional",
        ));
    }
    let mut y1 = ns.pop().expect("one vector");
    let lead = y1
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .ok_or_else(|| Error::internal("zero eigenvector"))?
        .inv()?;
    y1 = y1.iter().map(|x| x.mul(&lead)).collect();
    if pairing(&y1)?.sign() == Sign::Negative {
        y1 = y1.iter().map(|x| x.neg()).collect();
    }
    Ok(MultiplicationPair { c, d, y1 })
}

/// `⟨y, n⟩ = Σ y_i λ^i` for a vector with entries in `Q(λ)`.
pub fn pairing(y: &[FieldElement]) -> Result<FieldElement> {
    let first = y.first().ok_or_else(|| Error::dim("empty vector"))?;
    let field = first.field();
    if y.len() != field.degree() {
        return Err(Error::dim("vector length differs from the field degree"));
    }
    let lambda = FieldElement::generator(field);
    let mut pw = FieldElement::one(field);
    let mut acc = FieldElement::zero(field);
    for yi in y {
        acc = acc.add(&yi.mul(&pw));
        pw = pw.mul(&lambda);
    }
    Ok(acc)
}

/// Coordinates of a field element in the basis `1, λ, …, λ^(k-1)`.
pub fn coordinates_of(e: &FieldElement) -> Vec<BigRational> {
    e.coords().to_vec()
}

/// Field element with the given coordinates.
pub fn embed(field: &FieldRef, v: &[BigRational]) -> Result<FieldElement> {
    FieldElement::new(field, v.to_vec())
}
