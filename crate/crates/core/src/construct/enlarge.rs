//! One more vertex without changing the clopen values: from `A` and a power
//! `A^k`, the `(s+1) × (s+1)` matrix with Perron eigenvector
//! `(x_1, …, x_s, λ - 1)` and eigenvalue `λ^k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::clopen::{groups_equal, lattice_of, GroupComparison};
use crate::error::{Error, Result};
use crate::exact::{FieldElement, IntMatrix};
use crate::perron::{perron_data, perron_data_in, power_field};

const POWER_CAP: usize = 4096;
const GROUP_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enlargement {
    pub matrix: IntMatrix,
    /// The new Perron eigenvalue is `λ^k`.
    pub k: usize,
}

/// Smallest `k >= 1` with `a^(k)_ij - (Σ_l a_lj - 1) >= 1` everywhere; the
/// block is bordered by a column of ones and the row
/// `Σ_i (a^(k+1)_ij - a^(k)_ij)`.
pub fn enlarge_matrix(a: &IntMatrix) -> Result<Enlargement> {
    if !a.is_primitive()? {
        return Err(Error::domain("matrix is not primitive"));
    }
    let s = a.rows();
    let shift: Vec<BigInt> = a.col_sums().into_iter().map(|c| c - 1).collect();
    let mut p = a.clone();
    for k in 1..=POWER_CAP {
        let ok = (0..s).all(|i| (0..s).all(|j| p.get(i, j) - &shift[j] >= BigInt::one()));
        if ok {
            let next = p.mul(a)?;
            let (sums_k, sums_k1) = (p.col_sums(), next.col_sums());
            let mut m = IntMatrix::zeros(s + 1, s + 1);
            for i in 0..s {
                for j in 0..s {
                    m.set(i, j, p.get(i, j) - &shift[j]);
                }
                m.set(i, s, BigInt::one());
            }
            for j in 0..s {
                m.set(s, j, &sums_k1[j] - &sums_k[j]);
            }
            return Ok(Enlargement { matrix: m, k });
        }
        p = p.mul(a)?;
    }
    Err(Error::cap(format!("no admissible power up to {POWER_CAP}")))
}

/// Repeated enlargement until the matrix has `target` rows.
pub fn enlarge_to_size(a: &IntMatrix, target: usize) -> Result<Vec<Enlargement>> {
    if target < a.rows() {
        return Err(Error::domain("target size below the current size"));
    }
    let mut out: Vec<Enlargement> = Vec::new();
    let mut cur = a.clone();
    while cur.rows() < target {
        let e = enlarge_matrix(&cur)?;
        cur = e.matrix.clone();
        out.push(e);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnlargeCertificate {
    pub primitive: bool,
    /// `A_1 y = λ^k y` for `y = (x_1, …, x_s, λ - 1)`.
    pub eigen_identity: bool,
    pub groups: GroupComparison,
}

impl EnlargeCertificate {
    pub fn all_pass(&self) -> bool {
        self.primitive && self.eigen_identity && matches!(self.groups, GroupComparison::Equal(_))
    }
}

pub fn certify_enlargement(a: &IntMatrix, e: &Enlargement) -> Result<EnlargeCertificate> {
    let pd = perron_data(a)?;
    let field = pd.field.clone();
    let lambda = FieldElement::generator(&field);
    let mut y = pd.eigvec.clone();
    y.push(lambda.sub(&FieldElement::one(&field)));
    let lk = lambda.pow(e.k as i64)?;
    let m = &e.matrix;
    let eigen_identity = m.rows() == y.len()
        && (0..m.rows()).all(|i| {
            let mut acc = FieldElement::zero(&field);
            for (j, yj) in y.iter().enumerate() {
                acc = acc.add(&yj.scale(&BigRational::from_integer(m.get(i, j).clone())));
            }
            acc == lk.mul(&y[i])
        });
    let primitive = m.is_primitive()?;
    let big = perron_data_in(m, &power_field(&field, e.k)?)?;
    let groups = groups_equal(&lattice_of(&pd)?, &lattice_of(&big)?, e.k, GROUP_CAP)?;
    Ok(EnlargeCertificate {
        primitive,
        eigen_identity,
        groups,
    })
}
