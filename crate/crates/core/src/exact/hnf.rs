use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Full-rank lattice in `Q^k` in canonical form: `(1/denominator) * basis *
/// Z^k`, where `basis` is a lower-triangular integer matrix whose columns
/// generate the lattice, with positive diagonal and every entry left of a
/// diagonal entry reduced into `[0, diagonal)`.
///
/// Two generating sets give equal values iff they generate the same lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    denominator: BigInt,
    basis: IntMatrix,
}

impl Lattice {
    /// Canonical basis of the lattice generated by `vectors`.
    pub fn from_generators(vectors: &[Vec<BigRational>]) -> Result<Self> {
        let k = vectors.first().map_or(0, |v| v.len());
        if k == 0 {
            return Err(Error::Rank("no generators".into()));
        }
        if vectors.iter().any(|v| v.len() != k) {
            return Err(Error::dim("generators of different lengths"));
        }
        let d = vectors
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
                    .collect()
            })
            .collect();
        let h = row_hnf(rows, k)?;
        let basis = IntMatrix::from_rows(h)?.transpose();
        Ok(Lattice {
            denominator: d,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Integer basis matrix; columns are the basis vectors times the
    /// denominator.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Basis vectors as rational vectors.
    pub fn basis_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.dim())
            .map(|j| {
                self.basis
                    .col(j)
                    .into_iter()
                    .map(|x| BigRational::new(x, self.denominator.clone()))
                    .collect()
            })
            .collect()
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` lies in the
    /// lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigInt>>> {
        let k = self.dim();
        if v.len() != k {
            return Err(Error::dim("vector length does not match lattice dimension"));
        }
        let scaled: Vec<BigRational> = v
            .iter()
            .map(|x| x * BigRational::from_integer(self.denominator.clone()))
            .collect();
        if scaled.iter().any(|x| !x.is_integer()) {
            return Ok(None);
        }
        let target: Vec<BigInt> = scaled.into_iter().map(|x| x.to_integer()).collect();
        // Forward substitution on the lower-triangular basis.
        let mut z: Vec<BigInt> = Vec::with_capacity(k);
        for i in 0..k {
            let mut rest = target[i].clone();
            for (j, zj) in z.iter().enumerate() {
                rest -= self.basis.get(i, j) * zj;
            }
            let (q, r) = rest.div_rem(self.basis.get(i, i));
            if !r.is_zero() {
                return Ok(None);
            }
            z.push(q);
        }
        Ok(Some(z))
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `other ⊆ self`.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        for b in other.basis_vectors() {
            if !self.contains(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Volume of a fundamental domain: `det(basis) / denominator^k`.
    pub fn covolume(&self) -> BigRational {
        let det = (0..self.dim()).fold(BigInt::one(), |acc, i| acc * self.basis.get(i, i));
        BigRational::new(det, self.denominator.pow(self.dim() as u32))
    }
}

/// Row Hermite normal form of an integer matrix with `k` columns: the `k`
/// nonzero rows, upper triangular with positive pivots and entries above
/// each pivot in `[0, pivot)`.
fn row_hnf(mut rows: Vec<Vec<BigInt>>, k: usize) -> Result<Vec<Vec<BigInt>>> {
    let n = rows.len();
    for c in 0..k {
        let r = c;
        loop {
            let best = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else {
                return Err(Error::Rank(format!(
                    "generators span a space of dimension less than {k}"
                )));
            };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = rows[r].clone();
        for i in 0..r {
            let q = rows[i][c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
    }
    rows.truncate(k);
    Ok(rows)
}
