//! Gauss-Jordan elimination over any exact field, shared by rational
//! matrices and matrices over a number field.

use crate::error::{Error, Result};

/// Exact field operations; elements carry enough context to build their
/// own zero and one.
pub trait LinearField: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn inv_ref(&self) -> Result<Self>;
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<T: LinearField>(m: &mut [Vec<T>]) -> Result<Vec<usize>> {
    let rows = m.len();
    if rows == 0 {
        return Ok(Vec::new());
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv_ref()?;
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_elem() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[i][j].sub_ref(&f.mul_ref(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

pub fn rank<T: LinearField>(m: &[Vec<T>]) -> Result<usize> {
    let mut m = m.to_vec();
    Ok(rref(&mut m)?.len())
}

/// Basis of the right null space `{v : m v = 0}`.
pub fn nullspace<T: LinearField>(m: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let Some(first) = m.first().and_then(|r| r.first()).cloned() else {
        return Ok(Vec::new());
    };
    let cols = m[0].len();
    let mut a = m.to_vec();
    let pivots = rref(&mut a)?;
    let zero = first.zero_like();
    let one = first.one_like();
    let mut out = Vec::new();
    for fc in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[fc] = one.clone();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = zero.sub_ref(&a[ri][fc]);
        }
        out.push(v);
    }
    Ok(out)
}

/// Unique solution of the square system `m x = b`.
pub fn solve<T: LinearField>(m: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = m.len();
    if b.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::dim(
            "solve needs a square system matching the right-hand side",
        ));
    }
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug)?;
    if pivots.len() != n || pivots.last() == Some(&n) {
        return Err(Error::Arithmetic("singular system".into()));
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn inverse<T: LinearField>(m: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::dim("inverse needs a nonempty square matrix"));
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Arithmetic("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        let ns = nullspace(&m).unwrap();
        assert_eq!(ns, vec![vec![q(-2), q(1)]]);
        assert_eq!(rank(&m).unwrap(), 1);
    }

    #[test]
    fn solve_and_singular() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(solve(&m, &[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        let s = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve(&s, &[q(1), q(2)]).is_err());
        assert!(inverse(&s).is_err());
    }
}
