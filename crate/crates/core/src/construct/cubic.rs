//! The cubic `t^3 + 3t^2 - 15t - 46`: its Perron root cannot be the
//! eigenvalue of a nonnegative 3 × 3 matrix (the trace would be -3), but
//! powers of its companion matrix become positive.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::Result;
use crate::exact::{FieldElement, FieldRef, IntMatrix, IntPolynomial, NumberField};
use crate::perron::multiplication_matrices;

const SCAN_CAP: usize = 200;
/// Exponent from which positivity is asserted.
pub const STATED_EXPONENT: usize = 49;

#[derive(Clone, Debug)]
pub struct NegativeTraceCubicReport {
    pub field: FieldRef,
    pub companion: IntMatrix,
    /// The companion equals `[[0,0,46],[1,0,15],[0,1,-3]]`.
    pub companion_matches: bool,
    /// `C^49 > 0` entrywise.
    pub positive_at_stated: bool,
    /// Smallest `M` with `C^M > 0`.
    pub minimal_exponent: Option<usize>,
    /// `(row, col, value)` of a non-positive entry of `C^(M-1)`.
    pub witness: Option<(usize, usize, BigInt)>,
    /// The dominant eigenvector `y_1` of `C` has positive coordinates.
    pub eigenvector_positive: bool,
    pub lambda_approx: String,
}

impl NegativeTraceCubicReport {
    pub fn all_pass(&self) -> bool {
        self.companion_matches
            && self.positive_at_stated
            && self.minimal_exponent.is_some_and(|m| m <= STATED_EXPONENT)
            && (self.minimal_exponent == Some(1) || self.witness.is_some())
            && self.eigenvector_positive
    }
}

pub fn verify_negative_trace_cubic() -> Result<NegativeTraceCubicReport> {
    let field = NumberField::largest_root(IntPolynomial::from_i64(&[-46, -15, 3, 1]))?;
    let companion = field.companion();
    let displayed = IntMatrix::from_i64(&[&[0, 0, 46], &[1, 0, 15], &[0, 1, -3]])?;
    let companion_matches = companion == displayed;
    let positive_at_stated = companion.pow(STATED_EXPONENT as u64)?.is_positive();
    let minimal_exponent = companion.eventual_positivity_exponent(SCAN_CAP)?;
    let witness = match minimal_exponent {
        Some(m) if m > 1 => {
            let prev = companion.pow((m - 1) as u64)?;
            let k = prev.rows();
            (0..k * k)
                .map(|e| (e / k, e % k))
                .find(|&(i, j)| !prev.get(i, j).is_positive())
                .map(|(i, j)| (i, j, prev.get(i, j).clone()))
        }
        _ => None,
    };
    let y1 = multiplication_matrices(&field)?.y1;
    let eigenvector_positive = y1.iter().all(FieldElement::is_positive);
    let lambda_approx = FieldElement::generator(&field).approx(6);
    Ok(NegativeTraceCubicReport {
        field,
        companion,
        companion_matches,
        positive_at_stated,
        minimal_exponent,
        witness,
        eigenvector_positive,
        lambda_approx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report() {
        let r = verify_negative_trace_cubic().unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.minimal_exponent, Some(49));
        assert_eq!(r.lambda_approx, "3.891671");
        let (i, j, v) = r.witness.clone().unwrap();
        assert!(!r.companion.pow(48).unwrap().get(i, j).is_positive());
        assert!(!v.is_positive());
    }
}
