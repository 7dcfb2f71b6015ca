//! Exact arithmetic: integer polynomials, factorization, real root
//! isolation, number fields with certified signs, matrices and lattices.

pub mod factor;
pub mod field;
pub mod hnf;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod roots;

pub use field::{FieldElement, FieldRef, NumberField, Sign};
pub use hnf::Lattice;
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `2^-bits`.
pub fn pow2_inv(bits: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Decimal expansion of `x` rounded half away from zero to `digits`
/// places.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let n = (scaled + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    let (int, frac) = n.div_rem(&scale);
    let sign = if x.is_negative() && !n.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Exact rational as `"p"` or `"p/q"`.
pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
