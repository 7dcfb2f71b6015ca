use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::{self, LinearField};
use super::matrix::{IntMatrix, RatMatrix};
use super::poly::IntPolynomial;
use super::roots::{self, Interval};
use super::{decimal_string, pow2_inv};
use crate::error::{Error, Result};

/// Bits of precision the isolating interval carries after construction.
const INITIAL_BITS: usize = 64;

/// `Q(λ)` for a real algebraic integer `λ > 1` given by its monic minimal
/// polynomial and a rational interval isolating `λ` among the real roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    min_poly: IntPolynomial,
    isolation: Interval,
}

pub type FieldRef = Arc<NumberField>;

/// Three-valued sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_int(x: i8) -> Sign {
        match x {
            i8::MIN..=-1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl NumberField {
    /// Field generated by the largest real root of a monic irreducible
    /// polynomial; that root must exceed 1.
    pub fn largest_root(min_poly: IntPolynomial) -> Result<FieldRef> {
        check_monic(&min_poly)?;
        let ivs = roots::isolate_positive_roots(&min_poly);
        let iv = ivs
            .last()
            .cloned()
            .ok_or_else(|| Error::domain(format!("{min_poly} has no positive real root")))?;
        Self::with_isolation(min_poly, iv)
    }

    /// Field generated by the unique root of `min_poly` in the open interval
    /// `(lo, hi)`, or the point `lo` when `lo == hi`.
    pub fn with_isolation(min_poly: IntPolynomial, iv: Interval) -> Result<FieldRef> {
        check_monic(&min_poly)?;
        if iv.is_point() {
            if min_poly.sign_at(&iv.lo) != 0 {
                return Err(Error::domain("isolation point is not a root"));
            }
        } else if iv.lo >= iv.hi || roots::descartes_bound(&min_poly, &iv.lo, &iv.hi) != 1 {
            return Err(Error::domain("interval does not isolate a single root"));
        }
        let mut iv = roots::refine(&min_poly, &iv, &pow2_inv(INITIAL_BITS));
        if min_poly.degree() == Some(1) {
            let r = BigRational::from_integer(-min_poly.coeff(0));
            iv = Interval {
                lo: r.clone(),
                hi: r,
            };
        }
        let one = BigRational::one();
        if iv.hi <= one {
            return Err(Error::domain(format!(
                "the distinguished root of {min_poly} does not exceed 1"
            )));
        }
        if iv.lo <= one {
            if min_poly.sign_at(&one) == 0 {
                return Err(Error::domain(format!(
                    "the distinguished root of {min_poly} is 1"
                )));
            }
            if !iv.is_point() && min_poly.sign_at(&one) != min_poly.sign_at(&iv.hi) {
                // The root lies in (1, hi); bisection eventually moves lo past 1.
                iv.lo = one.clone();
                while iv.lo <= one && !iv.is_point() {
                    iv = tighten(&min_poly, &iv);
                }
            }
            if iv.lo <= one {
                return Err(Error::domain(format!(
                    "the distinguished root of {min_poly} does not exceed 1"
                )));
            }
        }
        Ok(Arc::new(NumberField {
            min_poly,
            isolation: iv,
        }))
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn isolation(&self) -> &Interval {
        &self.isolation
    }

    /// Whether `λ` is a unit of the ring of integers `Z[λ]` (constant
    /// term `±1`).
    pub fn is_unit(&self) -> bool {
        self.min_poly.coeff(0).abs().is_one()
    }

    /// Matrix of multiplication by `λ` on coordinates (column `i` holds the
    /// coordinates of `λ^(i+1)`).
    pub fn companion(&self) -> IntMatrix {
        let k = self.degree();
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            if i + 1 < k {
                m.set(i + 1, i, BigInt::one());
            }
            m.set(i, k - 1, -self.min_poly.coeff(i));
        }
        m
    }

    /// Isolating interval refined to width at most `width`.
    pub fn enclosure(&self, width: &BigRational) -> Interval {
        roots::refine(&self.min_poly, &self.isolation, width)
    }
}

/// One refinement round: doubles the bits of precision (at least one
/// bisection).
fn tighten(p: &IntPolynomial, iv: &Interval) -> Interval {
    let w = iv.width();
    let half = &w * BigRational::new(BigInt::one(), BigInt::from(2));
    roots::refine(p, iv, &(&w * &w).min(half))
}

fn check_monic(p: &IntPolynomial) -> Result<()> {
    if p.degree().unwrap_or(0) == 0 || !p.is_monic() {
        return Err(Error::domain(format!(
            "{p} is not a monic polynomial of positive degree"
        )));
    }
    Ok(())
}

/// Element `Σ c_i λ^i` of a number field, `0 <= i < k`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: FieldRef,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field.min_poly == other.field.min_poly
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &FieldRef, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::dim(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                field.degree()
            )));
        }
        Ok(FieldElement {
            field: field.clone(),
            coords,
        })
    }

    pub fn from_rational(field: &FieldRef, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = q;
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: &FieldRef) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator `λ`.
    pub fn generator(field: &FieldRef) -> Self {
        if field.degree() == 1 {
            return Self::from_rational(field, field.isolation.lo.clone());
        }
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[1] = BigRational::one();
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    /// Element with the given polynomial in `λ`, reduced.
    pub fn from_poly(field: &FieldRef, coeffs: &[BigRational]) -> Self {
        let mut e = FieldElement {
            field: field.clone(),
            coords: coeffs.to_vec(),
        };
        e.reduce();
        e
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coords[0].clone())
    }

    fn same_field(&self, o: &Self) {
        debug_assert_eq!(
            self.field.min_poly, o.field.min_poly,
            "elements of different fields"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let k = self.coords.len();
        let mut prod = vec![BigRational::zero(); 2 * k - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let mut e = FieldElement {
            field: self.field.clone(),
            coords: prod,
        };
        e.reduce();
        e
    }

    /// Reduces `coords` (any length) modulo the monic minimal polynomial.
    fn reduce(&mut self) {
        let k = self.field.degree();
        let mp = &self.field.min_poly;
        while self.coords.len() > k {
            let top = self.coords.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = self.coords.len() - k;
            for i in 0..k {
                let c = mp.coeff(i);
                if !c.is_zero() {
                    self.coords[shift + i] -= &top * BigRational::from_integer(c);
                }
            }
        }
        self.coords.resize(k, BigRational::zero());
    }

    /// Multiplication-by-self matrix on coordinates.
    pub fn mul_matrix(&self) -> RatMatrix {
        let k = self.field.degree();
        let mut basis = FieldElement::one(&self.field);
        let lam = FieldElement::generator(&self.field);
        let mut cols = Vec::with_capacity(k);
        for _ in 0..k {
            cols.push(self.mul(&basis).coords);
            basis = basis.mul(&lam);
        }
        RatMatrix::from_rows(cols).expect("square").transpose()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        let mut rhs = vec![BigRational::zero(); self.field.degree()];
        rhs[0] = BigRational::one();
        let coords = self.mul_matrix().solve(&rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power; negative exponents need a nonzero element.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = FieldElement::one(&self.field);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Minimal polynomial over `Q` of an algebraic integer element: the
    /// square-free part of the characteristic polynomial of its
    /// multiplication matrix. `None` if that matrix is not integral.
    pub fn integral_min_poly(&self) -> Option<IntPolynomial> {
        let m = self.mul_matrix().to_integer()?;
        let cp = m.charpoly().ok()?;
        Some(cp.squarefree_part())
    }

    /// Enclosure of the real value by interval Horner evaluation at an
    /// isolating interval for `λ` of width at most `width`.
    fn enclose_at(&self, iv: &Interval) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for c in self.coords.iter().rev() {
            let (nlo, nhi) = if !lo.is_negative() {
                (&lo * &iv.lo, &hi * &iv.hi)
            } else if !hi.is_positive() {
                (&lo * &iv.hi, &hi * &iv.lo)
            } else {
                (&lo * &iv.hi, &hi * &iv.hi)
            };
            lo = nlo + c;
            hi = nhi + c;
        }
        (lo, hi)
    }

    /// Certified sign of the real value.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut iv = self.field.isolation.clone();
        loop {
            let (lo, hi) = self.enclose_at(&iv);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            if iv.is_point() {
                // Exact evaluation: lo == hi is the value itself.
                return Sign::Zero;
            }
            iv = tighten(&self.field.min_poly, &iv);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    /// Rational interval of width at most `width` containing the value.
    pub fn enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        let mut iv = self.field.isolation.clone();
        loop {
            let (lo, hi) = self.enclose_at(&iv);
            if &(&hi - &lo) <= width || iv.is_point() {
                return (lo, hi);
            }
            iv = tighten(&self.field.min_poly, &iv);
        }
    }

    /// Decimal approximation with `digits` digits after the point, correct
    /// to within one unit in the last place.
    pub fn approx(&self, digits: usize) -> String {
        let w = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 2));
        let (lo, hi) = self.enclosure(&w);
        decimal_string(
            &((lo + hi) * BigRational::new(BigInt::one(), BigInt::from(2))),
            digits,
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(20).parse().unwrap_or(f64::NAN)
    }
}

impl LinearField for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn inv_ref(&self) -> Result<Self> {
        self.inv()
    }
}

/// Null space over the field of a matrix with field entries.
pub fn field_nullspace(m: &[Vec<FieldElement>]) -> Result<Vec<Vec<FieldElement>>> {
    linalg::nullspace(m)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
