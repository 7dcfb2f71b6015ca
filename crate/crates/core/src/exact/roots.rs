//! Real root isolation by Descartes' rule of signs and bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;

/// A closed rational interval. `lo == hi` encodes an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Upper bound on the number of roots of `f` in the open interval
/// `(a, b)`, exact when it is 0 or 1.
pub fn descartes_bound(f: &IntPolynomial, a: &BigRational, b: &BigRational) -> usize {
    // h(y) = f(a + (b - a) y) scaled to integers, then count variations of
    // (1 + y)^d h(1 / (1 + y)), whose positive roots correspond to (0, 1).
    let h = compose_affine(f, a, &(b - a));
    h.reverse().taylor_shift(&BigInt::one()).sign_variations()
}

/// Integer polynomial proportional to `f(a + w y)`.
fn compose_affine(f: &IntPolynomial, a: &BigRational, w: &BigRational) -> IntPolynomial {
    let d = f.degree().unwrap_or(0);
    // Rational coefficients of f(a + w y) by Horner.
    let mut acc: Vec<BigRational> = Vec::new();
    for c in f.coeffs().iter().rev() {
        // acc <- acc * (a + w y) + c
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, x) in acc.iter().enumerate() {
            next[i] += x * a;
            next[i + 1] += x * w;
        }
        next[0] += BigRational::from_integer(c.clone());
        acc = next;
    }
    acc.truncate(d + 1);
    let den = acc.iter().fold(BigInt::one(), |l, x| {
        num_integer::Integer::lcm(&l, x.denom())
    });
    IntPolynomial::new(
        acc.iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect(),
    )
}

/// Isolating intervals for the positive real roots of a square-free `f`,
/// sorted increasingly. Intervals are open except for exact points.
pub fn isolate_positive_roots(f: &IntPolynomial) -> Vec<Interval> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let bound = BigRational::from_integer(f.root_bound());
    let mut stack = vec![(BigRational::zero(), bound)];
    while let Some((a, b)) = stack.pop() {
        match descartes_bound(f, &a, &b) {
            0 => {}
            1 => out.push(Interval { lo: a, hi: b }),
            _ => {
                let mid = (&a + &b) * half();
                if f.sign_at(&mid) == 0 {
                    out.push(Interval {
                        lo: mid.clone(),
                        hi: mid.clone(),
                    });
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Bisects an open isolating interval of a simple root until its width is
/// at most `width`. Exact points are returned unchanged; an exact rational
/// root met at a midpoint collapses the interval to a point.
pub fn refine(f: &IntPolynomial, iv: &Interval, width: &BigRational) -> Interval {
    let mut iv = iv.clone();
    if iv.is_point() {
        return iv;
    }
    let mut s_lo = f.sign_at(&iv.lo);
    if s_lo == 0 {
        // An endpoint root cannot be the isolated one: the interval is open.
        s_lo = -f.sign_at(&iv.hi);
    }
    while &iv.width() > width {
        let mid = (&iv.lo + &iv.hi) * half();
        let s = f.sign_at(&mid);
        if s == 0 {
            return Interval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if s == s_lo {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    iv
}
