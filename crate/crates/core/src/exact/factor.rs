//! Factorization in `Z[t]`: square-free decomposition, Berlekamp modulo a
//! small prime, quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Degree beyond which square-free components are not factored.
pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Irreducible factorization of a nonzero polynomial: primitive factors
/// with positive leading coefficient and their multiplicities, sorted by
/// degree then coefficients. The content is dropped.
pub fn factor(f: &IntPolynomial, degree_cap: usize) -> Result<Vec<(IntPolynomial, usize)>> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part, degree_cap)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// Factors a primitive square-free polynomial of positive degree.
pub fn factor_squarefree(f: &IntPolynomial, degree_cap: usize) -> Result<Vec<IntPolynomial>> {
    let f = f.primitive_part();
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![f]);
    }
    if n > degree_cap {
        return Err(Error::cap(format!(
            "factorization of a degree-{n} component exceeds the degree cap {degree_cap}"
        )));
    }
    // Pull out the factor t first; it keeps the modular images simpler.
    let mut rest = f.clone();
    let mut found = Vec::new();
    if rest.coeff(0).is_zero() {
        found.push(IntPolynomial::monomial(1));
        rest = rest
            .div_exact(&IntPolynomial::monomial(1))
            .expect("t divides");
        if rest.degree() == Some(0) {
            return Ok(found);
        }
    }
    if rest.degree() == Some(1) {
        found.push(rest);
        return Ok(found);
    }
    let (p, modular) = choose_prime(&rest)?;
    if modular.len() == 1 {
        found.push(rest);
        return Ok(found);
    }
    let lc = rest.leading();
    // Coefficients of lc * g for any factor g are bounded by |lc| 2^n ||f||_2.
    let norm = rest.norm_sq().sqrt() + BigInt::one();
    let bound = lc.abs() * (BigInt::one() << n) * norm;
    let target = bound * 2 + 1;
    let mut modulus = BigInt::from(p);
    let mut steps = 0;
    while modulus <= target {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = hensel_lift(&rest, p, &modular, steps);
    found.extend(recombine(&rest, lifted, &modulus));
    Ok(found)
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[t]; coefficient vectors lowest degree first, trimmed.

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_from_int(f: &IntPolynomial, p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k] * inv % p;
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k - db + j] = (r[k - db + j] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (fp_trim(q), fp_trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    let inv = fp_inv(*a.last().unwrap(), p);
    a.iter().map(|&c| c * inv % p).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        fp_monic(&a, p)
    }
}

/// `(s, t)` with `s a + t b = 1` for coprime `a`, `b`.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is a nonzero constant.
    let inv = fp_inv(r0[0], p);
    let scale = |v: &Fp| fp_trim(v.iter().map(|&c| c * inv % p).collect());
    (scale(&s0), scale(&t0))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// Berlekamp's algorithm for a monic square-free `f` over `F_p`.
fn berlekamp(f: &Fp, p: u64) -> Vec<Fp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Row i of Q is t^(i p) mod f.
    let mut q = vec![vec![0u64; n]; n];
    let xp = {
        let mut base: Fp = vec![0, 1];
        let mut acc: Fp = vec![1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_divrem(&fp_mul(&acc, &base, p), f, p).1;
            }
            base = fp_divrem(&fp_mul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        acc
    };
    let mut cur: Fp = vec![1];
    for row in q.iter_mut() {
        for (j, c) in cur.iter().enumerate() {
            row[j] = *c;
        }
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // Kernel of (Q - I)^T acting on row vectors: v (Q - I) = 0.
    // Transpose so that we solve M v = 0 with M = (Q - I)^T.
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut v = q[j][i];
            if i == j {
                v = (v + p - 1) % p;
            }
            m[i][j] = v;
        }
    }
    let kernel = fp_nullspace(m, p);
    let r = kernel.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    for v in kernel.iter() {
        let v = fp_trim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        // For fixed g, the gcds with v - s over all s partition g.
        let mut next = Vec::new();
        for g in factors {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            for s in 0..p {
                let h = fp_gcd(&g, &fp_sub(&v, &vec![s], p), p);
                if h.len() > 1 {
                    next.push(h);
                }
            }
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors.into_iter().map(|g| fp_monic(&g, p)).collect()
}

fn fp_nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = fp_inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[ri][fc]) % p;
            }
            v
        })
        .collect()
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Picks, among the first few good primes, the one giving the fewest
/// modular factors. Returns the monic modular factors.
fn choose_prime(f: &IntPolynomial) -> Result<(u64, Vec<Fp>)> {
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let pb = BigInt::from(p);
        if f.leading().mod_floor(&pb).is_zero() {
            continue;
        }
        let fp = fp_from_int(f, p);
        let d = fp_derivative(&fp, p);
        if d.is_empty() || fp_gcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let facs = berlekamp(&fp_monic(&fp, p), p);
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.ok_or_else(|| Error::cap("no suitable small prime for modular factorization"))
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z / m Z with symmetric residues.

fn zm_reduce(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_from_fp(a: &Fp) -> IntPolynomial {
    IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// Division with remainder by a monic polynomial over `Z / m Z`.
fn zm_divrem_monic(
    a: &IntPolynomial,
    b: &IntPolynomial,
    m: &BigInt,
) -> (IntPolynomial, IntPolynomial) {
    let db = b.degree().expect("nonzero divisor");
    let Some(da) = a.degree() else {
        return (IntPolynomial::zero(), IntPolynomial::zero());
    };
    if da < db {
        return (IntPolynomial::zero(), zm_reduce(a, m));
    }
    let mut r: Vec<BigInt> = a.coeffs().iter().map(|c| c.mod_floor(m)).collect();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (db..=da).rev() {
        let c = r[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            r[k - db + j] = (&r[k - db + j] - &c * bj).mod_floor(m);
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (IntPolynomial::new(q), IntPolynomial::new(r))
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` mod `m` to
/// the same identities mod `m^2`, with `h` monic.
fn hensel_step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    s: &IntPolynomial,
    t: &IntPolynomial,
    m: &BigInt,
) -> (IntPolynomial, IntPolynomial, IntPolynomial, IntPolynomial) {
    let m2 = m * m;
    let e = zm_reduce(&f.sub(&g.mul(h)), &m2);
    let (q, r) = zm_divrem_monic(&s.mul(&e), h, &m2);
    let g2 = zm_reduce(&g.add(&t.mul(&e)).add(&q.mul(g)), &m2);
    let h2 = zm_reduce(&h.add(&r), &m2);
    let b = zm_reduce(&s.mul(&g2).add(&t.mul(&h2)).sub(&IntPolynomial::one()), &m2);
    let (c, d) = zm_divrem_monic(&s.mul(&b), &h2, &m2);
    let s2 = zm_reduce(&s.sub(&d), &m2);
    let t2 = zm_reduce(&t.sub(&t.mul(&b)).sub(&c.mul(&g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod factors (mod p)` to modulus `p^(2^steps)`;
/// returned factors are monic.
fn hensel_lift(f: &IntPolynomial, p: u64, factors: &[Fp], steps: usize) -> Vec<IntPolynomial> {
    if factors.len() == 1 {
        let mut m = BigInt::from(p);
        for _ in 0..steps {
            m = &m * &m;
        }
        // The single monic factor is f / lc(f) modulo m.
        let inv = mod_inverse(&f.leading(), &m);
        return vec![zm_reduce(&f.scale(&inv), &m)];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let pb = BigInt::from(p);
    let lc_p = f.leading().mod_floor(&pb).to_u64().expect("reduced");
    let mut g_fp: Fp = vec![lc_p];
    for a in left {
        g_fp = fp_mul(&g_fp, a, p);
    }
    let mut h_fp: Fp = vec![1];
    for a in right {
        h_fp = fp_mul(&h_fp, a, p);
    }
    let (s_fp, t_fp) = fp_bezout(&g_fp, &h_fp, p);
    let (mut g, mut h) = (zm_from_fp(&g_fp), zm_from_fp(&h_fp));
    let (mut s, mut t) = (zm_from_fp(&s_fp), zm_from_fp(&t_fp));
    let mut m = pb;
    for _ in 0..steps {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let mut out = hensel_lift(&g, p, left, steps);
    out.extend(hensel_lift(&h, p, right, steps));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m / 2;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Combines lifted monic modular factors into true factors by trial
/// division over subsets of increasing size.
fn recombine(f: &IntPolynomial, mut lifted: Vec<IntPolynomial>, m: &BigInt) -> Vec<IntPolynomial> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in itertools::Itertools::combinations(0..lifted.len(), size) {
            let lc = f.leading();
            let mut g = IntPolynomial::constant(lc.clone());
            for &i in &subset {
                g = zm_reduce(&g.mul(&lifted[i]), m);
            }
            let cand = symmetric(&g, m).primitive_part();
            if let Some(q) = f.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                f = q.primitive_part();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn product(fs: &[(IntPolynomial, usize)]) -> IntPolynomial {
        fs.iter().fold(IntPolynomial::one(), |acc, (g, k)| {
            (0..*k).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn splits_quadratic_times_linear() {
        let f = p(&[1, -7, 1]).mul(&p(&[3, 1]));
        let fs = factor(&f, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fs, vec![(p(&[3, 1]), 1), (p(&[1, -7, 1]), 1)]);
    }

    #[test]
    fn irreducible_cubic_stays_whole() {
        let f = p(&[-46, -15, 3, 1]);
        let fs = factor(&f, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_product() {
        // (t^4 - 10t^2 + 1) splits into quadratics modulo every prime.
        let sd = p(&[1, 0, -10, 0, 1]);
        let other = p(&[-2, 0, 1]);
        let f = sd.mul(&other).mul(&p(&[5, 2]));
        let fs = factor(&f, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn repeated_factors_and_non_monic() {
        let f = p(&[-1, 2])
            .mul(&p(&[-1, 2]))
            .mul(&p(&[1, 1, 1]))
            .mul(&p(&[0, 1]));
        let fs = factor(&f, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(product(&fs), f);
        assert!(fs.contains(&(p(&[-1, 2]), 2)));
        assert!(fs.contains(&(p(&[0, 1]), 1)));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = p(&[-1, 0, 0, 0, 0, 1, 1]);
        assert!(matches!(factor(&f, 4), Err(Error::Capability(_))));
    }

    #[test]
    fn cyclotomic_product() {
        // t^12 - 1 = product of cyclotomic polynomials of orders 1,2,3,4,6,12.
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = p(&c);
        let fs = factor(&f, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), f);
    }
}
