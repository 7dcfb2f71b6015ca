//! For a rational eigenvalue, the multisets of positive rationals summing to
//! 1 that generate `(1/q) Z` are finite in number: partitions of `q` with
//! coprime parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// Multisets `{q_i / q}` with positive integers `q_i`, `Σ q_i = q` and
/// `gcd(q_i) = 1`, each sorted ascending, listed in lexicographic order.
pub fn enumerate_rational_y(q: u32) -> Vec<Vec<BigRational>> {
    if q == 0 {
        return Vec::new();
    }
    let mut parts = Vec::new();
    let mut out = Vec::new();
    partitions(q, 1, &mut parts, &mut out);
    out.sort();
    out.into_iter()
        .filter(|p: &Vec<u32>| p.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1)
        .map(|p| {
            p.into_iter()
                .map(|x| BigRational::new(BigInt::from(x), BigInt::from(q)))
                .collect()
        })
        .collect()
}

/// Nondecreasing partitions of `rest` with parts at least `min`.
fn partitions(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in min..=rest {
        if part != rest && rest - part < part {
            continue;
        }
        cur.push(part);
        partitions(rest - part, part, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Lattice;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_rational_y(1), vec![vec![r(1, 1)]]);
        assert_eq!(enumerate_rational_y(2), vec![vec![r(1, 2), r(1, 2)]]);
        let four = enumerate_rational_y(4);
        assert_eq!(
            four,
            vec![
                vec![r(1, 4), r(1, 4), r(1, 4), r(1, 4)],
                vec![r(1, 4), r(1, 4), r(1, 2)],
                vec![r(1, 4), r(3, 4)],
            ]
        );
    }

    #[test]
    fn counts_match_brute_force() {
        // Partitions of 6 with coprime parts: all 11 except (6), (3,3),
        // (2,2,2), (2,4).
        assert_eq!(enumerate_rational_y(6).len(), 7);
        for q in 1..=10u32 {
            let target = Lattice::from_generators(&[vec![r(1, q as i64)]]).unwrap();
            for y in enumerate_rational_y(q) {
                assert_eq!(y.iter().sum::<BigRational>(), r(1, 1));
                let gens: Vec<Vec<BigRational>> = y.iter().map(|v| vec![v.clone()]).collect();
                assert_eq!(Lattice::from_generators(&gens).unwrap(), target);
            }
        }
    }
}
