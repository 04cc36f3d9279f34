//! Fraction-free determinants.

use crate::scalar::{Poly, RatFunc};

/// Bareiss elimination over `K[x]`. Every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.divrem(&prev);
                debug_assert!(r.is_zero(), "inexact Bareiss step");
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).divrem(&a.gcd(b)).0.monic()
}

/// Determinant of a matrix of rational functions: each row is cleared of
/// denominators, the polynomial determinant is taken, and the cleared
/// factors are divided back out.
pub fn ratfunc_det(m: &[Vec<RatFunc>]) -> RatFunc {
    let mut cleared = Poly::one();
    let rows = m
        .iter()
        .map(|row| {
            let d = row.iter().fold(Poly::one(), |acc, c| lcm(&acc, c.den()));
            cleared = &cleared * &d;
            row.iter().map(|c| (c.num() * &d).divrem(c.den()).0).collect()
        })
        .collect();
    RatFunc::new(bareiss_det(rows), cleared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclo;
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        let p = |c: &[i64]| Poly::from_coeffs(c.iter().map(|&k| Cyclo::from_int(k)).collect());
        RatFunc::new(p(num), p(den))
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &[Vec<RatFunc>]) -> RatFunc {
        if m.is_empty() {
            return RatFunc::one();
        }
        let mut acc = RatFunc::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<RatFunc>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| c.clone()).collect())
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn needs_a_pivot_swap() {
        let m = vec![vec![rf(&[0], &[1]), rf(&[1], &[1])], vec![rf(&[0, 1], &[1]), rf(&[3], &[1])]];
        assert_eq!(ratfunc_det(&m), rf(&[0, -1], &[1]));
        assert_eq!(ratfunc_det(&[]), RatFunc::one());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn agrees_with_cofactor_expansion(
            entries in prop::collection::vec((prop::collection::vec(-3i64..4, 1..3), prop::collection::vec(-2i64..3, 1..3)), 9),
            n in 1usize..4,
        ) {
            let m: Vec<Vec<RatFunc>> = (0..n)
                .map(|i| (0..n).map(|j| {
                    let (a, b) = &entries[i * 3 + j];
                    let mut den = b.clone();
                    den.push(1);
                    rf(a, &den)
                }).collect())
                .collect();
            prop_assert_eq!(ratfunc_det(&m), cofactor_det(&m));
        }
    }
}
