//! Charge vectors and the separation condition.

use crate::scalar::{LaurentPoly, Mode, ScalarMode};
use crate::Error;

/// `kappa_l - kappa_{l+1} >= n` for all `l` (strictly greater if `strict`).
pub fn is_separated(kappa: &[i64], n: usize, strict: bool) -> bool {
    let gap = n as i64 + strict as i64;
    kappa.windows(2).all(|w| w[0] - w[1] >= gap)
}

/// Adds multiples of `e` to earlier components until the gap condition
/// holds; the residues of `kappa` do not change. With `e = 0` the charge is
/// only checked.
pub fn normalize_charge(kappa: &[i64], n: usize, e: u32, strict: bool) -> Result<Vec<i64>, Error> {
    if kappa.is_empty() {
        return Err(Error::Config("empty charge".into()));
    }
    let gap = n as i64 + strict as i64;
    let mut k = kappa.to_vec();
    if e == 0 {
        return if is_separated(&k, n, strict) {
            Ok(k)
        } else {
            Err(Error::ChargeNotSeparating(format!("{kappa:?} with n = {n}")))
        };
    }
    for l in (0..k.len() - 1).rev() {
        while k[l] - k[l + 1] < gap {
            k[l] += e as i64;
        }
    }
    Ok(k)
}

/// `[n]! prod_{l<m} prod_{-n<d<n} [kappa_l - kappa_m + d]` as a Laurent
/// polynomial in `t`; separation holds when it is nonzero in the target.
pub fn separation_product(kappa: &[i64], n: usize) -> LaurentPoly {
    let radius = kappa.iter().map(|k| k.abs()).max().unwrap_or(0) * 2 + 2 * n as i64 + 2;
    let m = ScalarMode::new(Mode::GenericT, 0, radius).unwrap();
    let mut acc = m.quantum_factorial(n as i64);
    for l in 0..kappa.len() {
        for mm in l + 1..kappa.len() {
            for d in (1 - n as i64)..(n as i64) {
                acc = &acc * &m.quantum(kappa[l] - kappa[mm] + d);
            }
        }
    }
    LaurentPoly::from_ratfunc(&acc).expect("quantum integers are Laurent polynomials")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(normalize_charge(&[0, 0], 1, 2, false).unwrap(), vec![2, 0]);
        assert_eq!(normalize_charge(&[0, 1, 0], 3, 3, false).unwrap(), vec![9, 4, 0]);
        assert!(normalize_charge(&[0, 0], 2, 0, false).is_err());
        let k = normalize_charge(&[1, 0, 2], 4, 3, true).unwrap();
        assert!(is_separated(&k, 4, true));
        assert_eq!(k.iter().map(|x| x.rem_euclid(3)).collect::<Vec<_>>(), vec![1, 0, 2]);
    }

    #[test]
    fn separation_product_detects_collisions() {
        assert!(separation_product(&[0, 0], 2).is_zero());
        assert!(!separation_product(&[2, 0], 2).is_zero());
    }
}
