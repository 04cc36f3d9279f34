//! Murphy basis vectors of cell modules in seminormal coordinates.

use crate::scalar::Scalar;
use crate::seminormal::{GammaSeed, SeminormalSystem, SystemKind};
use crate::tableaux::reduced_word;
use crate::Error;

/// `m_t = sum_v a_{t,v} f_v` inside one cell module.
#[derive(Clone, Debug, PartialEq)]
pub struct MurphyVector {
    pub tab: usize,
    /// Dense over the shape, indexed by `v - start`.
    pub coords: Vec<Scalar>,
}

/// `m_t = f_{t^lam} T_{d(t)}`, applying the canonical reduced word letter
/// by letter in the cell module.
pub fn murphy_coords(sys: &SeminormalSystem, shape: usize) -> Result<Vec<MurphyVector>, Error> {
    if sys.kind() != SystemKind::Murphy || sys.seed() != GammaSeed::Murphy {
        return Err(Error::FlavorMismatch(format!(
            "Murphy vectors need the Murphy system with the Murphy seed, not {} / {:?}",
            sys.kind(),
            sys.seed()
        )));
    }
    let comb = sys.comb();
    let range = comb.shape_range(shape);
    let dim = range.len();
    let mats: Vec<Vec<Vec<Scalar>>> = (1..sys.n()).map(|r| sys.specht_matrix(shape, &sys.t_gen(r))).collect();
    let init = comb.initial(shape) - range.start;
    let mut out = Vec::with_capacity(dim);
    for t in range.clone() {
        let mut v = vec![Scalar::zero(); dim];
        v[init] = Scalar::one();
        for r in reduced_word(&comb.tabs[t].tab.permutation()) {
            let m = &mats[r - 1];
            let mut w = vec![Scalar::zero(); dim];
            for (i, a) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (j, b) in m[i].iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                    w[j] = &w[j] + &(a * b);
                }
            }
            v = w;
        }
        out.push(MurphyVector { tab: t, coords: v });
    }
    Ok(out)
}

/// `<u, w> = sum_v u_v w_v gamma_v` for coordinate rows over one shape.
pub fn gram_matrix(sys: &SeminormalSystem, shape: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let start = sys.comb().shape_range(shape).start;
    let form = |a: &[Scalar], b: &[Scalar]| {
        let mut acc = Scalar::zero();
        for (v, (x, y)) in a.iter().zip(b).enumerate() {
            if !x.is_zero() && !y.is_zero() {
                acc = &acc + &(&(x * y) * sys.gamma(start + v));
            }
        }
        acc
    };
    rows.iter().map(|a| rows.iter().map(|b| form(a, b)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::murphy_generic_system;

    #[test]
    fn unitriangular_small() {
        for (n, kappa) in [(3usize, vec![0i64]), (4, vec![0]), (3, vec![0, 0])] {
            let sys = murphy_generic_system(n, &kappa, 0).unwrap();
            let comb = sys.comb().clone();
            for shape in 0..comb.shapes.len() {
                let start = comb.shape_range(shape).start;
                for m in murphy_coords(&sys, shape).unwrap() {
                    assert!(m.coords[m.tab - start].is_one());
                    for (k, a) in m.coords.iter().enumerate() {
                        if !a.is_zero() {
                            assert!(comb.dominates(start + k, m.tab), "{} has support off the dominance cone", comb.tabs[m.tab].tab);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_row_form() {
        let sys = murphy_generic_system(2, &[0], 0).unwrap();
        let shape = sys.comb().shape_index(&"(2)".parse().unwrap()).unwrap();
        let m = murphy_coords(&sys, shape).unwrap();
        let rows: Vec<_> = m.into_iter().map(|v| v.coords).collect();
        assert_eq!(gram_matrix(&sys, shape, &rows), vec![vec![sys.scalars().quantum(2)]]);
    }
}
