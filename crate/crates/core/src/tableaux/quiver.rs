//! The quiver on `Z/eZ` (or `Z` when `e = 0`) with edges `i -> i+1`.

use serde::Serialize;

/// How `i` relates to `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Edge {
    Equal,
    /// `i -> j`, i.e. `j = i + 1` and not `i = j + 1`.
    Forward,
    /// `i <- j`.
    Backward,
    /// `i <-> j`, only when `e = 2`.
    Double,
    None,
}

fn congruent(a: i64, b: i64, e: u32) -> bool {
    if e == 0 {
        a == b
    } else {
        (a - b).rem_euclid(e as i64) == 0
    }
}

pub fn edge(i: i64, j: i64, e: u32) -> Edge {
    if congruent(i, j, e) {
        return Edge::Equal;
    }
    let fwd = congruent(j, i + 1, e);
    let bwd = congruent(i, j + 1, e);
    match (fwd, bwd) {
        (true, true) => Edge::Double,
        (true, false) => Edge::Forward,
        (false, true) => Edge::Backward,
        _ => Edge::None,
    }
}

/// Cartan matrix entry `c_ij`.
pub fn cartan(i: i64, j: i64, e: u32) -> i64 {
    match edge(i, j, e) {
        Edge::Equal => 2,
        Edge::Forward | Edge::Backward => -1,
        Edge::Double => -2,
        Edge::None => 0,
    }
}

/// `(Lambda, alpha_i) = #{l : kappa_l = i mod e}`.
pub fn lambda_count(kappa: &[i64], i: i64, e: u32) -> usize {
    kappa.iter().filter(|&&k| congruent(k, i, e)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrices() {
        assert_eq!(cartan(0, 1, 2), -2);
        assert_eq!(cartan(1, 1, 2), 2);
        assert_eq!(cartan(0, 1, 3), -1);
        assert_eq!(cartan(1, 0, 3), -1);
        assert_eq!(cartan(0, 2, 4), 0);
        assert_eq!(cartan(3, 4, 0), -1);
        assert_eq!(cartan(3, 5, 0), 0);
        assert_eq!(edge(0, 1, 3), Edge::Forward);
        assert_eq!(edge(0, 2, 3), Edge::Backward);
        for e in [0, 2, 3, 4, 5] {
            for i in 0..5 {
                for j in 0..5 {
                    assert_eq!(cartan(i, j, e), cartan(j, i, e));
                }
            }
        }
    }
}
