//! Tableau degrees, the node sets entering `y^lam`, and diagonal sets.

use super::multipartition::{Multipartition, Node};
use super::tableau::{std_tableaux, StdTableau};

/// `#{addable i-nodes below A} - #{removable i-nodes below A}` in `mu`.
pub fn node_degree(mu: &Multipartition, a: &Node, kappa: &[i64], e: u32) -> i64 {
    let i = a.residue(kappa, e);
    let add = mu.addable_nodes().iter().filter(|n| *n > a && n.residue(kappa, e) == i).count() as i64;
    let rem = mu.removable_nodes().iter().filter(|n| *n > a && n.residue(kappa, e) == i).count() as i64;
    add - rem
}

/// `deg_e(t)`, by adding the entries one at a time.
pub fn tableau_degree(t: &StdTableau, kappa: &[i64], e: u32) -> i64 {
    (1..=t.size()).map(|m| node_degree(&t.restrict_shape(m), &t.node(m), kappa, e)).sum()
}

/// `deg_e(lam) = sum over Std(lam) of deg_e(t)`.
pub fn shape_degree(lam: &Multipartition, kappa: &[i64], e: u32) -> i64 {
    std_tableaux(lam).iter().map(|t| tableau_degree(t, kappa, e)).sum()
}

/// A bound past which `deg_e` no longer depends on `e`.
pub fn large_e_bound(n: usize, kappa: &[i64]) -> i64 {
    let mut m = n as i64;
    for a in kappa {
        for b in kappa {
            m = m.max(n as i64 + a - b);
        }
    }
    m
}

/// `Deg_p(lam) = sum_k deg_{p^k}(lam)`; the sum is truncated once `p^k`
/// exceeds the large-e bound, where the terms equal `deg_0(lam)` (zero
/// for separated charges).
pub fn defect_degree_p(lam: &Multipartition, kappa: &[i64], p: u32) -> i64 {
    let bound = large_e_bound(lam.size(), kappa);
    let mut total = 0;
    let mut q = p as i64;
    while q <= bound {
        total += shape_degree(lam, kappa, q as u32);
        q *= p as i64;
    }
    total
}

/// `Add_lam(r)`: addable `i_r`-nodes of `Shape(t^lam↓r)` below the node of
/// `r` in `t^lam`.
pub fn add_nodes(lam: &Multipartition, r: usize, kappa: &[i64], e: u32) -> Vec<Node> {
    let t = StdTableau::initial(lam);
    let a = t.node(r);
    let i = a.residue(kappa, e);
    t.restrict_shape(r)
        .addable_nodes()
        .into_iter()
        .filter(|n| *n > a && n.residue(kappa, e) == i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn two_box_degrees() {
        let row: StdTableau = "1,2".parse().unwrap();
        let col: StdTableau = "1/2".parse().unwrap();
        assert_eq!(tableau_degree(&row, &[0], 2), 1);
        assert_eq!(tableau_degree(&col, &[0], 2), 0);
        assert_eq!(tableau_degree(&row, &[0], 3), 0);
    }

    #[test]
    fn add_nodes_small() {
        // (1|1) with equal charges: the only node is the first box of component 2
        assert_eq!(add_nodes(&mp("(1|1)"), 1, &[0, 0], 3), vec![Node::new(2, 1, 1)]);
        // one-row partitions have no added nodes once e exceeds n
        for n in 1..=4 {
            let lam = Multipartition::new(vec![vec![n]]).unwrap();
            for r in 1..=n {
                assert!(add_nodes(&lam, r, &[0], n as u32 + 1).is_empty());
            }
        }
        // but row length e produces the node below the first box
        assert_eq!(add_nodes(&mp("(2)"), 2, &[0], 2), vec![Node::new(1, 2, 1)]);
    }
}
