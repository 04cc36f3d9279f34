//! All standard tableaux of a fixed size, level and charge, with the data
//! every later computation looks up by index.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use super::degree::tableau_degree;
use super::multipartition::Multipartition;
use super::quiver::edge;
use super::quiver::Edge;
use super::tableau::{linear_key, std_tableaux, StdTableau};
use crate::Error;

#[derive(Clone, Debug)]
pub struct TabData {
    pub tab: StdTableau,
    pub shape: usize,
    /// `c_k(t)` for `k = 1..=n` (index `k - 1`).
    pub contents: Vec<i64>,
    /// Residues `i_k`, as smallest non-negative representatives when `e > 0`.
    pub residues: Vec<i64>,
    /// Component of each entry, 1-based.
    pub comps: Vec<usize>,
    /// `swap[r - 1]` is the index of `t (r, r+1)` when standard.
    pub swap: Vec<Option<usize>>,
    pub degree: i64,
    /// Position in a total order refining dominance (larger = more dominant).
    pub rank: usize,
    key: Vec<usize>,
}

impl TabData {
    /// `rho_r(t) = c_r(t) - c_{r+1}(t)`.
    pub fn rho(&self, r: usize) -> i64 {
        self.contents[r - 1] - self.contents[r]
    }

    pub fn content(&self, k: usize) -> i64 {
        self.contents[k - 1]
    }

    pub fn residue(&self, k: usize) -> i64 {
        self.residues[k - 1]
    }
}

#[derive(Clone, Debug)]
pub struct Combinatorics {
    pub n: usize,
    pub kappa: Vec<i64>,
    pub e: u32,
    pub shapes: Vec<Multipartition>,
    pub tabs: Vec<TabData>,
    shape_ranges: Vec<Range<usize>>,
    by_residue: BTreeMap<Vec<i64>, Vec<usize>>,
}

impl Combinatorics {
    pub fn new(n: usize, kappa: &[i64], e: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        if kappa.is_empty() {
            return Err(Error::Config("level must be positive".into()));
        }
        let shapes = Multipartition::all(n, kappa.len());
        let mut tabs = vec![];
        let mut shape_ranges = vec![];
        for (si, lam) in shapes.iter().enumerate() {
            let start = tabs.len();
            for t in std_tableaux(lam) {
                let contents = t.contents(kappa);
                let residues = t.residues(kappa, e);
                let comps = t.positions().iter().map(|p| p.l).collect();
                let degree = tableau_degree(&t, kappa, e);
                let key = linear_key(&t);
                tabs.push(TabData { tab: t, shape: si, contents, residues, comps, swap: vec![], degree, rank: 0, key });
            }
            shape_ranges.push(start..tabs.len());
        }
        let lookup: BTreeMap<String, usize> = tabs.iter().enumerate().map(|(i, d)| (d.tab.to_string(), i)).collect();
        for i in 0..tabs.len() {
            let swaps = (1..n)
                .map(|r| tabs[i].tab.swap(r).map(|s| lookup[&s.to_string()]))
                .collect();
            tabs[i].swap = swaps;
        }
        let mut order: Vec<usize> = (0..tabs.len()).collect();
        order.sort_by(|&a, &b| tabs[a].key.cmp(&tabs[b].key));
        for (rank, &i) in order.iter().enumerate() {
            tabs[i].rank = rank;
        }
        let mut by_residue: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, d) in tabs.iter().enumerate() {
            by_residue.entry(d.residues.clone()).or_default().push(i);
        }
        Ok(Combinatorics { n, kappa: kappa.to_vec(), e, shapes, tabs, shape_ranges, by_residue })
    }

    pub fn level(&self) -> usize {
        self.kappa.len()
    }

    pub fn len(&self) -> usize {
        self.tabs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tabs.is_empty()
    }

    pub fn shape_range(&self, s: usize) -> Range<usize> {
        self.shape_ranges[s].clone()
    }

    pub fn shape_index(&self, lam: &Multipartition) -> Option<usize> {
        self.shapes.iter().position(|m| m == lam)
    }

    /// Index of `t^lam`.
    pub fn initial(&self, s: usize) -> usize {
        self.shape_ranges[s].start
    }

    pub fn index_of(&self, t: &StdTableau) -> Option<usize> {
        let s = self.shape_index(t.shape())?;
        self.shape_range(s).find(|&i| &self.tabs[i].tab == t)
    }

    /// Tableau dominance `a ⊵ b`.
    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.tabs[a].key.iter().zip(&self.tabs[b].key).all(|(x, y)| x >= y)
    }

    pub fn strictly_dominates(&self, a: usize, b: usize) -> bool {
        a != b && self.dominates(a, b)
    }

    /// Dominance restricted to tableaux with equal residue sequences.
    pub fn gamma_dominates(&self, a: usize, b: usize) -> bool {
        self.tabs[a].residues == self.tabs[b].residues && self.dominates(a, b)
    }

    /// Residue sequences `i` with `Std(i)` nonempty.
    pub fn residue_sequences(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.by_residue.keys()
    }

    /// `Std(i)`.
    pub fn std_of(&self, i: &[i64]) -> &[usize] {
        self.by_residue.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn edge(&self, i: i64, j: i64) -> Edge {
        edge(i, j, self.e)
    }

    /// Smallest non-negative representative `î` (the residue itself).
    pub fn hat(&self, i: i64) -> i64 {
        i
    }

    /// `D_r(i) = {c_r(t) - î_r : t in Std(i)}`.
    pub fn diagonal_set(&self, i: &[i64], r: usize) -> BTreeSet<i64> {
        self.std_of(i).iter().map(|&t| self.tabs[t].content(r) - self.hat(i[r - 1])).collect()
    }

    /// Every content value met by an entry of a standard tableau.
    pub fn all_contents(&self) -> BTreeSet<i64> {
        self.tabs.iter().flat_map(|d| d.contents.iter().copied()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_formula() {
        // sum |Std(lam)|^2 = l^n n!
        for (n, l) in [(1usize, 1usize), (3, 1), (5, 1), (2, 2), (4, 2), (3, 3)] {
            let kappa: Vec<i64> = (0..l).map(|k| 10 * (l - k) as i64).collect();
            let c = Combinatorics::new(n, &kappa, 3).unwrap();
            let total: usize = (0..c.shapes.len()).map(|s| c.shape_range(s).len().pow(2)).sum();
            let fact: usize = (1..=n).product();
            assert_eq!(total, l.pow(n as u32) * fact, "n={n} l={l}");
        }
    }

    #[test]
    fn rank_refines_dominance() {
        let c = Combinatorics::new(4, &[5, 0], 2).unwrap();
        for a in 0..c.len() {
            for b in 0..c.len() {
                if c.strictly_dominates(a, b) {
                    assert!(c.tabs[a].rank > c.tabs[b].rank);
                }
                assert_eq!(c.dominates(a, b), c.tabs[a].tab.dominates(&c.tabs[b].tab));
            }
        }
    }

    #[test]
    fn diagonal_sets() {
        let c = Combinatorics::new(2, &[0], 2).unwrap();
        // (2) has contents 0,1 and (1,1) has 0,-1; both have residues (0,1)
        assert_eq!(c.diagonal_set(&[0, 1], 2), [-2, 0].into_iter().collect());
        assert_eq!(c.diagonal_set(&[0, 1], 1), [0].into_iter().collect());
        let c = Combinatorics::new(3, &[0], 5).unwrap();
        for i in c.residue_sequences() {
            for r in 1..=3 {
                assert_eq!(c.diagonal_set(i, r).len(), 1);
            }
        }
    }

    mod props {
        use super::*;
        use crate::tableaux::{residue_of, tableau_degree};
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn indexing_invariants(n in 1usize..=4, kappa in prop::collection::vec(-4i64..6, 1..=2), e in 0u32..5) {
                let e = if e == 1 { 0 } else { e };
                let c = Combinatorics::new(n, &kappa, e).unwrap();
                for (a, ta) in c.tabs.iter().enumerate() {
                    prop_assert_eq!(c.index_of(&ta.tab), Some(a));
                    prop_assert_eq!(ta.degree, tableau_degree(&ta.tab, &kappa, e));
                    for k in 0..n {
                        prop_assert_eq!(ta.residues[k], residue_of(ta.contents[k], e));
                    }
                    for r in 1..n {
                        if let Some(b) = ta.swap[r - 1] {
                            prop_assert_eq!(c.tabs[b].swap[r - 1], Some(a));
                            prop_assert_eq!(c.tabs[b].contents[r - 1], ta.contents[r]);
                        }
                    }
                    for b in 0..c.len() {
                        if c.strictly_dominates(a, b) {
                            prop_assert!(ta.rank > c.tabs[b].rank);
                        }
                        if c.gamma_dominates(a, b) {
                            prop_assert!(c.dominates(a, b));
                            prop_assert_eq!(&ta.residues, &c.tabs[b].residues);
                        }
                    }
                }
            }
        }
    }
}
