use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::multipartition::{Multipartition, Node};
use crate::Error;

/// A standard tableau: entries `1..=n` increasing along rows and down
/// columns of every component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdTableau {
    shape: Multipartition,
    /// `pos[k - 1]` is the node holding `k`.
    pos: Vec<Node>,
}

impl StdTableau {
    /// Builds a tableau from rows, one list of rows per component.
    pub fn from_rows(rows: Vec<Vec<Vec<usize>>>) -> Result<Self, Error> {
        let shape = Multipartition::new(rows.iter().map(|c| c.iter().map(|r| r.len()).collect()).collect())
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let n = shape.size();
        let mut pos = vec![None; n];
        for (l, comp) in rows.iter().enumerate() {
            for (r, row) in comp.iter().enumerate() {
                for (c, &k) in row.iter().enumerate() {
                    if k == 0 || k > n || pos[k - 1].is_some() {
                        return Err(Error::InvalidTableau(format!("entries must be 1..={n} without repeats")));
                    }
                    pos[k - 1] = Some(Node::new(l + 1, r + 1, c + 1));
                }
            }
        }
        let pos: Vec<Node> = pos.into_iter().map(|p| p.unwrap()).collect();
        let t = StdTableau { shape, pos };
        for (l, comp) in rows.iter().enumerate() {
            for (r, row) in comp.iter().enumerate() {
                for (c, &k) in row.iter().enumerate() {
                    let right = row.get(c + 1);
                    let down = comp.get(r + 1).and_then(|x| x.get(c));
                    if right.is_some_and(|&v| v < k) || down.is_some_and(|&v| v < k) {
                        return Err(Error::NotStandard(format!("{} at ({},{},{})", t, l + 1, r + 1, c + 1)));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Builds from the sequence of nodes holding `1, 2, ..., n`.
    pub fn from_positions(shape: Multipartition, pos: Vec<Node>) -> Result<Self, Error> {
        let mut rows: Vec<Vec<Vec<usize>>> =
            shape.components().iter().map(|p| p.iter().map(|&len| vec![0; len]).collect()).collect();
        if pos.len() != shape.size() {
            return Err(Error::InvalidTableau("wrong number of entries".into()));
        }
        for (k, node) in pos.iter().enumerate() {
            if !shape.contains(node) {
                return Err(Error::InvalidTableau(format!("node {node:?} outside {shape}")));
            }
            rows[node.l - 1][node.r - 1][node.c - 1] = k + 1;
        }
        StdTableau::from_rows(rows)
    }

    /// `t^lam`: entries entered along rows, components in order.
    pub fn initial(shape: &Multipartition) -> Self {
        StdTableau { shape: shape.clone(), pos: shape.nodes() }
    }

    /// `t_lam`: entries entered down columns, last component first.
    pub fn terminal(shape: &Multipartition) -> Self {
        let mut pos = vec![];
        for (l, p) in shape.components().iter().enumerate().rev() {
            let width = p.first().copied().unwrap_or(0);
            for c in 1..=width {
                for (r, &len) in p.iter().enumerate() {
                    if len >= c {
                        pos.push(Node::new(l + 1, r + 1, c));
                    }
                }
            }
        }
        StdTableau { shape: shape.clone(), pos }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.pos.len()
    }

    pub fn node(&self, k: usize) -> Node {
        self.pos[k - 1]
    }

    pub fn positions(&self) -> &[Node] {
        &self.pos
    }

    pub fn rows(&self) -> Vec<Vec<Vec<usize>>> {
        let mut rows: Vec<Vec<Vec<usize>>> =
            self.shape.components().iter().map(|p| p.iter().map(|&len| vec![0; len]).collect()).collect();
        for (k, node) in self.pos.iter().enumerate() {
            rows[node.l - 1][node.r - 1][node.c - 1] = k + 1;
        }
        rows
    }

    /// Shape of the subtableau holding `1..=m`.
    pub fn restrict_shape(&self, m: usize) -> Multipartition {
        let mut comps: Vec<Vec<usize>> = vec![vec![]; self.shape.level()];
        for node in &self.pos[..m] {
            let p = &mut comps[node.l - 1];
            if p.len() < node.r {
                p.resize(node.r, 0);
            }
            p[node.r - 1] += 1;
        }
        Multipartition::new(comps).expect("restriction of a standard tableau")
    }

    /// `t (r, r+1)` if it is standard.
    pub fn swap(&self, r: usize) -> Option<StdTableau> {
        let (a, b) = (self.pos[r - 1], self.pos[r]);
        // not standard iff r, r+1 share a row or a column
        if a.l == b.l && (a.r == b.r || a.c == b.c) {
            return None;
        }
        let mut pos = self.pos.clone();
        pos.swap(r - 1, r);
        Some(StdTableau { shape: self.shape.clone(), pos })
    }

    /// Dominance `self ⊵ other`: `Shape(self↓m) ⊵ Shape(other↓m)` for every m.
    pub fn dominates(&self, other: &StdTableau) -> bool {
        if self.size() != other.size() {
            return false;
        }
        (1..=self.size()).all(|m| self.restrict_shape(m).dominates(&other.restrict_shape(m)))
    }

    pub fn contents(&self, kappa: &[i64]) -> Vec<i64> {
        self.pos.iter().map(|n| n.content(kappa)).collect()
    }

    pub fn residues(&self, kappa: &[i64], e: u32) -> Vec<i64> {
        self.pos.iter().map(|n| n.residue(kappa, e)).collect()
    }

    /// One-line notation of `d(t)` where `t = t^lam d(t)`: position `k` holds
    /// the entry of `t` in the node where `t^lam` holds `k`.
    pub fn permutation(&self) -> Vec<usize> {
        let init = StdTableau::initial(&self.shape);
        let rows = self.rows();
        init.pos.iter().map(|n| rows[n.l - 1][n.r - 1][n.c - 1]).collect()
    }

    /// Canonical reduced word `r_1 ... r_k` with `d(t) = s_{r_1} ... s_{r_k}`,
    /// extracting the smallest left descent each time.
    pub fn reduced_word(&self) -> Vec<usize> {
        reduced_word(&self.permutation())
    }

    /// Length of `d(t)`.
    pub fn length(&self) -> usize {
        inversions(&self.permutation())
    }
}

pub fn inversions(w: &[usize]) -> usize {
    let mut k = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                k += 1;
            }
        }
    }
    k
}

pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut word = vec![];
    while let Some(r) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
        word.push(r + 1);
        w.swap(r, r + 1);
    }
    word
}

/// Reduced word built from the largest descent each time; used to
/// cross-check path independence.
pub fn reduced_word_largest_first(w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut word = vec![];
    while let Some(r) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]) {
        word.push(r + 1);
        w.swap(r, r + 1);
    }
    word
}

/// Bruhat order `u <= w` via the sorted-prefix criterion.
pub fn bruhat_le(u: &[usize], w: &[usize]) -> bool {
    (1..=u.len()).all(|k| {
        let mut a = u[..k].to_vec();
        let mut b = w[..k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(x, y)| x <= y)
    })
}

/// All standard tableaux of a shape, in a total order refining dominance
/// with `t^lam` first and `t_lam` last.
pub fn std_tableaux(shape: &Multipartition) -> Vec<StdTableau> {
    let n = shape.size();
    let mut out = vec![];
    let mut pos = vec![Node::new(0, 0, 0); n];
    fill(shape, shape, n, &mut pos, &mut out);
    out.sort_by_cached_key(|t| std::cmp::Reverse(linear_key(t)));
    out
}

fn fill(full: &Multipartition, rest: &Multipartition, m: usize, pos: &mut Vec<Node>, out: &mut Vec<StdTableau>) {
    if m == 0 {
        out.push(StdTableau { shape: full.clone(), pos: pos.clone() });
        return;
    }
    for node in rest.removable_nodes() {
        pos[m - 1] = node;
        fill(full, &rest.without_node(&node), m - 1, pos, out);
    }
}

/// Key whose order is a linear extension of tableau dominance.
pub fn linear_key(t: &StdTableau) -> Vec<usize> {
    let n = t.size();
    let mut key = Vec::with_capacity(n * n * t.shape().level());
    for m in 1..=n {
        key.extend(t.restrict_shape(m).partial_sums(n));
    }
    key
}

impl fmt::Display for StdTableau {
    /// Rows separated by `/`, components by `|`, empty components as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows()
            .iter()
            .map(|comp| {
                if comp.is_empty() {
                    "-".into()
                } else {
                    comp.iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                        .collect::<Vec<_>>()
                        .join("/")
                }
            })
            .collect();
        write!(f, "{}", comps.join("|"))
    }
}

impl Serialize for StdTableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for StdTableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidTableau(format!("cannot parse '{s}'"));
        let mut rows = vec![];
        for comp in s.trim().split('|') {
            let comp = comp.trim();
            let mut crow = vec![];
            if !(comp.is_empty() || comp == "-") {
                for row in comp.split('/') {
                    let entries: Result<Vec<usize>, _> = row.split(',').map(|x| x.trim().parse::<usize>()).collect();
                    crow.push(entries.map_err(|_| bad())?);
                }
            }
            rows.push(crow);
        }
        StdTableau::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn hook_count(p: &[usize]) -> usize {
        // hook length formula as an independent count
        let n: usize = p.iter().sum();
        let mut denom = 1usize;
        for (r, &len) in p.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = p[r + 1..].iter().filter(|&&x| x > c).count();
                denom *= arm + leg + 1;
            }
        }
        (1..=n).product::<usize>() / denom
    }

    #[test]
    fn counts_match_hook_formula() {
        for n in 1..=6 {
            for lam in Multipartition::all(n, 1) {
                assert_eq!(std_tableaux(&lam).len(), hook_count(&lam.components()[0]), "{lam}");
            }
        }
    }

    #[test]
    fn extremes_and_order() {
        for lam in Multipartition::all(4, 2) {
            let tabs = std_tableaux(&lam);
            assert_eq!(tabs[0], StdTableau::initial(&lam));
            assert_eq!(*tabs.last().unwrap(), StdTableau::terminal(&lam));
            for (i, s) in tabs.iter().enumerate() {
                assert!(tabs[0].dominates(s));
                assert!(s.dominates(tabs.last().unwrap()));
                for t in &tabs[i + 1..] {
                    assert!(!t.dominates(s) || t == s);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let t: StdTableau = "1,2/3|4|-".parse().unwrap();
        assert_eq!(t.to_string(), "1,2/3|4|-");
        assert_eq!(t.shape(), &mp("(2,1|1|-)"));
        assert!("2,1".parse::<StdTableau>().is_err());
        assert!("1,2/4,3".parse::<StdTableau>().is_err());
    }

    #[test]
    fn reduced_words() {
        let t: StdTableau = "3|2|1".parse().unwrap();
        assert_eq!(t.permutation(), vec![3, 2, 1]);
        assert_eq!(t.reduced_word(), vec![1, 2, 1]);
        assert_eq!(t.length(), 3);
        let init = StdTableau::initial(t.shape());
        // applying the word to t^lam recovers t
        let mut cur = init;
        for r in t.reduced_word() {
            cur = cur.swap(r).unwrap();
        }
        assert_eq!(cur, t);
    }

    #[test]
    fn terminal_tableau() {
        let lam = mp("(2,1|1)");
        assert_eq!(StdTableau::terminal(&lam).to_string(), "2,4/3|1");
    }
}
