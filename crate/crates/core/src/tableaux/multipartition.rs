use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::Error;

/// A node `(l, r, c)`: component, row, column, all 1-based. The derived
/// order is the lexicographic one; "below" means greater.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Node {
    pub l: usize,
    pub r: usize,
    pub c: usize,
}

impl Node {
    pub fn new(l: usize, r: usize, c: usize) -> Self {
        Node { l, r, c }
    }

    /// `kappa_l + c - r`.
    pub fn content(&self, kappa: &[i64]) -> i64 {
        kappa[self.l - 1] + self.c as i64 - self.r as i64
    }

    /// Content reduced modulo `e` (kept as an integer when `e = 0`).
    pub fn residue(&self, kappa: &[i64], e: u32) -> i64 {
        residue_of(self.content(kappa), e)
    }
}

pub fn residue_of(content: i64, e: u32) -> i64 {
    if e == 0 {
        content
    } else {
        content.rem_euclid(e as i64)
    }
}

/// An `l`-multipartition: a tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    comps: Vec<Vec<usize>>,
}

impl Multipartition {
    pub fn new(comps: Vec<Vec<usize>>) -> Result<Self, Error> {
        if comps.is_empty() {
            return Err(Error::InvalidMultipartition("level must be at least 1".into()));
        }
        let mut out = Vec::with_capacity(comps.len());
        for (l, mut p) in comps.into_iter().enumerate() {
            while p.last() == Some(&0) {
                p.pop();
            }
            if p.contains(&0) {
                return Err(Error::InvalidMultipartition(format!("zero part inside component {}", l + 1)));
            }
            if p.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidMultipartition(format!(
                    "component {} is not weakly decreasing: {:?}",
                    l + 1,
                    p
                )));
            }
            out.push(p);
        }
        Ok(Multipartition { comps: out })
    }

    pub fn empty(level: usize) -> Self {
        Multipartition { comps: vec![vec![]; level] }
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn level(&self) -> usize {
        self.comps.len()
    }

    pub fn size(&self) -> usize {
        self.comps.iter().flatten().sum()
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.l >= 1
            && node.l <= self.level()
            && node.r >= 1
            && node.c >= 1
            && self.comps[node.l - 1].get(node.r - 1).is_some_and(|&len| node.c <= len)
    }

    /// Nodes in lexicographic order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut v = vec![];
        for (l, p) in self.comps.iter().enumerate() {
            for (r, &len) in p.iter().enumerate() {
                for c in 1..=len {
                    v.push(Node::new(l + 1, r + 1, c));
                }
            }
        }
        v
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut v = vec![];
        for (l, p) in self.comps.iter().enumerate() {
            for r in 0..=p.len() {
                let len = p.get(r).copied().unwrap_or(0);
                let above = if r == 0 { usize::MAX } else { p[r - 1] };
                if len < above {
                    v.push(Node::new(l + 1, r + 1, len + 1));
                }
            }
        }
        v
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut v = vec![];
        for (l, p) in self.comps.iter().enumerate() {
            for (r, &len) in p.iter().enumerate() {
                let below = p.get(r + 1).copied().unwrap_or(0);
                if len > below {
                    v.push(Node::new(l + 1, r + 1, len));
                }
            }
        }
        v
    }

    pub fn with_node(&self, node: &Node) -> Multipartition {
        let mut comps = self.comps.clone();
        let p = &mut comps[node.l - 1];
        if node.r > p.len() {
            p.push(1);
        } else {
            p[node.r - 1] += 1;
        }
        Multipartition { comps }
    }

    pub fn without_node(&self, node: &Node) -> Multipartition {
        let mut comps = self.comps.clone();
        let p = &mut comps[node.l - 1];
        p[node.r - 1] -= 1;
        if p[node.r - 1] == 0 {
            p.pop();
        }
        Multipartition { comps }
    }

    /// Partial sums `sum_{k<l} |lam^(k)| + sum_{j<=i} lam^(l)_j` for
    /// `i = 1..=width`, component by component.
    pub fn partial_sums(&self, width: usize) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.level() * width);
        let mut before = 0;
        for p in &self.comps {
            let mut acc = before;
            for i in 0..width {
                acc += p.get(i).copied().unwrap_or(0);
                v.push(acc);
            }
            before += p.iter().sum::<usize>();
        }
        v
    }

    /// Dominance `self ⊵ other` (sizes may differ).
    pub fn dominates(&self, other: &Multipartition) -> bool {
        let w = self.max_len().max(other.max_len()).max(1);
        let a = self.partial_sums(w);
        let b = other.partial_sums(w);
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x >= y)
    }

    fn max_len(&self) -> usize {
        self.comps.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Compares two shapes in a fixed total order refining dominance.
    pub fn linear_cmp(&self, other: &Multipartition, width: usize) -> Ordering {
        self.partial_sums(width).cmp(&other.partial_sums(width))
    }

    /// All multipartitions of `n` with `level` components, most dominant
    /// first in a total order refining dominance.
    pub fn all(n: usize, level: usize) -> Vec<Multipartition> {
        let mut out = vec![];
        let mut cur = vec![];
        compositions(n, level, &mut cur, &mut out);
        out.sort_by(|a, b| b.linear_cmp(a, n.max(1)));
        out
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn compositions(n: usize, level: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Multipartition>) {
    if level == 1 {
        for p in partitions(n, n) {
            let mut comps = cur.clone();
            comps.push(p);
            out.push(Multipartition { comps });
        }
        return;
    }
    for k in (0..=n).rev() {
        for p in partitions(k, k) {
            cur.push(p);
            compositions(n - k, level - 1, cur, out);
            cur.pop();
        }
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|p| {
                if p.is_empty() {
                    "-".to_string()
                } else {
                    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts `(2,1|-|1)`; a part `a^k` stands for `k` copies of `a`.
impl FromStr for Multipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidMultipartition(format!("cannot parse '{s}'"));
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let mut comps = vec![];
        for comp in inner.split('|') {
            let comp = comp.trim();
            let mut parts = vec![];
            if !(comp.is_empty() || comp == "-") {
                for tok in comp.split(',') {
                    let tok = tok.trim();
                    let (base, rep) = match tok.split_once('^') {
                        Some((b, k)) => (b, k.parse::<usize>().map_err(|_| bad())?),
                        None => (tok, 1),
                    };
                    let v: usize = base.parse().map_err(|_| bad())?;
                    parts.extend(std::iter::repeat_n(v, rep));
                }
            }
            comps.push(parts);
        }
        Multipartition::new(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_known_values() {
        // number of l-multipartitions of n
        let expect = [(1, 1, 1), (2, 1, 2), (4, 1, 5), (5, 1, 7), (2, 2, 5), (3, 2, 10), (4, 2, 20), (3, 3, 22)];
        for (n, l, c) in expect {
            assert_eq!(Multipartition::all(n, l).len(), c, "n={n} l={l}");
        }
    }

    #[test]
    fn order_refines_dominance() {
        let all = Multipartition::all(4, 2);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!(b.dominates(a) && a != b), "{b} dominates {a} but comes later");
            }
        }
        assert_eq!(all[0], mp("(4|-)"));
        assert_eq!(all.last().unwrap(), &mp("(-|1,1,1,1)"));
    }

    #[test]
    fn dominance_examples() {
        assert!(mp("(2|-)").dominates(&mp("(1,1|-)")));
        assert!(mp("(1,1|-)").dominates(&mp("(1|1)")));
        assert!(!mp("(1|1)").dominates(&mp("(1,1|-)")));
        assert!(!mp("(3,3)").dominates(&mp("(4,1,1)")));
        assert!(!mp("(4,1,1)").dominates(&mp("(3,3)")));
    }

    #[test]
    fn parse_and_render() {
        let m = mp("(1|1^2|-)");
        assert_eq!(m.to_string(), "(1|1,1|-)");
        assert_eq!(m.size(), 3);
        assert!("(1,2)".parse::<Multipartition>().is_err());
        assert!("1,2".parse::<Multipartition>().is_err());
    }

    #[test]
    fn addable_and_removable() {
        let m = mp("(2,1|-)");
        assert_eq!(m.addable_nodes(), vec![Node::new(1, 1, 3), Node::new(1, 2, 2), Node::new(1, 3, 1), Node::new(2, 1, 1)]);
        assert_eq!(m.removable_nodes(), vec![Node::new(1, 1, 2), Node::new(1, 2, 1)]);
    }
}
