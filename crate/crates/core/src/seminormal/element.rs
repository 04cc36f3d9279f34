//! Elements of the split semisimple algebra in a seminormal basis `f_st`.
//!
//! Products use `f_st f_uv = delta_tu gamma_t f_sv`, so they need the gamma
//! table of the system the element lives in.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse combination `sum a_st f_st`, keyed by tableau indices. Zero
/// coefficients are never stored, so equality is coefficientwise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), Scalar)>) -> Self {
        let mut e = Element::zero();
        for (k, v) in terms {
            e.add_term(k, &v);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, s: usize, t: usize) -> Option<&Scalar> {
        self.terms.get(&(s, t))
    }

    pub fn coeff(&self, s: usize, t: usize) -> Scalar {
        self.terms.get(&(s, t)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.terms.iter()
    }

    /// Terms `f_tv` with first index `t`.
    pub fn row(&self, t: usize) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.terms.range((t, 0)..=(t, usize::MAX))
    }

    pub fn add_term(&mut self, k: (usize, usize), v: &Scalar) {
        if v.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = &*old + v;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, v.clone());
            }
        }
    }

    pub fn set(&mut self, k: (usize, usize), v: Scalar) {
        if v.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(*k, v);
        }
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(*k, &-v);
        }
        r
    }

    pub fn neg(&self) -> Element {
        Element { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Element { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Swaps the two indices: the anti-involution fixing the basis.
    pub fn transpose(&self) -> Element {
        Element { terms: self.terms.iter().map(|(&(s, t), v)| ((t, s), v.clone())).collect() }
    }

    /// Product with structure constants `gamma`.
    pub fn mul(&self, o: &Element, gamma: &[Scalar]) -> Element {
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(s, t), a) in &self.terms {
            let mut rows = o.row(t).peekable();
            if rows.peek().is_none() {
                continue;
            }
            let ag = a * &gamma[t];
            for (&(_, v), b) in rows {
                let p = &ag * b;
                match acc.get_mut(&(s, v)) {
                    Some(x) => *x = &*x + &p,
                    None => {
                        acc.insert((s, v), p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Element { terms: acc }
    }

    /// Keeps only terms whose indices satisfy the predicate.
    pub fn filter(&self, f: impl Fn(usize, usize) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(k, _)| f(k.0, k.1)).map(|(k, v)| (*k, v.clone())).collect() }
    }

    /// First key where the two elements differ, with both coefficients.
    pub fn first_difference(&self, o: &Element) -> Option<((usize, usize), Scalar, Scalar)> {
        let d = self.sub(o);
        d.terms.keys().next().map(|&k| (k, self.coeff(k.0, k.1), o.coeff(k.0, k.1)))
    }
}
