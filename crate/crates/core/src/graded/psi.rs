//! The integral psi-basis `psi_st = (psi_{d(s)})^⋄ y^lam f^lam psi_{d(t)}`
//! and expansion of arbitrary elements in it.

use std::collections::HashMap;
use std::sync::Arc;

use crate::klr::DeformedGenerators;
use crate::report::VerificationReport;
use crate::scalar::{Cyclo, Fp, Mode, Scalar};
use crate::seminormal::Element;
use crate::tableaux::{add_nodes, reduced_word, StdTableau};
use crate::Error;

pub type Pair = (usize, usize);

#[derive(Clone, Debug)]
pub struct PsiBasis {
    gens: Arc<DeformedGenerators>,
    /// Same-shape pairs sorted by `key`.
    pairs: Vec<Pair>,
    index: HashMap<Pair, usize>,
    elems: Vec<Element>,
    ylam: Vec<Element>,
    words: Vec<Vec<usize>>,
}

/// `y^lam f^lam` for shape index `shape`, normalized so that its
/// `f_{t^lam t^lam}` coefficient is exactly 1.
pub fn y_lambda_element(g: &DeformedGenerators, shape: usize) -> Element {
    let sys = g.system();
    let comb = sys.comb();
    let sm = sys.scalars();
    let lam = &comb.shapes[shape];
    let init = comb.initial(shape);
    let ilam = &comb.tabs[init].residues;
    let mut factors: Vec<(usize, Scalar, Scalar)> = vec![];
    for r in 1..=comb.n {
        let ir = comb.hat(ilam[r - 1]);
        for a in add_nodes(lam, r, &comb.kappa, comb.e) {
            let ca = a.content(&comb.kappa);
            // t^{-c_A} (L_r - [c_A]) f^lam = t^{î_r - c_A} (y_r - [c_A - î_r]) f^lam
            factors.push((r, sm.t_pow(ir - ca), sm.quantum(ca - ir)));
        }
    }
    let mut out = Element::zero();
    for &s in comb.std_of(ilam) {
        let mut v = Scalar::one();
        for (r, tp, q) in &factors {
            v = &v * &(tp * &(&sys.y_value(*r, s) - q));
        }
        out.add_term((s, s), &v.div(sys.gamma(s)));
    }
    out
}

impl PsiBasis {
    /// The basis for the canonical reduced words.
    pub fn new(gens: Arc<DeformedGenerators>) -> Self {
        Self::with_words(gens, |t| reduced_word(&t.permutation()))
    }

    /// The basis for reduced words chosen by `word`.
    pub fn with_words(gens: Arc<DeformedGenerators>, word: impl Fn(&StdTableau) -> Vec<usize>) -> Self {
        let sys = gens.system().clone();
        let comb = sys.comb().clone();
        let words: Vec<Vec<usize>> = comb.tabs.iter().map(|d| word(&d.tab)).collect();
        let ylam: Vec<Element> = (0..comb.shapes.len()).map(|s| y_lambda_element(&gens, s)).collect();
        let mut pairs = vec![];
        let mut elems = vec![];
        for shape in 0..comb.shapes.len() {
            let ilam = &comb.tabs[comb.initial(shape)].residues;
            let fl = gens.f(ilam);
            // a_t = y^lam f^lam psi_{d(t)}, b_s = f^lam psi_{d(s)}
            let mut a = vec![];
            let mut b = vec![];
            for t in comb.shape_range(shape) {
                let mut x = ylam[shape].clone();
                let mut z = fl.clone();
                for &r in &words[t] {
                    x = sys.mul(&x, gens.psi(r));
                    z = sys.mul(&z, gens.psi(r));
                }
                a.push(x);
                b.push(z.transpose());
            }
            let start = comb.shape_range(shape).start;
            for s in comb.shape_range(shape) {
                for t in comb.shape_range(shape) {
                    pairs.push((s, t));
                    // y^lam f^lam = f^lam y^lam f^lam
                    elems.push(sys.mul(&b[s - start], &a[t - start]));
                }
            }
        }
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        let key = |p: &Pair| (comb.tabs[p.0].rank + comb.tabs[p.1].rank, comb.tabs[p.0].rank, comb.tabs[p.1].rank);
        order.sort_by_key(|&k| key(&pairs[k]));
        let pairs: Vec<Pair> = order.iter().map(|&k| pairs[k]).collect();
        let elems: Vec<Element> = order.iter().map(|&k| elems[k].clone()).collect();
        let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        PsiBasis { gens, pairs, index, elems, ylam, words }
    }

    pub fn generators(&self) -> &Arc<DeformedGenerators> {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in an order refining pair dominance (least dominant first).
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn position(&self, p: Pair) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn element(&self, p: Pair) -> &Element {
        &self.elems[self.index[&p]]
    }

    pub fn word(&self, t: usize) -> &[usize] {
        &self.words[t]
    }

    pub fn y_lambda(&self, shape: usize) -> &Element {
        &self.ylam[shape]
    }

    /// `deg s + deg t`.
    pub fn degree(&self, p: Pair) -> i64 {
        let c = self.gens.system().comb();
        c.tabs[p.0].degree + c.tabs[p.1].degree
    }

    /// Pair dominance restricted to equal residue sequences, strict.
    pub fn pair_gamma_dominates(&self, a: Pair, b: Pair) -> bool {
        let c = self.gens.system().comb();
        a != b && c.gamma_dominates(a.0, b.0) && c.gamma_dominates(a.1, b.1)
    }

    /// Coefficients of `x` in the psi-basis, by unitriangular
    /// back-substitution from the least dominant position up.
    pub fn expand(&self, x: &Element) -> Result<Vec<(Pair, Scalar)>, Error> {
        let mut rest = x.clone();
        let mut out = vec![];
        let mut steps = 0;
        while !rest.is_zero() {
            steps += 1;
            if steps > self.len() {
                return Err(Error::NonTermination("psi expansion did not terminate".into()));
            }
            let (k, c) = rest
                .terms()
                .map(|(p, c)| (self.index[p], c.clone()))
                .min_by_key(|(k, _)| *k)
                .unwrap();
            rest = rest.sub(&self.elems[k].scale(&c));
            out.push((self.pairs[k], c));
        }
        out.sort_by_key(|(p, _)| self.index[p]);
        Ok(out)
    }
}

/// Image of a scalar of the local ring in its residue field.
#[derive(Clone, Debug, PartialEq)]
pub enum Residue {
    Cyclo(Cyclo),
    Fp(Fp),
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        match self {
            Residue::Cyclo(c) => c.is_zero(),
            Residue::Fp(f) => f.value() == 0,
        }
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Residue::Cyclo(c) => write!(f, "{c}"),
            Residue::Fp(x) => write!(f, "{x}"),
        }
    }
}

/// Reduction `O -> O/m`: `x = 0` in the cyclotomic mode, modulo `p` in the
/// degenerate mode.
pub fn reduce(g: &DeformedGenerators, s: &Scalar) -> Result<Residue, Error> {
    let sm = g.system().scalars();
    match sm.mode() {
        Mode::DegenerateP => {
            sm.residue_fp(s).map(Residue::Fp).map_err(|_| Error::NotPIntegral(sm.render(s)))
        }
        _ => sm.residue_cyclo(s).map(Residue::Cyclo).map_err(|_| Error::PoleAtSpecialization(sm.render(s))),
    }
}

impl PsiBasis {
    /// Nonzero coefficients of `x ⊗ 1` in the specialized psi-basis; an
    /// error when some coefficient is not in the local ring.
    pub fn expand_specialized(&self, x: &Element) -> Result<Vec<(Pair, Residue)>, Error> {
        let mut out = vec![];
        for (p, c) in self.expand(x)? {
            let r = reduce(&self.gens, &c)?;
            if !r.is_zero() {
                out.push((p, r));
            }
        }
        Ok(out)
    }

    pub fn render_pair(&self, p: Pair) -> String {
        let c = self.gens.system().comb();
        format!("({};{})", c.tabs[p.0].tab, c.tabs[p.1].tab)
    }
}

/// Unitriangularity, involution symmetry, `y^lam` shape and integrality.
pub fn verify_psi_basis(b: &PsiBasis) -> VerificationReport {
    let sys = b.generators().system().clone();
    let comb = sys.comb();
    let sm = sys.scalars();
    let mut rep = VerificationReport::new(format!("psi-basis (n={}, e={}, {} elements)", comb.n, comb.e, b.len()));
    for &p in b.pairs() {
        let el = b.element(p);
        let inst = b.render_pair(p);
        if el.coeff(p.0, p.1).is_one() {
            rep.pass("leading coefficient 1", inst.clone());
        } else {
            rep.fail("leading coefficient 1", inst.clone(), sm.render(&el.coeff(p.0, p.1)));
        }
        match el.terms().find(|(&q, _)| q != p && !b.pair_gamma_dominates(q, p)) {
            None => rep.pass("support above in Gamma-dominance", inst.clone()),
            Some((&q, _)) => rep.fail("support above in Gamma-dominance", inst.clone(), b.render_pair(q)),
        }
        if &el.transpose() == b.element((p.1, p.0)) {
            rep.pass("involution swaps the pair", inst.clone());
        } else {
            rep.fail("involution swaps the pair", inst.clone(), "transpose differs");
        }
    }
    for shape in 0..comb.shapes.len() {
        let y = b.y_lambda(shape);
        let init = comb.initial(shape);
        let inst = comb.shapes[shape].to_string();
        let ok = y.coeff(init, init).is_one()
            && y.terms().all(|(&(s, t), _)| s == t && (s == init || comb.gamma_dominates(s, init)));
        if ok {
            rep.pass("y^lam f^lam expansion", inst);
        } else {
            rep.fail("y^lam f^lam expansion", inst, sys.render(y));
        }
    }
    // the generators themselves are integral in the psi-basis
    let n = comb.n;
    let g = b.generators();
    let mut gens: Vec<(String, Element)> = (1..=n).map(|r| (format!("y_{r}"), g.y(r).clone())).collect();
    gens.extend((1..n).map(|r| (format!("psi_{r}"), g.psi(r).clone())));
    gens.extend(g.residues().into_iter().map(|i| (format!("f_{i:?}"), g.f(&i))));
    for (name, x) in gens {
        match b.expand(&x) {
            Ok(c) => match c.iter().find(|(_, v)| !sm.is_integral(v)) {
                None => rep.pass("integral expansion", name),
                Some((p, v)) => rep.fail("integral expansion", name, format!("{} at {}", sm.render(v), b.render_pair(*p))),
            },
            Err(e) => rep.fail("integral expansion", name, e.to_string()),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::build_deformed_generators;

    #[test]
    fn small_basis_is_triangular() {
        for (n, kappa, e) in [(3usize, vec![0i64], 2u32), (2, vec![0, 0], 2), (3, vec![0, 1], 3)] {
            let g = Arc::new(build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap());
            let b = PsiBasis::new(g);
            let fact: usize = (1..=n).product();
            assert_eq!(b.len(), kappa.len().pow(n as u32) * fact);
            let rep = verify_psi_basis(&b);
            assert!(rep.all_pass(), "{:?}", rep.failures().take(3).collect::<Vec<_>>());
        }
    }

    #[test]
    fn expansion_round_trip() {
        let g = Arc::new(build_deformed_generators(3, &[0], 2, Mode::CycloLocal).unwrap());
        let b = PsiBasis::new(g.clone());
        let sys = g.system();
        let x = sys.mul(g.psi(1), &sys.mul(g.y(2), g.psi(2)));
        let mut back = Element::zero();
        for (p, c) in b.expand(&x).unwrap() {
            back = back.add(&b.element(p).scale(&c));
        }
        assert_eq!(back, x);
    }
}
