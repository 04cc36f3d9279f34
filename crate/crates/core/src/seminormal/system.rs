//! Seminormal coefficient systems and their gamma tables.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::Element;
use crate::scalar::{Mode, Scalar, ScalarMode};
use crate::tableaux::{add_nodes, reduced_word, Combinatorics, Edge};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    /// `alpha_r(t) = [1 + rho] / [rho]`.
    Rational,
    /// `alpha_r(t) = 1` when `t ⊳ t(r,r+1)`.
    Murphy,
    /// The graded system, normalized on the psi action.
    Diamond,
    /// Murphy-type system of the linear quiver deformation.
    LinearQuiver,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Rational => "rational",
            SystemKind::Murphy => "murphy",
            SystemKind::Diamond => "diamond",
            SystemKind::LinearQuiver => "linear-quiver",
        })
    }
}

impl FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rational" => Ok(SystemKind::Rational),
            "murphy" => Ok(SystemKind::Murphy),
            "diamond" => Ok(SystemKind::Diamond),
            "linear-quiver" => Ok(SystemKind::LinearQuiver),
            _ => Err(Error::Config(format!("unknown coefficient system '{s}'"))),
        }
    }
}

/// Which anti-involution fixes the basis up to transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// Fixes every `T_r` and `L_k`.
    Star,
    /// Fixes every `psi_r`, `y_r` and `f_i`.
    Diamond,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaSeed {
    /// `gamma_{t^lam}` from the Murphy element `m_lam`.
    Murphy,
    /// `gamma_{t^lam} = prod_r prod_{A in Add_lam(r)} [c_r(t^lam) - c_A]`.
    Klr,
}

impl FromStr for GammaSeed {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "murphy" => Ok(GammaSeed::Murphy),
            "klr" => Ok(GammaSeed::Klr),
            _ => Err(Error::Config(format!("unknown gamma seed '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeminormalSystem {
    comb: Arc<Combinatorics>,
    sm: Arc<ScalarMode>,
    kind: SystemKind,
    seed: GammaSeed,
    /// `ev[k-1][t]`: eigenvalue of `L_k` on `f_t`.
    ev: Vec<Vec<Scalar>>,
    /// `tdiag[r-1][t]`: coefficient of `f_st` in `f_st T_r`.
    tdiag: Vec<Vec<Scalar>>,
    /// `alpha[r-1][t]`: coefficient of `f_sv` in `f_st T_r`, `v = t(r,r+1)`.
    alpha: Vec<Vec<Scalar>>,
    /// Right psi action, when the mode has residues.
    beta: Vec<Vec<Scalar>>,
    pdiag: Vec<Vec<Scalar>>,
    gamma: Vec<Scalar>,
}

pub fn congruent(a: i64, b: i64, e: u32) -> bool {
    if e == 0 {
        a == b
    } else {
        (a - b).rem_euclid(e as i64) == 0
    }
}

impl SeminormalSystem {
    pub fn build(
        comb: Arc<Combinatorics>,
        sm: Arc<ScalarMode>,
        kind: SystemKind,
        seed: GammaSeed,
    ) -> Result<Self, Error> {
        match (kind, sm.mode()) {
            (SystemKind::Diamond, Mode::CycloLocal | Mode::DegenerateP) => {}
            (SystemKind::Diamond, m) => {
                return Err(Error::ModeMismatch(format!("the diamond system needs residues; mode {m} has none")))
            }
            (SystemKind::LinearQuiver, Mode::LinearQuiver) => {}
            (SystemKind::LinearQuiver, m) => {
                return Err(Error::ModeMismatch(format!("linear-quiver system in mode {m}")))
            }
            _ => {}
        }
        if matches!(sm.mode(), Mode::CycloLocal | Mode::LinearQuiver) && sm.e() != comb.e {
            return Err(Error::ModeMismatch(format!("scalar e = {} but tableau e = {}", sm.e(), comb.e)));
        }
        if sm.mode() == Mode::DegenerateP && sm.e() != 0 && sm.e() != comb.e {
            return Err(Error::ModeMismatch(format!("prime {} but tableau e = {}", sm.e(), comb.e)));
        }
        let n = comb.n;
        let nt = comb.len();
        let ev: Vec<Vec<Scalar>> = (1..=n)
            .map(|k| {
                (0..nt).map(|t| sm.content_value(comb.tabs[t].comps[k - 1], comb.tabs[t].content(k))).collect()
            })
            .collect();
        let mut tdiag = vec![];
        for r in 1..n {
            let mut row = Vec::with_capacity(nt);
            for t in 0..nt {
                let (a, b) = (&ev[r - 1][t], &ev[r][t]);
                let diff = b - a;
                if diff.is_zero() {
                    return Err(Error::SeparationFailure(format!(
                        "L_{r} and L_{} agree on {}",
                        r + 1,
                        comb.tabs[t].tab
                    )));
                }
                row.push((&Scalar::one() + &(&(sm.t() - &Scalar::one()) * b)).div(&diff));
            }
            tdiag.push(row);
        }
        let mut sys = SeminormalSystem {
            comb,
            sm,
            kind,
            seed,
            ev,
            tdiag,
            alpha: vec![],
            beta: vec![],
            pdiag: vec![],
            gamma: vec![],
        };
        let klr = sys.sm.mode() != Mode::GenericT;
        if kind == SystemKind::Diamond {
            sys.beta = (1..n).map(|r| (0..nt).map(|t| sys.new_beta(r, t)).collect()).collect();
            sys.alpha = (1..n).map(|r| (0..nt).map(|t| sys.alpha_from_right_beta(r, t)).collect()).collect();
        } else {
            sys.alpha = (1..n).map(|r| (0..nt).map(|t| sys.star_alpha(r, t)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
            if klr {
                sys.beta = (1..n).map(|r| (0..nt).map(|t| sys.right_beta_from_alpha(r, t)).collect()).collect();
            }
        }
        if klr {
            sys.pdiag = (1..n).map(|r| (0..nt).map(|t| sys.right_psi_diag(r, t)).collect()).collect();
        }
        sys.gamma = sys.compute_gamma(|t| reduced_word(&sys.comb.tabs[t].tab.permutation()))?;
        Ok(sys)
    }

    pub fn comb(&self) -> &Arc<Combinatorics> {
        &self.comb
    }

    pub fn scalars(&self) -> &Arc<ScalarMode> {
        &self.sm
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn seed(&self) -> GammaSeed {
        self.seed
    }

    pub fn flavor(&self) -> Flavor {
        if self.kind == SystemKind::Diamond {
            Flavor::Diamond
        } else {
            Flavor::Star
        }
    }

    pub fn has_klr(&self) -> bool {
        !self.pdiag.is_empty() || self.comb.n == 1 && self.sm.mode() != Mode::GenericT
    }

    pub fn n(&self) -> usize {
        self.comb.n
    }

    pub fn len(&self) -> usize {
        self.comb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comb.is_empty()
    }

    pub fn gammas(&self) -> &[Scalar] {
        &self.gamma
    }

    pub fn gamma(&self, t: usize) -> &Scalar {
        &self.gamma[t]
    }

    /// Eigenvalue of `L_k` on `f_t`.
    pub fn ev(&self, k: usize, t: usize) -> &Scalar {
        &self.ev[k - 1][t]
    }

    /// Right action coefficient `alpha_r(t)` of `T_r` (zero when `t(r,r+1)`
    /// is not standard).
    pub fn alpha(&self, r: usize, t: usize) -> &Scalar {
        &self.alpha[r - 1][t]
    }

    pub fn t_diag(&self, r: usize, t: usize) -> &Scalar {
        &self.tdiag[r - 1][t]
    }

    /// Right action coefficient of `psi_r` off the diagonal.
    pub fn beta(&self, r: usize, t: usize) -> &Scalar {
        &self.beta[r - 1][t]
    }

    pub fn psi_diag(&self, r: usize, t: usize) -> &Scalar {
        &self.pdiag[r - 1][t]
    }

    /// Overwrites one coefficient `alpha_r(t)`, for fault-injection tests of
    /// the validator. The rest of the system is left untouched.
    pub fn corrupt_alpha(&mut self, r: usize, t: usize, value: Scalar) {
        self.alpha[r - 1][t] = value;
    }

    pub fn corrupt_beta(&mut self, r: usize, t: usize, value: Scalar) {
        self.beta[r - 1][t] = value;
    }

    fn tp(&self, d: i64) -> Scalar {
        self.sm.t_pow(d)
    }

    fn q(&self, d: i64) -> Scalar {
        self.sm.quantum(d)
    }

    fn res(&self, t: usize, k: usize) -> i64 {
        self.comb.tabs[t].residue(k)
    }

    /// `M_r` eigenvalue `1 - [c_r] + t[c_{r+1}]` on `f_t`.
    pub fn m_value(&self, r: usize, t: usize) -> Scalar {
        &(&Scalar::one() - self.ev(r, t)) + &(self.sm.t() * self.ev(r + 1, t))
    }

    /// `M'_r` eigenvalue `1 + t[c_r] - [c_{r+1}]` on `f_t`.
    pub fn mprime_value(&self, r: usize, t: usize) -> Scalar {
        &(&Scalar::one() + &(self.sm.t() * self.ev(r, t))) - self.ev(r + 1, t)
    }

    /// `alpha_r(t) alpha_r(v)` forced by the quadratic relation.
    pub fn alpha_product(&self, r: usize, t: usize) -> Option<Scalar> {
        let v = self.comb.tabs[t].swap[r - 1]?;
        if self.sm.mode() == Mode::LinearQuiver {
            // (1 - C_r(s) + t C_r(u)) (1 + t C_r(s) - C_r(u)) / (P_r(s) P_r(u))
            let (cs, cu) = (self.ev(r, t), self.ev(r, v));
            let one = Scalar::one();
            let a = &(&one - cs) + &(self.sm.t() * cu);
            let b = &(&one + &(self.sm.t() * cs)) - cu;
            let ps = cu - cs;
            let pu = cs - cu;
            return Some((&a * &b).div(&(&ps * &pu)));
        }
        let rho = self.comb.tabs[t].rho(r);
        let num = &self.q(1 + rho) * &self.q(1 - rho);
        let den = &self.q(rho) * &self.q(-rho);
        Some(num.div(&den))
    }

    fn star_alpha(&self, r: usize, t: usize) -> Result<Scalar, Error> {
        let Some(v) = self.comb.tabs[t].swap[r - 1] else {
            return Ok(Scalar::zero());
        };
        match self.kind {
            SystemKind::Rational => Ok(self.sm.t() - self.t_diag(r, t)),
            SystemKind::Murphy | SystemKind::LinearQuiver => {
                if self.comb.dominates(t, v) {
                    Ok(Scalar::one())
                } else if self.comb.dominates(v, t) {
                    Ok(self.alpha_product(r, t).unwrap())
                } else {
                    Err(Error::InvalidTableau(format!(
                        "{} and its swap are incomparable",
                        self.comb.tabs[t].tab
                    )))
                }
            }
            SystemKind::Diamond => unreachable!(),
        }
    }

    /// The value of `beta_r(s) beta_r(u)` fixed by the residues of `s`.
    pub fn beta_product(&self, r: usize, s: usize) -> Scalar {
        let d = &self.comb.tabs[s];
        let (i, j) = (d.residue(r), d.residue(r + 1));
        let (cr, cr1, rho) = (d.content(r), d.content(r + 1), d.rho(r));
        match self.comb.edge(i, j) {
            Edge::Equal => {
                let q = self.q(rho);
                -&self.tp(2 * i - 2 * cr1).div(&(&q * &q))
            }
            Edge::Double => &(&self.tp(cr + cr1 - i - j) * &self.q(1 - rho)) * &self.q(1 + rho),
            Edge::Backward => &self.tp(cr - i) * &self.q(1 - rho),
            Edge::Forward => &self.tp(cr1 - j) * &self.q(1 + rho),
            Edge::None => Scalar::one(),
        }
    }

    fn new_beta(&self, r: usize, s: usize) -> Scalar {
        let Some(u) = self.comb.tabs[s].swap[r - 1] else {
            return Scalar::zero();
        };
        let d = &self.comb.tabs[s];
        if self.comb.dominates(s, u) || self.comb.edge(d.residue(r), d.residue(r + 1)) == Edge::None {
            Scalar::one()
        } else {
            self.beta_product(r, s)
        }
    }

    /// Inverts the right psi formula to recover the right `T_r` action.
    fn alpha_from_right_beta(&self, r: usize, t: usize) -> Scalar {
        let b = &self.beta[r - 1][t];
        if b.is_zero() {
            return Scalar::zero();
        }
        let (i, j) = (self.res(t, r), self.res(t, r + 1));
        let e = self.comb.e;
        let diff = self.ev(r + 1, t) - self.ev(r, t);
        if congruent(i, j, e) {
            (b * &self.mprime_value(r, t)).div(&self.tp(j))
        } else if congruent(i, j - 1, e) {
            (b * &self.tp(j)).div(&diff)
        } else {
            (b * &self.mprime_value(r, t)).div(&diff)
        }
    }

    fn right_beta_from_alpha(&self, r: usize, t: usize) -> Scalar {
        let a = &self.alpha[r - 1][t];
        if a.is_zero() {
            return Scalar::zero();
        }
        let (i, j) = (self.res(t, r), self.res(t, r + 1));
        let e = self.comb.e;
        let diff = self.ev(r + 1, t) - self.ev(r, t);
        if congruent(i, j, e) {
            (&self.tp(j) * a).div(&self.mprime_value(r, t))
        } else if congruent(i, j - 1, e) {
            &(&self.tp(-j) * a) * &diff
        } else {
            (a * &diff).div(&self.mprime_value(r, t))
        }
    }

    fn right_psi_diag(&self, r: usize, t: usize) -> Scalar {
        let (i, j) = (self.res(t, r), self.res(t, r + 1));
        if !congruent(i, j, self.comb.e) {
            return Scalar::zero();
        }
        let d = self.t_diag(r, t) - self.sm.t();
        (&self.tp(j) * &d).div(&self.mprime_value(r, t))
    }

    /// Left action `psi_r f_st = beta_r(s) f_ut + diag f_st` derived from the
    /// left `T_r` coefficient `alpha_left`.
    pub fn left_psi_coefficients(&self, r: usize, s: usize, alpha_left: &Scalar) -> (Scalar, Scalar) {
        let (i, j) = (self.res(s, r), self.res(s, r + 1));
        let e = self.comb.e;
        let m = self.m_value(r, s);
        let amb = self.ev(r, s) - self.ev(r + 1, s);
        if congruent(i, j, e) {
            let off = (&self.tp(i) * alpha_left).div(&m);
            let diag = (&self.tp(i) * &(self.t_diag(r, s) + &Scalar::one())).div(&m);
            (off, diag)
        } else if congruent(i, j + 1, e) {
            (&(&self.tp(-i) * alpha_left) * &amb, Scalar::zero())
        } else {
            ((alpha_left * &amb).div(&m), Scalar::zero())
        }
    }

    /// Ratio `gamma_v / gamma_t` for `v = t(r,r+1)`.
    fn gamma_step(&self, r: usize, t: usize, v: usize) -> Scalar {
        let table = if self.kind == SystemKind::Diamond { &self.beta } else { &self.alpha };
        table[r - 1][v].div(&table[r - 1][t])
    }

    fn seed_value(&self, shape: usize) -> Scalar {
        let comb = &self.comb;
        let lam = &comb.shapes[shape];
        let init = comb.initial(shape);
        match self.seed {
            GammaSeed::Murphy => {
                let mut acc = Scalar::one();
                for p in lam.components() {
                    for &len in p {
                        acc = &acc * &self.sm.quantum_factorial(len as i64);
                    }
                }
                for node in lam.nodes() {
                    for m in node.l + 1..=lam.level() {
                        let km = comb.kappa[m - 1];
                        let qv = self.sm.content_value(m, km);
                        let diff = &self.sm.content_value(node.l, node.content(&comb.kappa)) - &qv;
                        acc = &acc * &(&self.tp(-km) * &diff);
                    }
                }
                acc
            }
            GammaSeed::Klr => {
                let mut acc = Scalar::one();
                for r in 1..=comb.n {
                    for a in add_nodes(lam, r, &comb.kappa, comb.e) {
                        let ca = a.content(&comb.kappa);
                        let diff = self.ev(r, init) - &self.sm.content_value(a.l, ca);
                        acc = &acc * &(&self.tp(-ca) * &diff);
                    }
                }
                acc
            }
        }
    }

    /// Gamma table along the paths given by `word(t)`.
    pub fn compute_gamma(&self, word: impl Fn(usize) -> Vec<usize>) -> Result<Vec<Scalar>, Error> {
        let comb = &self.comb;
        let mut gamma = vec![Scalar::zero(); comb.len()];
        for s in 0..comb.shapes.len() {
            let init = comb.initial(s);
            let seed = self.seed_value(s);
            if seed.is_zero() {
                return Err(Error::SeparationFailure(format!("gamma seed vanishes for {}", comb.shapes[s])));
            }
            for t in comb.shape_range(s) {
                let mut cur = init;
                let mut g = seed.clone();
                for r in word(t) {
                    let v = comb.tabs[cur].swap[r - 1].ok_or_else(|| {
                        Error::NotStandard(format!("path to {} leaves Std", comb.tabs[t].tab))
                    })?;
                    g = &g * &self.gamma_step(r, cur, v);
                    cur = v;
                }
                debug_assert_eq!(cur, t);
                gamma[t] = g;
            }
        }
        Ok(gamma)
    }

    // ---- elements ----

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        a.mul(b, &self.gamma)
    }

    pub fn mul_all(&self, factors: &[&Element]) -> Element {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `sum_t g(t) F_t` with `F_t = f_tt / gamma_t`.
    pub fn diagonal(&self, g: impl Fn(usize) -> Scalar) -> Element {
        Element::from_terms((0..self.len()).map(|t| ((t, t), g(t).div(&self.gamma[t]))))
    }

    pub fn one(&self) -> Element {
        self.diagonal(|_| Scalar::one())
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.diagonal(|_| c.clone())
    }

    /// The primitive idempotent `F_t`.
    pub fn f_prim(&self, t: usize) -> Element {
        Element::from_terms([((t, t), self.gamma[t].inv().unwrap())])
    }

    /// `f_i = sum_{t in Std(i)} F_t`.
    pub fn f_res(&self, i: &[i64]) -> Element {
        Element::from_terms(self.comb.std_of(i).iter().map(|&t| ((t, t), self.gamma[t].inv().unwrap())))
    }

    pub fn l(&self, k: usize) -> Element {
        self.diagonal(|t| self.ev(k, t).clone())
    }

    pub fn t_gen(&self, r: usize) -> Element {
        let mut e = Element::zero();
        for t in 0..self.len() {
            let g = self.gamma[t].inv().unwrap();
            e.add_term((t, t), &(self.t_diag(r, t) * &g));
            if let Some(v) = self.comb.tabs[t].swap[r - 1] {
                e.add_term((t, v), &(self.alpha(r, t) * &g));
            }
        }
        e
    }

    /// `psi_r` assembled from its right action coefficients.
    pub fn psi_from_coefficients(&self, r: usize) -> Result<Element, Error> {
        self.require_klr()?;
        let mut e = Element::zero();
        for t in 0..self.len() {
            let g = self.gamma[t].inv().unwrap();
            e.add_term((t, t), &(self.psi_diag(r, t) * &g));
            if let Some(v) = self.comb.tabs[t].swap[r - 1] {
                e.add_term((t, v), &(self.beta(r, t) * &g));
            }
        }
        Ok(e)
    }

    /// Eigenvalue of `y_r` on `f_t`: `t^{-î_r} ([c_r(t)] - [î_r])`.
    pub fn y_value(&self, r: usize, t: usize) -> Scalar {
        let i = self.res(t, r);
        &self.tp(-i) * &(self.ev(r, t) - &self.q(i))
    }

    pub fn y(&self, r: usize) -> Result<Element, Error> {
        self.require_klr()?;
        Ok(self.diagonal(|t| self.y_value(r, t)))
    }

    pub fn require_klr(&self) -> Result<(), Error> {
        if self.sm.mode() == Mode::GenericT {
            return Err(Error::ModeMismatch("KLR generators need a mode with residues".into()));
        }
        Ok(())
    }

    /// Applies the anti-involution matching this system's flavor.
    pub fn involute(&self, a: &Element, flavor: Flavor) -> Result<Element, Error> {
        if flavor != self.flavor() {
            return Err(Error::FlavorMismatch(format!(
                "{:?} involution requested in a {:?} system",
                flavor,
                self.flavor()
            )));
        }
        Ok(a.transpose())
    }

    fn residue_inverse(
        &self,
        i: &[i64],
        ok: bool,
        what: &str,
        value: impl Fn(usize) -> Scalar,
    ) -> Result<Element, Error> {
        if !ok {
            return Err(Error::ResidueConditionViolated(format!("{what} at i = {i:?}")));
        }
        let mut e = Element::zero();
        for &t in self.comb.std_of(i) {
            let v = value(t);
            let inv = v.inv().ok_or_else(|| Error::SeparationFailure(format!("{what} vanishes on {}", self.comb.tabs[t].tab)))?;
            e.add_term((t, t), &inv.div(&self.gamma[t]));
        }
        Ok(e)
    }

    /// `M_r^{-1} f_i`; needs `i_r != i_{r+1} + 1`.
    pub fn inv_m_on(&self, r: usize, i: &[i64]) -> Result<Element, Error> {
        let ok = !congruent(i[r - 1], i[r] + 1, self.comb.e);
        self.residue_inverse(i, ok, &format!("1/M_{r}"), |t| self.m_value(r, t))
    }

    /// `M'_r^{-1} f_i`; needs `i_r != i_{r+1} - 1`.
    pub fn inv_mprime_on(&self, r: usize, i: &[i64]) -> Result<Element, Error> {
        let ok = !congruent(i[r - 1], i[r] - 1, self.comb.e);
        self.residue_inverse(i, ok, &format!("1/M'_{r}"), |t| self.mprime_value(r, t))
    }

    /// `(L_r - L_{r+1})^{-1} f_i`; needs `i_r != i_{r+1}`.
    pub fn inv_ldiff_on(&self, r: usize, i: &[i64]) -> Result<Element, Error> {
        let ok = !congruent(i[r - 1], i[r], self.comb.e);
        self.residue_inverse(i, ok, &format!("1/(L_{r} - L_{})", r + 1), |t| self.ev(r, t) - self.ev(r + 1, t))
    }

    /// Matrix of right multiplication by `h` on the cell module of a shape,
    /// in the basis `f_t`.
    pub fn specht_matrix(&self, shape: usize, h: &Element) -> Vec<Vec<Scalar>> {
        let range = self.comb.shape_range(shape);
        let start = range.start;
        let dim = range.len();
        let mut m = vec![vec![Scalar::zero(); dim]; dim];
        for t in range {
            for (&(_, v), c) in h.row(t) {
                m[t - start][v - start] = &self.gamma[t] * c;
            }
        }
        m
    }

    /// Renders an element as `coefficient*f(s,t)` terms.
    pub fn render(&self, a: &Element) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms()
            .map(|(&(s, t), c)| {
                format!("({})*f[{};{}]", self.sm.render(c), self.comb.tabs[s].tab, self.comb.tabs[t].tab)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
