//! Relation checks over a built seminormal system.

use super::element::Element;
use super::system::{congruent, Flavor, SeminormalSystem, SystemKind};
use crate::report::VerificationReport;
use crate::scalar::{Mode, Scalar};
use crate::tableaux::reduced_word_largest_first;

fn check(rep: &mut VerificationReport, sys: &SeminormalSystem, rel: &str, inst: String, lhs: &Element, rhs: &Element) {
    match lhs.first_difference(rhs) {
        None => rep.pass(rel, inst),
        Some(((s, t), a, b)) => {
            let c = sys.comb();
            let w = format!(
                "f[{};{}]: {} vs {}",
                c.tabs[s].tab,
                c.tabs[t].tab,
                sys.scalars().render(&a),
                sys.scalars().render(&b)
            );
            rep.fail(rel, inst, w)
        }
    }
}

/// Parameters `Q_l` of the cyclotomic relation.
pub fn cyclotomic_parameters(sys: &SeminormalSystem) -> Vec<Scalar> {
    let c = sys.comb();
    (1..=c.level()).map(|l| sys.scalars().content_value(l, c.kappa[l - 1])).collect()
}

/// Every defining relation of the Hecke algebra, as element identities.
pub fn verify_hecke_relations(sys: &SeminormalSystem) -> VerificationReport {
    let n = sys.n();
    let mut rep = VerificationReport::new(format!("hecke relations ({} system)", sys.kind()));
    let one = sys.one();
    let zero = Element::zero();
    let tt = sys.scalars().t().clone();
    let ts: Vec<Element> = (1..n).map(|r| sys.t_gen(r)).collect();
    let ls: Vec<Element> = (1..=n).map(|k| sys.l(k)).collect();
    let tg = |r: usize| &ts[r - 1];
    let lg = |k: usize| &ls[k - 1];

    let mut cyc = one.clone();
    for q in cyclotomic_parameters(sys) {
        cyc = sys.mul(&cyc, &lg(1).sub(&sys.scalar(&q)));
    }
    check(&mut rep, sys, "cyclotomic", "prod (L_1 - Q_l)".into(), &cyc, &zero);

    for r in 1..n {
        let lhs = sys.mul(&tg(r).add(&one), &tg(r).sub(&sys.scalar(&tt)));
        check(&mut rep, sys, "quadratic", format!("r={r}"), &lhs, &zero);
        // L_{r+1} (T_r - t + 1) = T_r L_r + 1
        let lhs = sys.mul(lg(r + 1), &tg(r).sub(&sys.scalar(&(&tt - &Scalar::one()))));
        let rhs = sys.mul(tg(r), lg(r)).add(&one);
        check(&mut rep, sys, "L-T", format!("r={r}"), &lhs, &rhs);
        for k in 1..=n {
            if k != r && k != r + 1 {
                check(
                    &mut rep,
                    sys,
                    "T-L commute",
                    format!("r={r} k={k}"),
                    &sys.mul(tg(r), lg(k)),
                    &sys.mul(lg(k), tg(r)),
                );
            }
        }
        for s in r + 2..n {
            check(&mut rep, sys, "T commute", format!("r={r} s={s}"), &sys.mul(tg(r), tg(s)), &sys.mul(tg(s), tg(r)));
        }
        if r + 1 < n {
            let lhs = sys.mul_all(&[tg(r), tg(r + 1), tg(r)]);
            let rhs = sys.mul_all(&[tg(r + 1), tg(r), tg(r + 1)]);
            check(&mut rep, sys, "braid", format!("r={r}"), &lhs, &rhs);
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            check(&mut rep, sys, "L commute", format!("{a},{b}"), &sys.mul(lg(a), lg(b)), &sys.mul(lg(b), lg(a)));
        }
    }
    rep
}

/// Checks the braid, commuting and product conditions on the coefficient
/// table (or its diamond analogue) for every standard tableau.
pub fn validate_sncs(sys: &SeminormalSystem) -> VerificationReport {
    let c = sys.comb();
    let n = sys.n();
    let diamond = sys.kind() == SystemKind::Diamond;
    let mut rep = VerificationReport::new(format!("coefficient system axioms ({} system)", sys.kind()));
    let coef = |r: usize, t: Option<usize>| -> Scalar {
        match t {
            None => Scalar::zero(),
            Some(t) => {
                if diamond {
                    sys.beta(r, t).clone()
                } else {
                    sys.alpha(r, t).clone()
                }
            }
        }
    };
    let step = |t: Option<usize>, r: usize| t.and_then(|t| c.tabs[t].swap[r - 1]);
    for t in 0..c.len() {
        let name = c.tabs[t].tab.to_string();
        for r in 1..n {
            let v = c.tabs[t].swap[r - 1];
            let a = coef(r, Some(t));
            match v {
                None => {
                    if a.is_zero() {
                        rep.pass("vanishing", format!("r={r} t={name}"));
                    } else {
                        rep.fail("vanishing", format!("r={r} t={name}"), format!("coefficient {}", sys.scalars().render(&a)));
                    }
                }
                Some(v) => {
                    let prod = &a * &coef(r, Some(v));
                    let target = if diamond { sys.beta_product(r, t) } else { sys.alpha_product(r, t).unwrap() };
                    if prod == target {
                        rep.pass("product", format!("r={r} t={name}"));
                    } else {
                        rep.fail(
                            "product",
                            format!("r={r} t={name}"),
                            format!(
                                "{} != {}",
                                sys.scalars().render(&prod),
                                sys.scalars().render(&target)
                            ),
                        );
                    }
                }
            }
            if r + 1 < n {
                let t0 = Some(t);
                let lhs = &(&coef(r, t0) * &coef(r + 1, step(t0, r))) * &coef(r, step(step(t0, r), r + 1));
                let rhs = &(&coef(r + 1, t0) * &coef(r, step(t0, r + 1))) * &coef(r + 1, step(step(t0, r + 1), r));
                if lhs == rhs {
                    rep.pass("braid", format!("r={r} t={name}"));
                } else {
                    rep.fail("braid", format!("r={r} t={name}"), format!("{lhs} != {rhs}"));
                }
            }
            for k in r + 2..n {
                let t0 = Some(t);
                let lhs = &coef(r, t0) * &coef(k, step(t0, r));
                let rhs = &coef(k, t0) * &coef(r, step(t0, k));
                if lhs == rhs {
                    rep.pass("commuting", format!("r={r} k={k} t={name}"));
                } else {
                    rep.fail("commuting", format!("r={r} k={k} t={name}"), format!("{lhs} != {rhs}"));
                }
            }
        }
    }
    rep
}

/// Gamma recomputed along the reduced words that remove the largest descent
/// first, compared with the stored table.
pub fn verify_gamma_paths(sys: &SeminormalSystem) -> VerificationReport {
    let mut rep = VerificationReport::new("gamma path independence");
    let c = sys.comb();
    match sys.compute_gamma(|t| reduced_word_largest_first(&c.tabs[t].tab.permutation())) {
        Err(e) => rep.fail("gamma path", "all", e.to_string()),
        Ok(g) => {
            for t in 0..c.len() {
                let name = c.tabs[t].tab.to_string();
                if &g[t] == sys.gamma(t) {
                    rep.pass("gamma path", name);
                } else {
                    rep.fail("gamma path", name, format!("{} vs {}", g[t], sys.gamma(t)));
                }
            }
        }
    }
    // recurrence on every adjacent pair
    for t in 0..c.len() {
        for r in 1..sys.n() {
            if let Some(v) = c.tabs[t].swap[r - 1] {
                let (at, av) = if sys.kind() == SystemKind::Diamond {
                    (sys.beta(r, t), sys.beta(r, v))
                } else {
                    (sys.alpha(r, t), sys.alpha(r, v))
                };
                let ok = av * sys.gamma(t) == at * sys.gamma(v);
                rep.record("gamma recurrence", format!("r={r} t={}", c.tabs[t].tab), ok, Some("mismatch".into()));
            }
        }
    }
    rep
}

/// Orthogonality and completeness of `F_t` and `f_i`, and the involution.
pub fn verify_idempotents(sys: &SeminormalSystem) -> VerificationReport {
    let mut rep = VerificationReport::new("idempotents");
    let c = sys.comb();
    let one = sys.one();
    let mut sum = Element::zero();
    let fs: Vec<Element> = (0..c.len()).map(|t| sys.f_prim(t)).collect();
    for s in 0..c.len() {
        sum = sum.add(&fs[s]);
        for t in 0..c.len() {
            let p = sys.mul(&fs[s], &fs[t]);
            let want = if s == t { fs[s].clone() } else { Element::zero() };
            check(&mut rep, sys, "F orthogonal", format!("{s},{t}"), &p, &want);
        }
        let inv = sys.involute(&fs[s], sys.flavor()).unwrap_or_default();
        check(&mut rep, sys, "F involution", format!("{s}"), &inv, &fs[s]);
    }
    check(&mut rep, sys, "F complete", "sum F_t".into(), &sum, &one);
    if c.e > 0 || sys.scalars().mode() == Mode::LinearQuiver {
        let seqs: Vec<Vec<i64>> = c.residue_sequences().cloned().collect();
        let fis: Vec<Element> = seqs.iter().map(|i| sys.f_res(i)).collect();
        let mut total = Element::zero();
        for (a, fa) in fis.iter().enumerate() {
            total = total.add(fa);
            for (b, fb) in fis.iter().enumerate() {
                let want = if a == b { fa.clone() } else { Element::zero() };
                check(&mut rep, sys, "f_i orthogonal", format!("{:?},{:?}", seqs[a], seqs[b]), &sys.mul(fa, fb), &want);
            }
        }
        check(&mut rep, sys, "f_i complete", "sum f_i".into(), &total, &one);
    }
    for r in 1..sys.n() {
        let t = sys.t_gen(r);
        let twice = sys.involute(&t, sys.flavor()).and_then(|x| sys.involute(&x, sys.flavor()));
        check(&mut rep, sys, "involution order 2", format!("T_{r}"), &twice.unwrap_or_default(), &t);
        if sys.flavor() == Flavor::Star {
            check(&mut rep, sys, "T fixed", format!("T_{r}"), &t.transpose(), &t);
        }
    }
    rep
}

/// Intertwiner identities for `T_r`, `L_r` and the residue idempotents.
pub fn verify_intertwiners(sys: &SeminormalSystem) -> VerificationReport {
    let mut rep = VerificationReport::new("intertwiners");
    let c = sys.comb();
    let n = sys.n();
    let one = sys.one();
    let tt = sys.scalars().t().clone();
    for r in 1..n {
        let tr = sys.t_gen(r);
        let (lr, lr1) = (sys.l(r), sys.l(r + 1));
        let comm = sys.mul(&tr, &lr).sub(&sys.mul(&lr, &tr));
        let m = one.sub(&lr).add(&lr1.scale(&tt));
        let mp = one.add(&lr.scale(&tt)).sub(&lr1);
        check(&mut rep, sys, "M commute", format!("r={r}"), &sys.mul(&comm, &m), &sys.mul(&mp, &comm));
        let lhs = sys.mul(&tr.sub(&sys.scalar(&tt)), &m);
        let rhs = sys.mul(&mp, &one.add(&tr));
        check(&mut rep, sys, "T-M", format!("r={r}"), &lhs, &rhs);
        if sys.scalars().mode() == Mode::GenericT {
            continue;
        }
        for i in c.residue_sequences() {
            let fi = sys.f_res(i);
            if congruent(i[r - 1], i[r], c.e) {
                check(&mut rep, sys, "T f_i", format!("r={r} i={i:?}"), &sys.mul(&tr, &fi), &sys.mul(&fi, &tr));
            } else {
                let mut si = i.clone();
                si.swap(r - 1, r);
                let fsi = sys.f_res(&si);
                check(&mut rep, sys, "comm f_i", format!("r={r} i={i:?}"), &sys.mul(&comm, &fi), &sys.mul(&fsi, &comm));
            }
        }
    }
    rep
}

/// Builds `F_t` from the product of `(L_k - c)/(c_k(t) - c)` over the given
/// content values and compares it with the basis idempotent.
pub fn crosscheck_idempotent_formula(sys: &SeminormalSystem, t: usize, contents: &[(usize, i64)]) -> bool {
    let c = sys.comb();
    let sm = sys.scalars();
    let mut acc = sys.one();
    for k in 1..=sys.n() {
        let own = sys.ev(k, t);
        let lk = sys.l(k);
        for &(comp, cont) in contents {
            let v = sm.content_value(comp, cont);
            if &v == own {
                continue;
            }
            let factor = lk.sub(&sys.scalar(&v)).scale(&(own - &v).inv().unwrap());
            acc = sys.mul(&acc, &factor);
        }
    }
    let _ = c;
    acc == sys.f_prim(t)
}

/// Every `(component, content)` value that occurs in the system.
pub fn all_content_values(sys: &SeminormalSystem) -> Vec<(usize, i64)> {
    let c = sys.comb();
    let mut v: Vec<(usize, i64)> = c
        .tabs
        .iter()
        .flat_map(|d| d.comps.iter().copied().zip(d.contents.iter().copied()))
        .collect();
    v.sort();
    v.dedup();
    if sys.scalars().mode() != Mode::LinearQuiver {
        // the component does not enter the eigenvalue
        v.iter_mut().for_each(|p| p.0 = 1);
        v.sort();
        v.dedup();
    }
    v
}

/// Generator matrices on one cell module.
#[derive(Clone, Debug)]
pub struct SpechtModule {
    pub shape: usize,
    pub dim: usize,
    pub t: Vec<Vec<Vec<Scalar>>>,
    pub l: Vec<Vec<Vec<Scalar>>>,
    pub psi: Vec<Vec<Vec<Scalar>>>,
    pub y: Vec<Vec<Vec<Scalar>>>,
}

pub fn specht_action(sys: &SeminormalSystem, shape: usize) -> SpechtModule {
    let n = sys.n();
    let dim = sys.comb().shape_range(shape).len();
    let t = (1..n).map(|r| sys.specht_matrix(shape, &sys.t_gen(r))).collect();
    let l = (1..=n).map(|k| sys.specht_matrix(shape, &sys.l(k))).collect();
    let (mut psi, mut y) = (vec![], vec![]);
    if sys.require_klr().is_ok() {
        for r in 1..n {
            psi.push(sys.specht_matrix(shape, &sys.psi_from_coefficients(r).unwrap()));
        }
        for r in 1..=n {
            y.push(sys.specht_matrix(shape, &sys.y(r).unwrap()));
        }
    }
    SpechtModule { shape, dim, t, l, psi, y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarMode;
    use crate::seminormal::GammaSeed;
    use crate::tableaux::Combinatorics;
    use std::sync::Arc;

    fn build(n: usize, kappa: &[i64], e: u32, mode: Mode, kind: SystemKind) -> SeminormalSystem {
        let comb = Arc::new(Combinatorics::new(n, kappa, e).unwrap());
        let se = if mode == Mode::GenericT { 0 } else { e };
        let sm = Arc::new(ScalarMode::new(mode, se, 40).unwrap());
        let seed = if kind == SystemKind::Diamond { GammaSeed::Klr } else { GammaSeed::Murphy };
        SeminormalSystem::build(comb, sm, kind, seed).unwrap()
    }

    #[test]
    fn hecke_all_kinds() {
        for kind in [SystemKind::Rational, SystemKind::Murphy] {
            let sys = build(3, &[0], 0, Mode::GenericT, kind);
            let rep = verify_hecke_relations(&sys);
            assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
        let sys = build(3, &[6, 0], 3, Mode::CycloLocal, SystemKind::Diamond);
        let rep = verify_hecke_relations(&sys);
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        let sys = build(3, &[0, 0], 0, Mode::LinearQuiver, SystemKind::LinearQuiver);
        let rep = verify_hecke_relations(&sys);
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn axioms_and_fault() {
        let mut sys = build(4, &[0], 0, Mode::GenericT, SystemKind::Murphy);
        assert!(validate_sncs(&sys).all_pass());
        let t = (0..sys.len()).find(|&t| !sys.alpha(2, t).is_zero()).unwrap();
        let neg = -sys.alpha(2, t);
        sys.corrupt_alpha(2, t, neg);
        let rep = validate_sncs(&sys);
        assert!(rep.failures().any(|f| f.relation == "product"));
        let sys = build(3, &[5, 0], 2, Mode::CycloLocal, SystemKind::Diamond);
        let rep = validate_sncs(&sys);
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn row_and_column_actions() {
        let sys = build(3, &[0], 0, Mode::GenericT, SystemKind::Rational);
        let row = sys.comb().shape_index(&"(3)".parse().unwrap()).unwrap();
        let col = sys.comb().shape_index(&"(1,1,1)".parse().unwrap()).unwrap();
        let m = specht_action(&sys, row);
        assert_eq!(m.t[0][0][0], sys.scalars().t().clone());
        let m = specht_action(&sys, col);
        assert_eq!(m.t[1][0][0], Scalar::from_int(-1));
    }

    #[test]
    fn idempotent_formula() {
        let sys = build(3, &[4, 0], 0, Mode::GenericT, SystemKind::Murphy);
        let contents = all_content_values(&sys);
        for t in 0..sys.len() {
            assert!(crosscheck_idempotent_formula(&sys, t, &contents));
        }
        assert!(!crosscheck_idempotent_formula(&sys, 0, &contents[..1]));
    }

    #[test]
    fn inversion_conditions() {
        let sys = build(2, &[0], 3, Mode::CycloLocal, SystemKind::Murphy);
        assert!(matches!(sys.inv_m_on(1, &[1, 0]), Err(crate::Error::ResidueConditionViolated(_))));
        assert!(sys.inv_ldiff_on(1, &[0, 0]).is_err());
        assert!(sys.inv_m_on(1, &[2, 2]).unwrap().is_zero());
        assert_eq!(sys.f_res(&[2, 2]), Element::zero());
    }

    #[test]
    fn flavor_mismatch() {
        let sys = build(2, &[0], 0, Mode::GenericT, SystemKind::Murphy);
        assert!(sys.involute(&sys.one(), Flavor::Diamond).is_err());
    }
}
