//! The deformed KLR presentation, checked as element identities.

use super::generators::DeformedGenerators;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::seminormal::{congruent, Element};
use crate::tableaux::Edge;

fn check(rep: &mut VerificationReport, g: &DeformedGenerators, rel: &str, inst: String, lhs: &Element, rhs: &Element) {
    match lhs.first_difference(rhs) {
        None => rep.pass(rel, inst),
        Some(((s, t), a, b)) => {
            let c = g.system().comb();
            let sm = g.system().scalars();
            rep.fail(rel, inst, format!("f[{};{}]: {} vs {}", c.tabs[s].tab, c.tabs[t].tab, sm.render(&a), sm.render(&b)))
        }
    }
}

/// `rho_r(i) = î_r - î_{r+1}`.
pub fn rho(i: &[i64], r: usize) -> i64 {
    i[r - 1] - i[r]
}

/// Every relation of the deformed presentation for every residue sequence
/// with a standard tableau.
pub fn verify_deformation_relations(g: &DeformedGenerators) -> VerificationReport {
    let sys = g.system();
    let comb = sys.comb();
    let sm = sys.scalars();
    let n = g.n();
    let e = g.e();
    let mut rep = VerificationReport::new(format!("deformed KLR relations (n={n}, e={e}, mode {})", sm.mode()));
    let one = sys.one();
    let zero = Element::zero();
    let seqs = g.residues();

    // idempotents
    let mut total = Element::zero();
    for i in &seqs {
        let fi = g.f(i);
        total = total.add(&fi);
        for j in &seqs {
            let want = if i == j { fi.clone() } else { zero.clone() };
            check(&mut rep, g, "f_i f_j", format!("i={i:?} j={j:?}"), &g.mul(&fi, &g.f(j)), &want);
        }
    }
    check(&mut rep, g, "sum f_i", "all".into(), &total, &one);

    for i in &seqs {
        let fi = g.f(i);
        let is = format!("i={i:?}");
        // cyclotomic: prod over l with kappa_l = i_1 of (y_1 - t^{-î_1}(Q_l - [î_1]))
        let mut cyc = fi.clone();
        for (l, &k) in comb.kappa.iter().enumerate() {
            if congruent(k, i[0], e) {
                let q = sm.content_value(l + 1, k);
                let shift = &sm.t_pow(-i[0]) * &(&q - &sm.quantum(i[0]));
                cyc = g.mul(&g.y(1).sub(&g.scalar(&shift)), &cyc);
            }
        }
        check(&mut rep, g, "cyclotomic", is.clone(), &cyc, &zero);

        for r in 1..=n {
            check(&mut rep, g, "y f", format!("{is} r={r}"), &g.mul(g.y(r), &fi), &g.mul(&fi, g.y(r)));
            for s in r + 1..=n {
                check(&mut rep, g, "y y", format!("{is} r={r} s={s}"), &g.mul(g.y(r), g.y(s)), &g.mul(g.y(s), g.y(r)));
            }
        }

        for r in 1..n {
            let inst = format!("{is} r={r}");
            let psi = g.psi(r);
            let mut si = i.clone();
            si.swap(r - 1, r);
            check(&mut rep, g, "psi f", inst.clone(), &g.mul(psi, &fi), &g.mul(&g.f(&si), psi));

            let delta = if congruent(i[r - 1], i[r], e) { fi.clone() } else { zero.clone() };
            let lhs = g.mul(&g.mul(psi, g.y(r + 1)), &fi);
            let rhs = g.mul(&g.mul(g.y(r), psi), &fi).add(&delta);
            check(&mut rep, g, "psi y_{r+1}", inst.clone(), &lhs, &rhs);
            let lhs = g.mul(&g.mul(g.y(r + 1), psi), &fi);
            let rhs = g.mul(&g.mul(psi, g.y(r)), &fi).add(&delta);
            check(&mut rep, g, "y_{r+1} psi", inst.clone(), &lhs, &rhs);

            for s in 1..=n {
                if s != r && s != r + 1 {
                    let lhs = g.mul(&g.mul(psi, g.y(s)), &fi);
                    let rhs = g.mul(&g.mul(g.y(s), psi), &fi);
                    check(&mut rep, g, "psi y_s", format!("{inst} s={s}"), &lhs, &rhs);
                }
            }
            for s in r + 2..n {
                let lhs = g.mul(&g.mul(psi, g.psi(s)), &fi);
                let rhs = g.mul(&g.mul(g.psi(s), psi), &fi);
                check(&mut rep, g, "psi psi", format!("{inst} s={s}"), &lhs, &rhs);
            }

            let p = rho(i, r);
            let sq = g.mul(&g.mul(psi, psi), &fi);
            let a = g.y_shift(1 + p, r).sub(g.y(r + 1));
            let b = g.y_shift(1 - p, r + 1).sub(g.y(r));
            let want = match comb.edge(i[r - 1], i[r]) {
                Edge::Double => g.mul(&g.mul(&a, &b), &fi),
                Edge::Forward => g.mul(&a, &fi),
                Edge::Backward => g.mul(&b, &fi),
                Edge::Equal => zero.clone(),
                Edge::None => fi.clone(),
            };
            check(&mut rep, g, "psi^2", inst.clone(), &sq, &want);

            if r + 1 < n {
                let (p1, p2) = (g.psi(r), g.psi(r + 1));
                let lhs = g
                    .mul(&sys.mul_all(&[p1, p2, p1]), &fi)
                    .sub(&g.mul(&sys.mul_all(&[p2, p1, p2]), &fi));
                let want = if congruent(i[r + 1], i[r - 1], e) {
                    match comb.edge(i[r - 1], i[r]) {
                        Edge::Double => g
                            .y_shift(1 + p, r)
                            .add(&g.y_shift(1 + p, r + 2))
                            .sub(&g.y_shift(1 + p, r + 1))
                            .sub(&g.y_shift(1 - p, r + 1)),
                        Edge::Forward => g.scalar(&-&sm.t_pow(1 + p)),
                        Edge::Backward => one.clone(),
                        _ => zero.clone(),
                    }
                } else {
                    zero.clone()
                };
                check(&mut rep, g, "braid", inst.clone(), &lhs, &g.mul(&want, &fi));
            }
        }
    }
    rep
}

/// `prod_{c in D_r(i)} (y_r - [c]) f_i = 0` for all `r` and `i`.
pub fn verify_nilpotent_products(g: &DeformedGenerators) -> VerificationReport {
    let sys = g.system();
    let sm = sys.scalars();
    let mut rep = VerificationReport::new("nilpotency over the local ring");
    for i in g.residues() {
        for r in 1..=g.n() {
            let mut acc = g.f(&i);
            for c in sys.comb().diagonal_set(&i, r) {
                acc = g.mul(&g.y(r).sub(&g.scalar(&sm.quantum(c))), &acc);
            }
            check(&mut rep, g, "prod (y_r - [c]) f_i", format!("i={i:?} r={r}"), &acc, &Element::zero());
        }
    }
    rep
}

/// Left-action coefficient products of `psi_r` in linear-quiver mode against
/// the case table written in terms of the modified contents.
pub fn verify_linear_quiver_products(g: &DeformedGenerators) -> VerificationReport {
    let sys = g.system();
    let comb = sys.comb();
    let t = sys.scalars().t().clone();
    let one = Scalar::one();
    let mut rep = VerificationReport::new("linear quiver psi products");
    for r in 1..g.n() {
        let left = g.psi_left_beta(r);
        for s in 0..comb.len() {
            let Some(u) = comb.tabs[s].swap[r - 1] else { continue };
            // left coefficient B_r(s) is the f_us coefficient of psi_r f_ss
            let bs = &left.coeff(u, s) * sys.gamma(s);
            let bu = &left.coeff(s, u) * sys.gamma(u);
            let (cs, cu) = (sys.ev(r, s), sys.ev(r, u));
            let ps = cu - cs;
            let pu = cs - cu;
            let a = &(&one - cs) + &(&t * cu);
            let b = &(&one + &(&t * cs)) - cu;
            let d = &comb.tabs[s];
            let want = match comb.edge(d.residue(r), d.residue(r + 1)) {
                Edge::Equal => (&ps * &pu).inv().unwrap(),
                Edge::Double => &a * &b,
                Edge::Forward => b,
                Edge::Backward => a,
                Edge::None => one.clone(),
            };
            let got = &bs * &bu;
            let inst = format!("r={r} s={}", d.tab);
            if got == want {
                rep.pass("B_r(s) B_r(u)", inst);
            } else {
                rep.fail("B_r(s) B_r(u)", inst, format!("{got} vs {want}"));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::build_deformed_generators;
    use crate::scalar::Mode;

    #[test]
    fn small_cases() {
        for (n, kappa, e, mode) in [
            (3usize, vec![0i64], 2u32, Mode::CycloLocal),
            (3, vec![0], 3, Mode::CycloLocal),
            (3, vec![0, 1], 2, Mode::CycloLocal),
            (3, vec![0], 3, Mode::DegenerateP),
            (3, vec![0, 5], 0, Mode::LinearQuiver),
        ] {
            let g = build_deformed_generators(n, &kappa, e, mode).unwrap();
            let rep = verify_deformation_relations(&g);
            assert!(rep.all_pass(), "{mode} e={e} {:?}", rep.failures().take(3).collect::<Vec<_>>());
            if mode != Mode::LinearQuiver {
                assert!(verify_nilpotent_products(&g).all_pass());
            } else {
                let rep = verify_linear_quiver_products(&g);
                assert!(rep.all_pass(), "{:?}", rep.failures().take(3).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn corrupted_coefficient_is_caught() {
        let mut sys = crate::klr::build_klr_system(3, &[0], 3, Mode::CycloLocal).unwrap();
        let t = (0..sys.len()).find(|&t| !sys.beta(2, t).is_zero()).unwrap();
        let v = sys.beta(2, t).scale_int(2);
        sys.corrupt_beta(2, t, v);
        let g = crate::klr::DeformedGenerators::new(std::sync::Arc::new(sys)).unwrap();
        assert!(!verify_deformation_relations(&g).all_pass());
    }
}
