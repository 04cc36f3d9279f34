//! Degree bookkeeping for the psi-basis at `x = 0`, the local units
//! `gamma_t / Phi_e(t)^deg t`, integrality and a cellularity smoke test.

use super::psi::PsiBasis;
use crate::report::VerificationReport;
use crate::scalar::{cyclotomic_poly, LocalClass, Mode, Scalar};
use crate::seminormal::{Element, SeminormalSystem};
use crate::tableaux::cartan;

/// Right multiplication by each homogeneous generator moves every
/// specialized `psi_st` into degree `deg s + deg t + deg g`.
pub fn graded_consistency_check(psi: &PsiBasis) -> VerificationReport {
    let g = psi.generators();
    let n = g.n();
    let e = g.e();
    let mut gens: Vec<(String, Element, i64)> = vec![];
    for i in g.residues() {
        gens.push((format!("e({i:?})"), g.f(&i), 0));
    }
    for r in 1..=n {
        gens.push((format!("y_{r}"), g.y(r).clone(), 2));
    }
    for r in 1..n {
        for i in g.residues() {
            let d = -cartan(i[r - 1], i[r], e);
            gens.push((format!("psi_{r} e({i:?})"), g.mul(g.psi(r), &g.f(&i)), d));
        }
    }
    let mut rep = VerificationReport::new(format!("graded consistency (n={n}, e={e})"));
    for (name, h, d) in &gens {
        let rel = match *d {
            0 if name.starts_with('e') => "shift 0 (e(i))".to_string(),
            2 if name.starts_with('y') => "shift 2 (y_r)".to_string(),
            _ => "shift -c_ij (psi_r e(i))".to_string(),
        };
        for &p in psi.pairs() {
            let want = psi.degree(p) + d;
            let x = g.mul(psi.element(p), h);
            let inst = format!("{} {name}", psi.render_pair(p));
            match psi.expand_specialized(&x) {
                Ok(terms) => match terms.iter().find(|(q, _)| psi.degree(*q) != want) {
                    None => rep.pass(&rel, inst),
                    Some((q, v)) => rep.fail(
                        &rel,
                        inst,
                        format!("{v} at {} of degree {}, expected {want}", psi.render_pair(*q), psi.degree(*q)),
                    ),
                },
                Err(err) => rep.fail(&rel, inst, err.to_string()),
            }
        }
    }
    rep
}

/// `Phi_e(t)` as a scalar of the system's mode.
pub fn phi_e(sys: &SeminormalSystem) -> Scalar {
    let sm = sys.scalars();
    let mut acc = Scalar::zero();
    for (k, c) in cyclotomic_poly(sys.comb().e).terms() {
        acc = &acc + &(&Scalar::constant(c.clone()) * &sm.t_pow(k));
    }
    acc
}

/// `gamma_t = unit * Phi_e(t)^{deg t}` for every tableau.
pub fn gamma_units(sys: &SeminormalSystem) -> VerificationReport {
    let sm = sys.scalars();
    let mut rep = VerificationReport::new("gamma_t / Phi_e(t)^deg t");
    if sm.mode() != Mode::CycloLocal {
        rep.fail("local unit", "mode", format!("needs the cyclotomic mode, not {}", sm.mode()));
        return rep;
    }
    let phi = phi_e(sys);
    for (t, d) in sys.comb().tabs.iter().enumerate() {
        let q = sys.gamma(t).div(&phi.pow(d.degree));
        let class = sm.local_class(&q);
        if class == LocalClass::Unit {
            rep.pass("local unit", d.tab.to_string());
        } else {
            rep.fail("local unit", d.tab.to_string(), format!("{class:?}: {}", sm.render(&q)));
        }
    }
    rep
}

/// `Ok` when every psi-basis coefficient of `a` lies in the local ring,
/// otherwise the first offending coefficient and its position.
pub fn integrality_check(psi: &PsiBasis, a: &Element) -> Result<(), String> {
    let sm = psi.generators().system().scalars();
    let coeffs = psi.expand(a).map_err(|e| e.to_string())?;
    match coeffs.iter().find(|(_, v)| !sm.is_integral(v)) {
        None => Ok(()),
        Some((p, v)) => Err(format!("{} at psi{}", sm.render(v), psi.render_pair(*p))),
    }
}

/// For `h` and a shape, `psi_st h = sum_v b_v psi_sv` modulo more dominant
/// shapes with `b_v` independent of `s`.
pub fn cellularity_check(psi: &PsiBasis, hs: &[(String, Element)]) -> VerificationReport {
    let g = psi.generators();
    let comb = g.system().comb();
    let sm = g.system().scalars();
    let mut rep = VerificationReport::new("row independence of structure constants");
    for shape in 0..comb.shapes.len() {
        let range = comb.shape_range(shape);
        for t in range.clone() {
            for (name, h) in hs {
                let inst = format!("shape {} t={} h={name}", comb.shapes[shape], comb.tabs[t].tab);
                let mut reference: Option<Vec<(usize, Scalar)>> = None;
                let mut verdict = Ok(());
                for s in range.clone() {
                    let x = g.mul(psi.element((s, t)), h);
                    let coeffs = match psi.expand(&x) {
                        Ok(c) => c,
                        Err(e) => {
                            verdict = Err(e.to_string());
                            break;
                        }
                    };
                    let mut row: Vec<(usize, Scalar)> = vec![];
                    for ((u, v), c) in coeffs {
                        if comb.tabs[u].shape != shape {
                            continue;
                        }
                        if u != s {
                            verdict = Err(format!("term at psi{} from row {}", psi.render_pair((u, v)), comb.tabs[s].tab));
                        }
                        row.push((v, c));
                    }
                    row.sort_by_key(|(v, _)| *v);
                    match &reference {
                        None => reference = Some(row),
                        Some(r) if *r != row => {
                            verdict = Err(format!("row {} differs: {}", comb.tabs[s].tab, render_row(sm, &row)))
                        }
                        _ => {}
                    }
                }
                match verdict {
                    Ok(()) => rep.pass("GC2", inst),
                    Err(w) => rep.fail("GC2", inst, w),
                }
            }
        }
    }
    rep
}

fn render_row(sm: &crate::scalar::ScalarMode, row: &[(usize, Scalar)]) -> String {
    row.iter().map(|(v, c)| format!("{v}:{}", sm.render(c))).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::build_deformed_generators;
    use std::sync::Arc;

    fn assert_pass(rep: &VerificationReport) {
        assert!(rep.all_pass(), "{}: {:?}", rep.title, rep.failures().take(3).collect::<Vec<_>>());
    }

    #[test]
    fn consistency_small() {
        for (n, kappa, e) in [(3usize, vec![0i64], 2u32), (3, vec![0, 1], 3), (2, vec![0, 0], 2)] {
            let g = Arc::new(build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap());
            assert_pass(&gamma_units(g.system()));
            let psi = PsiBasis::new(g.clone());
            assert_pass(&graded_consistency_check(&psi));
            let hs: Vec<(String, Element)> = (1..n).map(|r| (format!("psi_{r}"), g.psi(r).clone())).collect();
            assert_pass(&cellularity_check(&psi, &hs));
        }
    }

    #[test]
    fn integrality_of_idempotents() {
        let g = Arc::new(build_deformed_generators(3, &[0], 2, Mode::CycloLocal).unwrap());
        let psi = PsiBasis::new(g.clone());
        for i in g.residues() {
            assert!(integrality_check(&psi, &g.f(&i)).is_ok());
        }
        // a primitive idempotent F_t of positive degree has a pole
        let sys = g.system();
        let t = (0..sys.len()).find(|&t| sys.comb().tabs[t].degree > 0).unwrap();
        assert!(integrality_check(&psi, &sys.f_prim(t)).is_err());
    }
}
