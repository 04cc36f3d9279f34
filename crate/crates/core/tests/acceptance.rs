//! Acceptance criteria 1-10. Each criterion prints one line with its
//! verdict, the number of exact checks and the runtime against its budget.
//! All comparisons are exact; the only tolerance is the runtime budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use heckelab::graded::{
    b_basis, compare_b_bases, gamma_units, graded_consistency_check, specialize_b, verify_b_basis, verify_b_prime,
    verify_psi_basis, PsiBasis, Refinement, Residue,
};
use heckelab::gram::{gram_det_report, positivity_sweep, strict_charge, GramVariant};
use heckelab::klr::{
    build_deformed_generators, crosscheck_klr_lift, specialize_and_verify_klr, specialize_cyclo, specialize_fp,
    specialized_nilpotency, verify_deformation_relations, verify_linear_quiver_products, verify_nilpotent_products,
};
use heckelab::report::VerificationReport;
use heckelab::runner::rank_check;
use heckelab::scalar::{Cyclo, Mode, ScalarMode, Q};
use heckelab::seminormal::{
    validate_sncs, verify_gamma_paths, verify_hecke_relations, verify_idempotents, verify_intertwiners, GammaSeed,
    SeminormalSystem, SystemKind,
};
use heckelab::tableaux::{normalize_charge, reduced_word_largest_first, Combinatorics, StdTableau};

/// Tally of one criterion.
#[derive(Default)]
struct Tally {
    passed: usize,
    failed: Vec<String>,
}

impl Tally {
    fn add(&mut self, rep: &VerificationReport) {
        self.passed += rep.passed;
        for f in rep.failures().take(2) {
            self.failed.push(format!("{}: {} {} {}", rep.title, f.relation, f.instance, f.witness.clone().unwrap_or_default()));
        }
        if rep.failed > 2 {
            self.failed.push(format!("{}: {} more", rep.title, rep.failed - 2));
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(what.into());
        }
    }
}

fn system(n: usize, kappa: &[i64], e: u32, mode: Mode, kind: SystemKind) -> SeminormalSystem {
    let (kappa, ce, se) = match mode {
        Mode::GenericT => (strict_charge(kappa, n, e).unwrap(), e, 0),
        Mode::LinearQuiver => (kappa.to_vec(), 0, 0),
        _ => (normalize_charge(kappa, n, e, false).unwrap(), e, e),
    };
    let comb = Arc::new(Combinatorics::new(n, &kappa, ce).unwrap());
    let sm = Arc::new(ScalarMode::new(mode, se, 2 * n as i64 + 2 * kappa.iter().map(|k| k.abs()).max().unwrap() + 4).unwrap());
    let seed = if kind == SystemKind::Diamond { GammaSeed::Klr } else { GammaSeed::Murphy };
    SeminormalSystem::build(comb, sm, kind, seed).unwrap()
}

/// Level-one and level-two charges used throughout.
fn charges(level: usize) -> Vec<Vec<i64>> {
    match level {
        1 => vec![vec![0]],
        _ => vec![vec![0, 0], vec![0, 1]],
    }
}

fn criterion_1() -> Tally {
    let mut t = Tally::default();
    for n in 0..=5 {
        t.add(&rank_check(n, 1));
    }
    for n in 0..=4 {
        t.add(&rank_check(n, 2));
    }
    // the indexing used by every system agrees with the enumeration
    for (n, l) in [(5usize, 1usize), (4, 2)] {
        let comb = Combinatorics::new(n, &vec![0; l], 0).unwrap();
        let total: usize = (0..comb.shapes.len()).map(|s| comb.shape_range(s).len().pow(2)).sum();
        t.check(total == l.pow(n as u32) * (1..=n).product::<usize>(), format!("indexed rank n={n} level {l}"));
    }
    t
}

fn criterion_2() -> Tally {
    let mut t = Tally::default();
    for (l, nmax) in [(1usize, 5usize), (2, 4)] {
        for n in 1..=nmax {
            for kappa in charges(l) {
                for e in [2u32, 3] {
                    for kind in [SystemKind::Murphy, SystemKind::Diamond] {
                        t.add(&verify_hecke_relations(&system(n, &kappa, e, Mode::CycloLocal, kind)));
                    }
                }
            }
        }
    }
    t
}

fn criterion_3() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=4 {
            for kappa in charges(l) {
                for e in [2u32, 3, 4] {
                    let g = build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap();
                    t.add(&verify_deformation_relations(&g));
                    t.add(&crosscheck_klr_lift(&g));
                }
            }
        }
    }
    t
}

fn criterion_4() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=4 {
            for kappa in charges(l) {
                for e in [2u32, 3, 4] {
                    let g = build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap();
                    match specialize_and_verify_klr(&g, true) {
                        Ok(rep) => t.add(&rep),
                        Err(err) => t.check(false, format!("n={n} {kappa:?} e={e}: {err}")),
                    }
                }
            }
        }
    }
    for n in 1..=4 {
        let g = build_deformed_generators(n, &[0], 3, Mode::DegenerateP).unwrap();
        match specialize_and_verify_klr(&g, true) {
            Ok(rep) => t.add(&rep),
            Err(err) => t.check(false, format!("degenerate n={n}: {err}")),
        }
    }
    t
}

fn criterion_5() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=4 {
            for kappa in charges(l) {
                for variant in [GramVariant::MurphyGeneric, GramVariant::DegenerateT1] {
                    for r in gram_det_report(n, &kappa, 0, variant).unwrap() {
                        t.add(&r.checks);
                    }
                }
                t.add(&positivity_sweep(n, l, &strict_charge(&kappa, n, 0).unwrap()));
            }
        }
    }
    t
}

fn criterion_6() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=3 {
            for kappa in charges(l) {
                for e in [2u32, 3] {
                    let g = Arc::new(build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap());
                    let psi = PsiBasis::new(g.clone());
                    t.add(&verify_psi_basis(&psi));
                    t.add(&graded_consistency_check(&psi));
                    t.add(&gamma_units(g.system()));
                }
            }
        }
    }
    t
}

fn criterion_7() -> Tally {
    let mut t = Tally::default();
    let cases: Vec<(usize, Vec<i64>, u32)> = vec![
        (2, vec![0], 2),
        (3, vec![0], 2),
        (3, vec![0], 3),
        (2, vec![0, 0], 2),
        (3, vec![0, 0], 2),
        (3, vec![0, 1], 3),
        (2, vec![0, 1, 0], 3),
        (3, vec![0, 1, 0], 3),
    ];
    for (n, kappa, e) in cases {
        let g = Arc::new(build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap());
        let psi = PsiBasis::new(g.clone());
        let a = b_basis(&psi, Refinement::RowFirst).unwrap();
        let b = b_basis(&psi, Refinement::ColumnFirst).unwrap();
        t.add(&verify_b_basis(&psi, &a));
        t.add(&compare_b_bases(&psi, &a, &b));
        t.add(&verify_b_prime(&psi, &a));
        let other = PsiBasis::with_words(g.clone(), |s| reduced_word_largest_first(&s.permutation()));
        let c = b_basis(&other, Refinement::RowFirst).unwrap();
        t.add(&compare_b_bases(&psi, &a, &c));

        if n == 3 && kappa == [0, 1, 0] {
            // charge (9,4,0) after normalization, lam = (1|1|1)
            let comb = g.system().comb();
            t.check(comb.kappa == [9, 4, 0], format!("normalized charge {:?}", comb.kappa));
            let col = comb.index_of(&"3|2|1".parse::<StdTableau>().unwrap()).unwrap();
            let init = comb.index_of(&"1|2|3".parse::<StdTableau>().unwrap()).unwrap();
            let sp = specialize_b(&psi, &a, (init, col)).unwrap();
            let ratio = Residue::Cyclo(Cyclo::rational(Q::new(2.into(), 3.into())));
            let mut got = sp.b_prime.clone();
            got.sort_by_key(|(q, _)| *q);
            let mut want = vec![((init, col), Residue::Cyclo(Cyclo::one())), ((init, init), ratio)];
            want.sort_by_key(|(q, _)| *q);
            t.check(got == want, format!("worked example: B' = {got:?}"));
            let both_degree_one = comb.tabs[col].degree == 1 && comb.tabs[init].degree == 1;
            t.check(both_degree_one, "both tableaux of the example have degree 1");
        }
    }
    t
}

fn criterion_8() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=4 {
            for kappa in charges(l) {
                for e in [2u32, 3] {
                    let g = build_deformed_generators(n, &kappa, e, Mode::CycloLocal).unwrap();
                    t.add(&verify_nilpotent_products(&g));
                    t.add(&specialized_nilpotency(&specialize_cyclo(&g).unwrap(), &g));
                }
            }
        }
    }
    for n in 1..=4 {
        let g = build_deformed_generators(n, &[0], 3, Mode::DegenerateP).unwrap();
        t.add(&verify_nilpotent_products(&g));
        t.add(&specialized_nilpotency(&specialize_fp(&g).unwrap(), &g));
    }
    // e > n: y_r^level = 0
    for kappa in charges(2) {
        let g = build_deformed_generators(4, &kappa, 5, Mode::CycloLocal).unwrap();
        let rep = specialized_nilpotency(&specialize_cyclo(&g).unwrap(), &g);
        t.check(rep.relations().iter().any(|r| r == "y_r^level = 0"), "y_r^level check ran");
        t.add(&rep);
    }
    t
}

fn criterion_9() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=3 {
            for kappa in charges(l) {
                let g = build_deformed_generators(n, &kappa, 0, Mode::LinearQuiver).unwrap();
                t.check(g.system().scalars().t_is_one(), "t = 1 in the linear-quiver mode");
                t.add(&validate_sncs(g.system()));
                t.add(&verify_linear_quiver_products(&g));
                t.add(&verify_deformation_relations(&g));
                t.add(&verify_hecke_relations(g.system()));
            }
        }
    }
    t
}

fn criterion_10() -> Tally {
    let mut t = Tally::default();
    for l in 1..=2 {
        for n in 1..=4 {
            for kappa in charges(l) {
                let mut systems = vec![
                    system(n, &kappa, 0, Mode::GenericT, SystemKind::Murphy),
                    system(n, &kappa, 0, Mode::GenericT, SystemKind::Rational),
                ];
                for e in [2u32, 3] {
                    systems.push(system(n, &kappa, e, Mode::CycloLocal, SystemKind::Murphy));
                    systems.push(system(n, &kappa, e, Mode::CycloLocal, SystemKind::Diamond));
                }
                for sys in &systems {
                    t.add(&validate_sncs(sys));
                    t.add(&verify_gamma_paths(sys));
                    t.add(&verify_idempotents(sys));
                    t.add(&verify_intertwiners(sys));
                }
            }
        }
    }
    t
}

/// Name, runtime budget in seconds, body.
type Criterion = (&'static str, u64, fn() -> Tally);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("rank", 1, criterion_1),
        ("Hecke relations", 60, criterion_2),
        ("deformed KLR presentation", 300, criterion_3),
        ("specialization at x = 0 and mod p", 120, criterion_4),
        ("Gram determinant factorization", 300, criterion_5),
        ("psi-basis", 180, criterion_6),
        ("B-basis", 300, criterion_7),
        ("nilpotency", 120, criterion_8),
        ("linear-quiver mode", 120, criterion_9),
        ("property suites", 180, criterion_10),
    ];
    let mut lines = vec![];
    let mut all = true;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = run();
        let dt = start.elapsed();
        let in_time = dt <= Duration::from_secs(*budget);
        let ok = tally.failed.is_empty() && in_time;
        all &= ok;
        let line = format!(
            "criterion {:>2} {:<36} {} ({} checks, {} failed, {:.2}s / {}s)",
            k + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            tally.passed,
            tally.failed.len(),
            dt.as_secs_f64(),
            budget
        );
        println!("{line}");
        for f in &tally.failed {
            println!("    {f}");
        }
        if !in_time {
            println!("    over the runtime budget");
        }
        lines.push(line);
    }
    assert!(all, "failing criteria:\n{}", lines.iter().filter(|l| l.contains("FAIL")).cloned().collect::<Vec<_>>().join("\n"));
}
