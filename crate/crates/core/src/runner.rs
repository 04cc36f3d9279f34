//! Run configuration, suite dispatch and the JSON report.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::graded::{
    b_basis, compare_b_bases, gamma_units, graded_consistency_check, specialize_b, verify_b_basis, verify_b_prime,
    verify_psi_basis, BBasis, PsiBasis, Refinement,
};
use crate::gram::{gram_det_report, positivity_sweep, GramReport, GramVariant};
use crate::klr::{
    build_deformed_generators, crosscheck_klr_lift, specialize_and_verify_klr, specialize_cyclo, specialize_fp,
    specialized_nilpotency, verify_deformation_relations, verify_linear_quiver_products, verify_nilpotent_products,
    DeformedGenerators,
};
use crate::report::VerificationReport;
use crate::scalar::{Mode, ScalarMode};
use crate::seminormal::{
    validate_sncs, verify_gamma_paths, verify_hecke_relations, verify_idempotents, verify_intertwiners, GammaSeed,
    SeminormalSystem, SystemKind,
};
use crate::tableaux::{normalize_charge, std_tableaux, Combinatorics, Multipartition};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Combinatorics,
    Hecke,
    Deformation,
    Klr,
    Nilpotency,
    Gram,
    Psi,
    BBasis,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Combinatorics,
        Suite::Hecke,
        Suite::Deformation,
        Suite::Klr,
        Suite::Nilpotency,
        Suite::Gram,
        Suite::Psi,
        Suite::BBasis,
    ];

    /// Modes in which the suite makes sense.
    pub fn supports(self, mode: Mode) -> bool {
        match self {
            Suite::Combinatorics | Suite::Hecke | Suite::Gram => true,
            Suite::Deformation => mode != Mode::GenericT,
            Suite::Klr | Suite::Nilpotency | Suite::Psi => matches!(mode, Mode::CycloLocal | Mode::DegenerateP),
            Suite::BBasis => mode == Mode::CycloLocal,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Combinatorics => "combinatorics",
            Suite::Hecke => "hecke",
            Suite::Deformation => "deformation",
            Suite::Klr => "klr",
            Suite::Nilpotency => "nilpotency",
            Suite::Gram => "gram",
            Suite::Psi => "psi",
            Suite::BBasis => "b-basis",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

fn as_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub level: usize,
    pub e: u32,
    /// As given; each suite normalizes it for its own mode.
    pub charge: Vec<i64>,
    #[serde(serialize_with = "as_display")]
    pub mode: Mode,
    pub system: SystemKind,
    pub gamma: GammaSeed,
    pub suites: Vec<Suite>,
    pub variant: GramVariant,
    /// Also attach per-element data for the psi- and B-bases.
    pub dump_elements: bool,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Fills unset fields with the defaults for `mode` and checks
    /// compatibility. `e = None` means 0 in linear-quiver mode and 2 elsewhere.
    #[allow(clippy::too_many_arguments)]
    pub fn resolve(
        n: usize,
        level: usize,
        e: Option<u32>,
        charge: Option<Vec<i64>>,
        mode: Mode,
        system: Option<SystemKind>,
        gamma: Option<GammaSeed>,
        suites: Vec<Suite>,
    ) -> Result<Self, Error> {
        if level == 0 {
            return Err(Error::Config("level must be positive".into()));
        }
        let e = match (mode, e) {
            (Mode::LinearQuiver, Some(k)) if k != 0 => {
                return Err(Error::Config("linear-quiver mode has e = 0".into()))
            }
            (Mode::LinearQuiver, _) => 0,
            (_, Some(k)) => k,
            (_, None) => 2,
        };
        let charge = charge.unwrap_or_else(|| vec![0; level]);
        if charge.len() != level {
            return Err(Error::Config(format!("charge has {} entries but the level is {level}", charge.len())));
        }
        ScalarMode::new(mode, if mode == Mode::GenericT { 0 } else { e }, 4)?;
        let system = system.unwrap_or(match mode {
            Mode::GenericT => SystemKind::Murphy,
            Mode::LinearQuiver => SystemKind::LinearQuiver,
            _ => SystemKind::Diamond,
        });
        match (system, mode) {
            (SystemKind::Diamond, Mode::CycloLocal | Mode::DegenerateP) => {}
            (SystemKind::Diamond, _) => return Err(Error::Config(format!("the diamond system needs residues, not mode {mode}"))),
            (SystemKind::LinearQuiver, Mode::LinearQuiver) => {}
            (SystemKind::LinearQuiver, _) => return Err(Error::Config(format!("linear-quiver system in mode {mode}"))),
            _ => {}
        }
        let gamma = gamma.unwrap_or(if system == SystemKind::Diamond { GammaSeed::Klr } else { GammaSeed::Murphy });
        let suites = if suites.is_empty() {
            Suite::ALL.into_iter().filter(|s| s.supports(mode)).collect()
        } else {
            for s in &suites {
                if !s.supports(mode) {
                    return Err(Error::Config(format!("suite {s} does not run in mode {mode}")));
                }
            }
            suites
        };
        Ok(RunConfig {
            n,
            level,
            e,
            charge,
            mode,
            system,
            gamma,
            suites,
            variant: GramVariant::MurphyGeneric,
            dump_elements: false,
            jobs: None,
        })
    }

    /// The charge used for seminormal systems of this mode.
    fn system_charge(&self) -> Result<Vec<i64>, Error> {
        match self.mode {
            Mode::GenericT => crate::gram::strict_charge(&self.charge, self.n, self.e),
            Mode::LinearQuiver => Ok(self.charge.clone()),
            _ => normalize_charge(&self.charge, self.n, self.e, false),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gram: Vec<GramReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub config: RunConfig,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per report.
    pub fn summary(&self) -> Vec<String> {
        let mut out = vec![];
        for s in &self.suites {
            for r in &s.reports {
                out.push(format!("[{}] {} {}", if r.all_pass() { "PASS" } else { "FAIL" }, s.suite, r.summary()));
            }
            let gp = s.gram.iter().filter(|g| g.pass()).count();
            if !s.gram.is_empty() {
                out.push(format!(
                    "[{}] {} Gram determinants: {gp}/{} shapes pass",
                    if gp == s.gram.len() { "PASS" } else { "FAIL" },
                    s.suite,
                    s.gram.len()
                ));
            }
        }
        out
    }
}

/// `sum |Std(lam)|^2 = level^n n!`.
pub fn rank_check(n: usize, level: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("rank (n={n}, level {level})"));
    let total: u128 = Multipartition::all(n, level).iter().map(|l| (std_tableaux(l).len() as u128).pow(2)).sum();
    let want = (level as u128).pow(n as u32) * (1..=n as u128).product::<u128>();
    rep.record("sum |Std(lam)|^2 = level^n n!", format!("{total} vs {want}"), total == want, Some(format!("{total}")));
    rep
}

fn error_report(title: &str, err: &Error) -> VerificationReport {
    let mut rep = VerificationReport::new(title);
    rep.fail("suite error", title, err.to_string());
    rep
}

fn build_system(cfg: &RunConfig) -> Result<SeminormalSystem, Error> {
    let kappa = cfg.system_charge()?;
    let ce = if cfg.mode == Mode::LinearQuiver { 0 } else { cfg.e };
    let comb = Arc::new(Combinatorics::new(cfg.n, &kappa, ce)?);
    let se = if cfg.mode == Mode::GenericT { 0 } else { cfg.e };
    let radius = 2 * cfg.n as i64 + kappa.iter().map(|k| k.abs()).max().unwrap_or(0) * 2 + 4;
    let sm = Arc::new(ScalarMode::new(cfg.mode, se, radius)?);
    SeminormalSystem::build(comb, sm, cfg.system, cfg.gamma)
}

fn generators(cfg: &RunConfig) -> Result<Arc<DeformedGenerators>, Error> {
    Ok(Arc::new(build_deformed_generators(cfg.n, &cfg.charge, cfg.e, cfg.mode)?))
}

fn run_hecke(cfg: &RunConfig) -> Result<Vec<VerificationReport>, Error> {
    let sys = build_system(cfg)?;
    Ok(vec![
        verify_hecke_relations(&sys),
        validate_sncs(&sys),
        verify_gamma_paths(&sys),
        verify_idempotents(&sys),
        verify_intertwiners(&sys),
    ])
}

fn run_deformation(cfg: &RunConfig) -> Result<Vec<VerificationReport>, Error> {
    let g = generators(cfg)?;
    let mut out = vec![verify_deformation_relations(&g)];
    if cfg.mode == Mode::LinearQuiver {
        out.push(verify_linear_quiver_products(&g));
    } else {
        out.push(crosscheck_klr_lift(&g));
    }
    Ok(out)
}

fn run_nilpotency(cfg: &RunConfig) -> Result<Vec<VerificationReport>, Error> {
    let g = generators(cfg)?;
    let special = match cfg.mode {
        Mode::CycloLocal => specialized_nilpotency(&specialize_cyclo(&g)?, &g),
        _ => specialized_nilpotency(&specialize_fp(&g)?, &g),
    };
    Ok(vec![verify_nilpotent_products(&g), special])
}

fn run_psi(cfg: &RunConfig) -> Result<(Vec<VerificationReport>, Vec<Value>), Error> {
    let psi = PsiBasis::new(generators(cfg)?);
    let mut reps = vec![verify_psi_basis(&psi), graded_consistency_check(&psi)];
    if cfg.mode == Mode::CycloLocal {
        reps.push(gamma_units(psi.generators().system()));
    }
    let elements = if cfg.dump_elements { psi_elements(&psi) } else { vec![] };
    Ok((reps, elements))
}

fn run_b_basis(cfg: &RunConfig) -> Result<(Vec<VerificationReport>, Vec<Value>), Error> {
    let psi = PsiBasis::new(generators(cfg)?);
    let a = b_basis(&psi, Refinement::RowFirst)?;
    let b = b_basis(&psi, Refinement::ColumnFirst)?;
    let reps = vec![verify_b_basis(&psi, &a), compare_b_bases(&psi, &a, &b), verify_b_prime(&psi, &a)];
    let elements = if cfg.dump_elements { b_elements(&psi, &a) } else { vec![] };
    Ok((reps, elements))
}

/// Per element: pair, degree, `f`-coordinates and the specialized
/// psi-expansion.
pub fn psi_elements(psi: &PsiBasis) -> Vec<Value> {
    let sys = psi.generators().system();
    let comb = sys.comb();
    let sm = sys.scalars();
    psi.pairs()
        .iter()
        .map(|&p| {
            let el = psi.element(p);
            let mut f: Vec<_> = el.terms().map(|(&q, c)| (q, sm.render(c))).collect();
            f.sort();
            json!({
                "s": comb.tabs[p.0].tab.to_string(),
                "t": comb.tabs[p.1].tab.to_string(),
                "degree": psi.degree(p),
                "f_coords": f.into_iter().map(|((u, v), c)| json!([comb.tabs[u].tab.to_string(), comb.tabs[v].tab.to_string(), c])).collect::<Vec<_>>(),
            })
        })
        .collect()
}

/// Per element: pair, degree, the `p`-polynomials and `B'`.
pub fn b_elements(psi: &PsiBasis, b: &BBasis) -> Vec<Value> {
    let comb = psi.generators().system().comb();
    let tab = |k: usize| comb.tabs[k].tab.to_string();
    let mut pairs = b.pairs.clone();
    pairs.sort();
    pairs
        .iter()
        .map(|&p| {
            let mut polys: Vec<_> = b.polynomials(p);
            polys.sort_by_key(|(q, _)| *q);
            let special = specialize_b(psi, b, p);
            let (terms, prime) = match &special {
                Ok(s) => {
                    let render = |v: &[(crate::graded::Pair, crate::graded::Residue)]| {
                        let mut v: Vec<_> = v.to_vec();
                        v.sort_by_key(|(q, _)| *q);
                        v.iter().map(|((u, w), c)| json!([tab(*u), tab(*w), c.to_string()])).collect::<Vec<_>>()
                    };
                    (json!(render(&s.terms)), json!(render(&s.b_prime)))
                }
                Err(e) => (json!(e.to_string()), Value::Null),
            };
            json!({
                "s": tab(p.0),
                "t": tab(p.1),
                "degree": psi.degree(p),
                "p_polynomials": polys.iter().map(|((u, v), f)| json!([tab(*u), tab(*v), f.render("x")])).collect::<Vec<_>>(),
                "psi_coords_at_0": terms,
                "b_prime": prime,
            })
        })
        .collect()
}

fn run_one(cfg: &RunConfig, suite: Suite) -> SuiteResult {
    let mut res = SuiteResult { suite, pass: true, reports: vec![], gram: vec![], elements: vec![] };
    if cfg.n == 0 {
        let mut rep = rank_check(0, cfg.level);
        rep.title = format!("{suite} (n = 0: one empty multipartition, rank 1)");
        res.reports.push(rep);
        return res;
    }
    let title = format!("{suite} (n={}, e={}, mode {})", cfg.n, cfg.e, cfg.mode);
    let out: Result<(), Error> = (|| {
        match suite {
            Suite::Combinatorics => res.reports.push(rank_check(cfg.n, cfg.level)),
            Suite::Hecke => res.reports = run_hecke(cfg)?,
            Suite::Deformation => res.reports = run_deformation(cfg)?,
            Suite::Klr => res.reports.push(specialize_and_verify_klr(&*generators(cfg)?, true)?),
            Suite::Nilpotency => res.reports = run_nilpotency(cfg)?,
            Suite::Gram => {
                res.gram = gram_det_report(cfg.n, &cfg.charge, cfg.e, cfg.variant)?;
                res.reports.push(positivity_sweep(cfg.n, cfg.level, &cfg.system_charge()?));
            }
            Suite::Psi => (res.reports, res.elements) = run_psi(cfg)?,
            Suite::BBasis => (res.reports, res.elements) = run_b_basis(cfg)?,
        }
        Ok(())
    })();
    if let Err(e) = out {
        res.reports.push(error_report(&title, &e));
    }
    res.pass = res.reports.iter().all(|r| r.all_pass()) && res.gram.iter().all(|g| g.pass());
    res
}

/// Runs every selected suite in order on a pool of `cfg.jobs` workers.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    let suites = pool.install(|| cfg.suites.iter().map(|&s| run_one(cfg, s)).collect::<Vec<_>>());
    Ok(SuiteReport { config: cfg.clone(), pass: suites.iter().all(|s| s.pass), suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, level: usize, e: Option<u32>, mode: Mode, suites: Vec<Suite>) -> RunConfig {
        RunConfig::resolve(n, level, e, None, mode, None, None, suites).unwrap()
    }

    #[test]
    fn every_suite_small() {
        let c = cfg(3, 1, Some(2), Mode::CycloLocal, vec![]);
        assert_eq!(c.suites.len(), 8);
        let rep = run_suite(&c).unwrap();
        assert!(rep.pass, "{:?}", rep.summary());
    }

    #[test]
    fn empty_algebra_passes() {
        let rep = run_suite(&cfg(0, 2, None, Mode::CycloLocal, vec![])).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn config_errors() {
        assert!(RunConfig::resolve(3, 1, Some(3), None, Mode::LinearQuiver, None, None, vec![]).is_err());
        assert!(RunConfig::resolve(3, 2, None, Some(vec![0]), Mode::CycloLocal, None, None, vec![]).is_err());
        assert!(RunConfig::resolve(3, 1, None, None, Mode::GenericT, Some(SystemKind::Diamond), None, vec![]).is_err());
        assert!(RunConfig::resolve(3, 1, None, None, Mode::GenericT, None, None, vec![Suite::Klr]).is_err());
        assert!(RunConfig::resolve(3, 1, Some(4), None, Mode::DegenerateP, None, None, vec![]).is_err());
    }

    #[test]
    fn errors_fail_the_run() {
        let rep = error_report("hecke", &Error::Config("boom".into()));
        assert!(!rep.all_pass());
        let c = cfg(2, 1, Some(2), Mode::CycloLocal, vec![Suite::Combinatorics]);
        let mut out = run_suite(&c).unwrap();
        out.suites[0].reports.push(rep);
        out.suites[0].pass = out.suites[0].reports.iter().all(|r| r.all_pass());
        assert!(!out.suites[0].pass);
        assert!(out.summary().iter().any(|l| l.starts_with("[FAIL]")));
    }

    #[test]
    fn json_is_deterministic() {
        let c = cfg(3, 2, Some(2), Mode::CycloLocal, vec![Suite::Gram, Suite::Psi]);
        assert_eq!(run_suite(&c).unwrap().to_json(), run_suite(&c).unwrap().to_json());
    }
}
