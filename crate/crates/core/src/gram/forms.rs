//! Gram determinants of cell modules: the generic Murphy form, its `t = 1`
//! specialization and the graded form of the psi-basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::det::ratfunc_det;
use super::murphy::{gram_matrix, murphy_coords};
use crate::graded::PsiBasis;
use crate::klr::build_deformed_generators;
use crate::report::VerificationReport;
use crate::scalar::{
    cyclotomic_poly, factor_laurent_cyclotomic, is_prime, Cyclo, LaurentPoly, LocalClass, Mode, Scalar, ScalarMode,
};
use crate::seminormal::{GammaSeed, SeminormalSystem, SystemKind};
use crate::tableaux::{defect_degree_p, large_e_bound, shape_degree, tableau_degree, Combinatorics, Multipartition};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GramVariant {
    MurphyGeneric,
    DegenerateT1,
    PsiGraded,
}

impl fmt::Display for GramVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GramVariant::MurphyGeneric => "murphy-generic",
            GramVariant::DegenerateT1 => "degenerate-t1",
            GramVariant::PsiGraded => "psi-graded",
        })
    }
}

impl FromStr for GramVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "murphy-generic" => Ok(GramVariant::MurphyGeneric),
            "degenerate-t1" => Ok(GramVariant::DegenerateT1),
            "psi-graded" => Ok(GramVariant::PsiGraded),
            _ => Err(Error::Config(format!("unknown Gram variant '{s}'"))),
        }
    }
}

/// One residue block of the graded form.
#[derive(Clone, Debug, Serialize)]
pub struct BlockData {
    pub residues: Vec<i64>,
    pub dim: usize,
    pub valuation: Option<i64>,
    /// `deg_{e,i}(lam)`.
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub shape: String,
    pub variant: GramVariant,
    pub dim: usize,
    pub det: String,
    /// Power of `t` in the factorization, `l(lam)` when it passes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
    /// `e -> deg_e(lam)` or `p -> Deg_p(lam)`, nonzero entries only.
    pub exponents: BTreeMap<u32, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockData>,
    pub checks: VerificationReport,
}

impl GramReport {
    fn new(sys: &SeminormalSystem, shape: usize, variant: GramVariant) -> Self {
        let comb = sys.comb();
        GramReport {
            shape: comb.shapes[shape].to_string(),
            variant,
            dim: comb.shape_range(shape).len(),
            det: String::new(),
            shift: None,
            exponents: BTreeMap::new(),
            valuation: None,
            blocks: vec![],
            checks: VerificationReport::new(format!("Gram determinant {} ({variant})", comb.shapes[shape])),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.all_pass()
    }

    pub const CSV_HEADER: &'static str = "shape,variant,dim,det,shift,exponents,pass";

    pub fn csv_row(&self) -> String {
        let exps = self.exponents.iter().map(|(k, d)| format!("{k}:{d}")).collect::<Vec<_>>().join(" ");
        let shift = self.shift.map(|s| s.to_string()).unwrap_or_default();
        format!(
            "\"{}\",{},{},\"{}\",{},\"{}\",{}",
            self.shape,
            self.variant,
            self.dim,
            self.det,
            shift,
            exps,
            self.pass()
        )
    }
}

pub fn gram_csv(reports: &[GramReport]) -> String {
    let mut out = String::from(GramReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// `Phi_k(t)` evaluated in the scalars of `sm`.
pub fn cyclotomic_scalar(sm: &ScalarMode, k: u32) -> Scalar {
    let mut acc = Scalar::zero();
    for (j, c) in cyclotomic_poly(k).terms() {
        acc = &acc + &(&Scalar::constant(c.clone()) * &sm.t_pow(j));
    }
    acc
}

/// A Laurent polynomial in `t` evaluated in the scalars of `sm`.
pub fn laurent_in(sm: &ScalarMode, f: &LaurentPoly) -> Scalar {
    let mut acc = Scalar::zero();
    for (j, c) in f.terms() {
        acc = &acc + &(&Scalar::constant(c.clone()) * &sm.t_pow(j));
    }
    acc
}

/// Raises earlier charge entries until `kappa_l - kappa_{l+1} > n`. With
/// `e > 0` only multiples of `e` are added, so residues are kept.
pub fn strict_charge(kappa: &[i64], n: usize, e: u32) -> Result<Vec<i64>, Error> {
    if kappa.is_empty() {
        return Err(Error::Config("empty charge".into()));
    }
    let step = if e == 0 { 1 } else { e as i64 };
    let mut k = kappa.to_vec();
    for l in (0..k.len() - 1).rev() {
        while k[l] - k[l + 1] <= n as i64 {
            k[l] += step;
        }
    }
    Ok(k)
}

fn murphy_system(n: usize, kappa: &[i64], mode: Mode) -> Result<SeminormalSystem, Error> {
    let comb = Arc::new(Combinatorics::new(n, kappa, 0)?);
    let radius = kappa.iter().map(|k| k.abs()).max().unwrap_or(0) * 2 + 2 * n as i64 + 4;
    let sm = Arc::new(ScalarMode::new(mode, 0, radius)?);
    SeminormalSystem::build(comb, sm, SystemKind::Murphy, GammaSeed::Murphy)
}

/// The Murphy system over `Q(t)` with a strictly separated charge.
pub fn murphy_generic_system(n: usize, kappa: &[i64], e: u32) -> Result<SeminormalSystem, Error> {
    murphy_system(n, &strict_charge(kappa, n, e)?, Mode::GenericT)
}

/// The Murphy system at `t = 1` with a strictly separated charge.
pub fn degenerate_t1_system(n: usize, kappa: &[i64], e: u32) -> Result<SeminormalSystem, Error> {
    murphy_system(n, &strict_charge(kappa, n, e)?, Mode::DegenerateP)
}

fn check_eq(rep: &mut VerificationReport, rel: &str, inst: &str, sm: &ScalarMode, a: &Scalar, b: &Scalar) {
    if a == b {
        rep.pass(rel, inst);
    } else {
        rep.fail(rel, inst, format!("{} vs {}", sm.render(a), sm.render(b)));
    }
}

fn prod_gamma(sys: &SeminormalSystem, shape: usize) -> Scalar {
    sys.comb().shape_range(shape).fold(Scalar::one(), |acc, v| &acc * sys.gamma(v))
}

/// Murphy vectors, their Gram determinant, and both factorizations.
/// Returns the report and the determinant.
pub fn gram_generic(sys: &SeminormalSystem, shape: usize) -> (GramReport, Option<Scalar>) {
    let mut rep = GramReport::new(sys, shape, GramVariant::MurphyGeneric);
    let comb = sys.comb();
    let sm = sys.scalars();
    let lam = &comb.shapes[shape];
    let inst = lam.to_string();
    let range = comb.shape_range(shape);
    let vecs = match murphy_coords(sys, shape) {
        Ok(v) => v,
        Err(e) => {
            rep.checks.fail("Murphy vectors", inst, e.to_string());
            return (rep, None);
        }
    };
    let triangular = vecs.iter().all(|m| {
        m.coords[m.tab - range.start].is_one()
            && m.coords.iter().enumerate().all(|(k, a)| a.is_zero() || comb.dominates(range.start + k, m.tab))
    });
    rep.checks.record("Murphy vectors unitriangular", inst.clone(), triangular, Some("support off the dominance cone".into()));
    let rows: Vec<Vec<Scalar>> = vecs.into_iter().map(|m| m.coords).collect();
    let g = gram_matrix(sys, shape, &rows);
    let symmetric = (0..g.len()).all(|i| (0..i).all(|j| g[i][j] == g[j][i]));
    rep.checks.record("Gram matrix symmetric", inst.clone(), symmetric, Some("asymmetric entry".into()));
    let det = ratfunc_det(&g);
    rep.det = sm.render(&det);
    check_eq(&mut rep.checks, "det = prod gamma_t", &inst, sm, &det, &prod_gamma(sys, shape));

    let kappa = &comb.kappa;
    let n = comb.n;
    let ell: i64 = range.clone().map(|t| comb.tabs[t].tab.length() as i64).sum();
    let bound = large_e_bound(n, kappa);
    for e in 2..=bound as u32 {
        let d = shape_degree(lam, kappa, e);
        if d != 0 {
            rep.exponents.insert(e, d);
        }
    }
    let d0 = shape_degree(lam, kappa, 0);
    rep.checks.record("deg_0(lam) = 0", inst.clone(), d0 == 0, Some(format!("deg_0 = {d0}")));
    let mut closed = sm.t_pow(ell);
    for (&e, &d) in &rep.exponents {
        closed = &closed * &cyclotomic_scalar(sm, e).pow(d);
    }
    check_eq(&mut rep.checks, "det = t^l(lam) prod Phi_e^deg_e(lam)", &inst, sm, &det, &closed);

    match LaurentPoly::from_ratfunc(&det).ok_or_else(|| "not a Laurent polynomial".to_string()).and_then(|f| {
        factor_laurent_cyclotomic(&f).map_err(|e| e.to_string())
    }) {
        Ok(fac) => {
            rep.shift = Some(fac.shift);
            let found: BTreeMap<u32, i64> = fac.multiplicities.iter().map(|(&k, &m)| (k, m as i64)).collect();
            if !fac.is_pure() {
                rep.checks.fail("factorization", inst.clone(), format!("residual {} sign {}", fac.residual, fac.sign));
            } else if fac.shift != ell || found != rep.exponents {
                rep.checks.fail(
                    "factorization",
                    inst.clone(),
                    format!("t^{} {found:?}, expected t^{ell} {:?}", fac.shift, rep.exponents),
                );
            } else {
                rep.checks.pass("factorization", inst.clone());
            }
        }
        Err(w) => rep.checks.fail("factorization", inst.clone(), w),
    }

    for t in range {
        let d = &comb.tabs[t];
        let mut want = sm.t_pow(d.tab.length() as i64);
        for e in 2..=bound as u32 {
            let k = tableau_degree(&d.tab, kappa, e);
            if k != 0 {
                want = &want * &cyclotomic_scalar(sm, e).pow(k);
            }
        }
        check_eq(&mut rep.checks, "gamma_t = t^l(d(t)) prod Phi_e^deg_e(t)", &d.tab.to_string(), sm, sys.gamma(t), &want);
    }
    (rep, Some(det))
}

/// The same form at `t = 1`, against `prod_p p^{Deg_p(lam)}` and, when
/// given, the generic determinant evaluated at `t = 1`.
pub fn gram_t1(sys: &SeminormalSystem, shape: usize, generic: Option<&Scalar>) -> GramReport {
    let mut rep = GramReport::new(sys, shape, GramVariant::DegenerateT1);
    let comb = sys.comb();
    let sm = sys.scalars();
    let lam = &comb.shapes[shape];
    let inst = lam.to_string();
    let rows: Vec<Vec<Scalar>> = match murphy_coords(sys, shape) {
        Ok(v) => v.into_iter().map(|m| m.coords).collect(),
        Err(e) => {
            rep.checks.fail("Murphy vectors", inst, e.to_string());
            return rep;
        }
    };
    let det = ratfunc_det(&gram_matrix(sys, shape, &rows));
    rep.det = sm.render(&det);
    check_eq(&mut rep.checks, "det = prod gamma_t", &inst, sm, &det, &prod_gamma(sys, shape));
    let bound = large_e_bound(comb.n, &comb.kappa);
    let mut want = Scalar::one();
    for p in (2..=bound as u32).filter(|&p| is_prime(p)) {
        let d = defect_degree_p(lam, &comb.kappa, p);
        rep.checks.record("Deg_p(lam) >= 0", format!("{inst} p={p}"), d >= 0, Some(format!("Deg_{p} = {d}")));
        if d != 0 {
            rep.exponents.insert(p, d);
            want = &want * &Scalar::from_int(p as i64).pow(d);
        }
    }
    check_eq(&mut rep.checks, "det = prod p^Deg_p(lam)", &inst, sm, &det, &want);
    if let Some(g) = generic {
        match g.eval(&Cyclo::one()) {
            Some(v) => check_eq(&mut rep.checks, "generic determinant at t = 1", &inst, sm, &det, &Scalar::constant(v)),
            None => rep.checks.fail("generic determinant at t = 1", inst, "pole at t = 1"),
        }
    }
    rep
}

/// The graded form `<psi_s, psi_t>`: coordinates are the `f_{t^lam v}`
/// coefficients of `psi_{t^lam t}`, and the form is `sum_v a_v b_v gamma_v`.
/// `generic` is the generic Murphy determinant for a charge with the same
/// residues.
pub fn gram_psi(psi: &PsiBasis, shape: usize, generic: Option<&LaurentPoly>) -> GramReport {
    let sys = psi.generators().system();
    let mut rep = GramReport::new(sys, shape, GramVariant::PsiGraded);
    let comb = sys.comb();
    let sm = sys.scalars();
    let lam = &comb.shapes[shape];
    let inst = lam.to_string();
    let range = comb.shape_range(shape);
    let init = comb.initial(shape);
    let rows: Vec<Vec<Scalar>> =
        range.clone().map(|t| range.clone().map(|w| psi.element((init, t)).coeff(init, w)).collect()).collect();
    let triangular = range.clone().zip(&rows).all(|(t, row)| {
        row[t - range.start].is_one()
            && row.iter().enumerate().all(|(k, a)| a.is_zero() || comb.gamma_dominates(range.start + k, t))
    });
    rep.checks.record("cell vectors unitriangular", inst.clone(), triangular, Some("support off the Gamma cone".into()));
    let g = gram_matrix(sys, shape, &rows);
    let det = ratfunc_det(&g);
    rep.det = sm.render(&det);
    check_eq(&mut rep.checks, "det = prod gamma_t", &inst, sm, &det, &prod_gamma(sys, shape));

    let deg: i64 = range.clone().map(|t| comb.tabs[t].degree).sum();
    rep.exponents.insert(comb.e, deg);
    rep.valuation = sm.valuation(&det);
    rep.checks.record(
        "x-valuation = deg_e(lam)",
        inst.clone(),
        rep.valuation == Some(deg),
        Some(format!("{:?} vs {deg}", rep.valuation)),
    );
    let phi = cyclotomic_scalar(sm, comb.e);
    let unit = sm.local_class(&det.div(&phi.pow(deg)));
    rep.checks.record("det / Phi_e^deg_e(lam) is a unit", inst.clone(), unit == LocalClass::Unit, Some(format!("{unit:?}")));

    let mut blocks: BTreeMap<&Vec<i64>, Vec<usize>> = BTreeMap::new();
    for t in range.clone() {
        blocks.entry(&comb.tabs[t].residues).or_default().push(t - range.start);
    }
    let mut cross_zero = true;
    for (a, ia) in &blocks {
        for (b, ib) in &blocks {
            if a != b && ia.iter().any(|&i| ib.iter().any(|&j| !g[i][j].is_zero())) {
                cross_zero = false;
            }
        }
    }
    rep.checks.record("<psi_s, psi_t> = 0 across residues", inst.clone(), cross_zero, Some("nonzero cross entry".into()));
    for (i, idx) in &blocks {
        let sub: Vec<Vec<Scalar>> = idx.iter().map(|&a| idx.iter().map(|&b| g[a][b].clone()).collect()).collect();
        let d = ratfunc_det(&sub);
        let bdeg: i64 = idx.iter().map(|&a| comb.tabs[range.start + a].degree).sum();
        let val = sm.valuation(&d);
        let binst = format!("{inst} i={i:?}");
        rep.checks.record("block valuation = deg_e,i(lam)", binst.clone(), val == Some(bdeg), Some(format!("{val:?} vs {bdeg}")));
        rep.checks.record("deg_e,i(lam) >= 0", binst, bdeg >= 0, Some(bdeg.to_string()));
        rep.blocks.push(BlockData { residues: (*i).clone(), dim: idx.len(), valuation: val, degree: bdeg });
    }
    if let Some(f) = generic {
        let q = det.div(&laurent_in(sm, f));
        let c = sm.local_class(&q);
        rep.checks.record("det = unit * ungraded det", inst, c == LocalClass::Unit, Some(format!("{c:?}: {}", sm.render(&q))));
    }
    rep
}

/// Reports for every shape, computed in parallel and returned in shape order.
pub fn gram_det_report(n: usize, kappa: &[i64], e: u32, variant: GramVariant) -> Result<Vec<GramReport>, Error> {
    let generic = murphy_generic_system(n, kappa, e)?;
    let shapes: Vec<usize> = (0..generic.comb().shapes.len()).collect();
    let generic_dets = || -> Vec<Option<Scalar>> { shapes.par_iter().map(|&s| gram_generic(&generic, s).1).collect() };
    Ok(match variant {
        GramVariant::MurphyGeneric => shapes.par_iter().map(|&s| gram_generic(&generic, s).0).collect(),
        GramVariant::DegenerateT1 => {
            let sys = degenerate_t1_system(n, kappa, e)?;
            let dets = generic_dets();
            shapes.par_iter().map(|&s| gram_t1(&sys, s, dets[s].as_ref())).collect()
        }
        GramVariant::PsiGraded => {
            if e < 2 {
                return Err(Error::Config("the graded form needs e >= 2".into()));
            }
            let gens = Arc::new(build_deformed_generators(n, kappa, e, Mode::CycloLocal)?);
            let psi = PsiBasis::new(gens);
            let dets = generic_dets();
            let comb = psi.generators().system().comb().clone();
            let generic_comb = generic.comb();
            comb.shapes
                .par_iter()
                .enumerate()
                .map(|(s, lam)| {
                    let g = generic_comb
                        .shape_index(lam)
                        .and_then(|k| dets[k].as_ref())
                        .and_then(LaurentPoly::from_ratfunc);
                    gram_psi(&psi, s, g.as_ref())
                })
                .collect()
        }
    })
}

/// `deg_e(lam) >= 0` for `e` in `{0, 2, ..., n+1}`, `Deg_p(lam) >= 0` for
/// primes `p <= n+1`, and `deg_e = deg_0` past the large-e bound. The
/// observed values are part of each instance.
pub fn positivity_sweep(n: usize, level: usize, kappa: &[i64]) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("degree positivity (n={n}, level {level}, charge {kappa:?})"));
    let big = large_e_bound(n, kappa) as u32 + 1;
    for lam in Multipartition::all(n, level) {
        let d0 = shape_degree(&lam, kappa, 0);
        for e in std::iter::once(0).chain(2..=n as u32 + 1) {
            let d = shape_degree(&lam, kappa, e);
            rep.record("deg_e(lam) >= 0", format!("{lam} e={e} deg={d}"), d >= 0, Some(d.to_string()));
        }
        for p in (2..=n as u32 + 1).filter(|&p| is_prime(p)) {
            let d = defect_degree_p(&lam, kappa, p);
            rep.record("Deg_p(lam) >= 0", format!("{lam} p={p} Deg={d}"), d >= 0, Some(d.to_string()));
        }
        let db = shape_degree(&lam, kappa, big);
        rep.record("deg_e = deg_0 for large e", format!("{lam} e={big}"), db == d0, Some(format!("{db} vs {d0}")));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_pass(r: &GramReport) {
        assert!(r.pass(), "{}: {:?}", r.shape, r.checks.failures().take(3).collect::<Vec<_>>());
    }

    #[test]
    fn generic_level_one() {
        for r in gram_det_report(4, &[0], 0, GramVariant::MurphyGeneric).unwrap() {
            assert_pass(&r);
        }
        let reps = gram_det_report(2, &[0], 0, GramVariant::MurphyGeneric).unwrap();
        let row = reps.iter().find(|r| r.shape == "(2)").unwrap();
        assert_eq!(row.exponents, BTreeMap::from([(2, 1)]));
        assert_eq!(row.shift, Some(0));
        let col = reps.iter().find(|r| r.shape == "(1,1)").unwrap();
        assert_eq!(col.det, "1");
    }

    #[test]
    fn generic_level_two() {
        for r in gram_det_report(3, &[0, 0], 0, GramVariant::MurphyGeneric).unwrap() {
            assert_pass(&r);
        }
    }

    #[test]
    fn degenerate_and_graded() {
        let reps = gram_det_report(2, &[0], 2, GramVariant::DegenerateT1).unwrap();
        reps.iter().for_each(assert_pass);
        assert_eq!(reps.iter().find(|r| r.shape == "(2)").unwrap().det, "2");
        for (n, kappa, e) in [(3usize, vec![0i64], 2u32), (3, vec![0, 1], 3)] {
            for r in gram_det_report(n, &kappa, e, GramVariant::DegenerateT1).unwrap() {
                assert_pass(&r);
            }
            for r in gram_det_report(n, &kappa, e, GramVariant::PsiGraded).unwrap() {
                assert_pass(&r);
            }
        }
    }

    #[test]
    fn sweep_and_csv() {
        assert!(positivity_sweep(4, 1, &[0]).all_pass());
        assert!(positivity_sweep(3, 2, &[0, 0]).all_pass());
        let reps = gram_det_report(2, &[0], 0, GramVariant::MurphyGeneric).unwrap();
        let csv = gram_csv(&reps);
        assert!(csv.starts_with(GramReport::CSV_HEADER));
        assert_eq!(csv.lines().count(), 3);
    }
}
