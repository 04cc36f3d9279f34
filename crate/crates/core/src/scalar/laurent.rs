//! Laurent polynomials, cyclotomic factor extraction and principal parts.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::cyclo::{cyclotomic_coeffs, totient, write_term, Cyclo};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::{Q, ScalarError};

/// `sum_k c[k] v^(low + k)`, trimmed at both ends.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i64,
    c: Vec<Cyclo>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, c: vec![] }
    }

    pub fn new(low: i64, c: Vec<Cyclo>) -> Self {
        let mut p = LaurentPoly { low, c };
        p.trim();
        p
    }

    pub fn monomial(a: Cyclo, k: i64) -> Self {
        LaurentPoly::new(k, vec![a])
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentPoly::new(0, p.coeffs().to_vec())
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead_zeros = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i64> {
        (!self.c.is_empty()).then(|| self.low + self.c.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> Cyclo {
        if k < self.low {
            return Cyclo::zero();
        }
        self.c.get((k - self.low) as usize).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Cyclo)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(move |(i, a)| (self.low + i as i64, a))
    }

    /// Interprets a rational function whose denominator is a monomial.
    pub fn from_ratfunc(f: &RatFunc) -> Option<Self> {
        let den = f.den();
        let k = den.valuation()?;
        if den.degree()? != k {
            return None;
        }
        let inv = den.lead().inv()?;
        Some(LaurentPoly::new(-(k as i64), f.num().scale(&inv).coeffs().to_vec()))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        if self.c.is_empty() {
            return RatFunc::zero();
        }
        let p = Poly::from_coeffs(self.c.clone());
        if self.low >= 0 {
            RatFunc::from_poly(p.shift_up(self.low as usize))
        } else {
            RatFunc::new(p, Poly::monomial(Cyclo::one(), (-self.low) as usize))
        }
    }

    pub fn render(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (k, a) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            match a.as_rational() {
                Some(q) => write_term(&mut s, &q, var, k, first).unwrap(),
                None => {
                    if !first {
                        s.push('+');
                    }
                    s.push_str(&format!("({})", a));
                    if k != 0 {
                        s.push_str(&format!("*{}^{}", var, k));
                    }
                }
            }
            first = false;
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// `Phi_k(t)` as a Laurent polynomial with integer coefficients.
pub fn cyclotomic_poly(k: u32) -> LaurentPoly {
    let c = cyclotomic_coeffs(k);
    LaurentPoly::new(0, c.iter().map(|a| Cyclo::rational(Q::from_integer(a.clone()))).collect())
}

/// `f = sign * t^shift * prod_k Phi_k^mult[k] * residual` with `residual`
/// coprime to every cyclotomic polynomial it could contain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycloFactorization {
    pub sign: i32,
    pub shift: i64,
    pub multiplicities: BTreeMap<u32, u32>,
    #[serde(serialize_with = "ser_display")]
    pub residual: LaurentPoly,
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CycloFactorization {
    /// True if `f` is exactly `t^shift * prod Phi_k^mult`.
    pub fn is_pure(&self) -> bool {
        self.sign == 1 && self.residual == LaurentPoly::monomial(Cyclo::one(), 0)
    }
}

/// Peels cyclotomic factors off a nonzero Laurent polynomial with rational
/// coefficients. Trial division covers every `k` with `phi(k) <= deg`.
pub fn factor_laurent_cyclotomic(f: &LaurentPoly) -> Result<CycloFactorization, ScalarError> {
    if f.is_zero() {
        return Err(ScalarError::ZeroInput("cyclotomic factorization of zero".into()));
    }
    let mut coeffs = Vec::with_capacity(f.c.len());
    for a in &f.c {
        coeffs.push(a.as_rational().ok_or_else(|| {
            ScalarError::NotRational(format!("coefficient {} is not rational", a))
        })?);
    }
    let shift = f.low;
    let mut g: Vec<Q> = coeffs;
    let mut mult = BTreeMap::new();
    let mut k: u32 = 1;
    loop {
        let deg = g.len() as u64 - 1;
        if deg == 0 {
            break;
        }
        let phi = totient(k as u64);
        // phi(k) >= sqrt(k/2), so no divisor beyond this bound can exist
        if (k as u64) > 2 * deg * deg + 2 {
            break;
        }
        if phi <= deg {
            let p: Vec<Q> = cyclotomic_coeffs(k).iter().map(|x| Q::from_integer(x.clone())).collect();
            let mut count = 0;
            while g.len() > p.len() - 1 {
                match exact_div(&g, &p) {
                    Some(q) => {
                        g = q;
                        count += 1;
                    }
                    None => break,
                }
            }
            if count > 0 {
                mult.insert(k, count);
            }
        }
        k += 1;
    }
    let lead = g.last().unwrap().clone();
    let sign = if lead.is_negative() { -1 } else { 1 };
    if sign < 0 {
        for a in g.iter_mut() {
            *a = -a.clone();
        }
    }
    Ok(CycloFactorization {
        sign,
        shift,
        multiplicities: mult,
        residual: LaurentPoly::new(0, g.into_iter().map(Cyclo::rational).collect()),
    })
}

fn exact_div(a: &[Q], b: &[Q]) -> Option<Vec<Q>> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![Q::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &b[db];
        for j in 0..=db {
            r[i + j] -= &c * &b[j];
        }
        q[i] = c;
    }
    r.iter().all(|x| x.is_zero()).then_some(q)
}

/// Negative-power part of the Laurent expansion at zero.
pub fn principal_part_at_zero(f: &RatFunc) -> LaurentPoly {
    if f.is_zero() {
        return LaurentPoly::zero();
    }
    let m = f.den().valuation().unwrap();
    if m == 0 {
        return LaurentPoly::zero();
    }
    // f = x^-m * N / D0 with D0(0) != 0; expand N/D0 to order m-1
    let d0 = f.den().shift_down(m);
    let series = power_series(f.num(), &d0, m);
    LaurentPoly::new(-(m as i64), series)
}

/// First `len` coefficients of `n/d` as a power series, `d(0) != 0`.
pub fn power_series(n: &Poly, d: &Poly, len: usize) -> Vec<Cyclo> {
    let inv0 = d.eval_zero().inv().expect("series denominator vanishes at zero");
    let mut out: Vec<Cyclo> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.coeff(k);
        for j in 1..=k.min(d.degree().unwrap_or(0)) {
            acc = &acc - &(&d.coeff(j) * &out[k - j]);
        }
        out.push(&acc * &inv0);
    }
    out
}

/// `f - principal_part(f)`, which is regular at zero.
pub fn regular_part_at_zero(f: &RatFunc) -> RatFunc {
    f - &principal_part_at_zero(f).to_ratfunc()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quantum(d: u32) -> LaurentPoly {
        LaurentPoly::new(0, vec![Cyclo::one(); d as usize])
    }

    #[test]
    fn quantum_six_factors() {
        let f = factor_laurent_cyclotomic(&quantum(6)).unwrap();
        assert!(f.is_pure());
        assert_eq!(f.multiplicities.keys().copied().collect::<Vec<_>>(), vec![2, 3, 6]);
    }

    #[test]
    fn shift_and_sign() {
        // -t^3 (1+t)^2
        let p = LaurentPoly::new(3, vec![Cyclo::from_int(-1), Cyclo::from_int(-2), Cyclo::from_int(-1)]);
        let f = factor_laurent_cyclotomic(&p).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.shift, 3);
        assert_eq!(f.multiplicities.get(&2), Some(&2));
    }

    #[test]
    fn residual_kept() {
        // (t^2 + 2)(t - 1)
        let p = LaurentPoly::new(0, vec![-2, 2, -1, 1].into_iter().map(Cyclo::from_int).collect());
        let f = factor_laurent_cyclotomic(&p).unwrap();
        assert_eq!(f.multiplicities.get(&1), Some(&1));
        assert!(!f.is_pure());
        assert_eq!(f.residual.render("t"), "t^2+2");
    }

    #[test]
    fn principal_part_of_simple_pole() {
        let x = RatFunc::x();
        // (x + 2) / (x^2 (1 - x)) = 2/x^2 + 3/x + 3 + ...
        let f = (&x + &RatFunc::from_int(2)).div(&(&(&x * &x) * &(&RatFunc::one() - &x)));
        let p = principal_part_at_zero(&f);
        assert_eq!(p.coeff(-2), Cyclo::from_int(2));
        assert_eq!(p.coeff(-1), Cyclo::from_int(3));
        assert_eq!(p.high_degree(), Some(-1));
        let r = regular_part_at_zero(&f);
        assert!(r.valuation().unwrap() >= 0);
        assert_eq!(r.eval_zero(), Some(Cyclo::from_int(3)));
    }
}
