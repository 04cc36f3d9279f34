//! Scalar modes: which field the algebra lives over and how `t` sits in it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::Cyclo;
use super::field::Fp;
use super::parse::parse_scalar;
use super::poly::Poly;
use super::ratfunc::{RatFunc, Scalar};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `Q(t)` with `t` transcendental.
    GenericT,
    /// `Q(z_e)(x)` with `t = x + z_e`, localized at `x = 0`.
    CycloLocal,
    /// `Q` with `t = 1`, localized at a prime `p = e`.
    DegenerateP,
    /// `Q(x)` with `t = 1`; eigenvalues of the Jucys-Murphy elements are
    /// `x^l + content`.
    LinearQuiver,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::GenericT => "generic",
            Mode::CycloLocal => "cyclo",
            Mode::DegenerateP => "degenerate-p",
            Mode::LinearQuiver => "linear-quiver",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "generic" => Ok(Mode::GenericT),
            "cyclo" => Ok(Mode::CycloLocal),
            "degenerate-p" => Ok(Mode::DegenerateP),
            "linear-quiver" => Ok(Mode::LinearQuiver),
            _ => Err(Error::Config(format!("unknown mode '{s}'"))),
        }
    }
}

/// Where a scalar sits relative to the local ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalClass {
    Unit,
    NonUnitRegular,
    Pole,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Mode together with cached powers of `t` and quantum integers.
#[derive(Clone, Debug)]
pub struct ScalarMode {
    mode: Mode,
    e: u32,
    t: Scalar,
    radius: i64,
    pows: Vec<Scalar>,
    quants: Vec<Scalar>,
}

impl ScalarMode {
    /// `e` is the quantum characteristic used for residues: the order of
    /// `z` in cyclo mode, the prime in degenerate mode (0 allowed when no
    /// localization is needed), 0 in linear-quiver mode, anything in generic
    /// mode. `radius` bounds the cached exponents.
    pub fn new(mode: Mode, e: u32, radius: i64) -> Result<Self, Error> {
        let t = match mode {
            Mode::GenericT => RatFunc::x(),
            Mode::CycloLocal => {
                if e < 2 {
                    return Err(Error::Config(format!("cyclo mode needs e >= 2, got {e}")));
                }
                &RatFunc::x() + &RatFunc::constant(Cyclo::zeta(e))
            }
            Mode::DegenerateP => {
                if e != 0 && !is_prime(e) {
                    return Err(Error::Config(format!("degenerate mode needs a prime, got {e}")));
                }
                RatFunc::one()
            }
            Mode::LinearQuiver => {
                if e != 0 {
                    return Err(Error::Config("linear-quiver mode has e = 0".into()));
                }
                RatFunc::one()
            }
        };
        let radius = radius.max(4);
        let mut sm = ScalarMode { mode, e, t, radius, pows: vec![], quants: vec![] };
        sm.pows = (-radius..=radius).map(|d| sm.compute_pow(d)).collect();
        sm.quants = (-radius..=radius).map(|d| sm.compute_quantum(d)).collect();
        Ok(sm)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    pub fn t_is_one(&self) -> bool {
        matches!(self.mode, Mode::DegenerateP | Mode::LinearQuiver)
    }

    /// Name of the indeterminate in rendered scalars.
    pub fn var_name(&self) -> &'static str {
        match self.mode {
            Mode::GenericT => "t",
            _ => "x",
        }
    }

    fn compute_pow(&self, d: i64) -> Scalar {
        if self.t_is_one() {
            return RatFunc::one();
        }
        // t is a monic polynomial of degree one
        let p = self.t.num().pow(d.unsigned_abs() as u32);
        if d >= 0 {
            RatFunc::from_poly(p)
        } else {
            RatFunc::from_reduced(Poly::one(), p)
        }
    }

    fn compute_quantum(&self, d: i64) -> Scalar {
        if self.t_is_one() {
            return RatFunc::from_int(d);
        }
        let tp = self.t.num();
        let mut acc = Poly::zero();
        let mut pw = Poly::one();
        for _ in 0..d.unsigned_abs() {
            acc = &acc + &pw;
            pw = &pw * tp;
        }
        if d >= 0 {
            RatFunc::from_poly(acc)
        } else {
            // [-d] = -t^{-d}[d]; [d] does not vanish at t = 0
            RatFunc::from_reduced(-&acc, pw)
        }
    }

    pub fn t_pow(&self, d: i64) -> Scalar {
        if d.abs() <= self.radius && !self.pows.is_empty() {
            return self.pows[(d + self.radius) as usize].clone();
        }
        self.compute_pow(d)
    }

    /// The quantum integer `[d]`.
    pub fn quantum(&self, d: i64) -> Scalar {
        if d.abs() <= self.radius && !self.quants.is_empty() {
            return self.quants[(d + self.radius) as usize].clone();
        }
        self.compute_quantum(d)
    }

    pub fn quantum_factorial(&self, d: i64) -> Scalar {
        let mut acc = RatFunc::one();
        for k in 1..=d {
            acc = &acc * &self.quantum(k);
        }
        acc
    }

    /// Eigenvalue of a Jucys-Murphy element on a node of content `content`
    /// in component `l` (1-based).
    pub fn content_value(&self, l: usize, content: i64) -> Scalar {
        match self.mode {
            Mode::LinearQuiver => &RatFunc::x().pow(l as i64) + &RatFunc::from_int(content),
            _ => self.quantum(content),
        }
    }

    /// Valuation for the local ring of this mode (`x`-adic, or `p`-adic in
    /// degenerate mode). `None` for zero.
    pub fn valuation(&self, s: &Scalar) -> Option<i64> {
        match self.mode {
            Mode::DegenerateP => {
                let q = s.as_rational().expect("degenerate scalars are rational constants");
                if q.is_zero() {
                    return None;
                }
                let p = BigInt::from(self.e);
                Some(padic(&q.numer(), &p) - padic(&q.denom(), &p))
            }
            _ => s.valuation(),
        }
    }

    pub fn local_class(&self, s: &Scalar) -> LocalClass {
        match self.valuation(s) {
            Some(0) => LocalClass::Unit,
            Some(v) if v < 0 => LocalClass::Pole,
            _ => LocalClass::NonUnitRegular,
        }
    }

    pub fn is_integral(&self, s: &Scalar) -> bool {
        self.local_class(s) != LocalClass::Pole
    }

    /// Image in the residue field `Q(z_e)` (cyclo-type modes).
    pub fn residue_cyclo(&self, s: &Scalar) -> Result<Cyclo, Error> {
        s.eval_zero().ok_or_else(|| Error::NotIntegral(format!("{} has a pole at x = 0", self.render(s))))
    }

    /// Image in `F_p` (degenerate mode).
    pub fn residue_fp(&self, s: &Scalar) -> Result<Fp, Error> {
        let q = s.as_rational().ok_or_else(|| Error::ModeMismatch("non-constant degenerate scalar".into()))?;
        let p = BigInt::from(self.e);
        let den = q.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(Error::NotIntegral(format!("{} is not {}-integral", q, self.e)));
        }
        let num = q.numer().mod_floor(&p);
        let to_u = |b: &BigInt| -> i64 { b.to_string().parse().unwrap() };
        let d = Fp::new(self.e as u64, to_u(&den));
        Ok(Fp::new(self.e as u64, to_u(&num)).mul_fp(&d.inv().unwrap()))
    }

    pub fn render(&self, s: &Scalar) -> String {
        s.render(self.var_name())
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let s = parse_scalar(text, self.var_name(), if self.mode == Mode::CycloLocal { self.e } else { 0 })?;
        if self.t_is_one() && self.mode == Mode::DegenerateP && !s.is_constant() {
            return Err(Error::ModeMismatch(format!("'{text}' is not a constant")));
        }
        Ok(s)
    }
}

fn padic(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

impl Fp {
    fn mul_fp(&self, o: &Fp) -> Fp {
        use super::field::FieldElem;
        FieldElem::mul(self, o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers_generic() {
        let m = ScalarMode::new(Mode::GenericT, 0, 8).unwrap();
        assert_eq!(m.render(&m.quantum(3)), "t^2+t+1");
        assert_eq!(m.render(&m.quantum(-2)), "(-t-1)/t^2");
        assert!(m.quantum(0).is_zero());
        // [k] = -t^k [-k]
        for k in -6..6 {
            let rhs = -&(&m.t_pow(k) * &m.quantum(-k));
            assert_eq!(m.quantum(k), rhs);
        }
        // [c] - [d] = t^d [c - d]
        for c in -4..5 {
            for d in -4..5 {
                assert_eq!(&m.quantum(c) - &m.quantum(d), &m.t_pow(d) * &m.quantum(c - d));
            }
        }
    }

    #[test]
    fn cyclo_quantum_vanishes_at_zero_exactly_for_multiples() {
        let m = ScalarMode::new(Mode::CycloLocal, 3, 10).unwrap();
        for d in -7..8i64 {
            let q = m.quantum(d);
            let expect = if d % 3 == 0 { LocalClass::NonUnitRegular } else { LocalClass::Unit };
            if d != 0 {
                assert_eq!(m.local_class(&q), expect, "d={d}");
            }
        }
    }

    #[test]
    fn degenerate_valuations() {
        let m = ScalarMode::new(Mode::DegenerateP, 3, 4).unwrap();
        let s = RatFunc::from_rational(crate::scalar::Q::new(9.into(), 2.into()));
        assert_eq!(m.valuation(&s), Some(2));
        assert_eq!(m.residue_fp(&s).unwrap().value(), 0);
        let u = RatFunc::from_rational(crate::scalar::Q::new(1.into(), 2.into()));
        assert_eq!(m.residue_fp(&u).unwrap().value(), 2);
        assert!(m.residue_fp(&u.div(&RatFunc::from_int(3))).is_err());
        assert!(ScalarMode::new(Mode::DegenerateP, 4, 4).is_err());
    }

    #[test]
    fn linear_quiver_contents() {
        let m = ScalarMode::new(Mode::LinearQuiver, 0, 4).unwrap();
        assert_eq!(m.render(&m.content_value(2, -1)), "x^2-1");
        assert_eq!(m.quantum(5), RatFunc::from_int(5));
    }
}
