//! Reduced rational functions `num/den` over a cyclotomic field.
//!
//! Invariants: `gcd(num, den) = 1`, `den` is monic, and zero is `0/1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::cyclo::{write_term, Cyclo};
use super::poly::Poly;
use super::Q;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

pub type Scalar = RatFunc;

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(k: i64) -> Self {
        RatFunc::constant(Cyclo::from_int(k))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        RatFunc::constant(Cyclo::rational(Q::from_integer(k)))
    }

    pub fn from_rational(q: Q) -> Self {
        RatFunc::constant(Cyclo::rational(q))
    }

    pub fn constant(a: Cyclo) -> Self {
        RatFunc { num: Poly::constant(a), den: Poly::one() }
    }

    /// The indeterminate.
    pub fn x() -> Self {
        RatFunc { num: Poly::x(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    /// Assumes `num` and `den` are coprime and `den` is monic.
    pub(crate) fn from_reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(den.lead().is_one());
        RatFunc { num, den }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if !self.den.is_constant() {
            let g = self.num.gcd(&self.den);
            if !g.is_one() {
                self.num = self.num.divrem(&g).0;
                self.den = self.den.divrem(&g).0;
            }
        }
        let lead = self.den.lead();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The constant value if this is a constant.
    pub fn as_constant(&self) -> Option<Cyclo> {
        self.is_constant().then(|| self.num.eval_zero())
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.as_constant().and_then(|c| c.as_rational())
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        let mut r = RatFunc { num: self.den.clone(), den: self.num.clone() };
        let lead = r.den.lead();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            r.num = r.num.scale(&inv);
            r.den = r.den.scale(&inv);
        }
        Some(r)
    }

    /// Panics on division by zero.
    pub fn div(&self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero scalar")
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Option<RatFunc> {
        rhs.inv().map(|i| self * &i)
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        let base = if k < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut r = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        r
    }

    pub fn scale_int(&self, k: i64) -> RatFunc {
        if k == 0 {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(&Cyclo::from_int(k)), den: self.den.clone() }
    }

    /// Order of vanishing at zero of the indeterminate; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap() as i64;
        Some(vn - vd)
    }

    /// Value at zero, if the function is regular there.
    pub fn eval_zero(&self) -> Option<Cyclo> {
        let d0 = self.den.eval_zero();
        if d0.is_zero() {
            if self.is_zero() {
                return Some(Cyclo::zero());
            }
            return None;
        }
        Some(&self.num.eval_zero() * &d0.inv().unwrap())
    }

    /// Substitutes a field value for the indeterminate.
    pub fn eval(&self, x: &Cyclo) -> Option<Cyclo> {
        let d = self.den.eval(x);
        d.inv().map(|i| &self.num.eval(x) * &i)
    }

    pub fn render(&self, var: &str) -> String {
        let num = render_poly(&self.num, var);
        if self.den.is_one() {
            return num;
        }
        let den = render_poly(&self.den, var);
        let wrap = |p: &Poly, s: String| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num, num), wrap(&self.den, den))
    }
}

pub(crate) fn render_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    let mut first = true;
    for (k, a) in p.coeffs().iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        match a.as_rational() {
            Some(q) => write_term(&mut s, &q, var, k as i64, first).unwrap(),
            None => {
                if !first {
                    s.push('+');
                }
                s.push('(');
                s.push_str(&a.to_string());
                s.push(')');
                if k == 1 {
                    s.push('*');
                    s.push_str(var);
                } else if k > 1 {
                    s.push_str(&format!("*{}^{}", var, k));
                }
            }
        }
        first = false;
    }
    s
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return RatFunc::new(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.divrem(&g).0;
        let b = rhs.den.divrem(&g).0;
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::new(num, &a * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Poly::one() };
        }
        if self.is_constant() {
            return RatFunc { num: rhs.num.scale(&self.num.eval_zero()), den: rhs.den.clone() };
        }
        if rhs.is_constant() {
            return RatFunc { num: self.num.scale(&rhs.num.eval_zero()), den: self.den.clone() };
        }
        // cross-cancel so the product stays reduced
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.divrem(&g1).0, rhs.den.divrem(&g1).0)
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.divrem(&g2).0, self.den.divrem(&g2).0)
        };
        let mut r = RatFunc { num: &n1 * &n2, den: &d1 * &d2 };
        let lead = r.den.lead();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            r.num = r.num.scale(&inv);
            r.den = r.den.scale(&inv);
        }
        r
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> RatFunc {
        RatFunc::x()
    }

    #[test]
    fn arithmetic_reduces() {
        let one = RatFunc::one();
        let a = (&t() + &one).inv().unwrap();
        let b = (&t() - &one).inv().unwrap();
        // 1/(t+1) + 1/(t-1) = 2t/(t^2-1)
        let s = &a + &b;
        assert_eq!(s.render("t"), "2*t/(t^2-1)");
        let p = &s * &(&(&t() * &t()) - &one);
        assert_eq!(p, t().scale_int(2));
        assert!((&a * &(&t() + &one)).is_one());
    }

    #[test]
    fn valuation_and_value_at_zero() {
        let f = t().pow(-2);
        assert_eq!(f.valuation(), Some(-2));
        assert_eq!(f.eval_zero(), None);
        let g = &(&t() + &RatFunc::from_int(2)).inv().unwrap() * &t();
        assert_eq!(g.valuation(), Some(1));
        assert_eq!(g.eval_zero(), Some(Cyclo::zero()));
    }

    #[test]
    fn render_example() {
        let two_t2_minus_1 = &t().pow(2).scale_int(2) - &RatFunc::one();
        let f = two_t2_minus_1.div(&(&t() + &RatFunc::one()));
        assert_eq!(f.render("t"), "(2*t^2-1)/(t+1)");
    }
}
