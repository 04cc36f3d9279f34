//! Rational numbers with a machine-word fast path.
//!
//! Values that fit in `i64 / i64` stay small; anything larger is held as a
//! `BigRational`. The representation is canonical (a value is big only when
//! it does not fit), so derived equality and hashing are exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Q {
    /// `n / d` with `d > 0` and `gcd(n, d) = 1`.
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Q {
    pub fn new(n: BigInt, d: BigInt) -> Q {
        Q::from_big(BigRational::new(n, d))
    }

    pub fn from_integer(n: BigInt) -> Q {
        match n.to_i64() {
            Some(k) => Q::Small(k, 1),
            None => Q::Big(BigRational::from_integer(n)),
        }
    }

    pub fn from_i64(n: i64) -> Q {
        Q::Small(n, 1)
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    /// Builds from an unreduced `i128` fraction with `d != 0`.
    fn from_i128(mut n: i128, mut d: i128) -> Q {
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Q::Small(0, 1);
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g != 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::Small(a, b),
            _ => Q::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn to_integer(&self) -> BigInt {
        match self {
            Q::Small(n, d) => BigInt::from(n.div_euclid(*d) + if n.rem_euclid(*d) != 0 && *n < 0 { 1 } else { 0 }),
            Q::Big(r) => r.to_integer(),
        }
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(0, _) => panic!("reciprocal of zero"),
            Q::Small(n, d) => {
                if *n == i64::MIN {
                    Q::from_big(self.to_big().recip())
                } else if *n < 0 {
                    Q::Small(-d, -n)
                } else {
                    Q::Small(*d, *n)
                }
            }
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Q::Small(n, _) => *n > 0,
            Q::Big(r) => r.is_positive(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            (Q::Big(a), Q::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Q::Small(n, d) => {
                0u8.hash(h);
                n.hash(h);
                d.hash(h);
            }
            Q::Big(r) => {
                1u8.hash(h);
                r.hash(h);
            }
        }
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }
}

impl One for Q {
    fn one() -> Q {
        Q::Small(1, 1)
    }
    fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Q::Small(s, 1),
                        None => Q::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                if b == d {
                    return Q::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) if *n != i64::MIN => Q::Small(-n, *d),
            _ => Q::from_big(-self.to_big()),
        }
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    return Q::from_i128(a - c, b);
                }
                Q::from_i128(a * d - c * b, b * d)
            }
            _ => Q::from_big(self.to_big() - o.to_big()),
        }
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(0, _), _) | (_, Q::Small(0, _)) => Q::zero(),
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) => Q::Small(p, 1),
                        None => Q::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                // cross-cancel first so the products stay small
                let g1 = gcd_u64(a.unsigned_abs(), d.unsigned_abs()) as i128;
                let g2 = gcd_u64(c.unsigned_abs(), b.unsigned_abs()) as i128;
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let n = (a / g1) * (c / g2);
                let m = (b / g2) * (d / g1);
                match (i64::try_from(n), i64::try_from(m)) {
                    (Ok(x), Ok(y)) => Q::Small(x, y),
                    _ => Q::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(m))),
                }
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Div for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        self * &o.recip()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                (&self).$m(&o)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                (&self).$m(o)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                self.$m(&o)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = &*self + o;
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, o: Q) {
        *self = &*self + &o;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = &*self - o;
    }
}

impl SubAssign<Q> for Q {
    fn sub_assign(&mut self, o: Q) {
        *self = &*self - &o;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, o: &Q) {
        *self = &*self * o;
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::Small(n, 1)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Q {
        Q::from_big(r)
    }
}

impl From<Q> for BigRational {
    fn from(q: Q) -> BigRational {
        q.to_big()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(q: &Q) -> BigRational {
        q.clone().into()
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let x = Q::new(a.into(), b.into());
            let y = Q::new(c.into(), d.into());
            let (bx, by) = (big(&x), big(&y));
            prop_assert_eq!(big(&(&x + &y)), &bx + &by);
            prop_assert_eq!(big(&(&x - &y)), &bx - &by);
            prop_assert_eq!(big(&(&x * &y)), &bx * &by);
            prop_assert_eq!(&x + &y, Q::from(&bx + &by));
            prop_assert_eq!(&x * &y, Q::from(&bx * &by));
            if !y.is_zero() {
                prop_assert_eq!(&x / &y, Q::from(&bx / &by));
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        }
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Q::from_i64(i64::MAX);
        let s = &m + &m;
        assert!(matches!(s, Q::Big(_)));
        let back = &s - &m;
        assert_eq!(back, m);
        assert!(matches!(back, Q::Small(..)));
        assert_eq!(Q::from_i64(i64::MIN).recip().recip(), Q::from_i64(i64::MIN));
        assert_eq!((-&Q::from_i64(i64::MIN)).to_string(), "9223372036854775808");
    }

    #[test]
    fn integer_part() {
        assert_eq!(Q::new((-7).into(), 2.into()).to_integer(), BigInt::from(-3));
        assert_eq!(Q::new(7.into(), 2.into()).to_integer(), BigInt::from(3));
    }
}
