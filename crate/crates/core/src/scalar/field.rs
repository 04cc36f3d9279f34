//! Minimal field interface used by specialized (residue field) matrices.

use std::fmt;

use super::cyclo::Cyclo;
use super::ratfunc::RatFunc;

pub trait FieldElem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The integer `k` in the same field as `self`.
    fn int_like(&self, k: i64) -> Self;
    fn try_inv(&self) -> Option<Self>;
}

impl FieldElem for Cyclo {
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn int_like(&self, k: i64) -> Self {
        Cyclo::from_int(k)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

impl FieldElem for RatFunc {
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn int_like(&self, k: i64) -> Self {
        RatFunc::from_int(k)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

/// Residue class modulo a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    p: u64,
    v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        Fp { p, v: v.rem_euclid(p as i64) as u64 }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn inv(&self) -> Option<Fp> {
        if self.v == 0 {
            return None;
        }
        // Fermat
        let mut r = 1u64;
        let mut b = self.v;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        Some(Fp { p: self.p, v: r })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl FieldElem for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Fp { p: self.p, v: (self.v + o.v) % self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { p: self.p, v: (self.v + self.p - o.v) % self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { p: self.p, v: self.v * o.v % self.p }
    }
    fn neg(&self) -> Self {
        Fp { p: self.p, v: (self.p - self.v) % self.p }
    }
    fn int_like(&self, k: i64) -> Self {
        Fp::new(self.p, k)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let a = Fp::new(7, -3);
        assert_eq!(a.value(), 4);
        assert_eq!(a.mul(&a.inv().unwrap()), Fp::new(7, 1));
        assert!(a.add(&Fp::new(7, 3)).is_zero());
    }
}
