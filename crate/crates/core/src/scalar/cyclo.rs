//! Elements of the cyclotomic field `Q(z)` where `z` is a primitive `e`-th
//! root of unity, stored as reduced polynomials in `z` of degree `< phi(e)`.
//!
//! Rational numbers are stored with order 1 and mix freely with any field;
//! mixing two genuinely different cyclotomic fields panics.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Q;

static CYCLO_CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();

/// Ascending integer coefficients of the cyclotomic polynomial `Phi_k`.
pub fn cyclotomic_coeffs(k: u32) -> Arc<Vec<BigInt>> {
    assert!(k >= 1, "cyclotomic polynomial index must be positive");
    let cache = CYCLO_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().unwrap().get(&k) {
        return c.clone();
    }
    // x^k - 1 divided by Phi_d for every proper divisor d
    let mut p: Vec<BigInt> = vec![BigInt::zero(); k as usize + 1];
    p[0] = -BigInt::one();
    p[k as usize] = BigInt::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            let q = cyclotomic_coeffs(d);
            p = int_exact_div_monic(&p, &q);
        }
    }
    let arc = Arc::new(p);
    cache.write().unwrap().insert(k, arc.clone());
    arc
}

fn int_exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return vec![];
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i + j] -= &c * &b[j];
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()), "inexact cyclotomic division");
    q
}

/// Euler totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclo {
    order: u32,
    c: Vec<Q>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { order: 1, c: vec![] }
    }

    pub fn one() -> Self {
        Cyclo::rational(Q::one())
    }

    pub fn from_int(k: i64) -> Self {
        Cyclo::rational(Q::from_integer(BigInt::from(k)))
    }

    pub fn rational(q: Q) -> Self {
        if q.is_zero() {
            Cyclo::zero()
        } else {
            Cyclo { order: 1, c: vec![q] }
        }
    }

    /// The generator `z` of `Q(z)`, a primitive `e`-th root of unity.
    pub fn zeta(e: u32) -> Self {
        assert!(e >= 1);
        Cyclo::from_coeffs(e, vec![Q::zero(), Q::one()])
    }

    /// Builds `sum c_k z^k` and reduces it modulo `Phi_e`.
    pub fn from_coeffs(e: u32, c: Vec<Q>) -> Self {
        let mut x = Cyclo { order: e, c };
        x.reduce();
        x
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        match self.c.len() {
            0 => Some(Q::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    fn reduce(&mut self) {
        let phi = cyclotomic_coeffs(self.order);
        let d = phi.len() - 1;
        while self.c.len() > d {
            let top = self.c.len() - 1;
            let a = self.c.pop().unwrap();
            if a.is_zero() {
                continue;
            }
            // z^top = -sum_{j<d} phi_j z^(top-d+j)
            for j in 0..d {
                if !phi[j].is_zero() {
                    self.c[top - d + j] -= &a * Q::from_integer(phi[j].clone());
                }
            }
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        if self.c.len() <= 1 {
            self.order = 1;
        }
    }

    fn common_order(a: &Cyclo, b: &Cyclo) -> u32 {
        match (a.order, b.order) {
            (1, o) | (o, 1) => o,
            (x, y) if x == y => x,
            (x, y) => panic!("mixing elements of Q(z_{x}) and Q(z_{y})"),
        }
    }

    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclo::rational(q.recip()));
        }
        let phi: Vec<Q> = cyclotomic_coeffs(self.order)
            .iter()
            .map(|x| Q::from_integer(x.clone()))
            .collect();
        let s = qpoly_inverse_mod(&self.c, &phi);
        Some(Cyclo::from_coeffs(self.order, s))
    }

    pub fn scale(&self, q: &Q) -> Cyclo {
        if q.is_zero() {
            return Cyclo::zero();
        }
        Cyclo { order: self.order, c: self.c.iter().map(|x| x * q).collect() }
    }

    /// `z^k` in `Q(z_e)`; `k` may be negative.
    pub fn zeta_pow(e: u32, k: i64) -> Cyclo {
        let k = k.rem_euclid(e as i64) as usize;
        let mut c = vec![Q::zero(); k + 1];
        c[k] = Q::one();
        Cyclo::from_coeffs(e, c)
    }
}

fn qtrim(a: &mut Vec<Q>) {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
}

fn qpoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    qtrim(&mut r);
    r
}

fn qpoly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] -= x;
    }
    qtrim(&mut r);
    r
}

fn qpoly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    qtrim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![Q::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            r[i + j] -= t;
        }
        q[i] = c;
    }
    qtrim(&mut r);
    qtrim(&mut q);
    (q, r)
}

/// `s` with `s * a = 1 mod m`, for coprime `a` and `m`.
fn qpoly_inverse_mod(a: &[Q], m: &[Q]) -> Vec<Q> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (vec![], vec![Q::one()]);
    while r1.len() > 1 {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    assert!(!r1.is_empty(), "element not invertible modulo the cyclotomic polynomial");
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let order = Cyclo::common_order(self, rhs);
        let mut c = vec![Q::zero(); self.c.len().max(rhs.c.len())];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in rhs.c.iter().enumerate() {
            c[i] += x;
        }
        let mut r = Cyclo { order, c };
        r.reduce();
        r
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        if self.c.len() == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.c.len() == 1 {
            return self.scale(&rhs.c[0]);
        }
        let order = Cyclo::common_order(self, rhs);
        let mut r = Cyclo { order, c: qpoly_mul(&self.c, &rhs.c) };
        r.reduce();
        r
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            write_term(f, a, "z", k as i64, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Writes `a*v^k` with a leading sign when needed.
pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    a: &Q,
    var: &str,
    k: i64,
    first: bool,
) -> fmt::Result {
    let neg = a.is_negative();
    if neg {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    let abs = a.abs();
    if k == 0 {
        return write!(f, "{}", abs);
    }
    if !abs.is_one() {
        write!(f, "{}*", abs)?;
    }
    if k == 1 {
        write!(f, "{}", var)
    } else {
        write!(f, "{}^{}", var, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_coeffs(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_coeffs(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_coeffs(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_coeffs(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_coeffs(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_coeffs(12), ints(&[1, 0, -1, 0, 1]));
        for k in 1..40u32 {
            assert_eq!(cyclotomic_coeffs(k).len() as u64 - 1, totient(k as u64));
        }
    }

    #[test]
    fn zeta_has_the_right_order() {
        for e in 2..9u32 {
            let z = Cyclo::zeta(e);
            let mut p = Cyclo::one();
            for k in 1..=e {
                p = &p * &z;
                assert_eq!(p.is_one(), k == e, "e={e} k={k}");
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        let z = Cyclo::zeta(5);
        let a = &(&z * &z) + &Cyclo::from_int(3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Cyclo::zeta(3).inv().unwrap(), Cyclo::zeta_pow(3, -1));
    }

    #[test]
    fn display() {
        let z = Cyclo::zeta(3);
        assert_eq!(z.to_string(), "z");
        assert_eq!((&z * &z).to_string(), "-z-1");
        assert_eq!(Cyclo::rational(Q::new(3.into(), 2.into())).to_string(), "3/2");
    }

    mod props {
        use super::*;
        use num_rational::BigRational;
        use num_traits::ToPrimitive;
        use proptest::prelude::*;

        type C64 = (f64, f64);

        fn cmul(a: C64, b: C64) -> C64 {
            (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
        }

        /// Image under the embedding `z -> exp(2 pi i / e)`.
        fn embed(a: &Cyclo, e: u32) -> C64 {
            let th = std::f64::consts::TAU / e as f64;
            let (mut re, mut im) = (0.0, 0.0);
            for (k, q) in a.coeffs().iter().enumerate() {
                let c = BigRational::from(q.clone()).to_f64().unwrap();
                re += c * (th * k as f64).cos();
                im += c * (th * k as f64).sin();
            }
            (re, im)
        }

        fn close(a: C64, b: C64) -> bool {
            (a.0 - b.0).abs() < 1e-6 * (1.0 + b.0.abs()) && (a.1 - b.1).abs() < 1e-6 * (1.0 + b.1.abs())
        }

        fn elem(e: u32) -> impl Strategy<Value = Cyclo> {
            prop::collection::vec((-20i64..20, 1i64..5), e as usize)
                .prop_map(move |v| Cyclo::from_coeffs(e, v.into_iter().map(|(a, b)| Q::new(a.into(), b.into())).collect()))
        }

        fn triple() -> impl Strategy<Value = (u32, Cyclo, Cyclo, Cyclo)> {
            (1u32..=12).prop_flat_map(|e| (Just(e), elem(e), elem(e), elem(e)))
        }

        proptest! {
            #[test]
            fn field_operations_match_complex_embedding((e, a, b, c) in triple()) {
                let (za, zb) = (embed(&a, e), embed(&b, e));
                let sum = embed(&(&a + &b), e);
                prop_assert!(close(sum, (za.0 + zb.0, za.1 + zb.1)));
                prop_assert!(close(embed(&(&a * &b), e), cmul(za, zb)));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
                match a.inv() {
                    Some(ai) => prop_assert!((&a * &ai).is_one()),
                    None => prop_assert!(a.is_zero()),
                }
            }
        }
    }
}
