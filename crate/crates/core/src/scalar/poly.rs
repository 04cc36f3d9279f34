//! Dense univariate polynomials with cyclotomic-field coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use super::cyclo::Cyclo;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    c: Vec<Cyclo>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Cyclo::one())
    }

    pub fn x() -> Self {
        Poly { c: vec![Cyclo::zero(), Cyclo::one()] }
    }

    pub fn constant(a: Cyclo) -> Self {
        let mut p = Poly { c: vec![a] };
        p.trim();
        p
    }

    pub fn from_coeffs(c: Vec<Cyclo>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    /// `x^k`.
    pub fn monomial(a: Cyclo, k: usize) -> Self {
        let mut c = vec![Cyclo::zero(); k + 1];
        c[k] = a;
        Poly::from_coeffs(c)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Cyclo {
        self.c.get(k).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Cyclo {
        self.c.last().cloned().unwrap_or_else(Cyclo::zero)
    }

    /// Order of vanishing at zero; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn eval_zero(&self) -> Cyclo {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn scale(&self, a: &Cyclo) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.c.iter().map(|x| x * a).collect())
    }

    /// Divides by `x^k`, dropping the low coefficients.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.c.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Cyclo::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(i) => self.scale(&i),
            None => Poly::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn divrem(&self, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("polynomial division by zero");
        let mut r = self.c.clone();
        if r.len() <= db {
            return (Poly::zero(), self.clone());
        }
        let inv = b.lead().inv().unwrap();
        let mut q = vec![Cyclo::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] * &inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..=db {
                if !b.c[j].is_zero() {
                    r[i + j] = &r[i + j] - &(&c * &b.c[j]);
                }
            }
            q[i] = c;
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, b: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            if b.is_constant() {
                return Poly::one();
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= rhs.c.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] = &c[i] + x;
        }
        Poly::from_coeffs(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.c.len() == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.c.len() == 1 {
            return self.scale(&rhs.c[0]);
        }
        let mut c = vec![Cyclo::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = &c[i + j] + &(x * y);
                }
            }
        }
        Poly::from_coeffs(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| Cyclo::from_int(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, -3, 0, 2, 5]);
        let b = p(&[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[1, 1]);
        let g = p(&[-2, 0, 1]);
        let h = p(&[3, 1]);
        let a = &f * &g;
        let b = &f * &h;
        assert_eq!(a.gcd(&b), f);
        assert_eq!(g.gcd(&h), Poly::one());
    }

    #[test]
    fn cyclotomic_coefficients_are_fine() {
        let z = Cyclo::zeta(3);
        let xz = &Poly::x() - &Poly::constant(z.clone());
        let xz2 = &Poly::x() - &Poly::constant(&z * &z);
        // (x - z)(x - z^2) = x^2 + x + 1
        assert_eq!(&xz * &xz2, p(&[1, 1, 1]));
        assert_eq!((&xz * &xz2).gcd(&xz), xz);
    }
}
