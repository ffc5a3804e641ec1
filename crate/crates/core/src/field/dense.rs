//! Dense univariate polynomials over a finite field, coefficient vectors in
//! ascending degree. Used for field construction (irreducibility, inverses).

use super::{prime_factors, Elem, FiniteField};
use crate::error::{Error, Result};

/// The polynomial ring `F[x]`; all methods take and return ascending
/// coefficient vectors with trailing zeros trimmed.
#[derive(Debug, Clone, Copy)]
pub struct PolyRing<'a, F: FiniteField + ?Sized> {
    field: &'a F,
}

impl<'a, F: FiniteField + ?Sized> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn trim(mut a: Vec<Elem>) -> Vec<Elem> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(a: &[Elem]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                self.field.add(x, y)
            })
            .collect();
        Self::trim(out)
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let neg: Vec<Elem> = b.iter().map(|&c| self.field.neg(c)).collect();
        self.add(a, &neg)
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        Self::trim(out)
    }

    /// Quotient and remainder of `a / b`.
    pub fn div_rem(&self, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
        let db = Self::degree(b).ok_or(Error::DivisionByZero)?;
        let lead_inv = self.field.inv(b[db])?;
        let mut rem = Self::trim(a.to_vec());
        let Some(da) = Self::degree(&rem) else {
            return Ok((Vec::new(), Vec::new()));
        };
        if da < db {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![0; da - db + 1];
        for k in (db..=da).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let factor = self.field.mul(c, lead_inv);
            quot[k - db] = factor;
            for (i, &bc) in b[..=db].iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = self.field.sub(rem[idx], self.field.mul(factor, bc));
            }
        }
        Ok((Self::trim(quot), Self::trim(rem)))
    }

    pub fn rem(&self, a: &[Elem], m: &[Elem]) -> Result<Vec<Elem>> {
        Ok(self.div_rem(a, m)?.1)
    }

    pub fn make_monic(&self, a: &[Elem]) -> Vec<Elem> {
        match Self::degree(a) {
            None => Vec::new(),
            Some(d) => {
                let inv = self.field.inv(a[d]).expect("nonzero leading coefficient");
                Self::trim(a[..=d].iter().map(|&c| self.field.mul(c, inv)).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut x = Self::trim(a.to_vec());
        let mut y = Self::trim(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y).expect("divisor is nonzero");
            x = std::mem::replace(&mut y, r);
        }
        self.make_monic(&x)
    }

    /// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
    pub fn inverse_mod(&self, a: &[Elem], m: &[Elem]) -> Result<Vec<Elem>> {
        let a = self.rem(a, m)?;
        if a.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (m.to_vec(), a);
        let (mut s0, mut s1): (Vec<Elem>, Vec<Elem>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant when gcd(a, m) = 1.
        if Self::degree(&r0) != Some(0) {
            return Err(Error::DivisionByZero);
        }
        let c = self.field.inv(r0[0])?;
        Ok(Self::trim(s0.iter().map(|&v| self.field.mul(v, c)).collect()))
    }

    pub fn mul_mod(&self, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
        self.rem(&self.mul(a, b), m).expect("modulus is nonzero")
    }

    pub fn pow_mod(&self, a: &[Elem], mut e: u128, m: &[Elem]) -> Vec<Elem> {
        let mut base = self.rem(a, m).expect("modulus is nonzero");
        let mut acc = self.rem(&[1], m).expect("modulus is nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    pub fn eval(&self, a: &[Elem], x: Elem) -> Elem {
        a.iter().rev().fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Rabin's test: `f` of degree `d` is irreducible iff `x^(Q^d) = x mod f`
    /// and `gcd(x^(Q^(d/l)) - x, f) = 1` for every prime `l | d`, where `Q`
    /// is the order of the coefficient field.
    pub fn is_irreducible(&self, f: &[Elem]) -> bool {
        let Some(d) = Self::degree(f) else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = &f[..=d];
        let order = self.field.order() as u128;
        let x = vec![0, 1];
        // frob[k] = x^(Q^k) mod f
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(self.rem(&x, f).expect("nonzero modulus"));
        for k in 1..=d {
            let next = self.pow_mod(&frob[k - 1], order, f);
            frob.push(next);
        }
        if frob[d] != self.rem(&x, f).expect("nonzero modulus") {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|l| {
            let h = self.sub(&frob[d / l as usize], &x);
            Self::degree(&self.gcd(&h, f)) == Some(0)
        })
    }

    /// True when `f` has no root in the coefficient field (exhaustive).
    pub fn is_root_free(&self, f: &[Elem]) -> bool {
        (0..self.field.order()).all(|x| self.eval(f, x) != 0)
    }
}
