use std::sync::Arc;

use super::{Elem, FieldSpec, FiniteField, PolyRing};
use crate::error::{Error, Result};

const MAX_EXT_DEGREE: usize = 64;

/// `F_{q^i}` as a tower `F_q[y] / (ext_modulus)` over a base `F_q`.
///
/// Base constants embed with unchanged encoding, so polynomials with
/// coefficients in `F_q` evaluate directly in the extension.
#[derive(Debug, Clone)]
pub struct ExtFieldSpec {
    base: Arc<FieldSpec>,
    degree: u32,
    modulus: Vec<Elem>,
    order: u64,
    /// Absolute trace of the element with a single base-`p` digit set, per
    /// digit position.
    digit_traces: Vec<u64>,
}

/// Extends `base` by degree `i` with the smallest-encoding monic irreducible
/// polynomial over `F_q`.
pub fn extend_field(base: Arc<FieldSpec>, i: u32) -> Result<ExtFieldSpec> {
    if i == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let q = base.q();
    let count = q
        .checked_pow(i)
        .filter(|&o| o <= 1 << 62)
        .ok_or_else(|| Error::InvalidField(format!("{q}^{i} exceeds 2^62")))?;
    let ring = PolyRing::new(base.as_ref());
    let modulus = (0..count)
        .map(|e| {
            let mut f = base_digits(e, q, i as usize);
            f.push(1);
            f
        })
        .find(|f| ring.is_irreducible(f))
        .expect("irreducible polynomials exist in every degree");
    ExtFieldSpec::new(base, modulus)
}

fn base_digits(mut e: u64, q: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = e % q;
            e /= q;
            d
        })
        .collect()
}

impl ExtFieldSpec {
    /// Tower with an explicit monic irreducible modulus over the base field.
    pub fn new(base: Arc<FieldSpec>, modulus: Vec<Elem>) -> Result<Self> {
        let ring = PolyRing::new(base.as_ref());
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 || degree > MAX_EXT_DEGREE {
            return Err(Error::InvalidField(format!("unsupported tower degree {degree}")));
        }
        if modulus.iter().any(|&c| !base.contains(c)) || modulus[degree] != 1 {
            return Err(Error::InvalidField("tower modulus must be monic over the base".into()));
        }
        if !ring.is_irreducible(&modulus) {
            return Err(Error::InvalidField("tower modulus is reducible over the base".into()));
        }
        let order = base
            .q()
            .checked_pow(degree as u32)
            .filter(|&o| o <= 1 << 62)
            .ok_or_else(|| Error::InvalidField("extension order exceeds 2^62".into()))?;
        let mut ext = ExtFieldSpec { base, degree: degree as u32, modulus, order, digit_traces: Vec::new() };
        let p = ext.base.p();
        let digits = ext.degree * ext.base.n();
        ext.digit_traces = (0..digits).map(|k| ext.trace_by_orbit(p.pow(k))).collect();
        Ok(ext)
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    /// Degree `i` of the tower over its base.
    pub fn ext_degree(&self) -> u32 {
        self.degree
    }

    pub fn ext_modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// Embeds a base element; the encoding is unchanged.
    pub fn embed(&self, a: Elem) -> Result<Elem> {
        self.base.check(a)
    }

    /// Coordinates over the base field.
    pub fn base_coords(&self, a: Elem) -> Vec<Elem> {
        base_digits(a, self.base.q(), self.degree as usize)
    }

    pub fn from_base_coords(&self, coords: &[Elem]) -> Elem {
        coords.iter().rev().fold(0, |acc, &c| acc * self.base.q() + c)
    }
}

impl FiniteField for ExtFieldSpec {
    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn degree(&self) -> u32 {
        self.base.n() * self.degree
    }

    fn order(&self) -> u64 {
        self.order
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.base.p() == 2 {
            return a ^ b;
        }
        let (x, y) = (self.base_coords(a), self.base_coords(b));
        let sum: Vec<Elem> = x.iter().zip(&y).map(|(&u, &v)| self.base.add(u, v)).collect();
        self.from_base_coords(&sum)
    }

    fn neg(&self, a: Elem) -> Elem {
        if self.base.p() == 2 {
            return a;
        }
        let x: Vec<Elem> = self.base_coords(a).iter().map(|&u| self.base.neg(u)).collect();
        self.from_base_coords(&x)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = self.degree as usize;
        if d == 1 {
            return self.base.mul(a, b);
        }
        let base = self.base.as_ref();
        let (x, y) = (self.base_coords(a), self.base_coords(b));
        let mut prod = [0 as Elem; 2 * MAX_EXT_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = base.add(prod[i + j], base.mul(x[i], y[j]));
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                prod[k - d + i] = base.sub(prod[k - d + i], base.mul(c, self.modulus[i]));
            }
        }
        self.from_base_coords(&prod[..d])
    }

    fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let ring = PolyRing::new(self.base.as_ref());
        let inv = ring.inverse_mod(&self.base_coords(a), &self.modulus)?;
        Ok(self.from_base_coords(&inv))
    }

    fn abs_trace(&self, mut a: Elem) -> u64 {
        let p = self.base.p();
        let mut acc = 0u128;
        for &t in &self.digit_traces {
            acc += (a % p) as u128 * t as u128;
            a /= p;
        }
        (acc % p as u128) as u64
    }

    fn signature(&self) -> Vec<u64> {
        let mut sig = self.base.signature();
        sig.push(u64::MAX);
        sig.extend(&self.modulus);
        sig
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f32() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_default_modulus(2, 5).unwrap())
    }

    #[test]
    fn degree_one_extension_is_identity() {
        let base = f32();
        let ext = extend_field(base.clone(), 1).unwrap();
        assert_eq!(ext.ext_modulus(), &[0, 1]);
        assert_eq!(ext.order(), 32);
        for a in 0..32 {
            for b in 0..32 {
                assert_eq!(ext.mul(a, b), base.mul(a, b));
                assert_eq!(ext.add(a, b), base.add(a, b));
            }
            assert_eq!(ext.abs_trace(a), base.abs_trace(a));
        }
    }

    #[test]
    fn quadratic_extension_of_f32() {
        let base = f32();
        let ext = extend_field(base.clone(), 2).unwrap();
        assert_eq!(ext.order(), 1024);
        assert_eq!(ext.degree(), 10);
        for x in (0..1024).step_by(13) {
            assert_eq!(ext.pow(x, 1024), x);
        }
        // every base element is a square in the extension (already in the base for p = 2)
        for a in 0..32u64 {
            assert!((0..1024).any(|r| ext.mul(r, r) == a));
        }
        // embedding is a ring homomorphism
        for a in 0..32 {
            for b in 0..32 {
                assert_eq!(ext.mul(a, b), base.mul(a, b));
            }
        }
    }

    #[test]
    fn trace_of_embedded_base_element() {
        for (p, n, i) in [(2u64, 5u32, 2u32), (2, 3, 3), (3, 2, 2), (5, 1, 3)] {
            let base = Arc::new(FieldSpec::with_default_modulus(p, n).unwrap());
            let ext = extend_field(base.clone(), i).unwrap();
            for x in 0..base.q() {
                let expect = (i as u64 * base.abs_trace(x)) % p;
                assert_eq!(ext.abs_trace(x), expect);
                assert_eq!(ext.trace_by_orbit(x), expect);
            }
            for x in (0..ext.order()).step_by(7) {
                assert_eq!(ext.abs_trace(x), ext.trace_by_orbit(x));
            }
        }
    }

    #[test]
    fn extension_field_axioms() {
        let base = Arc::new(FieldSpec::with_default_modulus(3, 2).unwrap());
        let ext = extend_field(base, 2).unwrap();
        let q = ext.order();
        for a in 1..q {
            assert_eq!(ext.mul(a, ext.inv(a).unwrap()), 1);
            assert_eq!(ext.pow(a, q as u128 - 1), 1);
        }
        for a in 0..q {
            assert_eq!(ext.add(a, ext.neg(a)), 0);
        }
    }

    #[test]
    fn rejects_reducible_tower_modulus() {
        let base = f32();
        assert!(ExtFieldSpec::new(base.clone(), vec![0, 0, 1]).is_err());
        assert!(extend_field(base, 0).is_err());
    }
}
