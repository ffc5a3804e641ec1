//! Exact arithmetic in finite fields `F_{p^n}` and in tower extensions over them.
//!
//! Every element is identified with its canonical integer encoding: the
//! little-endian base-`p` digits of its coordinate vector in the power basis of
//! the defining modulus. For a tower `F_{q^i} / F_q` the coordinates are base
//! field elements, so the encoding is `sum c_j * q^j`, which is again a base-`p`
//! digit string. Constants of the base field therefore keep their encoding when
//! embedded into an extension.

mod dense;
mod element;
mod extension;
mod prime_power;

pub use dense::PolyRing;
pub use element::{arith, ArithOp, FieldElement};
pub use extension::{extend_field, ExtFieldSpec};
pub use prime_power::{find_irreducible, FieldSpec, PrimeField};

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Canonical integer encoding of a field element.
pub type Elem = u64;

/// Common interface of every field the crate computes in.
pub trait FiniteField: fmt::Debug + Send + Sync {
    fn characteristic(&self) -> u64;

    /// Degree over the prime field.
    fn degree(&self) -> u32;

    /// Number of elements.
    fn order(&self) -> u64;

    fn add(&self, a: Elem, b: Elem) -> Elem;

    fn neg(&self, a: Elem) -> Elem;

    fn mul(&self, a: Elem, b: Elem) -> Elem;

    fn inv(&self, a: Elem) -> Result<Elem>;

    /// Absolute trace down to the prime field, as a residue mod `p`.
    fn abs_trace(&self, a: Elem) -> u64;

    /// Identifies the concrete representation; two fields compare equal
    /// exactly when their signatures do.
    fn signature(&self) -> Vec<u64>;

    fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow(&self, a: Elem, mut e: u128) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `a^(p^k)`.
    fn frobenius(&self, a: Elem, k: u64) -> Elem {
        let p = self.characteristic() as u128;
        let k = k % self.degree() as u64;
        (0..k).fold(a, |x, _| self.pow(x, p))
    }

    /// Trace as the literal sum of the Frobenius orbit. Slow reference path;
    /// [`FiniteField::abs_trace`] is the linear-map shortcut.
    fn trace_by_orbit(&self, a: Elem) -> u64 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree() {
            acc = self.add(acc, x);
            x = self.frobenius(x, 1);
        }
        debug_assert!(acc < self.characteristic(), "trace left the prime field");
        acc
    }

    /// Multiplies by an integer, reduced into the prime field.
    fn scale(&self, a: Elem, k: u64) -> Elem {
        self.mul(a, k % self.characteristic())
    }

    fn contains(&self, a: Elem) -> bool {
        a < self.order()
    }

    fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { encoding: a, order: self.order() })
        }
    }
}

/// All elements of `field` in ascending encoding order, provided the field
/// fits the enumeration budget.
pub fn enumerate<F: FiniteField + ?Sized>(field: &F, limits: &Limits) -> Result<Range<Elem>> {
    limits.check_elements(field.order() as u128)?;
    Ok(0..field.order())
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest element (by encoding) whose absolute trace is `a`.
pub fn smallest_with_trace<F: FiniteField + ?Sized>(field: &F, a: u64) -> Option<Elem> {
    let a = a % field.characteristic();
    (0..field.order()).find(|&x| field.abs_trace(x) == a)
}
