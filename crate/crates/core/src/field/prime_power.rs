use serde::{Deserialize, Serialize};

use super::{is_prime, Elem, FiniteField, PolyRing};
use crate::error::{Error, Result};

const MAX_DIGITS: usize = 64;

/// The prime field `F_p`, elements encoded as residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        Ok(PrimeField { p })
    }
}

fn inv_mod_prime(a: u64, p: u64) -> Result<u64> {
    if a.is_multiple_of(p) {
        return Err(Error::DivisionByZero);
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    Ok(s0.rem_euclid(p as i128) as u64)
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn order(&self) -> u64 {
        self.p
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: Elem) -> Result<Elem> {
        inv_mod_prime(a, self.p)
    }
    fn abs_trace(&self, a: Elem) -> u64 {
        a
    }
    fn signature(&self) -> Vec<u64> {
        vec![self.p, 1, 0, 1]
    }
}

/// Smallest-encoding monic irreducible polynomial of degree `n` over `F_p`,
/// ascending coefficients. The encoding of a monic polynomial is the base-`p`
/// number formed by its non-leading coefficients.
pub fn find_irreducible(p: u64, n: u32) -> Result<Vec<u64>> {
    let fp = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let count = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{n} does not fit in 64 bits")))?;
    let ring = PolyRing::new(&fp);
    for e in 0..count {
        let mut f = digits(e, p, n as usize);
        f.push(1);
        if ring.is_irreducible(&f) {
            return Ok(f);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn digits(mut e: u64, p: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = e % p;
            e /= p;
            d
        })
        .collect()
}

/// `F_{p^n}` as `F_p[t] / (modulus)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    prime: PrimeField,
    /// Modulus as a bit mask (including the `t^n` bit) when `p = 2`.
    binary_modulus: Option<u64>,
    /// Absolute trace of each basis monomial `t^i`.
    basis_traces: Vec<u64>,
    binary_trace_mask: u64,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u64,
    n: u32,
    modulus: Vec<u64>,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;
    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::new(r.p, r.n, r.modulus)
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        FieldSpecRepr { p: f.p, n: f.n, modulus: f.modulus }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `F_{p^n}` from an explicit monic irreducible modulus.
    pub fn new(p: u64, n: u32, modulus: Vec<u64>) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        if n == 0 || n as usize > MAX_DIGITS - 2 {
            return Err(Error::InvalidField(format!("unsupported extension degree {n}")));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= 1 << 62)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{n} exceeds 2^62")))?;
        if modulus.len() != n as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                n + 1,
                modulus.len()
            )));
        }
        if let Some(bad) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidField(format!("coefficient {bad} is not a residue mod {p}")));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !PolyRing::new(&prime).is_irreducible(&modulus) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let binary_modulus = (p == 2)
            .then(|| modulus.iter().enumerate().fold(0u64, |m, (i, &c)| m | (c << i)));
        let mut field = FieldSpec {
            p,
            n,
            q,
            modulus,
            prime,
            binary_modulus,
            basis_traces: Vec::new(),
            binary_trace_mask: 0,
        };
        let basis_traces: Vec<u64> =
            (0..n).map(|i| field.trace_by_orbit(p.pow(i))).collect();
        field.binary_trace_mask =
            basis_traces.iter().enumerate().fold(0, |m, (i, &t)| m | (t << i));
        field.basis_traces = basis_traces;
        Ok(field)
    }

    /// `F_{p^n}` under the smallest-encoding irreducible modulus.
    pub fn with_default_modulus(p: u64, n: u32) -> Result<Self> {
        let modulus = find_irreducible(p, n)?;
        FieldSpec::new(p, n, modulus)
    }

    /// The prime field as a degree-1 `FieldSpec` (modulus `t`).
    pub fn prime(p: u64) -> Result<Self> {
        FieldSpec::new(p, 1, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.prime
    }

    /// Coordinates of `a` in the power basis.
    pub fn coords(&self, a: Elem) -> Vec<u64> {
        digits(a, self.p, self.n as usize)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() > self.n as usize {
            return Err(Error::InvalidField("too many coordinates".into()));
        }
        let mut acc = 0u64;
        for &c in coords.iter().rev() {
            if c >= self.p {
                return Err(Error::InvalidField(format!("coordinate {c} is not a residue")));
            }
            acc = acc * self.p + c;
        }
        Ok(acc)
    }

    /// The `F_p`-basis `{1, t, ..., t^(n-1)}` as encodings.
    pub fn basis(&self) -> Vec<Elem> {
        (0..self.n).map(|i| self.p.pow(i)).collect()
    }

    fn decode(&self, mut a: Elem, out: &mut [u64; MAX_DIGITS]) {
        for d in out.iter_mut().take(self.n as usize) {
            *d = a % self.p;
            a /= self.p;
        }
    }

    fn encode(&self, d: &[u64]) -> Elem {
        d[..self.n as usize].iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_binary(&self, a: Elem, b: Elem, modulus: u64) -> Elem {
        let mut prod: u128 = 0;
        let mut x = a as u128;
        let mut y = b;
        while y != 0 {
            if y & 1 == 1 {
                prod ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        let n = self.n as usize;
        for k in (n..2 * n - 1).rev() {
            if (prod >> k) & 1 == 1 {
                prod ^= (modulus as u128) << (k - n);
            }
        }
        prod as u64
    }

    fn mul_generic(&self, a: Elem, b: Elem) -> Elem {
        let n = self.n as usize;
        let p = self.p as u128;
        let mut da = [0u64; MAX_DIGITS];
        let mut db = [0u64; MAX_DIGITS];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = ((prod[i + j] as u128 + da[i] as u128 * db[j] as u128) % p) as u64;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k] as u128;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let sub = c * self.modulus[i] as u128 % p;
                prod[k - n + i] = ((prod[k - n + i] as u128 + p - sub) % p) as u64;
            }
        }
        self.encode(&prod)
    }
}

impl FiniteField for FieldSpec {
    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.n
    }

    fn order(&self) -> u64 {
        self.q
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let mut da = [0u64; MAX_DIGITS];
        let mut db = [0u64; MAX_DIGITS];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        for i in 0..self.n as usize {
            da[i] = self.prime.add(da[i], db[i]);
        }
        self.encode(&da)
    }

    fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut da = [0u64; MAX_DIGITS];
        self.decode(a, &mut da);
        for d in da.iter_mut().take(self.n as usize) {
            *d = self.prime.neg(*d);
        }
        self.encode(&da)
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self.binary_modulus {
            Some(m) => self.mul_binary(a, b, m),
            None if self.n == 1 => self.prime.mul(a, b),
            None => self.mul_generic(a, b),
        }
    }

    fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 {
            return inv_mod_prime(a, self.p);
        }
        let ring = PolyRing::new(&self.prime);
        let inv = ring.inverse_mod(&self.coords(a), &self.modulus)?;
        self.from_coords(&inv)
    }

    fn abs_trace(&self, a: Elem) -> u64 {
        if self.p == 2 {
            return u64::from((a & self.binary_trace_mask).count_ones() & 1);
        }
        let mut da = [0u64; MAX_DIGITS];
        self.decode(a, &mut da);
        let p = self.p as u128;
        let t = da
            .iter()
            .zip(&self.basis_traces)
            .fold(0u128, |acc, (&d, &t)| (acc + d as u128 * t as u128) % p);
        t as u64
    }

    fn signature(&self) -> Vec<u64> {
        let mut sig = vec![self.p, self.n as u64];
        sig.extend(&self.modulus);
        sig
    }
}
