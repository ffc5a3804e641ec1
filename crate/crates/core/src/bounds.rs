//! Exact evaluation of the Weil, Weil-Serre and improved bounds on
//! `||Z_f| - q/p|`, `|N_f - q - 1|` and the additive character sum.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result, Violation};
use crate::exact;
use crate::field::is_prime;

/// `floor(2 sqrt(q)) = isqrt(4q)`.
pub fn floor_two_sqrt(q: &BigUint) -> BigUint {
    (q * 4u32).sqrt()
}

/// `coeff * sqrt(radicand)` with exact rational `coeff >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub coeff: Ratio<BigInt>,
    pub radicand: BigUint,
}

impl Surd {
    /// Exact floor, by comparing squares: the largest integer `k` with
    /// `k^2 den^2 <= num^2 radicand`.
    pub fn floor(&self) -> BigUint {
        let num = self.coeff.numer().magnitude();
        let den = self.coeff.denom().magnitude();
        let square = num * num * &self.radicand;
        (square / (den * den)).sqrt()
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.numer().to_f64().unwrap_or(f64::NAN) / self.coeff.denom().to_f64().unwrap_or(f64::NAN)
            * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// `self <= k`, exactly.
    pub fn le_int(&self, k: &BigUint) -> bool {
        let num = self.coeff.numer().magnitude();
        let den = self.coeff.denom().magnitude();
        num * num * &self.radicand <= k * k * den * den
    }
}

impl std::fmt::Display for Surd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*sqrt({})", exact::ratio_to_string(&self.coeff), self.radicand)
    }
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            coeff: String,
            #[serde(with = "exact::biguint")]
            sqrt_of: BigUint,
            #[serde(with = "exact::biguint")]
            floor: BigUint,
        }
        Repr { coeff: exact::ratio_to_string(&self.coeff), sqrt_of: self.radicand.clone(), floor: self.floor() }
            .serialize(s)
    }
}

/// Validated `(p, n, m)` with `q = p^n` and `g = (m - 1)(p - 1)/2 >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub q: BigUint,
    pub g: u64,
}

impl BoundParams {
    /// Preconditions shared by the Weil-type bounds: `p` prime, `n >= 1`,
    /// `m >= 2`, `gcd(m, p) = 1`, integral `g`.
    pub fn new(p: u64, n: u32, m: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Violation::NotPrime { p }.into());
        }
        if n == 0 {
            return Err(Violation::OutOfRange { what: "extension degree", detail: "n must be positive".into() }.into());
        }
        if m < 2 {
            return Err(Violation::DegreeTooSmall { m }.into());
        }
        if m.gcd(&p) != 1 {
            return Err(Violation::DegreeNotCoprime { m, p }.into());
        }
        let twice_g = (m - 1) as u128 * (p - 1) as u128;
        if !twice_g.is_multiple_of(2) {
            return Err(Violation::NonIntegralGenus { m, p }.into());
        }
        let g = u64::try_from(twice_g / 2)
            .map_err(|_| Violation::OutOfRange { what: "genus", detail: "exceeds 64 bits".into() })?;
        Ok(BoundParams { p, n, m, q: Pow::pow(BigUint::from(p), n), g })
    }

    /// Additionally requires odd `n >= 3`, as the improved bound does.
    pub fn for_main_bound(p: u64, n: u32, m: u64) -> Result<Self> {
        let params = BoundParams::new(p, n, m)?;
        if n < 3 {
            return Err(Violation::ExtensionDegreeTooSmall { n }.into());
        }
        if n.is_multiple_of(2) {
            return Err(Violation::EvenExtensionDegree { n }.into());
        }
        Ok(params)
    }
}

/// `(weil_Z, weil_N) = (2g sqrt(q) / p, 2g sqrt(q))`.
pub fn weil_bounds(p: u64, n: u32, m: u64) -> Result<(Surd, Surd)> {
    let b = BoundParams::new(p, n, m)?;
    let two_g = BigInt::from(2 * b.g as u128);
    let z = Surd { coeff: Ratio::new(two_g.clone(), BigInt::from(p)), radicand: b.q.clone() };
    let n = Surd { coeff: Ratio::from_integer(two_g), radicand: b.q };
    Ok((z, n))
}

/// `(weil_serre_N, weil_serre_Z) = (g floor(2 sqrt q), floor(g floor(2 sqrt q) / p))`.
pub fn weil_serre_bounds(p: u64, n: u32, m: u64) -> Result<(BigUint, BigUint)> {
    let b = BoundParams::new(p, n, m)?;
    let big_n = floor_two_sqrt(&b.q) * b.g;
    let z = &big_n / p;
    Ok((big_n, z))
}

/// Improved bound on `||Z_f| - q/p|` for a given genus `g >= 1` and odd `n`:
/// `p^(e-1) floor(g floor(2 sqrt q) / p^e)` with `e = ceil(n/g)` when
/// `g > 1`, and `p^((n-1)/2) floor(floor(2 sqrt q) / p^((n+1)/2))` when `g = 1`.
pub fn main_bound_for_genus(p: u64, n: u32, g: u64) -> BigUint {
    assert!(g >= 1, "genus must be positive");
    let pb = BigUint::from(p);
    let q = Pow::pow(&pb, n);
    let f = floor_two_sqrt(&q);
    if g == 1 {
        Pow::pow(&pb, (n - 1) / 2) * (f / Pow::pow(&pb, n.div_ceil(2)))
    } else {
        let e = (n as u64).div_ceil(g) as u32;
        Pow::pow(&pb, e - 1) * ((f * g) / Pow::pow(&pb, e))
    }
}

/// Improved bound on `||Z_f| - q/p|` for `deg f = m`.
pub fn main_bound(p: u64, n: u32, m: u64) -> Result<BigUint> {
    let b = BoundParams::for_main_bound(p, n, m)?;
    Ok(main_bound_for_genus(p, n, b.g))
}

/// Bound on `|E(chi_beta(f))|` and on `|sum_x chi_beta(f(x))| = q |E|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharSumBound {
    #[serde(with = "exact::ratio")]
    pub bound: Ratio<BigInt>,
    #[serde(with = "exact::biguint")]
    pub q_times_bound: BigUint,
}

pub fn char_sum_bound(p: u64, n: u32, m: u64) -> Result<CharSumBound> {
    let b = BoundParams::for_main_bound(p, n, m)?;
    let q_times_bound = main_bound_for_genus(p, n, b.g) * p;
    let bound = Ratio::new(BigInt::from(q_times_bound.clone()), BigInt::from(b.q));
    Ok(CharSumBound { bound, q_times_bound })
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    #[serde(with = "exact::biguint")]
    pub q: BigUint,
    pub g: u64,
    pub weil_Z: Surd,
    pub weil_N: Surd,
    #[serde(with = "exact::biguint")]
    pub weil_serre_N: BigUint,
    #[serde(with = "exact::biguint")]
    pub weil_serre_Z: BigUint,
    #[serde(with = "exact::biguint")]
    pub main_Z: BigUint,
    #[serde(with = "exact::ratio")]
    pub char_sum_E: Ratio<BigInt>,
}

/// All bounds side by side; fails if `main_Z <= weil_serre_Z <= weil_Z`
/// does not hold.
pub fn compare_report(p: u64, n: u32, m: u64) -> Result<BoundReport> {
    let b = BoundParams::for_main_bound(p, n, m)?;
    let (weil_z, weil_n) = weil_bounds(p, n, m)?;
    let (ws_n, ws_z) = weil_serre_bounds(p, n, m)?;
    let main_z = main_bound_for_genus(p, n, b.g);
    let e = char_sum_bound(p, n, m)?.bound;
    if main_z > ws_z || ws_z > weil_z.floor() {
        return Err(Error::Invariant(format!(
            "bound chain broken at (p, n, m) = ({p}, {n}, {m}): main {main_z}, Weil-Serre {ws_z}, Weil {weil_z}"
        )));
    }
    Ok(BoundReport {
        p,
        n,
        m,
        q: b.q,
        g: b.g,
        weil_Z: weil_z,
        weil_N: weil_n,
        weil_serre_N: ws_n,
        weil_serre_Z: ws_z,
        main_Z: main_z,
        char_sum_E: e,
    })
}

/// `||Z_f| - q/p| <= bound` checked exactly; `q/p` is an integer.
pub fn zero_count_within(zeros: u64, q: u64, p: u64, bound: &BigUint) -> bool {
    BigUint::from(zeros.abs_diff(q / p)) <= *bound
}
