//! L-polynomials of Artin-Schreier curves from point counts over the first
//! `g` extensions, with Weil-structure checks and the Hasse-Witt invariant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{count_curve_points, CurveInstance};
use crate::error::{Error, Result};
use crate::exact;
use crate::limits::Limits;

/// `L(T) = a_0 + a_1 T + ... + a_{2g} T^{2g}` for a curve over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LPolynomialRepr", into = "LPolynomialRepr")]
pub struct LPolynomial {
    q: BigInt,
    g: u64,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct LPolynomialRepr {
    #[serde(with = "exact::bigint")]
    q: BigInt,
    g: u64,
    #[serde(with = "exact::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<LPolynomialRepr> for LPolynomial {
    type Error = Error;
    fn try_from(r: LPolynomialRepr) -> Result<Self> {
        LPolynomial::new(r.q, r.g, r.coeffs)
    }
}

impl From<LPolynomial> for LPolynomialRepr {
    fn from(l: LPolynomial) -> Self {
        LPolynomialRepr { q: l.q, g: l.g, coeffs: l.coeffs }
    }
}

impl LPolynomial {
    /// Wraps raw coefficients; only the shape (`2g + 1` coefficients, `q > 1`)
    /// is checked, so that malformed candidates can still be inspected by
    /// [`verify_weil_structure`].
    pub fn new(q: impl Into<BigInt>, g: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        let q = q.into();
        if q <= BigInt::one() {
            return Err(Error::Parse(format!("field size q = {q} must exceed 1")));
        }
        if coeffs.len() as u64 != 2 * g + 1 {
            return Err(Error::Parse(format!("expected {} coefficients for g = {g}, got {}", 2 * g + 1, coeffs.len())));
        }
        Ok(LPolynomial { q, g, coeffs })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    /// `a_0, ..., a_{2g}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Power sums `s_1..s_k` of the reciprocal roots, by Newton's identities
    /// `s_i = -i a_i - sum_{j<i} s_j a_{i-j}`.
    pub fn power_sums(&self, k: usize) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = Vec::with_capacity(k);
        for i in 1..=k {
            let mut v = -BigInt::from(i) * self.coeff(i);
            for (j, sj) in s.iter().enumerate() {
                v -= sj * self.coeff(i - 1 - j);
            }
            s.push(v);
        }
        s
    }

    /// `N(i) = q^i + 1 - s_i` for `i = 1..=k`.
    pub fn predicted_counts(&self, k: usize) -> Vec<BigInt> {
        self.power_sums(k)
            .into_iter()
            .enumerate()
            .map(|(i, s)| Pow::pow(&self.q, i as u32 + 1) + 1 - s)
            .collect()
    }

    /// Coefficients in the reciprocal order `c_j = a_{2g-j}`, i.e. the
    /// characteristic polynomial of Frobenius.
    pub fn reciprocal(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }
}

/// Builds `L(T)` from `N(1..)`: the first `g` counts determine it, any further
/// counts are checked against the result.
pub fn l_polynomial_from_counts(q: impl Into<BigInt>, g: u64, counts: &[BigInt]) -> Result<LPolynomial> {
    let q = q.into();
    let g_us = g as usize;
    if counts.len() < g_us {
        return Err(Error::InconsistentCounts(format!("need {g} counts for genus {g}, got {}", counts.len())));
    }
    let s: Vec<BigInt> = counts[..g_us]
        .iter()
        .enumerate()
        .map(|(i, n)| Pow::pow(&q, i as u32 + 1) + 1 - n)
        .collect();
    let mut a = vec![BigInt::zero(); 2 * g_us + 1];
    a[0] = BigInt::one();
    for i in 1..=g_us {
        let acc: BigInt = (1..=i).map(|k| &s[k - 1] * &a[i - k]).sum();
        let (quot, rem) = (-acc).div_rem(&BigInt::from(i));
        if !rem.is_zero() {
            return Err(Error::InconsistentCounts(format!("a_{i} is not an integer")));
        }
        a[i] = quot;
    }
    for i in 0..g_us {
        a[2 * g_us - i] = Pow::pow(&q, (g_us - i) as u32) * &a[i];
    }
    let l = LPolynomial::new(q, g, a)?;
    let predicted = l.predicted_counts(counts.len());
    for (i, (want, got)) in counts.iter().zip(&predicted).enumerate().skip(g_us) {
        if want != got {
            return Err(Error::InconsistentCounts(format!(
                "N({}) = {want} but the L-polynomial predicts {got}",
                i + 1
            )));
        }
    }
    Ok(l)
}

/// `L(T)` of the curve from counts `N(1..)` with at least `g` entries.
pub fn l_polynomial(curve: &CurveInstance, counts: &[u64]) -> Result<LPolynomial> {
    let g = curve.genus().unwrap_or(0);
    let counts: Vec<BigInt> = counts.iter().map(|&c| c.into()).collect();
    l_polynomial_from_counts(curve.field().q(), g, &counts)
}

/// Counts `N(1..=g + extra)` exhaustively and builds `L(T)`, checking the
/// `extra` counts beyond `g` against it.
pub fn compute_l_polynomial(curve: &CurveInstance, extra: u32, limits: &Limits) -> Result<(LPolynomial, Vec<u64>)> {
    let g = curve.genus().unwrap_or(0) as u32;
    let counts = (1..=g + extra)
        .map(|i| count_curve_points(curve, i, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok((l_polynomial(curve, &counts)?, counts))
}

/// `max { j <= g : a_j != 0 mod p }`.
pub fn hasse_witt_invariant(l: &LPolynomial, p: u64) -> u64 {
    let p = BigInt::from(p);
    (0..=l.g)
        .rev()
        .find(|&j| !(l.coeff(j as usize) % &p).is_zero())
        .unwrap_or(0)
}

/// For `y^p - y = f(x)` with `gcd(deg f, p) = 1` the curve is
/// supersingular-free in the p-rank sense: its Hasse-Witt invariant is 0.
pub fn predicted_hasse_witt_artin_schreier() -> u64 {
    0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilReport {
    pub constant_term_one: bool,
    pub leading_is_q_pow_g: bool,
    pub functional_equation: bool,
    pub power_sum_bound: bool,
    /// First `i` with `|s_i| > 2g q^(i/2)`, if any.
    pub power_sum_violation: Option<u64>,
}

impl WeilReport {
    pub fn pass(&self) -> bool {
        self.constant_term_one && self.leading_is_q_pow_g && self.functional_equation && self.power_sum_bound
    }
}

pub fn verify_weil_structure(l: &LPolynomial) -> WeilReport {
    let g = l.g as usize;
    let functional_equation =
        (0..=g).all(|i| l.coeffs[2 * g - i] == Pow::pow(&l.q, (g - i) as u32) * &l.coeffs[i]);
    // |s_i| <= 2g q^(i/2)  <=>  s_i^2 <= 4 g^2 q^i
    let four_g2 = BigInt::from(4 * l.g * l.g);
    let power_sum_violation = l
        .power_sums(2 * g)
        .iter()
        .enumerate()
        .find(|(i, s)| s.abs().pow(2u32) > &four_g2 * Pow::pow(&l.q, *i as u32 + 1))
        .map(|(i, _)| i as u64 + 1);
    WeilReport {
        constant_term_one: l.coeffs[0].is_one(),
        leading_is_q_pow_g: l.coeffs[2 * g] == Pow::pow(&l.q, l.g as u32),
        functional_equation,
        power_sum_bound: power_sum_violation.is_none(),
        power_sum_violation,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::FieldSpec;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn curve(p: u64, n: u32, f: &str) -> CurveInstance {
        CurveInstance::parse(Arc::new(FieldSpec::with_default_modulus(p, n).unwrap()), f).unwrap()
    }

    #[test]
    fn elliptic_curve_over_f2() {
        let l = l_polynomial_from_counts(2, 1, &ints(&[3, 9])).unwrap();
        assert_eq!(l.coeffs(), ints(&[1, 0, 2]).as_slice());
        assert_eq!(hasse_witt_invariant(&l, 2), 0);
        assert!(verify_weil_structure(&l).pass());
        assert!(l_polynomial_from_counts(2, 1, &ints(&[3, 7])).is_err());
    }

    #[test]
    fn genus_zero() {
        let l = l_polynomial_from_counts(8, 0, &[]).unwrap();
        assert_eq!(l.coeffs(), ints(&[1]).as_slice());
        assert!(verify_weil_structure(&l).pass());
        let c = curve(2, 3, "x");
        let (l, _) = compute_l_polynomial(&c, 1, &Limits::default()).unwrap();
        assert_eq!(l.coeffs(), ints(&[1]).as_slice());
    }

    #[test]
    fn frozen_genus_two_examples() {
        let lim = Limits::default();
        // counts frozen from the brute-force oracle over F_32 and F_1024
        for (f, n1, n2, coeffs) in [
            ("x^5", 33, 1025, [1, 0, 0, 0, 1024]),
            ("x^5 + x^3", 25, 1025, [1, -8, 32, -256, 1024]),
            ("x^5 + x", 25, 1089, [1, -8, 64, -256, 1024]),
        ] {
            let c = curve(2, 5, f);
            let (l, counts) = compute_l_polynomial(&c, 0, &lim).unwrap();
            assert_eq!(counts, vec![n1, n2], "{f}");
            assert_eq!(l.coeffs(), ints(&coeffs).as_slice(), "{f}");
            assert!(verify_weil_structure(&l).pass());
            assert_eq!(hasse_witt_invariant(&l, 2), predicted_hasse_witt_artin_schreier());
        }
        let l = l_polynomial_from_counts(32, 1, &ints(&[25])).unwrap();
        assert_eq!(l.coeffs(), ints(&[1, -8, 32]).as_slice());
    }

    #[test]
    fn counts_round_trip_through_extensions() {
        let lim = Limits::default();
        for (p, n, f) in [(2, 3, "x^5 + x^3 + 1"), (3, 1, "x^4 + 2*x"), (3, 2, "x^2 + x"), (5, 1, "x^3 + x")] {
            let c = curve(p, n, f);
            let g = c.genus().unwrap() as u32;
            let (l, counts) = compute_l_polynomial(&c, g, &lim).unwrap();
            let predicted = l.predicted_counts(counts.len());
            assert_eq!(predicted, counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), "{f}");
            assert!(verify_weil_structure(&l).pass());
            assert_eq!(hasse_witt_invariant(&l, p), 0, "{f}");
            assert_eq!((BigInt::from(counts[0]) - BigInt::from(c.field().q()) - BigInt::one()).abs(), l.coeff(1).abs());
        }
    }

    #[test]
    fn weil_structure_violations() {
        let l = LPolynomial::new(2, 1, ints(&[1, 5, 2])).unwrap();
        let r = verify_weil_structure(&l);
        assert!(r.constant_term_one && r.leading_is_q_pow_g && r.functional_equation);
        assert_eq!(r.power_sum_violation, Some(1));
        assert!(!r.pass());
        let l = LPolynomial::new(2, 1, ints(&[1, 1, 3])).unwrap();
        assert!(!verify_weil_structure(&l).leading_is_q_pow_g);
        assert!(LPolynomial::new(2, 1, ints(&[1, 0])).is_err());
    }

    #[test]
    fn hasse_witt_picks_largest_unit_index() {
        let l = LPolynomial::new(2, 1, ints(&[1, 1, 2])).unwrap();
        assert_eq!(hasse_witt_invariant(&l, 2), 1);
        let l = LPolynomial::new(3, 2, ints(&[1, 1, 2, 3, 9])).unwrap();
        assert_eq!(hasse_witt_invariant(&l, 3), 2);
    }

    #[test]
    fn json_shape() {
        let l = l_polynomial_from_counts(2, 1, &ints(&[3])).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"q":2,"g":1,"coeffs":[1,0,2]}"#);
        assert_eq!(serde_json::from_str::<LPolynomial>(&json).unwrap(), l);
        assert!(serde_json::from_str::<LPolynomial>(r#"{"q":2,"g":1,"coeffs":[1]}"#).is_err());
    }
}
