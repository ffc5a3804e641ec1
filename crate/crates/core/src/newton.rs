//! p-adic Newton polygons of integer polynomials.
//!
//! Sign convention: a segment of slope `-k` and horizontal length `l`
//! accounts for exactly `l` roots of p-adic valuation `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Pow, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result, Violation};
use crate::exact;
use crate::field::is_prime;
use crate::zeta::LPolynomial;

/// Exponent of the largest power of `p` dividing a nonzero `x`.
pub fn valuation(x: &BigInt, p: u64) -> u64 {
    assert!(!x.is_zero(), "valuation of zero is infinite");
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    #[serde(with = "exact::ratio")]
    pub slope: Ratio<i64>,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(i, v_p(u_i))` for every nonzero coefficient.
    pub points: Vec<(u64, u64)>,
    /// Extreme points of the lower hull, left to right.
    pub vertices: Vec<(u64, u64)>,
    pub segments: Vec<Segment>,
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NewtonPolygon", 3)?;
        st.serialize_field("prime", &self.prime)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("segments", &self.segments)?;
        st.end()
    }
}

fn cross(o: (u64, u64), a: (u64, u64), b: (u64, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// Lower convex hull of `(i, v_p(u_i))`, `u` in ascending coefficient order.
/// Zero interior coefficients are skipped; collinear points are dropped so
/// only extreme vertices remain.
pub fn build_polygon(u: &[BigInt], p: u64) -> Result<NewtonPolygon> {
    if !is_prime(p) {
        return Err(Violation::NotPrime { p }.into());
    }
    match (u.first(), u.last()) {
        (Some(c), Some(l)) if !c.is_zero() && !l.is_zero() => {}
        _ => return Err(Error::InvalidPolynomial("constant and leading coefficients must be nonzero".into())),
    }
    let points: Vec<(u64, u64)> = u
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, valuation(c, p)))
        .collect();
    // monotone chain, lower half; points are already sorted by index
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment { slope: Ratio::new(w[1].1 as i64 - w[0].1 as i64, len as i64), length: len }
        })
        .collect();
    Ok(NewtonPolygon { prime: p, points, vertices: hull, segments })
}

/// `(k, multiplicity)` for each segment of slope `-k`.
pub fn root_valuations(np: &NewtonPolygon) -> Vec<(Ratio<i64>, u64)> {
    np.segments.iter().map(|s| (-s.slope, s.length)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A1Report {
    #[serde(with = "exact::ratio")]
    pub required: Ratio<i64>,
    /// `v_p(a_1)`; `None` when `a_1 = 0`.
    pub actual: Option<u64>,
    pub pass: bool,
}

/// Required valuation of `a_1`: `ceil(n/g)` for `g > 1`, `(n+1)/2` for `g = 1`.
pub fn required_a1_valuation(n: u32, g: u64) -> Ratio<i64> {
    match g {
        0 => Ratio::zero(),
        1 => Ratio::new(n as i64 + 1, 2),
        _ => Ratio::from_integer((n as u64).div_ceil(g) as i64),
    }
}

/// Checks `v_p(a_1)` against [`required_a1_valuation`] where `q = p^n`.
pub fn check_a1_valuation(l: &LPolynomial, n: u32) -> Result<A1Report> {
    if n == 0 {
        return Err(Violation::OutOfRange { what: "extension degree", detail: "n must be positive".into() }.into());
    }
    let p = l.q().nth_root(n);
    if Pow::pow(&p, n) != *l.q() {
        return Err(Error::Parse(format!("q = {} is not an n-th power for n = {n}", l.q())));
    }
    let p: u64 = p.try_into().map_err(|_| Error::Parse("characteristic exceeds 64 bits".into()))?;
    if !is_prime(p) {
        return Err(Violation::NotPrime { p }.into());
    }
    let required = required_a1_valuation(n, l.genus());
    let a1 = l.coeff(1);
    let actual = (!a1.is_zero()).then(|| valuation(&a1, p));
    let pass = actual.is_none_or(|v| Ratio::from_integer(v as i64) >= required);
    Ok(A1Report { required, actual, pass })
}
