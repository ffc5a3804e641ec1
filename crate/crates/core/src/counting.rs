//! Exhaustive trace-zero counts, rational point counts, trace-value
//! distributions and exact additive character sums for `y^p - y = f(x)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{extend_field, smallest_with_trace, Elem, FieldSpec, FiniteField};
use crate::limits::{map_partitions, Limits};
use crate::poly::Poly;

/// Rewrites `f` so that no exponent is divisible by `p`, preserving
/// `Tr(f(a))` for every `a` in every extension of `F_q`.
///
/// A term `c x^(p j)` becomes `c^(p^(n-1)) x^j`, the Frobenius preimage of
/// `c x^j`; this repeats until the exponent is prime to `p`. The constant
/// term is left alone.
pub fn reduce_trace_form(field: &FieldSpec, f: &Poly) -> Poly {
    let p = field.p();
    let n = field.n() as u64;
    let reduced = f.terms().iter().map(|&(mut e, mut c)| {
        while e > 0 && e % p == 0 {
            e /= p;
            c = field.frobenius(c, n - 1);
        }
        (e, c)
    });
    Poly::from_terms(field, reduced.collect::<Vec<_>>()).expect("coefficients already validated")
}

/// The curve `y^p - y = f(x)` over `F_q`, with `f` kept in reduced trace
/// form so that its degree is prime to `p` (or `f` is constant).
#[derive(Debug, Clone)]
pub struct CurveInstance {
    field: Arc<FieldSpec>,
    original: Poly,
    f: Poly,
}

impl CurveInstance {
    pub fn new(field: Arc<FieldSpec>, f: Poly) -> Result<Self> {
        f.validate(field.as_ref())?;
        let reduced = reduce_trace_form(&field, &f);
        Ok(CurveInstance { field, original: f, f: reduced })
    }

    pub fn parse(field: Arc<FieldSpec>, text: &str) -> Result<Self> {
        let f = Poly::parse(text, field.as_ref())?;
        CurveInstance::new(field, f)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// The polynomial as given.
    pub fn original(&self) -> &Poly {
        &self.original
    }

    /// The reduced polynomial actually used for counting.
    pub fn poly(&self) -> &Poly {
        &self.f
    }

    /// Degree `m` of the reduced polynomial; 0 for constants.
    pub fn degree(&self) -> u64 {
        self.f.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `g = (m - 1)(p - 1) / 2`; `None` for constant `f`.
    pub fn genus(&self) -> Option<u64> {
        let m = self.degree();
        (m > 0).then(|| (m - 1) * (self.field.p() - 1) / 2)
    }

    /// The curve for `beta * f`, reduced afresh.
    pub fn twisted(&self, beta: Elem) -> Result<CurveInstance> {
        self.field.check(beta)?;
        CurveInstance::new(self.field.clone(), self.original.scale(beta, self.field.as_ref()))
    }

    /// The curve for `f - gamma`.
    pub fn shifted(&self, gamma: Elem) -> Result<CurveInstance> {
        self.field.check(gamma)?;
        let f = self.original.sub(&Poly::constant(gamma), self.field.as_ref());
        CurveInstance::new(self.field.clone(), f)
    }
}

fn count_trace_value<F: FiniteField + ?Sized>(field: &F, f: &Poly, target: u64, limits: &Limits) -> Result<u64> {
    limits.check_elements(field.order() as u128)?;
    let parts = map_partitions(0..field.order(), limits.threads, |range| {
        range.filter(|&x| field.abs_trace(f.eval(field, x)) == target).count() as u64
    });
    Ok(parts.into_iter().sum())
}

/// `|Z_f| = #{a in F_q : Tr(f(a)) = 0}` by exhaustive evaluation.
pub fn count_trace_zeros(curve: &CurveInstance, limits: &Limits) -> Result<u64> {
    count_trace_value(curve.field.as_ref(), &curve.f, 0, limits)
}

/// `N_f(i)`: one point at infinity plus the affine solutions over `F_{q^i}`,
/// counted as `p` points over every `a` with `Tr(f(a)) = 0`.
pub fn count_curve_points(curve: &CurveInstance, i: u32, limits: &Limits) -> Result<u64> {
    if i == 0 {
        return Err(Error::Parse("extension degree must be at least 1".into()));
    }
    let q = curve.field.q() as u128;
    let required = q.checked_pow(i).unwrap_or(u128::MAX);
    limits.check_elements(required)?;
    let zeros = if i == 1 {
        count_trace_zeros(curve, limits)?
    } else {
        let ext = extend_field(curve.field.clone(), i)?;
        count_trace_value(&ext, &curve.f, 0, limits)?
    };
    Ok(1 + curve.field.p() * zeros)
}

/// Reference count by enumerating pairs `(a, b)` with `b^p - b = f(a)`.
/// Quadratic in the field size; meant for cross-checks on tiny fields.
pub fn count_curve_points_by_pairs(curve: &CurveInstance, i: u32, limits: &Limits) -> Result<u64> {
    let ext = extend_field(curve.field.clone(), i.max(1))?;
    let order = ext.order() as u128;
    limits.check_elements(order * order)?;
    let p = curve.field.p() as u128;
    let mut affine = 0u64;
    for a in 0..ext.order() {
        let fa = curve.original.eval(&ext, a);
        affine += (0..ext.order())
            .filter(|&b| ext.sub(ext.pow(b, p), b) == fa)
            .count() as u64;
    }
    Ok(1 + affine)
}

/// Counts `M(a) = #{x : Tr(beta f(x)) = a}` for each `a` in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDistribution {
    pub beta: Elem,
    pub counts: Vec<u64>,
}

impl TraceDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum_a |M(a) - q/p|`, the quantity bounded term by term by the
    /// zero-count bound.
    pub fn deviation_sum(&self) -> u64 {
        let p = self.counts.len() as u64;
        let mean = self.total() / p;
        self.counts.iter().map(|&c| c.abs_diff(mean)).sum()
    }

    pub fn max_deviation(&self) -> u64 {
        let p = self.counts.len() as u64;
        let mean = self.total() / p;
        self.counts.iter().map(|&c| c.abs_diff(mean)).max().unwrap_or(0)
    }
}

impl Serialize for TraceDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            beta: Elem,
            counts: BTreeMap<String, &'a u64>,
        }
        let counts = self.counts.iter().enumerate().map(|(a, c)| (a.to_string(), c)).collect();
        Repr { beta: self.beta, counts }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TraceDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            beta: Elem,
            counts: BTreeMap<u64, u64>,
        }
        let r = Repr::deserialize(d)?;
        let len = r.counts.len() as u64;
        if r.counts.keys().copied().ne(0..len) {
            return Err(serde::de::Error::custom("counts must be keyed 0..p"));
        }
        Ok(TraceDistribution { beta: r.beta, counts: r.counts.into_values().collect() })
    }
}

/// Exact trace-value distribution of `beta * f`.
pub fn trace_value_distribution(curve: &CurveInstance, beta: Elem, limits: &Limits) -> Result<TraceDistribution> {
    if beta == 0 {
        return Err(Error::DivisionByZero);
    }
    let twisted = curve.twisted(beta)?;
    let field = curve.field.as_ref();
    limits.check_elements(field.q() as u128)?;
    let p = field.p() as usize;
    let parts = map_partitions(0..field.q(), limits.threads, |range| {
        let mut counts = vec![0u64; p];
        for x in range {
            counts[field.abs_trace(twisted.f.eval(field, x)) as usize] += 1;
        }
        counts
    });
    let mut counts = vec![0u64; p];
    for part in parts {
        for (acc, c) in counts.iter_mut().zip(part) {
            *acc += c;
        }
    }
    Ok(TraceDistribution { beta, counts })
}

/// Recomputes each `M(a)` as `|Z_(beta f - gamma_a)|` where `gamma_a` is the
/// smallest-encoding element of trace `a`.
pub fn distribution_via_shifts(curve: &CurveInstance, beta: Elem, limits: &Limits) -> Result<TraceDistribution> {
    if beta == 0 {
        return Err(Error::DivisionByZero);
    }
    let twisted = curve.twisted(beta)?;
    let field = curve.field.as_ref();
    let counts = (0..field.p())
        .map(|a| {
            let gamma = smallest_with_trace(field, a).expect("trace is surjective");
            count_trace_zeros(&twisted.shifted(gamma)?, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceDistribution { beta, counts })
}

/// A cyclotomic integer `sum_a c_a zeta_p^a`, stored by its coefficient
/// vector (not reduced modulo `1 + zeta + ... + zeta^(p-1)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicInteger {
    pub p: u64,
    pub coeffs: Vec<i128>,
}

impl CyclotomicInteger {
    /// `z * conj(z)` as a cyclotomic integer: coefficient `d` is
    /// `sum_b c_(b+d) c_b`.
    pub fn norm_squared(&self) -> CyclotomicInteger {
        let p = self.p as usize;
        let coeffs = (0..p)
            .map(|d| (0..p).map(|b| self.coeffs[(b + d) % p] * self.coeffs[b]).sum())
            .collect();
        CyclotomicInteger { p: self.p, coeffs }
    }

    /// True when the value is 0 in `Z[zeta_p]`, i.e. all coefficients agree.
    pub fn is_zero(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    pub fn abs_f64(&self) -> f64 {
        let p = self.p as f64;
        let (re, im) = self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (a, &c)| {
            let angle = std::f64::consts::TAU * a as f64 / p;
            (re + c as f64 * angle.cos(), im + c as f64 * angle.sin())
        });
        re.hypot(im)
    }
}

/// `sum_x chi_beta(f(x))` held exactly as its trace-value distribution.
#[derive(Debug, Clone, Serialize)]
pub struct CharSum {
    pub q: u64,
    pub distribution: TraceDistribution,
    /// `|sum_x chi_beta(f(x))| = q |E|`, as a float.
    pub magnitude: f64,
    /// Absolute error bound on `magnitude`.
    pub magnitude_error: f64,
}

impl CharSum {
    pub fn exact_value(&self) -> CyclotomicInteger {
        let p = self.distribution.counts.len() as u64;
        CyclotomicInteger { p, coeffs: self.distribution.counts.iter().map(|&c| c as i128).collect() }
    }

    /// The magnitude as an exact integer when it is one: always for `p = 2`,
    /// and whenever the sum vanishes.
    pub fn exact_magnitude(&self) -> Option<u64> {
        let counts = &self.distribution.counts;
        if counts.len() == 2 {
            return Some(counts[0].abs_diff(counts[1]));
        }
        self.exact_value().is_zero().then_some(0)
    }

    /// `|E| = magnitude / q`.
    pub fn expectation_magnitude(&self) -> f64 {
        self.magnitude / self.q as f64
    }
}

pub fn char_sum(curve: &CurveInstance, beta: Elem, limits: &Limits) -> Result<CharSum> {
    let distribution = trace_value_distribution(curve, beta, limits)?;
    let q = curve.field.q();
    let p = curve.field.p();
    let exact = CyclotomicInteger { p, coeffs: distribution.counts.iter().map(|&c| c as i128).collect() };
    let (magnitude, magnitude_error) = match exact.coeffs.as_slice() {
        [a, b] => ((a - b).unsigned_abs() as f64, 0.0),
        _ if exact.is_zero() => (0.0, 0.0),
        _ => (exact.abs_f64(), 4.0 * (p as f64 + 2.0) * q as f64 * f64::EPSILON),
    };
    Ok(CharSum { q, distribution, magnitude, magnitude_error })
}
