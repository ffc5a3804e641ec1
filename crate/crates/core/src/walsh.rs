//! Walsh spectra `W_f(a, b) = sum_x (-1)^(Tr(a f(x)) + Tr(b x))` of
//! polynomials over `F_{2^n}`, nonlinearity, and the bounds on both.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::char_sum_bound;
use crate::error::{Error, Result, Violation};
use crate::field::{Elem, FieldSpec, FiniteField};
use crate::limits::{map_partitions, Limits};
use crate::poly::Poly;

/// Largest `n` for which every value is kept; above it only the maximum.
pub const DENSE_MAX_N: u32 = 13;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub n: u32,
    /// `W(a, b)` at index `(a - 1) * 2^n + b`, when stored.
    pub values: Option<Vec<i32>>,
    /// `max |W(a, b)|` over `a != 0` and all `b`.
    pub max_abs: u64,
    /// `sum_b W(a, b)^2 = 2^(2n)` held for every `a`.
    pub parseval: bool,
}

impl WalshSpectrum {
    pub fn get(&self, a: Elem, b: Elem) -> Option<i32> {
        let q = 1u64 << self.n;
        (a != 0 && a < q && b < q).then(|| self.values.as_ref().map(|v| v[((a - 1) * q + b) as usize]))?
    }
}

/// In-place fast Walsh-Hadamard transform.
fn fwht(v: &mut [i32]) {
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
}

fn require_binary(field: &FieldSpec) -> Result<()> {
    if field.p() != 2 {
        return Err(Error::InvalidField(format!("Walsh spectra need characteristic 2, got {}", field.p())));
    }
    Ok(())
}

/// Full spectrum over `a != 0`. For each `a` the map `x -> (-1)^Tr(a f(x))`
/// is transformed over coordinate vectors `u`; then `W(a, b)` is read at
/// `u(b)_j = Tr(b e_j)`, since `Tr(b x) = <x, u(b)>` in power-basis
/// coordinates.
pub fn walsh_spectrum(field: &FieldSpec, f: &Poly, limits: &Limits) -> Result<WalshSpectrum> {
    require_binary(field)?;
    f.validate(field)?;
    limits.check_elements(field.q() as u128 * field.q() as u128)?;
    let fx: Vec<Elem> = (0..field.q()).map(|x| f.eval(field, x)).collect();
    walsh_spectrum_of_table(field, &fx, limits)
}

/// Spectrum of the function given by its value table `fx[x]`.
pub fn walsh_spectrum_of_table(field: &FieldSpec, fx: &[Elem], limits: &Limits) -> Result<WalshSpectrum> {
    let q = field.q();
    limits.check_elements(q as u128 * q as u128)?;
    WalshTransform::new(field)?.spectrum(fx, limits)
}

/// Per-field precomputation shared by every spectrum over that field.
#[derive(Debug, Clone)]
pub struct WalshTransform<'a> {
    field: &'a FieldSpec,
    /// `u(b)` as a coordinate bitmask, indexed by `b`.
    u_of_b: Vec<usize>,
}

impl<'a> WalshTransform<'a> {
    pub fn new(field: &'a FieldSpec) -> Result<Self> {
        require_binary(field)?;
        let basis = field.basis();
        let u_of_b = (0..field.q())
            .map(|b| basis.iter().enumerate().map(|(j, &e)| (field.abs_trace(field.mul(b, e)) as usize) << j).sum())
            .collect();
        Ok(WalshTransform { field, u_of_b })
    }

    /// Writes `W(a, b)` for all `b` into `out`, using `buf` as scratch.
    pub fn component(&self, a: Elem, fx: &[Elem], buf: &mut [i32], out: &mut [i32]) {
        for (slot, &y) in buf.iter_mut().zip(fx) {
            *slot = 1 - 2 * self.field.abs_trace(self.field.mul(a, y)) as i32;
        }
        fwht(buf);
        for (w, &u) in out.iter_mut().zip(&self.u_of_b) {
            *w = buf[u];
        }
    }

    pub fn spectrum(&self, fx: &[Elem], limits: &Limits) -> Result<WalshSpectrum> {
        let n = self.field.n();
        let q = self.field.q();
        if fx.len() as u64 != q || fx.iter().any(|&y| y >= q) {
            return Err(Error::Parse(format!("value table must list {q} field elements")));
        }
        let dense = n <= DENSE_MAX_N;
        let target = 1i64 << (2 * n);
        let parts = map_partitions(1..q, limits.threads, |range| {
            let mut vals = Vec::new();
            let mut max_abs = 0u64;
            let mut parseval = true;
            let mut buf = vec![0i32; q as usize];
            let mut row = vec![0i32; q as usize];
            for a in range {
                self.component(a, fx, &mut buf, &mut row);
                parseval &= row.iter().map(|&w| (w as i64).pow(2)).sum::<i64>() == target;
                max_abs = max_abs.max(row.iter().map(|w| w.unsigned_abs() as u64).max().unwrap_or(0));
                if dense {
                    vals.extend_from_slice(&row);
                }
            }
            (vals, max_abs, parseval)
        });
        let mut values = dense.then(|| Vec::with_capacity(((q - 1) * q) as usize));
        let mut max_abs = 0;
        let mut parseval = true;
        for (v, m, ok) in parts {
            if let Some(all) = values.as_mut() {
                all.extend(v);
            }
            max_abs = max_abs.max(m);
            parseval &= ok;
        }
        Ok(WalshSpectrum { n, values, max_abs, parseval })
    }
}

/// `NL(f) = 2^(n-1) - max |W| / 2`.
pub fn nonlinearity(spectrum: &WalshSpectrum) -> u64 {
    (1u64 << (spectrum.n - 1)) - spectrum.max_abs / 2
}

fn require_odd_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Violation::ExtensionDegreeTooSmall { n }.into());
    }
    if n.is_multiple_of(2) {
        return Err(Violation::EvenExtensionDegree { n }.into());
    }
    Ok(())
}

/// `2^(n-1) - 2^((n-1)/2)` for odd `n >= 3`.
pub fn nl_upper_bound(n: u32) -> Result<u64> {
    require_odd_n(n)?;
    Ok((1u64 << (n - 1)) - (1u64 << ((n - 1) / 2)))
}

/// `2^(n-1) - B / 2` where `B` bounds `|sum_x chi(a f(x) + b x)|` for
/// `deg f = m`.
pub fn nl_lower_bound_from_theorem(n: u32, m: u64) -> Result<i64> {
    require_odd_n(n)?;
    if m < 3 {
        return Err(Violation::DegreeTooSmall { m }.into());
    }
    let b = char_sum_bound(2, n, m)?.q_times_bound;
    let half = (b / 2u32).to_i64().ok_or_else(|| Error::Invariant("bound exceeds 64 bits".into()))?;
    Ok((1i64 << (n - 1)) - half)
}

/// Exponent `e` such that `2^e` divides every `W(a, b)` for odd `m >= 3`:
/// `ceil(n/g)` for `g = (m-1)/2 > 1`, `(n+1)/2` for `g = 1`.
pub fn walsh_divisibility_exponent(n: u32, m: u64) -> Result<u32> {
    require_odd_n(n)?;
    if m < 3 || m.is_multiple_of(2) {
        return Err(Violation::DegreeNotCoprime { m, p: 2 }.into());
    }
    let g = (m - 1) / 2;
    Ok(if g == 1 { n.div_ceil(2) } else { (n as u64).div_ceil(g) as u32 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub q_times_char_sum_bound: u64,
    pub max_abs_within_bound: bool,
    pub nl_lower_bound: i64,
    pub nl_upper_bound: u64,
    pub nl_within_bounds: bool,
    pub divisibility_exponent: u32,
    pub divisibility_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalshSummary {
    pub n: u32,
    pub m: u64,
    pub max_abs_walsh: u64,
    pub nonlinearity: u64,
    pub parseval: bool,
    pub bound_check: Option<BoundCheck>,
}

/// Spectrum summary; the bound checks apply for odd `n >= 3` and odd
/// `deg f >= 3`.
pub fn walsh_summary(field: &FieldSpec, f: &Poly, limits: &Limits) -> Result<WalshSummary> {
    let spectrum = walsh_spectrum(field, f, limits)?;
    let m = f.degree().unwrap_or(0);
    let nl = nonlinearity(&spectrum);
    let n = field.n();
    let bound_check = if n >= 3 && n % 2 == 1 && m >= 3 && m % 2 == 1 {
        let b: BigUint = char_sum_bound(2, n, m)?.q_times_bound;
        let b = b.to_u64().ok_or_else(|| Error::Invariant("bound exceeds 64 bits".into()))?;
        let lower = nl_lower_bound_from_theorem(n, m)?;
        let upper = nl_upper_bound(n)?;
        let e = walsh_divisibility_exponent(n, m)?;
        let divisibility_holds = spectrum.values.as_ref().map(|v| v.iter().all(|&w| w % (1i32 << e) == 0));
        Some(BoundCheck {
            q_times_char_sum_bound: b,
            max_abs_within_bound: spectrum.max_abs <= b,
            nl_lower_bound: lower,
            nl_upper_bound: upper,
            nl_within_bounds: lower <= nl as i64 && nl <= upper,
            divisibility_exponent: e,
            divisibility_holds,
        })
    } else {
        None
    };
    Ok(WalshSummary { n, m, max_abs_walsh: spectrum.max_abs, nonlinearity: nl, parseval: spectrum.parseval, bound_check })
}
