//! Sparse polynomials over `F_q` with canonical-integer coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};

/// Terms `(exponent, coefficient)` in ascending exponent order with no zero
/// coefficients. Serialized as a sequence of `[exponent, coefficient]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, Elem)>", into = "Vec<(u64, Elem)>")]
pub struct Poly {
    terms: Vec<(u64, Elem)>,
}

impl TryFrom<Vec<(u64, Elem)>> for Poly {
    type Error = Error;

    /// Field-free normalization: sorts, drops zero coefficients and rejects
    /// repeated exponents (merging them would need field addition).
    fn try_from(mut terms: Vec<(u64, Elem)>) -> Result<Self> {
        terms.retain(|&(_, c)| c != 0);
        terms.sort_by_key(|&(e, _)| e);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("repeated exponent in term list".into()));
        }
        Ok(Poly { terms })
    }
}

impl From<Poly> for Vec<(u64, Elem)> {
    fn from(p: Poly) -> Self {
        p.terms
    }
}

impl Poly {
    /// Collects terms, adding coefficients of equal exponents in `field`.
    pub fn from_terms<F, I>(field: &F, terms: I) -> Result<Self>
    where
        F: FiniteField + ?Sized,
        I: IntoIterator<Item = (u64, Elem)>,
    {
        let mut all: Vec<(u64, Elem)> = Vec::new();
        for (e, c) in terms {
            field.check(c)?;
            all.push((e, c));
        }
        all.sort_by_key(|&(e, _)| e);
        let mut merged: Vec<(u64, Elem)> = Vec::with_capacity(all.len());
        for (e, c) in all {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc = field.add(*acc, c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Ok(Poly { terms: merged })
    }

    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Poly::monomial(0, c)
    }

    pub fn monomial(exp: u64, coeff: Elem) -> Self {
        if coeff == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(exp, coeff)] }
        }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(1, 1)
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|&(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Option<Elem> {
        self.terms.last().map(|&(_, c)| c)
    }

    pub fn coeff(&self, exp: u64) -> Elem {
        self.terms.iter().find(|&&(e, _)| e == exp).map_or(0, |&(_, c)| c)
    }

    /// Checks that every coefficient is an element of `field`.
    pub fn validate<F: FiniteField + ?Sized>(&self, field: &F) -> Result<()> {
        for &(_, c) in &self.terms {
            field.check(c)?;
        }
        Ok(())
    }

    /// Evaluates at `x` in `field`; coefficients are read as elements of
    /// `field` (base constants embed with unchanged encoding).
    pub fn eval<F: FiniteField + ?Sized>(&self, field: &F, x: Elem) -> Elem {
        // sparse Horner from the top term down
        let mut acc = 0;
        let mut prev: Option<u64> = None;
        for &(e, c) in self.terms.iter().rev() {
            if let Some(pe) = prev {
                acc = field.mul(acc, field.pow(x, (pe - e) as u128));
            }
            acc = field.add(acc, c);
            prev = Some(e);
        }
        match prev {
            Some(e) if e > 0 => field.mul(acc, field.pow(x, e as u128)),
            _ => acc,
        }
    }

    pub fn add<F: FiniteField + ?Sized>(&self, other: &Poly, field: &F) -> Poly {
        Poly::from_terms(field, self.terms.iter().chain(&other.terms).copied())
            .expect("operands were validated")
    }

    pub fn neg<F: FiniteField + ?Sized>(&self, field: &F) -> Poly {
        Poly { terms: self.terms.iter().map(|&(e, c)| (e, field.neg(c))).collect() }
    }

    pub fn sub<F: FiniteField + ?Sized>(&self, other: &Poly, field: &F) -> Poly {
        self.add(&other.neg(field), field)
    }

    pub fn scale<F: FiniteField + ?Sized>(&self, c: Elem, field: &F) -> Poly {
        Poly::from_terms(field, self.terms.iter().map(|&(e, a)| (e, field.mul(a, c))))
            .expect("operands were validated")
    }

    pub fn mul<F: FiniteField + ?Sized>(&self, other: &Poly, field: &F) -> Poly {
        let products = self
            .terms
            .iter()
            .flat_map(|&(e1, a)| other.terms.iter().map(move |&(e2, b)| (e1 + e2, a, b)))
            .map(|(e, a, b)| (e, field.mul(a, b)))
            .collect::<Vec<_>>();
        Poly::from_terms(field, products).expect("operands were validated")
    }

    /// Parses `c*x^e + ...`; coefficients are canonical integers, `c*` and
    /// `^e` may be omitted, whitespace is ignored.
    pub fn parse<F: FiniteField + ?Sized>(text: &str, field: &F) -> Result<Poly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        for term in compact.split('+') {
            terms.push(parse_term(term)?);
        }
        Poly::from_terms(field, terms)
    }
}

fn parse_int(s: &str, what: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad {what} '{s}'")));
    }
    s.parse().map_err(|_| Error::Parse(format!("{what} '{s}' out of range")))
}

fn parse_term(term: &str) -> Result<(u64, Elem)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff, rest) = match term.split_once('*') {
        Some((c, r)) => (parse_int(c, "coefficient")?, Some(r)),
        None if term.starts_with('x') => (1, Some(term)),
        None => (parse_int(term, "coefficient")?, None),
    };
    let Some(rest) = rest else { return Ok((0, coeff)) };
    let exp_part = rest
        .strip_prefix('x')
        .ok_or_else(|| Error::Parse(format!("expected 'x' in term '{term}'")))?;
    let exp = match exp_part {
        "" => 1,
        e => parse_int(
            e.strip_prefix('^').ok_or_else(|| Error::Parse(format!("bad exponent in '{term}'")))?,
            "exponent",
        )?,
    };
    Ok((exp, coeff))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}
