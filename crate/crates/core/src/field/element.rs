use std::fmt;
use std::sync::Arc;

use super::{Elem, FiniteField};
use crate::error::{Error, Result};

/// An element bundled with the field it lives in. Arithmetic between
/// elements of different fields is rejected.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<dyn FiniteField>,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldElement").field("value", &self.value).finish()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl FieldElement {
    pub fn new(field: Arc<dyn FiniteField>, value: Elem) -> Result<Self> {
        field.check(value)?;
        Ok(FieldElement { field, value })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Arc<dyn FiniteField> {
        &self.field
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.signature() == other.field.signature()
    }

    pub fn frobenius(&self, k: u64) -> Self {
        FieldElement { field: self.field.clone(), value: self.field.frobenius(self.value, k) }
    }

    pub fn abs_trace(&self) -> u64 {
        self.field.abs_trace(self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if !a.same_field(b) {
        return Err(Error::MixedFields);
    }
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value)?,
    };
    Ok(FieldElement { field: f.clone(), value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn checked_arithmetic() {
        let f: Arc<dyn FiniteField> = Arc::new(FieldSpec::with_default_modulus(2, 3).unwrap());
        let g: Arc<dyn FiniteField> = Arc::new(FieldSpec::with_default_modulus(2, 4).unwrap());
        let x = FieldElement::new(f.clone(), 3).unwrap();
        let y = FieldElement::new(f.clone(), 5).unwrap();
        assert_eq!(arith(&x, &y, ArithOp::Mul).unwrap().value(), 4);
        assert_eq!(arith(&x, &x, ArithOp::Add).unwrap().value(), 0);
        let q = arith(&x, &y, ArithOp::Div).unwrap();
        assert_eq!(arith(&q, &y, ArithOp::Mul).unwrap(), x);
        let zero = FieldElement::new(f.clone(), 0).unwrap();
        assert_eq!(arith(&x, &zero, ArithOp::Div), Err(Error::DivisionByZero));
        let z = FieldElement::new(g, 3).unwrap();
        assert_eq!(arith(&x, &z, ArithOp::Add), Err(Error::MixedFields));
        assert!(FieldElement::new(f, 8).is_err());
    }

    #[test]
    fn separately_built_identical_fields_mix() {
        let f1: Arc<dyn FiniteField> = Arc::new(FieldSpec::with_default_modulus(3, 2).unwrap());
        let f2: Arc<dyn FiniteField> = Arc::new(FieldSpec::with_default_modulus(3, 2).unwrap());
        let a = FieldElement::new(f1, 4).unwrap();
        let b = FieldElement::new(f2, 5).unwrap();
        assert!(arith(&a, &b, ArithOp::Sub).is_ok());
    }
}
