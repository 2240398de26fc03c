//! Quaternion Brauer symbols (a,b), their norm forms, splitting behavior
//! at real places, and 2-torsion class equality over Q by local symbols.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numberfield::{same_field, FieldElement, NumberField, Ordering};
use crate::rational::{squarefree_part, Rat};
use crate::witt::{hilbert_symbol, odd_support, Place, QuadraticForm};

/// The Brauer symbol (a,b) with a, b nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct QuaternionSymbol {
    field: Arc<NumberField>,
    a: FieldElement,
    b: FieldElement,
}

impl QuaternionSymbol {
    pub fn new(field: &Arc<NumberField>, a: FieldElement, b: FieldElement) -> Result<Self> {
        if !same_field(a.field(), field) || !same_field(b.field(), field) {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(QuaternionSymbol {
            field: Arc::clone(field),
            a,
            b,
        })
    }

    pub fn from_ints(field: &Arc<NumberField>, a: i64, b: i64) -> Result<Self> {
        Self::new(
            field,
            FieldElement::from_int(field, a),
            FieldElement::from_int(field, b),
        )
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    /// True iff (a,b) splits at the real place P, i.e. a or b is P-positive.
    pub fn splits_at(&self, p: &Ordering) -> Result<bool> {
        if !same_field(p.field(), &self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.a.sign_at(p)? > 0 || self.b.sign_at(p)? > 0)
    }

    /// The norm form of the symbol algebra: <<a, b>> = <1, -a, -b, ab>.
    pub fn norm_form(&self) -> QuadraticForm {
        QuadraticForm::pfister(&self.field, &[self.a.clone(), self.b.clone()])
            .expect("nonzero slots")
    }

    /// Local real symbol at an ordering: -1 iff both slots are P-negative.
    pub fn real_symbol(&self, p: &Ordering) -> Result<i32> {
        Ok(if self.splits_at(p)? { 1 } else { -1 })
    }
}

impl fmt::Debug for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A formal sum of quaternion symbols in the 2-torsion of the Brauer group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerClass2 {
    field: Arc<NumberField>,
    symbols: Vec<QuaternionSymbol>,
}

impl BrauerClass2 {
    pub fn new(field: &Arc<NumberField>, symbols: Vec<QuaternionSymbol>) -> Result<Self> {
        for s in &symbols {
            if !same_field(s.field(), field) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(BrauerClass2 {
            field: Arc::clone(field),
            symbols,
        })
    }

    pub fn trivial(field: &Arc<NumberField>) -> Self {
        BrauerClass2 {
            field: Arc::clone(field),
            symbols: Vec::new(),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn symbols(&self) -> &[QuaternionSymbol] {
        &self.symbols
    }

    fn reduced_slots(&self) -> Result<Vec<(Rat, Rat)>> {
        if !self.field.is_rational() {
            return Err(Error::NonRationalField);
        }
        Ok(self
            .symbols
            .iter()
            .map(|s| {
                let a = s.a.as_rational().expect("degree-1 field");
                let b = s.b.as_rational().expect("degree-1 field");
                (
                    Rat::from_integer(squarefree_part(&a)),
                    Rat::from_integer(squarefree_part(&b)),
                )
            })
            .collect())
    }

    /// Product of local symbols at a place, with slots squarefree-reduced.
    pub fn local_symbol(&self, v: &Place) -> Result<i32> {
        let mut s = 1i32;
        for (a, b) in self.reduced_slots()? {
            s *= hilbert_symbol(&a, &b, v)?;
        }
        Ok(s)
    }
}

/// Equality of 2-torsion Brauer classes over Q: agreement of the local
/// symbol products at the real place, at 2, and at every odd prime
/// dividing a (squarefree-reduced) slot of either class.
pub fn class_equal_rational(c1: &BrauerClass2, c2: &BrauerClass2) -> Result<bool> {
    let mut support: Vec<BigInt> = Vec::new();
    for c in [c1, c2] {
        for (a, b) in c.reduced_slots()? {
            support.push(a.numer().clone());
            support.push(b.numer().clone());
        }
    }
    let mut places = vec![Place::Real, Place::finite(2)];
    for p in odd_support(&support) {
        places.push(Place::Finite(p));
    }
    for v in &places {
        if c1.local_symbol(v)? != c2.local_symbol(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Real-places equality over a general number field: agreement of the real
/// local symbols at every ordering. This is exactly what signatures can
/// detect; it is NOT full Brauer class equality.
pub fn class_equal_real_places(c1: &BrauerClass2, c2: &BrauerClass2) -> Result<bool> {
    if !same_field(c1.field(), c2.field()) {
        return Err(Error::FieldMismatch);
    }
    for p in c1.field().real_orderings() {
        let mut s1 = 1i32;
        for s in c1.symbols() {
            s1 *= s.real_symbol(&p)?;
        }
        let mut s2 = 1i32;
        for s in c2.symbols() {
            s2 *= s.real_symbol(&p)?;
        }
        if s1 != s2 {
            return Ok(false);
        }
    }
    Ok(true)
}
