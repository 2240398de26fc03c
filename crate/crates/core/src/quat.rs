//! Quaternion algebras Q = (a,b)_K with the canonical symplectic
//! involution, pure-quaternion geometry, and the constructive slot
//! decomposition [Q] = (z^2, c) used by the mixed product.
//!
//! Relations: i^2 = a, j^2 = b, ij = k = -ji, k^2 = -ab.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numberfield::{same_field, FieldElement, NumberField};

#[derive(Clone, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    field: Arc<NumberField>,
    a: FieldElement,
    b: FieldElement,
}

impl QuaternionAlgebra {
    pub fn new(field: &Arc<NumberField>, a: FieldElement, b: FieldElement) -> Result<Arc<Self>> {
        if !same_field(a.field(), field) || !same_field(b.field(), field) {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Arc::new(QuaternionAlgebra {
            field: Arc::clone(field),
            a,
            b,
        }))
    }

    pub fn from_ints(field: &Arc<NumberField>, a: i64, b: i64) -> Result<Arc<Self>> {
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
}

impl fmt::Debug for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

pub fn same_algebra(x: &Arc<QuaternionAlgebra>, y: &Arc<QuaternionAlgebra>) -> bool {
    Arc::ptr_eq(x, y) || x == y
}

/// An element x0 + x1 i + x2 j + x3 k of a quaternion algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Quaternion {
    algebra: Arc<QuaternionAlgebra>,
    coords: [FieldElement; 4],
}

impl Quaternion {
    pub fn new(algebra: &Arc<QuaternionAlgebra>, coords: [FieldElement; 4]) -> Result<Self> {
        for c in &coords {
            if !same_field(c.field(), algebra.field()) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Quaternion {
            algebra: Arc::clone(algebra),
            coords,
        })
    }

    pub fn zero(algebra: &Arc<QuaternionAlgebra>) -> Self {
        let z = FieldElement::zero(algebra.field());
        Quaternion {
            algebra: Arc::clone(algebra),
            coords: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    pub fn one(algebra: &Arc<QuaternionAlgebra>) -> Self {
        let mut q = Self::zero(algebra);
        q.coords[0] = FieldElement::one(algebra.field());
        q
    }

    pub fn basis_i(algebra: &Arc<QuaternionAlgebra>) -> Self {
        let mut q = Self::zero(algebra);
        q.coords[1] = FieldElement::one(algebra.field());
        q
    }

    pub fn basis_j(algebra: &Arc<QuaternionAlgebra>) -> Self {
        let mut q = Self::zero(algebra);
        q.coords[2] = FieldElement::one(algebra.field());
        q
    }

    pub fn basis_k(algebra: &Arc<QuaternionAlgebra>) -> Self {
        let mut q = Self::zero(algebra);
        q.coords[3] = FieldElement::one(algebra.field());
        q
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[FieldElement; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let coords = [
            self.coords[0].add(&other.coords[0])?,
            self.coords[1].add(&other.coords[1])?,
            self.coords[2].add(&other.coords[2])?,
            self.coords[3].add(&other.coords[3])?,
        ];
        Ok(Quaternion {
            algebra: Arc::clone(&self.algebra),
            coords,
        })
    }

    pub fn neg(&self) -> Self {
        Quaternion {
            algebra: Arc::clone(&self.algebra),
            coords: [
                self.coords[0].neg(),
                self.coords[1].neg(),
                self.coords[2].neg(),
                self.coords[3].neg(),
            ],
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let a = self.algebra.a();
        let b = self.algebra.b();
        let ab = a.mul(b)?;
        let [x0, x1, x2, x3] = &self.coords;
        let [y0, y1, y2, y3] = &other.coords;
        // z0 = x0y0 + a x1y1 + b x2y2 - ab x3y3
        let z0 = x0
            .mul(y0)?
            .add(&a.mul(&x1.mul(y1)?)?)?
            .add(&b.mul(&x2.mul(y2)?)?)?
            .sub(&ab.mul(&x3.mul(y3)?)?)?;
        // z1 = x0y1 + x1y0 - b x2y3 + b x3y2
        let z1 = x0
            .mul(y1)?
            .add(&x1.mul(y0)?)?
            .sub(&b.mul(&x2.mul(y3)?)?)?
            .add(&b.mul(&x3.mul(y2)?)?)?;
        // z2 = x0y2 + x2y0 + a x1y3 - a x3y1
        let z2 = x0
            .mul(y2)?
            .add(&x2.mul(y0)?)?
            .add(&a.mul(&x1.mul(y3)?)?)?
            .sub(&a.mul(&x3.mul(y1)?)?)?;
        // z3 = x0y3 + x3y0 + x1y2 - x2y1
        let z3 = x0
            .mul(y3)?
            .add(&x3.mul(y0)?)?
            .add(&x1.mul(y2)?)?
            .sub(&x2.mul(y1)?)?;
        Ok(Quaternion {
            algebra: Arc::clone(&self.algebra),
            coords: [z0, z1, z2, z3],
        })
    }

    /// Canonical involution: negates the pure part.
    pub fn conj(&self) -> Self {
        Quaternion {
            algebra: Arc::clone(&self.algebra),
            coords: [
                self.coords[0].clone(),
                self.coords[1].neg(),
                self.coords[2].neg(),
                self.coords[3].neg(),
            ],
        }
    }

    /// Reduced trace: 2 x0.
    pub fn trd(&self) -> FieldElement {
        self.coords[0].add(&self.coords[0]).expect("same field")
    }

    /// Reduced norm: x0^2 - a x1^2 - b x2^2 + ab x3^2.
    pub fn nrd(&self) -> FieldElement {
        let a = self.algebra.a();
        let b = self.algebra.b();
        let ab = a.mul(b).expect("same field");
        let [x0, x1, x2, x3] = &self.coords;
        let s0 = x0.mul(x0).expect("same field");
        let s1 = a.mul(&x1.mul(x1).expect("same field")).expect("same field");
        let s2 = b.mul(&x2.mul(x2).expect("same field")).expect("same field");
        let s3 = ab.mul(&x3.mul(x3).expect("same field")).expect("same field");
        s0.sub(&s1)
            .and_then(|t| t.sub(&s2))
            .and_then(|t| t.add(&s3))
            .expect("same field")
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if !same_field(c.field(), self.algebra.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Quaternion {
            algebra: Arc::clone(&self.algebra),
            coords: [
                self.coords[0].mul(c)?,
                self.coords[1].mul(c)?,
                self.coords[2].mul(c)?,
                self.coords[3].mul(c)?,
            ],
        })
    }

    pub fn is_pure(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn pure_part(&self) -> Result<PureQuaternion> {
        PureQuaternion::new(
            &self.algebra,
            [
                self.coords[1].clone(),
                self.coords[2].clone(),
                self.coords[3].clone(),
            ],
        )
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})i + ({})j + ({})k",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

/// A quaternion with zero scalar part. Purity is a type-level invariant,
/// not a runtime check on `Quaternion`.
#[derive(Clone, PartialEq, Eq)]
pub struct PureQuaternion {
    algebra: Arc<QuaternionAlgebra>,
    parts: [FieldElement; 3],
}

impl PureQuaternion {
    pub fn new(algebra: &Arc<QuaternionAlgebra>, parts: [FieldElement; 3]) -> Result<Self> {
        for c in &parts {
            if !same_field(c.field(), algebra.field()) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(PureQuaternion {
            algebra: Arc::clone(algebra),
            parts,
        })
    }

    pub fn from_ints(algebra: &Arc<QuaternionAlgebra>, x1: i64, x2: i64, x3: i64) -> Self {
        let k = algebra.field();
        PureQuaternion {
            algebra: Arc::clone(algebra),
            parts: [
                FieldElement::from_int(k, x1),
                FieldElement::from_int(k, x2),
                FieldElement::from_int(k, x3),
            ],
        }
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn parts(&self) -> &[FieldElement; 3] {
        &self.parts
    }

    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion {
            algebra: Arc::clone(&self.algebra),
            coords: [
                FieldElement::zero(self.algebra.field()),
                self.parts[0].clone(),
                self.parts[1].clone(),
                self.parts[2].clone(),
            ],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        PureQuaternion {
            algebra: Arc::clone(&self.algebra),
            parts: [self.parts[0].neg(), self.parts[1].neg(), self.parts[2].neg()],
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if !same_field(c.field(), self.algebra.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(PureQuaternion {
            algebra: Arc::clone(&self.algebra),
            parts: [
                self.parts[0].mul(c)?,
                self.parts[1].mul(c)?,
                self.parts[2].mul(c)?,
            ],
        })
    }

    pub fn is_invertible(&self) -> bool {
        !self.as_quaternion().nrd().is_zero()
    }

    /// The scalar z^2 = a x1^2 + b x2^2 - ab x3^2 = -nrd(z).
    pub fn square(&self) -> FieldElement {
        self.as_quaternion().nrd().neg()
    }

    /// A deterministic invertible pure quaternion z' with z z' + z' z = 0.
    ///
    /// The anticommuting condition is one linear equation on the pure part,
    /// with a 2-dimensional solution space; among basis1, basis2, sum and
    /// difference at least one is anisotropic because a nondegenerate
    /// ternary form has no 2-dimensional totally isotropic subspace.
    pub fn anticommuting_unit(&self) -> Result<PureQuaternion> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let field = self.algebra.field();
        let a = self.algebra.a();
        let b = self.algebra.b();
        let ab = a.mul(b)?;
        // z w + w z = 2 (a z1 w1 + b z2 w2 - ab z3 w3)
        let coeff = [
            a.mul(&self.parts[0])?,
            b.mul(&self.parts[1])?,
            ab.mul(&self.parts[2])?.neg(),
        ];
        let pivot = coeff
            .iter()
            .position(|c| !c.is_zero())
            .expect("invertible pure quaternion has nonzero coefficient vector");
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let mut basis = Vec::with_capacity(2);
        for &q in &others {
            let mut parts = [
                FieldElement::zero(field),
                FieldElement::zero(field),
                FieldElement::zero(field),
            ];
            parts[q] = FieldElement::one(field);
            parts[pivot] = coeff[q].div(&coeff[pivot])?.neg();
            basis.push(PureQuaternion {
                algebra: Arc::clone(&self.algebra),
                parts,
            });
        }
        let sum = PureQuaternion {
            algebra: Arc::clone(&self.algebra),
            parts: [
                basis[0].parts[0].add(&basis[1].parts[0])?,
                basis[0].parts[1].add(&basis[1].parts[1])?,
                basis[0].parts[2].add(&basis[1].parts[2])?,
            ],
        };
        let diff = PureQuaternion {
            algebra: Arc::clone(&self.algebra),
            parts: [
                basis[0].parts[0].sub(&basis[1].parts[0])?,
                basis[0].parts[1].sub(&basis[1].parts[1])?,
                basis[0].parts[2].sub(&basis[1].parts[2])?,
            ],
        };
        for cand in [basis[0].clone(), basis[1].clone(), sum, diff] {
            if cand.is_invertible() {
                return Ok(cand);
            }
        }
        unreachable!("norm form cannot vanish on the anticommutant of an invertible pure quaternion")
    }

    /// The slot c with (z^2, c) = [Q] as a Brauer class, namely the square
    /// of a deterministic anticommuting unit.
    pub fn symbol_slot(&self) -> Result<FieldElement> {
        Ok(self.anticommuting_unit()?.square())
    }
}

impl fmt::Debug for PureQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})i + ({})j + ({})k",
            self.parts[0], self.parts[1], self.parts[2]
        )
    }
}
