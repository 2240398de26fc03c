//! The mixed Witt ring W~(Q,gamma) = W(K) + W1(Q,gamma) + W-1(Q,gamma)
//! with its full product, and the split model W~(K,Id) = W(K)[Z/2Z] with
//! its augmentation retraction.
//!
//! Diagonal products are computed entrywise and concatenated; no Witt
//! reduction is performed on results. The empty diagonal is the zero of
//! each graded part.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numberfield::{same_field, FieldElement, NumberField};
use crate::quat::{same_algebra, PureQuaternion, QuaternionAlgebra};
use crate::witt::QuadraticForm;

/// Diagonal hermitian form <a_1,...,a_n>_gamma; the gamma-symmetric
/// elements of Q are exactly K, so entries are nonzero field elements.
/// Since gamma is symplectic this grades as the W_{-1} part.
#[derive(Clone, PartialEq, Eq)]
pub struct HermitianDiagonal {
    algebra: Arc<QuaternionAlgebra>,
    entries: Vec<FieldElement>,
}

impl HermitianDiagonal {
    pub fn new(algebra: &Arc<QuaternionAlgebra>, entries: Vec<FieldElement>) -> Result<Self> {
        for e in &entries {
            if !same_field(e.field(), algebra.field()) {
                return Err(Error::FieldMismatch);
            }
            if e.is_zero() {
                return Err(Error::ZeroEntry);
            }
        }
        Ok(HermitianDiagonal {
            algebra: Arc::clone(algebra),
            entries,
        })
    }

    pub fn empty(algebra: &Arc<QuaternionAlgebra>) -> Self {
        HermitianDiagonal {
            algebra: Arc::clone(algebra),
            entries: Vec::new(),
        }
    }

    pub fn from_ints(algebra: &Arc<QuaternionAlgebra>, entries: &[i64]) -> Result<Self> {
        let field = algebra.field();
        Self::new(
            algebra,
            entries
                .iter()
                .map(|&n| FieldElement::from_int(field, n))
                .collect(),
        )
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Debug for HermitianDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ">_g")
    }
}

/// Diagonal skew-hermitian form with invertible pure quaternion entries;
/// grades as the W_1 part.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewHermitianDiagonal {
    algebra: Arc<QuaternionAlgebra>,
    entries: Vec<PureQuaternion>,
}

impl SkewHermitianDiagonal {
    pub fn new(algebra: &Arc<QuaternionAlgebra>, entries: Vec<PureQuaternion>) -> Result<Self> {
        for z in &entries {
            if !same_algebra(z.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if !z.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        Ok(SkewHermitianDiagonal {
            algebra: Arc::clone(algebra),
            entries,
        })
    }

    pub fn empty(algebra: &Arc<QuaternionAlgebra>) -> Self {
        SkewHermitianDiagonal {
            algebra: Arc::clone(algebra),
            entries: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn entries(&self) -> &[PureQuaternion] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Debug for SkewHermitianDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}")?;
        }
        write!(f, ">_g")
    }
}

/// An element of the mixed Witt ring: a quadratic part, a hermitian part
/// and a skew-hermitian part over one algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedElement {
    algebra: Arc<QuaternionAlgebra>,
    scalar: QuadraticForm,
    herm: HermitianDiagonal,
    skew: SkewHermitianDiagonal,
}

impl MixedElement {
    pub fn new(
        algebra: &Arc<QuaternionAlgebra>,
        scalar: QuadraticForm,
        herm: HermitianDiagonal,
        skew: SkewHermitianDiagonal,
    ) -> Result<Self> {
        if !same_field(scalar.field(), algebra.field())
            || !same_algebra(herm.algebra(), algebra)
            || !same_algebra(skew.algebra(), algebra)
        {
            return Err(Error::AlgebraMismatch);
        }
        Ok(MixedElement {
            algebra: Arc::clone(algebra),
            scalar,
            herm,
            skew,
        })
    }

    pub fn zero(algebra: &Arc<QuaternionAlgebra>) -> Self {
        MixedElement {
            algebra: Arc::clone(algebra),
            scalar: QuadraticForm::empty(algebra.field()),
            herm: HermitianDiagonal::empty(algebra),
            skew: SkewHermitianDiagonal::empty(algebra),
        }
    }

    pub fn from_scalar(algebra: &Arc<QuaternionAlgebra>, scalar: QuadraticForm) -> Result<Self> {
        Self::new(
            algebra,
            scalar,
            HermitianDiagonal::empty(algebra),
            SkewHermitianDiagonal::empty(algebra),
        )
    }

    pub fn from_herm(herm: HermitianDiagonal) -> Self {
        let algebra = herm.algebra().clone();
        MixedElement {
            scalar: QuadraticForm::empty(algebra.field()),
            skew: SkewHermitianDiagonal::empty(&algebra),
            herm,
            algebra,
        }
    }

    pub fn from_skew(skew: SkewHermitianDiagonal) -> Self {
        let algebra = skew.algebra().clone();
        MixedElement {
            scalar: QuadraticForm::empty(algebra.field()),
            herm: HermitianDiagonal::empty(&algebra),
            skew,
            algebra,
        }
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn scalar(&self) -> &QuadraticForm {
        &self.scalar
    }

    pub fn herm(&self) -> &HermitianDiagonal {
        &self.herm
    }

    pub fn skew(&self) -> &SkewHermitianDiagonal {
        &self.skew
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_empty() && self.herm.is_empty() && self.skew.is_empty()
    }

    pub fn scalar_part_only(&self) -> Self {
        MixedElement {
            algebra: Arc::clone(&self.algebra),
            scalar: self.scalar.clone(),
            herm: HermitianDiagonal::empty(&self.algebra),
            skew: SkewHermitianDiagonal::empty(&self.algebra),
        }
    }

    pub fn without_scalar_part(&self) -> Self {
        MixedElement {
            algebra: Arc::clone(&self.algebra),
            scalar: QuadraticForm::empty(self.algebra.field()),
            herm: self.herm.clone(),
            skew: self.skew.clone(),
        }
    }

    fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Direct-sum addition: componentwise concatenation of diagonals.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let scalar = self.scalar.direct_sum(&other.scalar)?;
        let mut herm = self.herm.entries.clone();
        herm.extend(other.herm.entries.iter().cloned());
        let mut skew = self.skew.entries.clone();
        skew.extend(other.skew.entries.iter().cloned());
        Ok(MixedElement {
            algebra: Arc::clone(&self.algebra),
            scalar,
            herm: HermitianDiagonal {
                algebra: Arc::clone(&self.algebra),
                entries: herm,
            },
            skew: SkewHermitianDiagonal {
                algebra: Arc::clone(&self.algebra),
                entries: skew,
            },
        })
    }

    pub fn neg(&self) -> Self {
        MixedElement {
            algebra: Arc::clone(&self.algebra),
            scalar: self.scalar.negate(),
            herm: HermitianDiagonal {
                algebra: Arc::clone(&self.algebra),
                entries: self.herm.entries.iter().map(|e| e.neg()).collect(),
            },
            skew: SkewHermitianDiagonal {
                algebra: Arc::clone(&self.algebra),
                entries: self.skew.entries.iter().map(|z| z.neg()).collect(),
            },
        }
    }

    /// The reduced dimension mod 2. Rank-1 hermitian and skew entries have
    /// reduced dimension 2 over a quaternion algebra, so only the scalar
    /// part contributes.
    pub fn rdim2(&self) -> u8 {
        self.scalar.dim_mod2()
    }

    /// The full mixed product, extended bilinearly over diagonal entries.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let algebra = &self.algebra;
        let mut scalar = self.scalar.tensor(&other.scalar)?;
        // herm x herm lands in W(K): <a>.<b> = <2ab> n_Q
        for a in &self.herm.entries {
            for b in &other.herm.entries {
                scalar = scalar.direct_sum(&herm_herm_product(algebra, a, b)?)?;
            }
        }
        // skew x skew lands in W(K): <z>.<w> = <-Trd(zw)> phi_{z,w}
        for z in &self.skew.entries {
            for w in &other.skew.entries {
                scalar = scalar.direct_sum(&skew_skew_product(z, w)?)?;
            }
        }
        // scalar action on the graded parts; herm x skew = 0
        let mut herm = Vec::new();
        scalar_times_entries(&self.scalar, &other.herm.entries, &mut herm)?;
        scalar_times_entries(&other.scalar, &self.herm.entries, &mut herm)?;
        let mut skew = Vec::new();
        scalar_times_pure(&self.scalar, &other.skew.entries, &mut skew)?;
        scalar_times_pure(&other.scalar, &self.skew.entries, &mut skew)?;
        Ok(MixedElement {
            algebra: Arc::clone(algebra),
            scalar,
            herm: HermitianDiagonal {
                algebra: Arc::clone(algebra),
                entries: herm,
            },
            skew: SkewHermitianDiagonal {
                algebra: Arc::clone(algebra),
                entries: skew,
            },
        })
    }
}

impl fmt::Debug for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?}, {:?}, {:?})",
            self.scalar, self.herm, self.skew
        )
    }
}

fn scalar_times_entries(
    q: &QuadraticForm,
    entries: &[FieldElement],
    out: &mut Vec<FieldElement>,
) -> Result<()> {
    for c in q.entries() {
        for e in entries {
            out.push(c.mul(e)?);
        }
    }
    Ok(())
}

fn scalar_times_pure(
    q: &QuadraticForm,
    entries: &[PureQuaternion],
    out: &mut Vec<PureQuaternion>,
) -> Result<()> {
    for c in q.entries() {
        for z in entries {
            out.push(z.scale(c)?);
        }
    }
    Ok(())
}

fn herm_herm_product(
    algebra: &Arc<QuaternionAlgebra>,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<QuadraticForm> {
    let field = algebra.field();
    let two_ab = a.mul(b)?.mul(&FieldElement::from_int(field, 2))?;
    norm_form_of(algebra)?.scale(&two_ab)
}

fn skew_skew_product(z: &PureQuaternion, w: &PureQuaternion) -> Result<QuadraticForm> {
    let algebra = z.algebra();
    let field = algebra.field();
    let trd = z.as_quaternion().mul(&w.as_quaternion())?.trd();
    if trd.is_zero() {
        // z and w anticommute; the product is zero
        return Ok(QuadraticForm::empty(field));
    }
    pfister_phi(z, w)?.scale(&trd.neg())
}

fn norm_form_of(algebra: &Arc<QuaternionAlgebra>) -> Result<QuadraticForm> {
    QuadraticForm::pfister(
        algebra.field(),
        &[algebra.a().clone(), algebra.b().clone()],
    )
}

/// The 2-fold Pfister form phi_{z1,z2} = <<z1^2, z2^2 c>> with
/// c = symbol_slot(z1), so that its Clifford invariant is the class
/// (z1^2, z2^2) + [Q].
pub fn pfister_phi(z1: &PureQuaternion, z2: &PureQuaternion) -> Result<QuadraticForm> {
    if !same_algebra(z1.algebra(), z2.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if !z1.is_invertible() || !z2.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let c = z1.symbol_slot()?;
    let slot2 = z2.square().mul(&c)?;
    QuadraticForm::pfister(z1.algebra().field(), &[z1.square(), slot2])
}

/// The W(K)-module action: the scalar part is tensored, the graded parts
/// are scaled entrywise by each diagonal coefficient.
pub fn module_action(q: &QuadraticForm, x: &MixedElement) -> Result<MixedElement> {
    if !same_field(q.field(), x.algebra().field()) {
        return Err(Error::FieldMismatch);
    }
    let algebra = x.algebra();
    let scalar = q.tensor(x.scalar())?;
    let mut herm = Vec::new();
    scalar_times_entries(q, &x.herm.entries, &mut herm)?;
    let mut skew = Vec::new();
    scalar_times_pure(q, &x.skew.entries, &mut skew)?;
    Ok(MixedElement {
        algebra: Arc::clone(algebra),
        scalar,
        herm: HermitianDiagonal {
            algebra: Arc::clone(algebra),
            entries: herm,
        },
        skew: SkewHermitianDiagonal {
            algebra: Arc::clone(algebra),
            entries: skew,
        },
    })
}

/// The involution trace form T_gamma = <1>_gamma^2 = <2> n_Q.
pub fn trace_form(algebra: &Arc<QuaternionAlgebra>) -> QuadraticForm {
    let one = HermitianDiagonal::from_ints(algebra, &[1]).expect("nonzero entry");
    let unit = MixedElement::from_herm(one);
    unit.mul(&unit).expect("same algebra").scalar().clone()
}

/// An element of the split model W~(K,Id) = W(K)[Z/2Z], stored as an even
/// and an odd quadratic part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitMixedElement {
    field: Arc<NumberField>,
    even: QuadraticForm,
    odd: QuadraticForm,
}

impl SplitMixedElement {
    pub fn new(field: &Arc<NumberField>, even: QuadraticForm, odd: QuadraticForm) -> Result<Self> {
        if !same_field(even.field(), field) || !same_field(odd.field(), field) {
            return Err(Error::FieldMismatch);
        }
        Ok(SplitMixedElement {
            field: Arc::clone(field),
            even,
            odd,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn even(&self) -> &QuadraticForm {
        &self.even
    }

    pub fn odd(&self) -> &QuadraticForm {
        &self.odd
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(SplitMixedElement {
            field: Arc::clone(&self.field),
            even: self.even.direct_sum(&other.even)?,
            odd: self.odd.direct_sum(&other.odd)?,
        })
    }

    /// Group-algebra product: (e,o)(e',o') = (ee' + oo', eo' + oe').
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let even = self
            .even
            .tensor(&other.even)?
            .direct_sum(&self.odd.tensor(&other.odd)?)?;
        let odd = self
            .even
            .tensor(&other.odd)?
            .direct_sum(&self.odd.tensor(&other.even)?)?;
        Ok(SplitMixedElement {
            field: Arc::clone(&self.field),
            even,
            odd,
        })
    }

    /// The augmentation retraction W(K)[Z/2Z] -> W(K): e + o.
    pub fn augment(&self) -> QuadraticForm {
        self.even.direct_sum(&self.odd).expect("same field")
    }
}
