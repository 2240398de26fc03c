//! Diagonal quadratic forms over K, Witt-group operations, signatures at
//! orderings, classical invariants, and exact Witt-class equality over Q
//! via local Hilbert symbols.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numberfield::{same_field, FieldElement, NumberField, Ordering};
use crate::rational::{is_square, legendre, residue_mod, squarefree_part, valuation, Rat};

/// A diagonal quadratic form <a_1,...,a_n> with nonzero entries. The empty
/// form is the zero Witt class.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Arc<NumberField>,
    entries: Vec<FieldElement>,
}

impl QuadraticForm {
    pub fn diagonal(field: &Arc<NumberField>, entries: Vec<FieldElement>) -> Result<Self> {
        for e in &entries {
            if !same_field(e.field(), field) {
                return Err(Error::FieldMismatch);
            }
            if e.is_zero() {
                return Err(Error::ZeroEntry);
            }
        }
        Ok(QuadraticForm {
            field: Arc::clone(field),
            entries,
        })
    }

    pub fn empty(field: &Arc<NumberField>) -> Self {
        QuadraticForm {
            field: Arc::clone(field),
            entries: Vec::new(),
        }
    }

    pub fn from_ints(field: &Arc<NumberField>, entries: &[i64]) -> Result<Self> {
        Self::diagonal(
            field,
            entries
                .iter()
                .map(|&n| FieldElement::from_int(field, n))
                .collect(),
        )
    }

    /// The hyperbolic plane <1,-1>.
    pub fn hyperbolic(field: &Arc<NumberField>) -> Self {
        Self::from_ints(field, &[1, -1]).expect("nonzero entries")
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Orthogonal sum: concatenation of diagonals.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(QuadraticForm {
            field: Arc::clone(&self.field),
            entries,
        })
    }

    /// Tensor product: all pairwise products, second factor outermost, so
    /// that <1,-a> tensor <1,-b> prints as <1,-a,-b,ab>.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for b in &other.entries {
            for a in &self.entries {
                entries.push(a.mul(b)?);
            }
        }
        Ok(QuadraticForm {
            field: Arc::clone(&self.field),
            entries,
        })
    }

    pub fn negate(&self) -> Self {
        QuadraticForm {
            field: Arc::clone(&self.field),
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        if !same_field(c.field(), &self.field) {
            return Err(Error::FieldMismatch);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadraticForm {
            field: Arc::clone(&self.field),
            entries,
        })
    }

    /// The n-fold Pfister form <<a_1,...,a_n>> = tensor of the <1,-a_i>.
    pub fn pfister(field: &Arc<NumberField>, slots: &[FieldElement]) -> Result<Self> {
        let mut acc = Self::from_ints(field, &[1])?;
        for a in slots {
            if a.is_zero() {
                return Err(Error::ZeroSlot);
            }
            if !same_field(a.field(), field) {
                return Err(Error::FieldMismatch);
            }
            let factor = Self::diagonal(field, vec![FieldElement::one(field), a.neg()])?;
            acc = acc.tensor(&factor)?;
        }
        Ok(acc)
    }

    /// Signature at an ordering: the sum of entry signs. This is the unique
    /// ring morphism W(K) -> Z extending the P-sign.
    pub fn signature(&self, p: &Ordering) -> Result<i64> {
        if !same_field(p.field(), &self.field) {
            return Err(Error::FieldMismatch);
        }
        let mut s = 0i64;
        for e in &self.entries {
            s += e.sign_at(p)? as i64;
        }
        Ok(s)
    }

    pub fn dim_mod2(&self) -> u8 {
        (self.dim() % 2) as u8
    }

    /// Signed discriminant (-1)^(n(n-1)/2) * prod(a_i); 1 for the empty form.
    pub fn signed_discriminant(&self) -> FieldElement {
        let n = self.dim();
        let mut d = FieldElement::one(&self.field);
        for e in &self.entries {
            d = d.mul(e).expect("same field");
        }
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            d = d.neg();
        }
        d
    }

    /// (dimension mod 2, signed discriminant).
    pub fn invariants(&self) -> (u8, FieldElement) {
        (self.dim_mod2(), self.signed_discriminant())
    }

    fn rational_entries(&self) -> Result<Vec<Rat>> {
        if !self.field.is_rational() {
            return Err(Error::NonRationalField);
        }
        Ok(self
            .entries
            .iter()
            .map(|e| e.as_rational().expect("degree-1 field"))
            .collect())
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ">")
    }
}

/// A place of Q: the real place or a finite prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(BigInt),
}

impl Place {
    pub fn finite(p: u64) -> Self {
        Place::Finite(BigInt::from(p))
    }
}

/// The Hilbert symbol (a,b)_v over Q, by the classical local formulas.
pub fn hilbert_symbol(a: &Rat, b: &Rat, v: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                Ok(-1)
            } else {
                Ok(1)
            }
        }
        Place::Finite(p) if p == &BigInt::from(2) => {
            let (alpha, u) = valuation(a, p);
            let (beta, w) = valuation(b, p);
            let um = residue_mod(&u, &BigInt::from(8));
            let wm = residue_mod(&w, &BigInt::from(8));
            let eps = |x: &BigInt| -> i64 {
                // (x-1)/2 mod 2 for odd x mod 8
                if x == &BigInt::from(1) || x == &BigInt::from(5) {
                    0
                } else {
                    1
                }
            };
            let omega = |x: &BigInt| -> i64 {
                // (x^2-1)/8 mod 2 for odd x mod 8
                if x == &BigInt::from(1) || x == &BigInt::from(7) {
                    0
                } else {
                    1
                }
            };
            let e = eps(&um) * eps(&wm) + alpha * omega(&wm) + beta * omega(&um);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            let (alpha, u) = valuation(a, p);
            let (beta, w) = valuation(b, p);
            let mut sym = 1i32;
            if alpha % 2 != 0 && beta % 2 != 0 {
                // (-1)^((p-1)/2)
                let pm = (p - BigInt::one()) / BigInt::from(2);
                if pm.bit(0) {
                    sym = -sym;
                }
            }
            if beta % 2 != 0 {
                sym *= legendre(&residue_mod(&u, p), p);
            }
            if alpha % 2 != 0 {
                sym *= legendre(&residue_mod(&w, p), p);
            }
            Ok(sym)
        }
    }
}

/// Squarefree-integer representatives of the entries' square classes.
fn reduced_entries(entries: &[Rat]) -> Vec<BigInt> {
    entries.iter().map(squarefree_part).collect()
}

/// The odd primes dividing any of the given integers.
pub(crate) fn odd_support(values: &[BigInt]) -> Vec<BigInt> {
    let mut primes: Vec<BigInt> = Vec::new();
    for v in values {
        for (p, _) in crate::rational::factor(v) {
            if p != BigInt::from(2) && !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();
    primes
}

/// The Hasse symbol s(q) = prod_{i<j} (a_i, a_j)_v over squarefree-reduced
/// entries. One fixed convention, applied to both sides of every
/// comparison.
fn hasse_symbol(entries: &[BigInt], v: &Place) -> Result<i32> {
    let mut s = 1i32;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            s *= hilbert_symbol(
                &Rat::from_integer(entries[i].clone()),
                &Rat::from_integer(entries[j].clone()),
                v,
            )?;
        }
    }
    Ok(s)
}

fn real_signature(entries: &[BigInt]) -> i64 {
    entries
        .iter()
        .map(|e| if e.is_negative() { -1 } else { 1 })
        .sum()
}

/// Exact Witt-class equality over Q: q1 ~ q2 iff q1 + (-q2) is hyperbolic,
/// decided by comparing dimension, real signature, signed discriminant and
/// Hasse symbols against those of the split form of the same dimension
/// (complete invariants by Hasse-Minkowski).
pub fn witt_equal_rational(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    let e1 = q1.rational_entries()?;
    let e2 = q2.rational_entries()?;
    if (e1.len() + e2.len()) % 2 != 0 {
        return Ok(false);
    }
    let mut phi: Vec<Rat> = e1;
    phi.extend(e2.into_iter().map(|x| -x));
    let phi = reduced_entries(&phi);
    let m = phi.len() / 2;
    // split form of the same dimension, reduced the same way
    let mut split: Vec<BigInt> = Vec::with_capacity(phi.len());
    for _ in 0..m {
        split.push(BigInt::one());
        split.push(-BigInt::one());
    }
    if real_signature(&phi) != 0 {
        return Ok(false);
    }
    let disc = |es: &[BigInt]| -> Rat {
        let n = es.len();
        let mut d: BigInt = es.iter().product();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            d = -d;
        }
        Rat::from_integer(d)
    };
    let d1 = disc(&phi);
    let d2 = disc(&split);
    if !is_square(&(d1 * d2)) {
        return Ok(false);
    }
    let mut places = vec![Place::Real, Place::finite(2)];
    for p in odd_support(&phi) {
        places.push(Place::Finite(p));
    }
    for v in &places {
        if hasse_symbol(&phi, v)? != hasse_symbol(&split, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the weak equivalence test available over any number field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakEquivalence {
    /// Same dimension parity, same total signature, and the discriminant
    /// ratio passes every available square-class test.
    EquivalentWeakly,
    /// Some invariant separates the forms.
    Distinguished,
}

/// Weak Witt-class comparison over a general number field. This is NOT
/// full Witt equality (which would require Hilbert symbols over K): it
/// compares dimension mod 2, signatures at all orderings, and the signed
/// discriminant up to detectable square factors.
pub fn weak_equal(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<WeakEquivalence> {
    if !same_field(q1.field(), q2.field()) {
        return Err(Error::FieldMismatch);
    }
    if q1.dim_mod2() != q2.dim_mod2() {
        return Ok(WeakEquivalence::Distinguished);
    }
    let orderings = q1.field().real_orderings();
    for p in &orderings {
        if q1.signature(p)? != q2.signature(p)? {
            return Ok(WeakEquivalence::Distinguished);
        }
    }
    let d1 = q1.signed_discriminant();
    let d2 = q2.signed_discriminant();
    let ratio = d1.mul(&d2).expect("same field");
    // necessary condition: the ratio of discriminants is a square only if
    // it is positive at every ordering
    for p in &orderings {
        if ratio.sign_at(p)? < 0 {
            return Ok(WeakEquivalence::Distinguished);
        }
    }
    // the exact square test is decisive only over Q itself: a rational can
    // be a non-square in Q yet a square in a larger K
    if q1.field().is_rational() {
        let r = ratio.as_rational().expect("degree-1 field");
        if !is_square(&r) {
            return Ok(WeakEquivalence::Distinguished);
        }
    }
    Ok(WeakEquivalence::EquivalentWeakly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rational::{rat, rat_int};

    fn rationals() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn sqrt2() -> Arc<NumberField> {
        let f = Polynomial::from_coeffs(vec![rat_int(-2), rat_int(0), rat_int(1)]);
        NumberField::new(f).unwrap()
    }

    #[test]
    fn combine_basics() {
        let q = rationals();
        let a = QuadraticForm::from_ints(&q, &[1]).unwrap();
        let b = QuadraticForm::from_ints(&q, &[-1]).unwrap();
        assert_eq!(
            a.direct_sum(&b).unwrap(),
            QuadraticForm::from_ints(&q, &[1, -1]).unwrap()
        );
        let two = QuadraticForm::from_ints(&q, &[1, 1]).unwrap();
        assert_eq!(
            two.tensor(&two).unwrap(),
            QuadraticForm::from_ints(&q, &[1, 1, 1, 1]).unwrap()
        );
        let f = QuadraticForm::from_ints(&q, &[1, -2]).unwrap();
        assert_eq!(
            f.scale(&FieldElement::from_int(&q, 3)).unwrap(),
            QuadraticForm::from_ints(&q, &[3, -6]).unwrap()
        );
        assert!(matches!(
            f.scale(&FieldElement::zero(&q)),
            Err(Error::ZeroScale)
        ));
    }

    #[test]
    fn pfister_expansions() {
        let q = rationals();
        let m1 = FieldElement::from_int(&q, -1);
        let p = QuadraticForm::pfister(&q, &[m1.clone(), m1.clone()]).unwrap();
        assert_eq!(p, QuadraticForm::from_ints(&q, &[1, 1, 1, 1]).unwrap());
        // slot 1 kills the form: <1,-1> is hyperbolic
        let one = FieldElement::one(&q);
        let h = QuadraticForm::pfister(&q, &[one]).unwrap();
        assert!(witt_equal_rational(&h, &QuadraticForm::empty(&q)).unwrap());
        let m3 = FieldElement::from_int(&q, -3);
        let p2 = QuadraticForm::pfister(&q, &[m1, m3]).unwrap();
        assert_eq!(p2, QuadraticForm::from_ints(&q, &[1, 1, 3, 3]).unwrap());
    }

    #[test]
    fn signatures() {
        let q = rationals();
        let p = &q.real_orderings()[0];
        assert_eq!(
            QuadraticForm::from_ints(&q, &[1, 1]).unwrap().signature(p).unwrap(),
            2
        );
        assert_eq!(
            QuadraticForm::hyperbolic(&q).signature(p).unwrap(),
            0
        );
        let k = sqrt2();
        let ords = k.real_orderings();
        let theta = FieldElement::generator(&k);
        let f = QuadraticForm::diagonal(&k, vec![theta, FieldElement::one(&k)]).unwrap();
        assert_eq!(f.signature(&ords[0]).unwrap(), 0); // theta negative there
        assert_eq!(f.signature(&ords[1]).unwrap(), 2);
    }

    #[test]
    fn invariants_examples() {
        let q = rationals();
        let h = QuadraticForm::hyperbolic(&q);
        let (d, disc) = h.invariants();
        assert_eq!(d, 0);
        assert_eq!(disc, FieldElement::one(&q));
        let one = QuadraticForm::from_ints(&q, &[1]).unwrap();
        assert_eq!(one.invariants().0, 1);
        assert_eq!(one.invariants().1, FieldElement::one(&q));
        let four = QuadraticForm::from_ints(&q, &[1, 1, 1, 1]).unwrap();
        assert_eq!(four.invariants(), (0, FieldElement::one(&q)));
        assert_eq!(
            QuadraticForm::empty(&q).signed_discriminant(),
            FieldElement::one(&q)
        );
    }

    #[test]
    fn hilbert_real_and_odd() {
        let m1 = rat_int(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, &Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat_int(2), &m1, &Place::Real).unwrap(), 1);
        // oracle: 2 is a QR mod 7 (3^2 = 2)
        assert_eq!(3 * 3 % 7, 2);
        assert_eq!(
            hilbert_symbol(&rat_int(2), &rat_int(7), &Place::finite(7)).unwrap(),
            1
        );
        assert_eq!(
            hilbert_symbol(&rat_int(3), &rat_int(7), &Place::finite(7)).unwrap(),
            legendre(&BigInt::from(3), &BigInt::from(7))
        );
        assert!(matches!(
            hilbert_symbol(&Rat::zero(), &m1, &Place::Real),
            Err(Error::ZeroArgument)
        ));
    }

    #[test]
    fn hilbert_dyadic() {
        // oracle: sums of two squares mod 8 lie in {0,1,2,4,5}, never 7,
        // so -1 is not a sum of two squares in Q_2
        let mut sums = std::collections::BTreeSet::new();
        for x in 0..8u32 {
            for y in 0..8u32 {
                sums.insert((x * x + y * y) % 8);
            }
        }
        assert!(!sums.contains(&7));
        let m1 = rat_int(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, &Place::finite(2)).unwrap(), -1);
        // 2 = 1^2 + 1^2 is a sum of two squares, so (-1,2)_2 = +1
        assert_eq!(
            hilbert_symbol(&m1, &rat_int(2), &Place::finite(2)).unwrap(),
            1
        );
        assert_eq!(
            hilbert_symbol(&rat(1, 2), &rat_int(-7), &Place::finite(2)).unwrap(),
            hilbert_symbol(&rat_int(2), &rat_int(-7), &Place::finite(2)).unwrap()
        );
    }

    #[test]
    fn hilbert_reciprocity_smoke() {
        for (a, b) in [(3i64, 5i64), (-6, 10), (7, -14), (15, 21), (-2, -2)] {
            let a = rat_int(a);
            let b = rat_int(b);
            let mut prod = hilbert_symbol(&a, &b, &Place::Real).unwrap();
            prod *= hilbert_symbol(&a, &b, &Place::finite(2)).unwrap();
            let sup = odd_support(&[squarefree_part(&a), squarefree_part(&b)]);
            for p in sup {
                prod *= hilbert_symbol(&a, &b, &Place::Finite(p)).unwrap();
            }
            assert_eq!(prod, 1, "reciprocity fails for ({a}, {b})");
        }
    }

    #[test]
    fn witt_equality_examples() {
        let q = rationals();
        let h = QuadraticForm::hyperbolic(&q);
        assert!(witt_equal_rational(&h, &QuadraticForm::empty(&q)).unwrap());
        let a = QuadraticForm::from_ints(&q, &[2, 3]).unwrap();
        let b = QuadraticForm::from_ints(&q, &[1, 6]).unwrap();
        assert!(!witt_equal_rational(&a, &b).unwrap());
        let four = QuadraticForm::from_ints(&q, &[1, 1, 1, 1]).unwrap();
        let m1 = FieldElement::from_int(&q, -1);
        let pf = QuadraticForm::pfister(&q, &[m1.clone(), m1]).unwrap();
        assert!(witt_equal_rational(&four, &pf).unwrap());
        // odd-dimensional difference
        let c = QuadraticForm::from_ints(&q, &[1]).unwrap();
        assert!(!witt_equal_rational(&c, &QuadraticForm::empty(&q)).unwrap());
        // same form with a square factor
        let d1 = QuadraticForm::from_ints(&q, &[3, -5]).unwrap();
        let d2 = QuadraticForm::from_ints(&q, &[12, -45]).unwrap();
        assert!(witt_equal_rational(&d1, &d2).unwrap());
    }

    #[test]
    fn weak_equivalence_over_sqrt2() {
        let k = sqrt2();
        let theta = FieldElement::generator(&k);
        let a = QuadraticForm::diagonal(&k, vec![theta.clone()]).unwrap();
        let b = QuadraticForm::diagonal(&k, vec![theta.mul_rat(&rat_int(4))]).unwrap();
        assert_eq!(weak_equal(&a, &b).unwrap(), WeakEquivalence::EquivalentWeakly);
        let c = QuadraticForm::diagonal(&k, vec![theta.neg()]).unwrap();
        assert_eq!(weak_equal(&a, &c).unwrap(), WeakEquivalence::Distinguished);
        let q = rationals();
        let r1 = QuadraticForm::from_ints(&q, &[2]).unwrap();
        let r2 = QuadraticForm::from_ints(&q, &[3]).unwrap();
        // same signature everywhere but discriminants in different square classes
        assert_eq!(weak_equal(&r1, &r2).unwrap(), WeakEquivalence::Distinguished);
    }

    #[test]
    fn non_rational_field_errors() {
        let k = sqrt2();
        let f = QuadraticForm::from_ints(&k, &[1]).unwrap();
        assert!(matches!(
            witt_equal_rational(&f, &f),
            Err(Error::NonRationalField)
        ));
    }
}
