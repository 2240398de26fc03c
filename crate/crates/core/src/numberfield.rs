//! Real number fields K = Q[t]/(f), their elements, and their orderings.
//!
//! An ordering of a number field is realized as a real embedding: an
//! isolating rational interval around one real root of the minimal
//! polynomial. Sign determination at an ordering is fully exact — the
//! interval is refined by bisection until interval evaluation of the
//! element's representative polynomial is sign-definite.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{factor, Rat};

/// Maximum supported degree for a minimal polynomial. Exhaustive
/// irreducibility validation stays cheap below this cap.
pub const MAX_FIELD_DEGREE: usize = 6;

#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    minimal_polynomial: Polynomial,
    degree: usize,
}

impl NumberField {
    /// Validates and builds a number field from a monic polynomial.
    ///
    /// Validation: monic, degree in 1..=6, squarefree (gcd(f, f') = 1), and
    /// irreducible over Q. Irreducibility is checked exactly: a rational
    /// root test, plus for degrees 4-6 an exhaustive search for monic
    /// integer factors of degree <= 3 with Mignotte-bounded coefficients.
    pub fn new(f: Polynomial) -> Result<Arc<Self>> {
        let degree = match f.degree() {
            None | Some(0) => return Err(Error::UnsupportedDegree(0)),
            Some(d) => d,
        };
        if degree > MAX_FIELD_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if degree > 1 {
            check_irreducible(&f)?;
        }
        Ok(Arc::new(NumberField {
            minimal_polynomial: f,
            degree,
        }))
    }

    /// The rational field Q, presented uniformly as Q[t]/(t).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            minimal_polynomial: Polynomial::var(),
            degree: 1,
        })
    }

    pub fn minimal_polynomial(&self) -> &Polynomial {
        &self.minimal_polynomial
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// One ordering per real root of the minimal polynomial, sorted by root.
    pub fn real_orderings(self: &Arc<Self>) -> Vec<Ordering> {
        self.minimal_polynomial
            .isolate_real_roots()
            .into_iter()
            .enumerate()
            .map(|(index, interval)| Ordering {
                field: Arc::clone(self),
                interval,
                index,
            })
            .collect()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", self.minimal_polynomial)
    }
}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_irreducible(f: &Polynomial) -> Result<()> {
    let n = f.degree().unwrap();
    // Clear denominators: with d the lcm of coefficient denominators,
    // g(t) = d^n f(t/d) is monic with integer coefficients and is
    // irreducible iff f is.
    let mut d = BigInt::one();
    for c in f.coeffs() {
        d = d.lcm(c.denom());
    }
    let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut scale = BigInt::one(); // d^(n-i), with den(c_i) | d^(n-i)
    for i in (0..=n).rev() {
        let c = f.coeff(i);
        g.push(c.numer() * (&scale / c.denom()));
        scale *= &d;
    }
    g.reverse();
    debug_assert!(g[n].is_one());

    if g[0].is_zero() {
        return Err(Error::ReducibleDetected("t divides the polynomial".into()));
    }
    let const_divisors = positive_divisors(&g[0]);
    // Rational roots of a monic integer polynomial are integers dividing g(0).
    for v in &const_divisors {
        for root in [v.clone(), -v.clone()] {
            if eval_int(&g, &root).is_zero() {
                return Err(Error::ReducibleDetected(format!(
                    "rational root {} found",
                    Rat::new(root, d.clone())
                )));
            }
        }
    }
    if n <= 3 {
        return Ok(());
    }

    // Degrees 4-6: having excluded linear factors, reducibility forces a
    // monic factor of degree 2 (or 3 when n = 6). Mignotte bound on its
    // coefficients: |h_i| <= 2^k * ||g||_2.
    let norm_sq: BigInt = g.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let gp = Polynomial::from_coeffs(g.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let mut factor_degrees = vec![2usize];
    if n == 6 {
        factor_degrees.push(3);
    }
    for k in factor_degrees {
        let bound = (BigInt::from(1) << k) * &norm;
        let bound_i = bound.to_i64().unwrap_or(i64::MAX);
        for h0 in &const_divisors {
            if h0 > &bound {
                continue;
            }
            for h0s in [h0.clone(), -h0.clone()] {
                if let Some(factor) = search_factor(&gp, k, &h0s, bound_i) {
                    return Err(Error::ReducibleDetected(format!("factor {factor} found")));
                }
            }
        }
    }
    Ok(())
}

/// Searches for a monic degree-k integer factor of g with the given
/// constant term and middle coefficients bounded by `bound` in absolute
/// value. Returns the factor if one divides exactly.
fn search_factor(g: &Polynomial, k: usize, h0: &BigInt, bound: i64) -> Option<Polynomial> {
    let mut mid = vec![-bound; k - 1];
    loop {
        let mut coeffs = Vec::with_capacity(k + 1);
        coeffs.push(Rat::from_integer(h0.clone()));
        for &m in &mid {
            coeffs.push(Rat::from_integer(m.into()));
        }
        coeffs.push(Rat::one());
        let h = Polynomial::from_coeffs(coeffs);
        let (_, r) = g.divmod(&h);
        if r.is_zero() {
            return Some(h);
        }
        // odometer over the middle coefficients
        let mut i = 0;
        loop {
            if i == mid.len() {
                return None;
            }
            if mid[i] < bound {
                mid[i] += 1;
                break;
            }
            mid[i] = -bound;
            i += 1;
        }
    }
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// An element of a number field, stored as its reduced representative
/// polynomial of degree < [K:Q].
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rat>,
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<Rat>) -> Self {
        let rep = Polynomial::from_coeffs(coeffs).rem(field.minimal_polynomial());
        Self::from_reduced(field, rep)
    }

    fn from_reduced(field: &Arc<NumberField>, rep: Polynomial) -> Self {
        let mut coeffs = rep.coeffs().to_vec();
        coeffs.resize(field.degree(), Rat::zero());
        FieldElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn from_rat(field: &Arc<NumberField>, c: Rat) -> Self {
        Self::new(field, vec![c])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rat(field, Rat::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The class of t, i.e. the distinguished generator of the field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![Rat::zero(), Rat::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn rep(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(value) when the element lies in the rational subfield.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
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
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let prod = self.rep().mul(&other.rep()).rem(self.field.minimal_polynomial());
        Ok(Self::from_reduced(&self.field, prod))
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        FieldElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // f irreducible, deg(rep) < deg(f): gcd(rep, f) = 1, so the Bezout
        // coefficient of rep is the inverse mod f.
        let (g, u, _) = Polynomial::extended_gcd(&self.rep(), self.field.minimal_polynomial());
        debug_assert_eq!(g.degree(), Some(0));
        let scale = Rat::one() / g.coeff(0);
        let inv = u.mul_rat(&scale).rem(self.field.minimal_polynomial());
        Ok(Self::from_reduced(&self.field, inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact sign of the element under the real embedding P.
    ///
    /// First certifies via gcd with the minimal polynomial that the
    /// representative cannot vanish at P's root, then bisects the isolating
    /// interval until interval evaluation of the representative is
    /// sign-definite.
    pub fn sign_at(&self, p: &Ordering) -> Result<i8> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !same_field(&self.field, &p.field) {
            return Err(Error::FieldMismatch);
        }
        if let Some(c) = self.as_rational() {
            return Ok(crate::rational::sign_of(&c));
        }
        let g = self.rep();
        let f = self.field.minimal_polynomial();
        let h = Polynomial::gcd(&g, f);
        if h.degree() > Some(0) {
            let chain = h.sturm_chain();
            if Polynomial::count_roots(&chain, &p.interval.0, &p.interval.1) > 0 {
                // A nonzero element sharing a root with an irreducible
                // minimal polynomial is impossible; a reducible one must
                // have slipped past validation.
                return Err(Error::ReducibleDetected(format!("{h}")));
            }
        }
        let (mut l, mut r) = p.interval.clone();
        loop {
            let (lo, hi) = g.eval_interval(&l, &r);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            let (nl, nr) = bisect_step(f, &l, &r);
            // width strictly decreases, and g(root) != 0 guarantees the
            // interval evaluation eventually becomes sign-definite
            l = nl;
            r = nr;
            if l == r {
                // the root is the rational point l itself
                return Ok(crate::rational::sign_of(&g.eval(&l)));
            }
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep())
    }
}

/// One bisection step of an isolating interval for a root of f, keeping
/// the sign change. If f vanishes at the midpoint the root is rational and
/// the interval collapses to a point.
fn bisect_step(f: &Polynomial, l: &Rat, r: &Rat) -> (Rat, Rat) {
    let mid = (l + r) / Rat::from_integer(2.into());
    let fm = f.eval(&mid);
    if fm.is_zero() {
        return (mid.clone(), mid);
    }
    if (f.eval(l) * fm).is_negative() {
        (l.clone(), mid)
    } else {
        (mid, r.clone())
    }
}

/// An ordering of the field: a real embedding represented by an isolating
/// interval for a real root of the minimal polynomial, plus its ordinal
/// among all real roots sorted ascending.
#[derive(Clone)]
pub struct Ordering {
    field: Arc<NumberField>,
    interval: (Rat, Rat),
    index: usize,
}

impl Ordering {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.interval.0, &self.interval.1)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// A refined copy of this ordering, after `steps` bisections of its
    /// isolating interval. Sign computations are unaffected.
    pub fn refined(&self, steps: u32) -> Ordering {
        let f = self.field.minimal_polynomial();
        let (mut l, mut r) = self.interval.clone();
        for _ in 0..steps {
            if l == r {
                break;
            }
            let (nl, nr) = bisect_step(f, &l, &r);
            l = nl;
            r = nr;
        }
        if l == r {
            // keep a genuine interval with a sign change around the
            // rational root
            let mut h = Rat::new(1.into(), 2u64.pow(steps.min(30)).into());
            let chain = f.sturm_chain();
            let (a, b) = loop {
                let a = &l - &h;
                let b = &r + &h;
                if !f.eval(&a).is_zero()
                    && !f.eval(&b).is_zero()
                    && Polynomial::count_roots(&chain, &a, &b) == 1
                {
                    break (a, b);
                }
                h /= Rat::from_integer(2.into());
            };
            return Ordering {
                field: Arc::clone(&self.field),
                interval: (a, b),
                index: self.index,
            };
        }
        Ordering {
            field: Arc::clone(&self.field),
            interval: (l, r),
            index: self.index,
        }
    }
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P{} in ({}, {})",
            self.index, self.interval.0, self.interval.1
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn make_field_degree_one() {
        let k = NumberField::new(poly(&[0, 1])).unwrap();
        assert_eq!(k.degree(), 1);
        assert!(k.is_rational());
    }

    #[test]
    fn make_field_sqrt2() {
        let k = NumberField::new(poly(&[-2, 0, 1])).unwrap();
        assert_eq!(k.degree(), 2);
        assert!(!k.is_rational());
    }

    #[test]
    fn make_field_rejects_reducible() {
        assert!(matches!(
            NumberField::new(poly(&[-1, 0, 1])),
            Err(Error::ReducibleDetected(_))
        ));
        // t^4 - 4 = (t^2-2)(t^2+2): no rational root, degree-2 factor
        assert!(matches!(
            NumberField::new(poly(&[-4, 0, 0, 0, 1])),
            Err(Error::ReducibleDetected(_))
        ));
        // t^6 + 2t^3 + 1 = (t^3+1)^2 is not squarefree
        assert!(matches!(
            NumberField::new(poly(&[1, 0, 0, 2, 0, 0, 1])),
            Err(Error::NotSquarefree)
        ));
        // (t^3-2)(t^3-3): degree-3 factors only
        assert!(matches!(
            NumberField::new(poly(&[6, 0, 0, -5, 0, 0, 1])),
            Err(Error::ReducibleDetected(_))
        ));
    }

    #[test]
    fn make_field_accepts_irreducible_quartic() {
        // t^4 - t - 1 is irreducible over Q
        assert!(NumberField::new(poly(&[-1, -1, 0, 0, 1])).is_ok());
        // t^6 - t - 1 as well
        assert!(NumberField::new(poly(&[-1, -1, 0, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn make_field_rejects_non_monic_and_oversize() {
        assert!(matches!(
            NumberField::new(poly(&[-2, 0, 2])),
            Err(Error::NotMonic)
        ));
        assert!(matches!(
            NumberField::new(poly(&[1, 0, 0, 0, 0, 0, 0, 1])),
            Err(Error::UnsupportedDegree(7))
        ));
    }

    #[test]
    fn element_arithmetic_sqrt2() {
        let k = NumberField::new(poly(&[-2, 0, 1])).unwrap();
        let theta = FieldElement::generator(&k);
        assert_eq!(theta.mul(&theta).unwrap(), FieldElement::from_int(&k, 2));
        let one = FieldElement::one(&k);
        let p = one.add(&theta).unwrap();
        let m = one.sub(&theta).unwrap();
        assert_eq!(p.mul(&m).unwrap(), FieldElement::from_int(&k, -1));
        // (1+theta)^-1 = theta - 1
        let inv = p.inv().unwrap();
        assert_eq!(inv, theta.sub(&one).unwrap());
    }

    #[test]
    fn rational_arith_in_degree_one() {
        let q = NumberField::rationals();
        let a = FieldElement::from_rat(&q, rat(3, 4));
        let b = FieldElement::from_rat(&q, rat(1, 4));
        assert_eq!(a.add(&b).unwrap(), FieldElement::one(&q));
    }

    #[test]
    fn division_by_zero() {
        let q = NumberField::rationals();
        let a = FieldElement::one(&q);
        assert_eq!(a.div(&FieldElement::zero(&q)), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_mismatch() {
        let k1 = NumberField::new(poly(&[-2, 0, 1])).unwrap();
        let k2 = NumberField::new(poly(&[-3, 0, 1])).unwrap();
        let a = FieldElement::generator(&k1);
        let b = FieldElement::generator(&k2);
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn orderings_sqrt2() {
        let k = NumberField::new(poly(&[-2, 0, 1])).unwrap();
        let ords = k.real_orderings();
        assert_eq!(ords.len(), 2);
        let theta = FieldElement::generator(&k);
        assert_eq!(theta.sign_at(&ords[0]).unwrap(), -1);
        assert_eq!(theta.sign_at(&ords[1]).unwrap(), 1);
        // refinement never changes signs
        let fine = ords[0].refined(8);
        assert_eq!(theta.sign_at(&fine).unwrap(), -1);
        // 1 - theta^2 = -1 exactly
        let e = FieldElement::one(&k)
            .sub(&theta.mul(&theta).unwrap())
            .unwrap();
        assert_eq!(e.sign_at(&ords[0]).unwrap(), -1);
        assert_eq!(e.sign_at(&ords[1]).unwrap(), -1);
    }

    #[test]
    fn orderings_counts() {
        let none = NumberField::new(poly(&[1, 0, 1])).unwrap();
        assert!(none.real_orderings().is_empty());
        let cbrt2 = NumberField::new(poly(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(cbrt2.real_orderings().len(), 1);
        let q = NumberField::rationals();
        assert_eq!(q.real_orderings().len(), 1);
    }

    #[test]
    fn sign_at_rational_field() {
        let q = NumberField::rationals();
        let p = &q.real_orderings()[0];
        assert_eq!(
            FieldElement::from_rat(&q, rat(-3, 7)).sign_at(p).unwrap(),
            -1
        );
        assert_eq!(
            FieldElement::zero(&q).sign_at(p),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn sign_multiplicativity_sample() {
        let k = NumberField::new(poly(&[-2, 0, 0, 1])).unwrap();
        let p = &k.real_orderings()[0];
        let theta = FieldElement::generator(&k);
        let a = theta.sub(&FieldElement::one(&k)).unwrap(); // cbrt2 - 1 > 0
        let b = theta.sub(&FieldElement::from_int(&k, 2)).unwrap(); // < 0
        assert_eq!(a.sign_at(p).unwrap(), 1);
        assert_eq!(b.sign_at(p).unwrap(), -1);
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab.sign_at(p).unwrap(),
            a.sign_at(p).unwrap() * b.sign_at(p).unwrap()
        );
        let sq = ab.mul(&ab).unwrap();
        assert_eq!(sq.sign_at(p).unwrap(), 1);
    }
}
