//! The ordering partition X1/X-1, the two signature maps on the mixed Witt
//! ring, total signatures, principal sets, polarizations and their group
//! action, reference-form search, and the enumeration of the spectrum
//! fibers.
//!
//! Conventions. At a nonsplit ordering the label eta = +1 is the
//! canonical-retraction map (so <1>_gamma has signature +2). At a split
//! ordering there is no canonical choice: a reference is required, and
//! eta = +1 denotes the map giving the reference a positive value. Only
//! the pair {+map, -map} is canonical there.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixed::{module_action, HermitianDiagonal, MixedElement, SkewHermitianDiagonal};
use crate::numberfield::{FieldElement, Ordering};
use crate::quat::{same_algebra, PureQuaternion, QuaternionAlgebra};
use crate::rational::{is_prime_u64, rat, rat_int};
use crate::witt::QuadraticForm;

/// The partition of X(K) by the splitting behavior of the algebra at each
/// real place: P is in X1 iff Q splits over the real closure at P.
#[derive(Clone, Debug)]
pub struct OrderingPartition {
    x_plus: Vec<Ordering>,
    x_minus: Vec<Ordering>,
}

impl OrderingPartition {
    pub fn x_plus(&self) -> &[Ordering] {
        &self.x_plus
    }

    pub fn x_minus(&self) -> &[Ordering] {
        &self.x_minus
    }
}

/// True iff (a,b) splits at P, i.e. a or b is P-positive.
fn splits_at(algebra: &QuaternionAlgebra, p: &Ordering) -> Result<bool> {
    Ok(algebra.a().sign_at(p)? > 0 || algebra.b().sign_at(p)? > 0)
}

pub fn partition_orderings(algebra: &Arc<QuaternionAlgebra>) -> Result<OrderingPartition> {
    let mut x_plus = Vec::new();
    let mut x_minus = Vec::new();
    for p in algebra.field().real_orderings() {
        if splits_at(algebra, &p)? {
            x_plus.push(p);
        } else {
            x_minus.push(p);
        }
    }
    Ok(OrderingPartition { x_plus, x_minus })
}

/// The values of the two signature maps at one ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignaturePair {
    pub plus: i64,
    pub minus: i64,
}

impl SignaturePair {
    pub fn by_label(&self, eta: i8) -> i64 {
        if eta >= 0 {
            self.plus
        } else {
            self.minus
        }
    }
}

/// Signature of the canonical-retraction map on the hermitian part at a
/// nonsplit ordering: 2 * sum of entry signs.
pub fn herm_signature_nonsplit(h: &HermitianDiagonal, p: &Ordering) -> Result<i64> {
    if splits_at(h.algebra(), p)? {
        return Err(Error::WrongStratum);
    }
    let mut s = 0i64;
    for e in h.entries() {
        s += e.sign_at(p)? as i64;
    }
    Ok(2 * s)
}

/// Signature of one product term <-Trd(r z)> phi_{r,z} at P, which is the
/// scalar part of the skew product <r>.<z>.
fn skew_entry_pair_signature(r: &PureQuaternion, z: &PureQuaternion, p: &Ordering) -> Result<i64> {
    let trd = r.as_quaternion().mul(&z.as_quaternion())?.trd();
    if trd.is_zero() {
        return Ok(0);
    }
    let phi = crate::mixed::pfister_phi(r, z)?;
    phi.scale(&trd.neg())?.signature(p)
}

/// Signature of the skew part at a split ordering, with respect to the map
/// normalized so the reference gets value +2. Each term lies in {0, +-2}.
pub fn skew_signature_with_reference(
    s: &SkewHermitianDiagonal,
    p: &Ordering,
    reference: &PureQuaternion,
) -> Result<i64> {
    if !same_algebra(s.algebra(), reference.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if !splits_at(s.algebra(), p)? {
        return Err(Error::WrongStratum);
    }
    if !reference.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let t = skew_entry_pair_signature(reference, reference, p)?;
    if t == 0 {
        return Err(Error::DegenerateReference(p.index()));
    }
    debug_assert_eq!(t, 4);
    let mut total = 0i64;
    for z in s.entries() {
        total += skew_entry_pair_signature(reference, z, p)?;
    }
    Ok(total / 2)
}

/// Same map computed against a reference form of any rank: the value of
/// sign_P(x . h) divided by the positive square root of sign_P(h . h).
fn skew_signature_with_form(
    s: &SkewHermitianDiagonal,
    p: &Ordering,
    h: &SkewHermitianDiagonal,
) -> Result<i64> {
    if !splits_at(s.algebra(), p)? {
        return Err(Error::WrongStratum);
    }
    let mut t = 0i64;
    for a in h.entries() {
        for b in h.entries() {
            t += skew_entry_pair_signature(a, b, p)?;
        }
    }
    if t <= 0 {
        return Err(Error::DegenerateReference(p.index()));
    }
    let mut sh = 0i64;
    while (sh + 1) * (sh + 1) <= t {
        sh += 1;
    }
    debug_assert_eq!(sh * sh, t, "square signature of a reference form");
    let mut raw = 0i64;
    for a in h.entries() {
        for z in s.entries() {
            raw += skew_entry_pair_signature(a, z, p)?;
        }
    }
    debug_assert_eq!(raw % sh, 0);
    Ok(raw / sh)
}

/// Both signature maps of a mixed element at one ordering. A reference is
/// required exactly when P is split and the skew part is nonempty.
pub fn signature_pair(
    x: &MixedElement,
    p: &Ordering,
    reference: Option<&PureQuaternion>,
) -> Result<SignaturePair> {
    let scalar = x.scalar().signature(p)?;
    let graded = if splits_at(x.algebra(), p)? {
        if x.skew().is_empty() {
            0
        } else {
            let r = reference.ok_or(Error::MissingReference(p.index()))?;
            skew_signature_with_reference(x.skew(), p, r)?
        }
    } else {
        herm_signature_nonsplit(x.herm(), p)?
    };
    Ok(SignaturePair {
        plus: scalar + graded,
        minus: scalar - graded,
    })
}

/// A labeling of orderings by +1/-1, i.e. a set-theoretic section of the
/// double cover over its domain. Labels are relative to the default
/// labeling of this module (canonical map at nonsplit orderings,
/// reference-normalized map at split ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationMap {
    labels: BTreeMap<usize, i8>,
}

impl PolarizationMap {
    pub fn new(labels: BTreeMap<usize, i8>) -> Result<Self> {
        for (&idx, &v) in &labels {
            if v != 1 && v != -1 {
                return Err(Error::DomainMismatch(idx));
            }
        }
        Ok(PolarizationMap { labels })
    }

    pub fn constant(domain: impl IntoIterator<Item = usize>, eta: i8) -> Self {
        PolarizationMap {
            labels: domain.into_iter().map(|i| (i, eta)).collect(),
        }
    }

    pub fn labels(&self) -> &BTreeMap<usize, i8> {
        &self.labels
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.keys().copied()
    }

    pub fn get(&self, idx: usize) -> Option<i8> {
        self.labels.get(&idx).copied()
    }

    pub fn opposite(&self) -> Self {
        PolarizationMap {
            labels: self.labels.iter().map(|(&i, &v)| (i, -v)).collect(),
        }
    }

    /// Union of two polarizations with disjoint or agreeing domains.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let mut labels = self.labels.clone();
        for (&i, &v) in &other.labels {
            if let Some(&w) = labels.get(&i) {
                if w != v {
                    return Err(Error::DomainMismatch(i));
                }
            }
            labels.insert(i, v);
        }
        Ok(PolarizationMap { labels })
    }
}

/// The G-action: pointwise product with a {+1,-1}-valued function that must
/// cover the polarization's domain. Total signatures transform by the same
/// factor.
pub fn act_on_polarization(
    f: &BTreeMap<usize, i8>,
    pol: &PolarizationMap,
) -> Result<PolarizationMap> {
    let mut labels = BTreeMap::new();
    for (&idx, &v) in pol.labels() {
        let fv = *f.get(&idx).ok_or(Error::DomainMismatch(idx))?;
        labels.insert(idx, fv * v);
    }
    PolarizationMap::new(labels)
}

/// The standard automorphism induced by <a>_sigma: graded parts are scaled
/// entrywise by a, and the scalar part is untouched. On signature pairs
/// this swaps the two maps exactly at the orderings where a is negative.
pub fn standard_automorphism(a: &FieldElement, x: &MixedElement) -> Result<MixedElement> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let algebra = x.algebra();
    let herm = HermitianDiagonal::new(
        algebra,
        x.herm()
            .entries()
            .iter()
            .map(|e| e.mul(a))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let skew = SkewHermitianDiagonal::new(
        algebra,
        x.skew()
            .entries()
            .iter()
            .map(|z| z.scale(a))
            .collect::<Result<Vec<_>>>()?,
    )?;
    MixedElement::new(algebra, x.scalar().clone(), herm, skew)
}

/// A skew-hermitian form usable as a reference on the split stratum,
/// together with the orderings it covers.
#[derive(Clone, Debug)]
pub struct ReferenceForm {
    pub form: SkewHermitianDiagonal,
    pub nonzero_set: BTreeSet<usize>,
}

/// Label of a point of Spec(W~): the fundamental ideal, or a kernel
/// I_{P,p}^eta with p zero or an odd prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumLabel {
    Fundamental,
    Signature { ordering: usize, p: u64, eta: i8 },
}

impl SpectrumLabel {
    pub fn signature(ordering: usize, p: u64, eta: i8) -> Result<Self> {
        if p != 0 && (p == 2 || !is_prime_u64(p)) {
            return Err(Error::InvalidSpectrumPrime(p));
        }
        Ok(SpectrumLabel::Signature { ordering, p, eta })
    }
}

/// Evaluation context bundling an algebra, its orderings and partition,
/// and an optional reference form for the split stratum. Per-ordering
/// computations are pure and independent.
#[derive(Clone)]
pub struct SignatureContext {
    algebra: Arc<QuaternionAlgebra>,
    orderings: Vec<Ordering>,
    split: Vec<bool>,
    reference: Option<SkewHermitianDiagonal>,
}

impl SignatureContext {
    pub fn new(algebra: &Arc<QuaternionAlgebra>) -> Result<Self> {
        let orderings = algebra.field().real_orderings();
        let mut split = Vec::with_capacity(orderings.len());
        for p in &orderings {
            split.push(splits_at(algebra, p)?);
        }
        Ok(SignatureContext {
            algebra: Arc::clone(algebra),
            orderings,
            split,
            reference: None,
        })
    }

    pub fn with_reference(mut self, reference: SkewHermitianDiagonal) -> Result<Self> {
        if !same_algebra(reference.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        self.reference = Some(reference);
        Ok(self)
    }

    pub fn with_pure_reference(self, reference: PureQuaternion) -> Result<Self> {
        let algebra = reference.algebra().clone();
        let form = SkewHermitianDiagonal::new(&algebra, vec![reference])?;
        self.with_reference(form)
    }

    /// Runs the bounded search for a reference form if none is set and the
    /// split stratum is nonempty.
    pub fn ensure_reference(&mut self, budget: usize) -> Result<()> {
        if self.reference.is_some() || !self.split.iter().any(|&s| s) {
            return Ok(());
        }
        let found = find_reference_with_budget(&self.algebra, budget)?;
        self.reference = Some(found.form);
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    pub fn orderings(&self) -> &[Ordering] {
        &self.orderings
    }

    pub fn reference(&self) -> Option<&SkewHermitianDiagonal> {
        self.reference.as_ref()
    }

    pub fn is_split(&self, idx: usize) -> bool {
        self.split[idx]
    }

    pub fn split_indices(&self) -> Vec<usize> {
        (0..self.orderings.len()).filter(|&i| self.split[i]).collect()
    }

    pub fn nonsplit_indices(&self) -> Vec<usize> {
        (0..self.orderings.len()).filter(|&i| !self.split[i]).collect()
    }

    /// Both signature maps of x at the ordering with the given index.
    pub fn pair(&self, x: &MixedElement, idx: usize) -> Result<SignaturePair> {
        let p = &self.orderings[idx];
        if !same_algebra(x.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let scalar = x.scalar().signature(p)?;
        let graded = if self.split[idx] {
            if x.skew().is_empty() {
                0
            } else {
                let h = self
                    .reference
                    .as_ref()
                    .ok_or(Error::MissingReference(idx))?;
                skew_signature_with_form(x.skew(), p, h)?
            }
        } else {
            herm_signature_nonsplit(x.herm(), p)?
        };
        Ok(SignaturePair {
            plus: scalar + graded,
            minus: scalar - graded,
        })
    }

    /// Signature pairs at every ordering, in index order.
    pub fn pair_row(&self, x: &MixedElement) -> Result<Vec<SignaturePair>> {
        (0..self.orderings.len()).map(|i| self.pair(x, i)).collect()
    }

    /// The principal set U(x): orderings where the two maps differ on x.
    pub fn principal_set(&self, x: &MixedElement) -> Result<BTreeSet<usize>> {
        let mut set = BTreeSet::new();
        for i in 0..self.orderings.len() {
            let pr = self.pair(x, i)?;
            if pr.plus != pr.minus {
                set.insert(i);
            }
        }
        Ok(set)
    }

    /// The principal local polarization s_x on U(x): the label making x's
    /// signature the larger of the two.
    pub fn principal_polarization(&self, x: &MixedElement) -> Result<PolarizationMap> {
        let mut labels = BTreeMap::new();
        for i in 0..self.orderings.len() {
            let pr = self.pair(x, i)?;
            if pr.plus > pr.minus {
                labels.insert(i, 1);
            } else if pr.plus < pr.minus {
                labels.insert(i, -1);
            }
        }
        PolarizationMap::new(labels)
    }

    /// Total signature of x relative to a polarization that must cover all
    /// of X(K).
    pub fn total_signature(
        &self,
        x: &MixedElement,
        pol: &PolarizationMap,
    ) -> Result<BTreeMap<usize, i64>> {
        let mut out = BTreeMap::new();
        for i in 0..self.orderings.len() {
            let eta = pol.get(i).ok_or(Error::PartialPolarization(i))?;
            out.insert(i, self.pair(x, i)?.by_label(eta));
        }
        Ok(out)
    }

    /// Membership of x in the prime ideal named by the label.
    pub fn ideal_membership(&self, x: &MixedElement, label: &SpectrumLabel) -> Result<bool> {
        match label {
            SpectrumLabel::Fundamental => Ok(x.rdim2() == 0),
            SpectrumLabel::Signature { ordering, p, eta } => {
                if *ordering >= self.orderings.len() {
                    return Err(Error::PartialPolarization(*ordering));
                }
                let v = self.pair(x, *ordering)?.by_label(*eta);
                Ok(if *p == 0 { v == 0 } else { v % (*p as i64) == 0 })
            }
        }
    }

    /// Enumerates the spectrum labels over the fundamental ideal and over
    /// each I_{P,p}(K) for p in {0} union primes.
    pub fn spectrum_report(&self, primes: &[u64]) -> Result<SpectrumReport> {
        let mut ps = vec![0u64];
        for &p in primes {
            if p == 2 || !is_prime_u64(p) {
                return Err(Error::InvalidSpectrumPrime(p));
            }
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
        ps.sort();
        let mut labels = vec![SpectrumLabelReport::Fundamental];
        for idx in 0..self.orderings.len() {
            for &p in &ps {
                for eta in [1i8, -1] {
                    labels.push(SpectrumLabelReport::Signature {
                        ordering: idx,
                        p,
                        eta,
                    });
                }
            }
        }
        let n = self.orderings.len();
        Ok(SpectrumReport {
            field_degree: self.algebra.field().degree(),
            ordering_count: n,
            split_orderings: self.split_indices(),
            nonsplit_orderings: self.nonsplit_indices(),
            primes: ps.iter().copied().filter(|&p| p != 0).collect(),
            label_count: labels.len(),
            labels,
            fiber_over_fundamental_ideal: 1,
            fiber_over_each_signature_ideal: 2,
            spec0: Spec0Report {
                size: 2 * n,
                base_size: n,
                cover_degree: 2,
            },
            topology: TOPOLOGY_NOTE.to_string(),
        })
    }
}

const TOPOLOGY_NOTE: &str = "X(K) is finite and discrete, so the double cover is trivial over \
each point: every polarization is continuous and every principal set is clopen";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumLabelReport {
    Fundamental,
    Signature { ordering: usize, p: u64, eta: i8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spec0Report {
    pub size: usize,
    pub base_size: usize,
    pub cover_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub field_degree: usize,
    pub ordering_count: usize,
    pub split_orderings: Vec<usize>,
    pub nonsplit_orderings: Vec<usize>,
    pub primes: Vec<u64>,
    pub label_count: usize,
    pub labels: Vec<SpectrumLabelReport>,
    pub fiber_over_fundamental_ideal: usize,
    pub fiber_over_each_signature_ideal: usize,
    pub spec0: Spec0Report,
    pub topology: String,
}

pub const DEFAULT_SEARCH_BUDGET: usize = 10_000;

/// Searches for a skew-hermitian reference form whose square-signature is
/// 4 at every split ordering. Candidates are tried in a fixed order:
/// single entries from a small pool, then integer combinations
/// x i + y j + w k with coefficients in -2..=2, then rank-2 concatenations
/// of pool elements.
pub fn find_reference(algebra: &Arc<QuaternionAlgebra>) -> Result<ReferenceForm> {
    find_reference_with_budget(algebra, DEFAULT_SEARCH_BUDGET)
}

pub fn find_reference_with_budget(
    algebra: &Arc<QuaternionAlgebra>,
    budget: usize,
) -> Result<ReferenceForm> {
    let ctx = SignatureContext::new(algebra)?;
    let split = ctx.split_indices();
    if split.is_empty() {
        return Ok(ReferenceForm {
            form: SkewHermitianDiagonal::empty(algebra),
            nonzero_set: BTreeSet::new(),
        });
    }
    let pool: Vec<PureQuaternion> = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (1, -1, 0),
        (1, 0, 1),
        (1, 0, -1),
        (0, 1, 1),
        (0, 1, -1),
    ]
    .iter()
    .map(|&(x, y, w)| PureQuaternion::from_ints(algebra, x, y, w))
    .collect();

    let mut tried = 0usize;
    let consider = |form: SkewHermitianDiagonal,
                    tried: &mut usize|
     -> Result<Option<ReferenceForm>> {
        *tried += 1;
        if *tried > budget {
            return Err(Error::SearchBudgetExceeded { budget });
        }
        if form.entries().iter().any(|z| !z.is_invertible()) {
            return Ok(None);
        }
        for &idx in &split {
            let p = &ctx.orderings[idx];
            let mut t = 0i64;
            for a in form.entries() {
                for b in form.entries() {
                    t += skew_entry_pair_signature(a, b, p)?;
                }
            }
            if t != 4 {
                return Ok(None);
            }
        }
        Ok(Some(ReferenceForm {
            form,
            nonzero_set: split.iter().copied().collect(),
        }))
    };

    for z in &pool {
        let form = SkewHermitianDiagonal::new(algebra, vec![z.clone()])
            .unwrap_or_else(|_| SkewHermitianDiagonal::empty(algebra));
        let form = if form.is_empty() {
            tried += 1;
            continue;
        } else {
            form
        };
        if let Some(found) = consider(form, &mut tried)? {
            return Ok(found);
        }
    }
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            for w in -2i64..=2 {
                if x == 0 && y == 0 && w == 0 {
                    continue;
                }
                let z = PureQuaternion::from_ints(algebra, x, y, w);
                if !z.is_invertible() {
                    tried += 1;
                    continue;
                }
                let form = SkewHermitianDiagonal::new(algebra, vec![z])?;
                if let Some(found) = consider(form, &mut tried)? {
                    return Ok(found);
                }
            }
        }
    }
    for i in 0..pool.len() {
        for j in i..pool.len() {
            if !pool[i].is_invertible() || !pool[j].is_invertible() {
                tried += 1;
                continue;
            }
            let form =
                SkewHermitianDiagonal::new(algebra, vec![pool[i].clone(), pool[j].clone()])?;
            if let Some(found) = consider(form, &mut tried)? {
                return Ok(found);
            }
        }
    }
    Err(Error::SearchBudgetExceeded { budget })
}

/// Bounded realization of the union theorem for principal sets: looks for
/// lambda with U(x1 + <lambda> x2) = U(x1) union U(x2). Failure is
/// reported, never papered over.
pub fn cover_union(
    ctx: &SignatureContext,
    x1: &MixedElement,
    x2: &MixedElement,
) -> Result<MixedElement> {
    let target: BTreeSet<usize> = ctx
        .principal_set(x1)?
        .union(&ctx.principal_set(x2)?)
        .copied()
        .collect();
    let pool = lambda_pool(ctx.algebra());
    for lam in pool {
        let lam_form = QuadraticForm::diagonal(ctx.algebra().field(), vec![lam])?;
        let cand = x1.add(&module_action(&lam_form, x2)?)?;
        if ctx.principal_set(&cand)? == target {
            return Ok(cand);
        }
    }
    Err(Error::SearchBudgetExceeded { budget: 20 })
}

/// A fixed 20-element pool of small field elements used by `cover_union`.
fn lambda_pool(algebra: &Arc<QuaternionAlgebra>) -> Vec<FieldElement> {
    let field = algebra.field();
    let mut pool: Vec<FieldElement> = [
        rat_int(1),
        rat_int(-1),
        rat_int(2),
        rat_int(-2),
        rat_int(3),
        rat_int(-3),
        rat(1, 2),
        rat(-1, 2),
        rat_int(5),
        rat_int(-5),
    ]
    .into_iter()
    .map(|r| FieldElement::from_rat(field, r))
    .collect();
    if field.degree() > 1 {
        let theta = FieldElement::generator(field);
        let one = FieldElement::one(field);
        let two = FieldElement::from_int(field, 2);
        pool.push(theta.clone());
        pool.push(theta.neg());
        pool.push(theta.add(&one).expect("same field"));
        pool.push(one.sub(&theta).expect("same field"));
        pool.push(theta.sub(&one).expect("same field"));
        pool.push(theta.add(&one).expect("same field").neg());
        pool.push(theta.add(&two).expect("same field"));
        pool.push(two.sub(&theta).expect("same field"));
        pool.push(theta.mul_rat(&rat_int(2)));
        pool.push(theta.mul_rat(&rat_int(-2)));
    } else {
        for r in [
            rat_int(4),
            rat_int(-4),
            rat(1, 3),
            rat(-1, 3),
            rat(2, 3),
            rat(-2, 3),
            rat_int(6),
            rat_int(-6),
            rat_int(7),
            rat_int(-7),
        ] {
            pool.push(FieldElement::from_rat(field, r));
        }
    }
    pool
}

impl fmt::Debug for SignatureContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SignatureContext({:?}, {} orderings, reference: {})",
            self.algebra,
            self.orderings.len(),
            if self.reference.is_some() { "set" } else { "none" }
        )
    }
}
