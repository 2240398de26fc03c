//! Shared helpers for the integration suites: an independent brute-force
//! Witt-equality oracle (isotropy search plus exact hyperbolic-plane
//! splitting, no Hilbert symbols anywhere), and seeded random generators.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use wittq_core::mixed::{HermitianDiagonal, MixedElement, SkewHermitianDiagonal};
use wittq_core::numberfield::{FieldElement, NumberField};
use wittq_core::quat::{PureQuaternion, QuaternionAlgebra};
use wittq_core::witt::QuadraticForm;

type Rat = BigRational;

/// Squarefree part of num*den by trial division, sign kept. Self-contained
/// so the oracle shares nothing with the library's local-symbol path.
fn squarefree_rat(r: &Rat) -> BigInt {
    let mut m = (r.numer() * r.denom()).abs();
    let negative = r.is_negative();
    let mut sf = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            sf *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    sf *= m;
    if negative {
        -sf
    } else {
        sf
    }
}

fn to_i128(b: &BigInt) -> i128 {
    let s = b.to_string();
    s.parse().expect("oracle entries stay small")
}

/// Looks for a nontrivial integer zero of the diagonal form. Dimensions
/// up to 4 use a meet-in-the-middle scan with the given coordinate bound;
/// higher dimensions scan boxes of growing radius.
fn find_isotropic(entries: &[i128], bound: i64) -> Option<Vec<i64>> {
    let d = entries.len();
    match d {
        0 | 1 => None,
        2 => {
            // <a,b> isotropic iff -ab is a perfect square
            let target = -entries[0] * entries[1];
            if target < 0 {
                return None;
            }
            let mut s = 0i128;
            while s * s < target {
                s += 1;
            }
            if s * s == target {
                // a x^2 + b y^2 = 0 with x = s', derived from b s^2? verify
                // directly: x = |b| s scaled solution; simpler: search small
                for x in 0..=bound {
                    for y in 0..=bound {
                        if (x, y) == (0, 0) {
                            continue;
                        }
                        let v = entries[0] * (x as i128).pow(2) + entries[1] * (y as i128).pow(2);
                        if v == 0 {
                            return Some(vec![x, y]);
                        }
                    }
                }
                None
            } else {
                None
            }
        }
        3 | 4 => {
            let left = &entries[..2];
            let right = &entries[2..];
            let mut table: HashMap<i128, (i64, i64)> = HashMap::new();
            for x in 0..=bound {
                for y in 0..=bound {
                    let v = left[0] * (x as i128).pow(2) + left[1] * (y as i128).pow(2);
                    table.entry(v).or_insert((x, y));
                }
            }
            for z in 0..=bound {
                for w in 0..=if right.len() == 2 { bound } else { 0 } {
                    if right.len() == 1 && w > 0 {
                        break;
                    }
                    let mut v = right[0] * (z as i128).pow(2);
                    if right.len() == 2 {
                        v += right[1] * (w as i128).pow(2);
                    }
                    if let Some(&(x, y)) = table.get(&-v) {
                        let candidate = if right.len() == 2 {
                            vec![x, y, z, w]
                        } else {
                            vec![x, y, z]
                        };
                        if candidate.iter().any(|&c| c != 0) {
                            return Some(candidate);
                        }
                    }
                }
            }
            None
        }
        _ => {
            // sign changes allowed in the first coordinate only after
            // squaring, so scanning nonnegative tuples suffices
            for radius in 1..=4i64 {
                let mut coords = vec![0i64; d];
                loop {
                    let v: i128 = entries
                        .iter()
                        .zip(&coords)
                        .map(|(a, &c)| a * (c as i128).pow(2))
                        .sum();
                    if v == 0 && coords.iter().any(|&c| c != 0) {
                        return Some(coords);
                    }
                    // odometer over -radius..=radius, first coord 0..=radius
                    let mut i = 0;
                    loop {
                        if i == d {
                            break;
                        }
                        let max = radius;
                        let min = if i == 0 { 0 } else { -radius };
                        if coords[i] < max {
                            coords[i] += 1;
                            break;
                        }
                        coords[i] = min;
                        i += 1;
                    }
                    if i == d {
                        break;
                    }
                }
            }
            None
        }
    }
}

/// Bilinear form value for the diagonal form with the given entries.
fn bilinear(entries: &[Rat], x: &[Rat], y: &[Rat]) -> Rat {
    entries
        .iter()
        .zip(x.iter().zip(y))
        .map(|(d, (a, b))| d * a * b)
        .fold(Rat::zero(), |acc, v| acc + v)
}

/// Splits the hyperbolic plane spanned by an isotropic vector off a
/// diagonal form, returning a diagonalization of the orthogonal
/// complement.
fn split_plane(entries: &[Rat], iso: &[i64]) -> Vec<Rat> {
    let d = entries.len();
    let x: Vec<Rat> = iso
        .iter()
        .map(|&c| Rat::from_integer(BigInt::from(c)))
        .collect();
    debug_assert!(bilinear(entries, &x, &x).is_zero());
    // partner vector with B(x, y0) != 0: a standard basis vector works
    let mut y0 = vec![Rat::zero(); d];
    let mut c = Rat::zero();
    for m in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[m] = Rat::one();
        let v = bilinear(entries, &x, &e);
        if !v.is_zero() {
            y0 = e;
            c = v;
            break;
        }
    }
    assert!(!c.is_zero(), "isotropic vector of a nondegenerate form");
    // make the partner isotropic: y = y0 - B(y0,y0)/(2c) x
    let corr = bilinear(entries, &y0, &y0) / (&c + &c);
    let y: Vec<Rat> = y0
        .iter()
        .zip(&x)
        .map(|(a, b)| a - &corr * b)
        .collect();
    debug_assert!(bilinear(entries, &y, &y).is_zero());
    // project the standard basis onto the complement of span(x, y)
    let mut complement: Vec<Vec<Rat>> = Vec::new();
    for m in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[m] = Rat::one();
        let bx = bilinear(entries, &e, &x);
        let by = bilinear(entries, &e, &y);
        let v: Vec<Rat> = (0..d)
            .map(|i| &e[i] - &(&by / &c) * &x[i] - &(&bx / &c) * &y[i])
            .collect();
        complement.push(v);
    }
    // select d-2 linearly independent projections by Gaussian elimination
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut reduced: Vec<Vec<Rat>> = Vec::new();
    for v in complement {
        let mut w = v.clone();
        for r in &reduced {
            let lead = r.iter().position(|c| !c.is_zero()).unwrap();
            if !w[lead].is_zero() {
                let f = &w[lead] / &r[lead];
                for i in 0..d {
                    w[i] = &w[i] - &f * &r[i];
                }
            }
        }
        if w.iter().any(|c| !c.is_zero()) {
            reduced.push(w);
            rows.push(v);
            if rows.len() == d - 2 {
                break;
            }
        }
    }
    assert_eq!(rows.len(), d - 2);
    // diagonalize the restricted form by congruence
    let mut basis = rows;
    let mut diag = Vec::with_capacity(d - 2);
    for r in 0..basis.len() {
        if bilinear(entries, &basis[r], &basis[r]).is_zero() {
            // bring a nonzero diagonal or off-diagonal value into position
            let mut fixed = false;
            for s in (r + 1)..basis.len() {
                if !bilinear(entries, &basis[s], &basis[s]).is_zero() {
                    basis.swap(r, s);
                    fixed = true;
                    break;
                }
            }
            if !fixed {
                for s in (r + 1)..basis.len() {
                    if !bilinear(entries, &basis[r], &basis[s]).is_zero() {
                        let sum: Vec<Rat> = basis[r]
                            .iter()
                            .zip(&basis[s])
                            .map(|(a, b)| a + b)
                            .collect();
                        basis[r] = sum;
                        fixed = true;
                        break;
                    }
                }
            }
            assert!(fixed, "restricted form is nondegenerate");
        }
        let pivot = bilinear(entries, &basis[r], &basis[r]);
        for s in (r + 1)..basis.len() {
            let f = bilinear(entries, &basis[r], &basis[s]) / &pivot;
            let next: Vec<Rat> = basis[s]
                .iter()
                .zip(&basis[r])
                .map(|(a, b)| a - &f * b)
                .collect();
            basis[s] = next;
        }
        diag.push(pivot);
    }
    diag
}

/// Brute-force hyperbolicity: repeatedly find an isotropic vector and split
/// a hyperbolic plane; hyperbolic iff the form reduces to dimension 0.
pub fn oracle_hyperbolic(entries: &[Rat], bound: i64) -> bool {
    if entries.len() % 2 != 0 {
        return false;
    }
    if entries.is_empty() {
        return true;
    }
    let reduced: Vec<BigInt> = entries.iter().map(squarefree_rat).collect();
    // a hyperbolic form has as many positive as negative entries
    let sig: i64 = reduced
        .iter()
        .map(|e| if e.is_negative() { -1 } else { 1 })
        .sum();
    if sig != 0 {
        return false;
    }
    let small: Vec<i128> = reduced.iter().map(to_i128).collect();
    match find_isotropic(&small, bound) {
        None => false,
        Some(iso) => {
            let rat_entries: Vec<Rat> = reduced
                .iter()
                .map(|e| Rat::from_integer(e.clone()))
                .collect();
            let rest = split_plane(&rat_entries, &iso);
            oracle_hyperbolic(&rest, bound)
        }
    }
}

/// Witt equality via the oracle: q1 ~ q2 iff q1 + (-q2) is hyperbolic.
pub fn oracle_witt_equal(e1: &[i64], e2: &[i64], bound: i64) -> bool {
    let mut phi: Vec<Rat> = e1
        .iter()
        .map(|&a| Rat::from_integer(BigInt::from(a)))
        .collect();
    phi.extend(e2.iter().map(|&a| Rat::from_integer(BigInt::from(-a))));
    oracle_hyperbolic(&phi, bound)
}

// ---------------------------------------------------------------------
// seeded random generators
// ---------------------------------------------------------------------

pub fn nonzero_rational(rng: &mut StdRng) -> BigRational {
    loop {
        let num = rng.random_range(-6i64..=6);
        if num == 0 {
            continue;
        }
        let den = rng.random_range(1i64..=3);
        return BigRational::new(BigInt::from(num), BigInt::from(den));
    }
}

pub fn nonzero_element(rng: &mut StdRng, field: &Arc<NumberField>) -> FieldElement {
    loop {
        let coeffs: Vec<BigRational> = (0..field.degree())
            .map(|_| {
                if rng.random_bool(0.7) {
                    BigRational::new(
                        BigInt::from(rng.random_range(-5i64..=5)),
                        BigInt::from(rng.random_range(1i64..=2)),
                    )
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let e = FieldElement::new(field, coeffs);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_form(rng: &mut StdRng, field: &Arc<NumberField>, max_dim: usize) -> QuadraticForm {
    let dim = rng.random_range(0..=max_dim);
    let entries = (0..dim).map(|_| nonzero_element(rng, field)).collect();
    QuadraticForm::diagonal(field, entries).expect("nonzero entries")
}

pub fn random_pure(rng: &mut StdRng, algebra: &Arc<QuaternionAlgebra>) -> PureQuaternion {
    loop {
        let z = PureQuaternion::from_ints(
            algebra,
            rng.random_range(-3i64..=3),
            rng.random_range(-3i64..=3),
            rng.random_range(-3i64..=3),
        );
        if z.is_invertible() {
            return z;
        }
    }
}

pub fn random_mixed(rng: &mut StdRng, algebra: &Arc<QuaternionAlgebra>) -> MixedElement {
    let field = algebra.field();
    let scalar = random_form(rng, field, 2);
    let herm_rank = rng.random_range(0..=2);
    let herm = HermitianDiagonal::new(
        algebra,
        (0..herm_rank).map(|_| nonzero_element(rng, field)).collect(),
    )
    .expect("nonzero entries");
    let skew_rank = rng.random_range(0..=2);
    let skew = SkewHermitianDiagonal::new(
        algebra,
        (0..skew_rank).map(|_| random_pure(rng, algebra)).collect(),
    )
    .expect("invertible entries");
    MixedElement::new(algebra, scalar, herm, skew).expect("same algebra")
}

#[allow(dead_code)]
pub fn herm_only(rng: &mut StdRng, algebra: &Arc<QuaternionAlgebra>, rank: usize) -> MixedElement {
    let field = algebra.field();
    MixedElement::from_herm(
        HermitianDiagonal::new(
            algebra,
            (0..rank).map(|_| nonzero_element(rng, field)).collect(),
        )
        .expect("nonzero entries"),
    )
}

#[allow(dead_code)]
pub fn skew_only(rng: &mut StdRng, algebra: &Arc<QuaternionAlgebra>, rank: usize) -> MixedElement {
    MixedElement::from_skew(
        SkewHermitianDiagonal::new(
            algebra,
            (0..rank).map(|_| random_pure(rng, algebra)).collect(),
        )
        .expect("invertible entries"),
    )
}
