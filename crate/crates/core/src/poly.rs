//! Dense univariate polynomials over the rationals, with the exact real-root
//! machinery (Sturm chains, Cauchy bounds, isolation and interval evaluation)
//! that backs ordering enumeration and sign determination.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// Coefficients are stored lowest degree first with no trailing zeros;
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        Polynomial {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Bounds for the image of `[lo, hi]` under this polynomial, by interval
    /// Horner evaluation. The bounds are exact rationals and converge to the
    /// point value as the interval shrinks.
    pub fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        debug_assert!(lo <= hi);
        let mut alo = Rat::zero();
        let mut ahi = Rat::zero();
        for c in self.coeffs.iter().rev() {
            let p1 = &alo * lo;
            let p2 = &alo * hi;
            let p3 = &ahi * lo;
            let p4 = &ahi * hi;
            let mut mn = p1.clone();
            let mut mx = p1;
            for p in [p2, p3, p4] {
                if p < mn {
                    mn = p.clone();
                }
                if p > mx {
                    mx = p;
                }
            }
            alo = mn + c;
            ahi = mx + c;
        }
        (alo, ahi)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let v = &q * c;
                    rem[k + i] -= v;
                }
                quot[k] = q;
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divmod(d).1
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.mul_rat(&(Rat::one() / l)),
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic.
    pub fn extended_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut u0 = Self::one();
        let mut u1 = Self::zero();
        let mut v0 = Self::zero();
        let mut v1 = Self::one();
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        let lead = r0.leading().cloned().unwrap_or_else(Rat::one);
        let inv = Rat::one() / lead;
        (r0.mul_rat(&inv), u0.mul_rat(&inv), v0.mul_rat(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => Self::gcd(self, &self.derivative()).degree() == Some(0),
        }
    }

    /// Strict bound B with every real root in (-B, B): 1 + max |c_i / c_n|.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().expect("nonzero polynomial").clone();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = (c / &lead).abs();
            if a > m {
                m = a;
            }
        }
        m + Rat::one()
    }

    /// Sturm chain with each member rescaled by a positive constant.
    pub fn sturm_chain(&self) -> Vec<Polynomial> {
        fn positive_rescale(p: Polynomial) -> Polynomial {
            match p.leading() {
                None => p,
                Some(l) => {
                    let s = Rat::one() / l.abs();
                    p.mul_rat(&s)
                }
            }
        }
        let mut chain = vec![positive_rescale(self.clone())];
        let d = positive_rescale(self.derivative());
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(positive_rescale(r));
        }
        chain
    }

    pub fn sign_variations(chain: &[Polynomial], x: &Rat) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_positive() { 1 } else { -1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval (l, r].
    pub fn count_roots(chain: &[Polynomial], l: &Rat, r: &Rat) -> usize {
        Self::sign_variations(chain, l) - Self::sign_variations(chain, r)
    }

    /// Isolating intervals for all real roots of a squarefree polynomial,
    /// sorted ascending. Each interval (l, r) contains exactly one root,
    /// f(l)f(r) < 0, and intervals are pairwise disjoint.
    pub fn isolate_real_roots(&self) -> Vec<(Rat, Rat)> {
        match self.degree() {
            None | Some(0) => return Vec::new(),
            _ => {}
        }
        debug_assert!(self.is_squarefree());
        let chain = self.sturm_chain();
        let bound = self.cauchy_bound();
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((l, r)) = stack.pop() {
            let n = Self::count_roots(&chain, &l, &r);
            if n == 0 {
                continue;
            }
            if n == 1 {
                debug_assert!((self.eval(&l) * self.eval(&r)).is_negative());
                out.push((l, r));
                continue;
            }
            let mid = (&l + &r) / Rat::from_integer(2.into());
            if self.eval(&mid).is_zero() {
                // mid is a rational root; carve out a private interval for it
                let (a, b) = self.isolate_around(&chain, &mid, &l, &r);
                stack.push((l, a.clone()));
                stack.push((b.clone(), r));
                out.push((a, b));
            } else {
                stack.push((l, mid.clone()));
                stack.push((mid, r));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Shrinks a symmetric interval around a known rational root until it
    /// isolates that root and has non-root endpoints.
    fn isolate_around(&self, chain: &[Polynomial], root: &Rat, l: &Rat, r: &Rat) -> (Rat, Rat) {
        let eighth = Rat::new(1.into(), 8.into());
        let mut h = (r - l) * &eighth;
        loop {
            let a = root - &h;
            let b = root + &h;
            if !self.eval(&a).is_zero()
                && !self.eval(&b).is_zero()
                && Self::count_roots(chain, &a, &b) == 1
            {
                return (a, b);
            }
            h /= Rat::from_integer(2.into());
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
