//! Canonical multivariate polynomials over Q(i).
//!
//! A [`Poly`] stores its nonzero terms sorted descending by the ring's
//! monomial order, so structural equality coincides with mathematical
//! equality and the leading term is always the first entry.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::GaussianRational;
use crate::ring::{Monomial, PolyRing};

#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    /// Sorted descending by the ring's order; no zero coefficients.
    terms: Vec<(Monomial, GaussianRational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, GaussianRational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: GaussianRational) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.num_vars()), c)]
        };
        Self {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// The variable with the given index, as a polynomial.
    pub fn variable(ring: &Arc<PolyRing>, index: usize) -> Self {
        assert!(index < ring.num_vars(), "variable index out of range");
        let mut exps = vec![0u32; ring.num_vars()];
        exps[index] = 1;
        Self {
            ring: Arc::clone(ring),
            terms: vec![(Monomial(exps), GaussianRational::one())],
        }
    }

    /// Builds a polynomial from raw terms; merges duplicates, drops zeros,
    /// and sorts into canonical order.
    pub fn from_terms(ring: &Arc<PolyRing>, raw: Vec<(Monomial, GaussianRational)>) -> Self {
        let mut acc: HashMap<Monomial, GaussianRational> = HashMap::new();
        for (m, c) in raw {
            assert_eq!(m.0.len(), ring.num_vars(), "exponent vector length");
            let entry = acc.entry(m).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &c;
        }
        let mut terms: Vec<(Monomial, GaussianRational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| ring.cmp_exponents(&b.0, &a.0));
        Self {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, GaussianRational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial; `None` if not constant.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            Some(GaussianRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading (monomial, coefficient) under the ring's order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            *self.ring == *other.ring,
            "ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiplies by a single term c·m.
    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    /// Leading coefficient scaled to 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at a point of Q(i)ⁿ.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.num_vars(),
                got: point.len(),
            });
        }
        // Cache powers of each coordinate up to the largest exponent used.
        let mut powers: Vec<Vec<GaussianRational>> = point
            .iter()
            .map(|c| vec![GaussianRational::one(), c.clone()])
            .collect();
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &point[v];
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Substitutes a polynomial (in `target`) for each variable.
    pub fn symbolic_evaluate(
        &self,
        substitution: &[Poly],
        target: &Arc<PolyRing>,
    ) -> Result<Poly> {
        if substitution.len() != self.ring.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.num_vars(),
                got: substitution.len(),
            });
        }
        for s in substitution {
            if *s.ring != **target {
                return Err(Error::RingMismatch(format!(
                    "substitution entry in {} but target is {}",
                    s.ring, target
                )));
            }
        }
        let mut powers: Vec<Vec<Poly>> = substitution
            .iter()
            .map(|p| vec![Poly::one(target), p.clone()])
            .collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &substitution[v];
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Reinterprets this polynomial in `target`, sending variable `v` to the
    /// target variable `index_map[v]`. Used to lift charts into the tangent
    /// ring and ideals into the Rabinowitsch ring.
    pub fn map_to_ring(&self, target: &Arc<PolyRing>, index_map: &[usize]) -> Poly {
        assert_eq!(index_map.len(), self.ring.num_vars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; target.num_vars()];
                for (v, &e) in m.0.iter().enumerate() {
                    exps[index_map[v]] = e;
                }
                (Monomial(exps), c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Exact division: returns `Some(q)` with `self = q * divisor`, or
    /// `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.assert_same_ring(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dm, dc) = divisor.leading().unwrap();
        let dc_inv = dc.inverse().unwrap();
        let mut work = self.clone();
        let mut quot_terms: Vec<(Monomial, GaussianRational)> = Vec::new();
        while let Some((lm, lc)) = work.leading() {
            if !dm.divides(lm) {
                return None;
            }
            let qm = dm.div_into(lm);
            let qc = lc * &dc_inv;
            work = &work - &divisor.mul_term(&qm, &qc);
            quot_terms.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, quot_terms))
    }

    fn monomial_string(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = &self.ring.variables()[v];
            if e == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: Self) -> Poly {
        self.assert_same_ring(rhs);
        // Merge two canonically sorted term lists.
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), rhs.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (Some((ma, _)), Some((mb, _))) => match ring.cmp_exponents(&ma.0, &mb.0) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Less => out.push(b.next().unwrap().clone()),
                    std::cmp::Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca + cb;
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        Poly {
            ring: Arc::clone(ring),
            terms: out,
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: Self) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Self) -> Poly {
        self.assert_same_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, GaussianRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let entry = acc.entry(m).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &(ca * cb);
            }
        }
        let mut terms: Vec<(Monomial, GaussianRational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| self.ring.cmp_exponents(&b.0, &a.0));
        Poly {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

macro_rules! forward_poly_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Self) -> Poly {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_poly_owned!(Add, add);
forward_poly_owned!(Sub, sub);
forward_poly_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Canonical text form in the CLI grammar; `parse` inverts it exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = self.monomial_string(m);
            let leading = k == 0;
            if !c.re().is_zero() && !c.im().is_zero() {
                // Mixed coefficients are always parenthesized.
                if !leading {
                    out.push_str(" + ");
                }
                out.push_str(&format!("({c})"));
                if !mono.is_empty() {
                    out.push('*');
                    out.push_str(&mono);
                }
                continue;
            }
            let (negative, abs_str, is_real_unit) = if c.im().is_zero() {
                let r = c.re();
                let a = r.abs();
                let s = if a.denom() == &num_bigint::BigInt::from(1) {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                (r.is_negative(), s, a == num_rational::BigRational::from_integer(1.into()))
            } else {
                let b = c.im();
                let a = b.abs();
                let s = if a == num_rational::BigRational::from_integer(1.into()) {
                    "i".to_string()
                } else if a.denom() == &num_bigint::BigInt::from(1) {
                    format!("{}*i", a.numer())
                } else {
                    format!("{}/{}*i", a.numer(), a.denom())
                };
                (b.is_negative(), s, false)
            };
            let body = if mono.is_empty() {
                abs_str
            } else if is_real_unit {
                mono.clone()
            } else {
                format!("{abs_str}*{mono}")
            };
            if leading {
                if negative {
                    // A bare "-x^2" would parse as (-x)^2 under the grammar,
                    // so spell out the coefficient when the first factor
                    // carries an exponent.
                    let first_exp = m.0.iter().find(|&&e| e > 0).copied().unwrap_or(0);
                    if is_real_unit && !mono.is_empty() && first_exp > 1 {
                        out.push_str(&format!("-1*{mono}"));
                    } else {
                        out.push('-');
                        out.push_str(&body);
                    }
                } else {
                    out.push_str(&body);
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
