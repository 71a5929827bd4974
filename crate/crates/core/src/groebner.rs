//! Ideals of Q(i)[x1..xn] with cached reduced Groebner bases.
//!
//! Buchberger's algorithm with the two classical pair-elimination
//! criteria (coprime leading monomials, chain criterion) and a pair queue
//! ordered by the total degree of the pair's lcm. The reduced basis is
//! canonical for a fixed monomial order, so structural comparison of bases
//! decides ideal equality.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Monomial, PolyRing};

#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Poly>,
    /// Reduced Groebner basis, computed on first use. Racing initializers
    /// produce identical values, so a lost race is harmless.
    basis: OnceLock<Vec<Poly>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.generators == other.generators
    }
}

impl Eq for Ideal {}

impl Ideal {
    /// Builds an ideal from generators; zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Poly>) -> Result<Self> {
        for g in &generators {
            if **g.ring() != **ring {
                return Err(Error::RingMismatch(format!(
                    "generator in {} but ideal ring is {}",
                    g.ring(),
                    ring
                )));
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            generators: Vec::new(),
            basis: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Sum of ideals: concatenated generators, structurally deduplicated.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert!(*self.ring == *other.ring, "ring mismatch in ideal sum");
        let mut gens = self.generators.clone();
        for g in &other.generators {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        Ideal {
            ring: Arc::clone(&self.ring),
            generators: gens,
            basis: OnceLock::new(),
        }
    }

    /// The reduced Groebner basis: monic elements, no monomial of any
    /// element divisible by another element's leading monomial, sorted
    /// descending by leading monomial. Unique for a fixed order, hence
    /// structurally comparable.
    pub fn groebner_basis(&self) -> &[Poly] {
        self.basis
            .get_or_init(|| reduced_groebner(&self.ring, &self.generators))
    }

    /// Canonical remainder of `p` modulo the reduced basis.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert!(**p.ring() == *self.ring, "ring mismatch in normal form");
        reduce(p, self.groebner_basis())
    }

    /// Exact ideal membership.
    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_trivial(&self) -> bool {
        let basis = self.groebner_basis();
        basis.len() == 1 && basis[0].is_one()
    }

    /// Mathematical equality, decided by comparing reduced bases.
    pub fn equivalent(&self, other: &Ideal) -> bool {
        *self.ring == *other.ring && self.groebner_basis() == other.groebner_basis()
    }

    /// Radical membership via the Rabinowitsch trick: `f` lies in the
    /// radical iff 1 is in the extended ideal `I + <1 - t*f>`, where `t` is
    /// a fresh variable appended after all existing ones.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        assert!(**f.ring() == *self.ring, "ring mismatch in radical test");
        if f.is_zero() {
            return true;
        }
        // A nonzero constant is a unit: it lies in the radical exactly
        // when the ideal is the whole ring. Skips the ring extension.
        if f.is_constant() {
            return self.is_trivial();
        }
        let ext = self.ring.extended("t");
        let index_map: Vec<usize> = (0..self.ring.num_vars()).collect();
        let mut gens: Vec<Poly> = self
            .generators
            .iter()
            .map(|g| g.map_to_ring(&ext, &index_map))
            .collect();
        let t = Poly::variable(&ext, ext.num_vars() - 1);
        let f_ext = f.map_to_ring(&ext, &index_map);
        gens.push(&Poly::one(&ext) - &(&t * &f_ext));
        Ideal::new(&ext, gens).expect("generators live in extension").is_trivial()
    }
}

/// Division algorithm: remainder of `p` on division by `divisors`, taking
/// the first divisor whose leading monomial divides the working leading
/// monomial. Against a Groebner basis the remainder is independent of that
/// choice.
fn reduce(p: &Poly, divisors: &[Poly]) -> Poly {
    let ring = p.ring();
    let mut work = p.clone();
    let mut remainder_terms: Vec<(Monomial, crate::rational::GaussianRational)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.leading() {
        for d in divisors {
            let (dm, dc) = d.leading().expect("divisors are nonzero");
            if dm.divides(lm) {
                let qm = dm.div_into(lm);
                let qc = lc * &dc.inverse().expect("nonzero leading coefficient");
                work = &work - &d.mul_term(&qm, &qc);
                continue 'outer;
            }
        }
        // Leading term is irreducible; move it to the remainder.
        let lt = Poly::from_terms(ring, vec![(lm.clone(), lc.clone())]);
        remainder_terms.push((lm.clone(), lc.clone()));
        work = &work - &lt;
    }
    Poly::from_terms(ring, remainder_terms)
}

/// Reduces only while the leading term is divisible; the tail is left
/// alone. Enough for Buchberger's loop (a head-irreducible nonzero result
/// enlarges the basis) and much cheaper than a full normal form.
fn head_reduce(p: &Poly, divisors: &[Poly]) -> Poly {
    let mut work = p.clone();
    'outer: while let Some((lm, lc)) = work.leading() {
        for d in divisors {
            let (dm, dc) = d.leading().expect("divisors are nonzero");
            if dm.divides(lm) {
                let qm = dm.div_into(lm);
                let qc = lc * &dc.inverse().expect("nonzero leading coefficient");
                work = &work - &d.mul_term(&qm, &qc);
                continue 'outer;
            }
        }
        break;
    }
    work
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let lcm = fm.lcm(gm);
    let uf = fm.div_into(&lcm);
    let ug = gm.div_into(&lcm);
    let a = f.mul_term(&uf, &fc.inverse().expect("nonzero leading coefficient"));
    let b = g.mul_term(&ug, &gc.inverse().expect("nonzero leading coefficient"));
    &a - &b
}

/// A queued S-pair: ordered by total degree of the leading-monomial lcm,
/// ties broken by insertion index.
type PairKey = (u64, u64);

fn buchberger(generators: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    // A nonzero constant generator makes the ideal the whole ring.
    if let Some(c) = basis.iter().find(|g| g.is_constant()) {
        return vec![Poly::one(c.ring())];
    }
    let mut queue: BinaryHeap<Reverse<(PairKey, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut counter: u64 = 0;

    let lm = |basis: &[Poly], k: usize| -> Monomial {
        basis[k].leading().expect("basis elements are nonzero").0.clone()
    };

    let mut push_pair = |queue: &mut BinaryHeap<Reverse<(PairKey, usize, usize)>>,
                         pending: &mut HashSet<(usize, usize)>,
                         basis: &[Poly],
                         i: usize,
                         j: usize| {
        let degree = lm(basis, i).lcm(&lm(basis, j)).total_degree();
        queue.push(Reverse(((degree, counter), i, j)));
        pending.insert((i, j));
        counter += 1;
    };

    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&mut queue, &mut pending, &basis, i, j);
        }
    }

    while let Some(Reverse((_, i, j))) = queue.pop() {
        pending.remove(&(i, j));
        let lmi = lm(&basis, i);
        let lmj = lm(&basis, j);
        // First criterion: coprime leading monomials reduce to zero.
        if lmi.coprime(&lmj) {
            continue;
        }
        // Chain criterion: some other element divides the lcm and both of
        // its pairs with i and j have already been handled.
        let lcm_ij = lmi.lcm(&lmj);
        let chained = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let pair = |a: usize, b: usize| (a.min(b), a.max(b));
            lm(&basis, k).divides(&lcm_ij)
                && !pending.contains(&pair(i, k))
                && !pending.contains(&pair(j, k))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = head_reduce(&s, &basis);
        if !r.is_zero() {
            // A constant remainder certifies the whole ring at once.
            if r.is_constant() {
                return vec![Poly::one(r.ring())];
            }
            basis.push(r);
            let new = basis.len() - 1;
            for k in 0..new {
                push_pair(&mut queue, &mut pending, &basis, k, new);
            }
        }
    }
    basis
}

/// Reduces a Buchberger basis to the canonical reduced basis.
fn reduced_groebner(ring: &Arc<PolyRing>, generators: &[Poly]) -> Vec<Poly> {
    let raw = buchberger(generators);
    if raw.is_empty() {
        return Vec::new();
    }
    // Minimalize: drop elements whose leading monomial another element's
    // leading monomial divides.
    let mut keep = vec![true; raw.len()];
    for a in 0..raw.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..raw.len() {
            if a == b || !keep[b] {
                continue;
            }
            let lma = raw[a].leading().unwrap().0;
            let lmb = raw[b].leading().unwrap().0;
            if lmb.divides(lma) && !(lma == lmb && b > a) {
                keep[a] = false;
                break;
            }
        }
    }
    let minimal: Vec<Poly> = raw
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Tail-reduce each element against the others and normalize.
    let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
    for a in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(b, g)| if b == a { None } else { Some(g.clone()) })
            .collect();
        let r = reduce(&minimal[a], &others);
        debug_assert!(!r.is_zero(), "minimal basis element reduced to zero");
        reduced.push(r.monic());
    }
    reduced.sort_by(|p, q| {
        let pm = p.leading().unwrap().0;
        let qm = q.leading().unwrap().0;
        ring.cmp_exponents(&qm.0, &pm.0)
    });
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::MonomialOrder;

    fn ring_xy() -> Arc<PolyRing> {
        PolyRing::new(vec!["x", "y"]).unwrap()
    }

    fn ideal(ring: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        let gens = gens.iter().map(|s| parse_poly(s, ring).unwrap()).collect();
        Ideal::new(ring, gens).unwrap()
    }

    #[test]
    fn basis_of_coordinate_ideal() {
        let ring = ring_xy();
        let i = ideal(&ring, &["x", "y"]);
        let basis = i.groebner_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], parse_poly("x", &ring).unwrap());
        assert_eq!(basis[1], parse_poly("y", &ring).unwrap());
    }

    #[test]
    fn membership_backed_by_cofactor_identity() {
        let ring = ring_xy();
        let g1 = parse_poly("x^2 + y^2", &ring).unwrap();
        let g2 = parse_poly("x*y", &ring).unwrap();
        let x = parse_poly("x", &ring).unwrap();
        let y = parse_poly("y", &ring).unwrap();
        // Explicit cofactors: x^3 = x*(x^2+y^2) - y*(x*y).
        let x_cubed = parse_poly("x^3", &ring).unwrap();
        assert_eq!(&(&x * &g1) - &(&y * &g2), x_cubed);
        let i = Ideal::new(&ring, vec![g1.clone(), g2.clone()]).unwrap();
        assert!(i.contains(&x_cubed));
        // y^3 = y*(x^2+y^2) - x*(x*y).
        let y_cubed = parse_poly("y^3", &ring).unwrap();
        assert_eq!(&(&y * &g1) - &(&x * &g2), y_cubed);
        assert!(i.contains(&y_cubed));
        // x^2 alone is not a member: its normal form is nonzero.
        let x_sq = parse_poly("x^2", &ring).unwrap();
        assert!(!i.contains(&x_sq));
        assert_eq!(i.normal_form(&x_sq), parse_poly("0 - y^2", &ring).unwrap());
    }

    #[test]
    fn known_reduced_basis() {
        let ring = ring_xy();
        let i = ideal(&ring, &["x^2 + y^2", "x*y"]);
        let basis = i.groebner_basis();
        let expect: Vec<Poly> = ["y^3", "x^2 + y^2", "x*y"]
            .iter()
            .map(|s| parse_poly(s, &ring).unwrap())
            .collect();
        assert_eq!(basis, expect.as_slice());
    }

    #[test]
    fn trivial_ideal_detected() {
        let ring = PolyRing::new(vec!["x", "t"]).unwrap();
        let i = ideal(&ring, &["1 - t*x", "x"]);
        assert!(i.is_trivial());
        assert_eq!(i.groebner_basis(), &[Poly::one(&ring)]);
    }

    #[test]
    fn zero_ideal_behaviour() {
        let ring = ring_xy();
        let z = Ideal::zero(&ring);
        assert!(z.groebner_basis().is_empty());
        assert!(!z.is_trivial());
        let x = parse_poly("x", &ring).unwrap();
        assert!(!z.contains(&x));
        assert_eq!(z.normal_form(&x), x);
        assert!(!z.radical_contains(&x));
        assert!(z.radical_contains(&Poly::zero(&ring)));
        // Dropping zero generators canonicalizes <0> to <>.
        let z2 = Ideal::new(&ring, vec![Poly::zero(&ring)]).unwrap();
        assert_eq!(z, z2);
    }

    #[test]
    fn radical_membership_examples() {
        let ring = ring_xy();
        let i = ideal(&ring, &["x^2"]);
        let x = parse_poly("x", &ring).unwrap();
        let xy = parse_poly("x + y", &ring).unwrap();
        assert!(i.radical_contains(&x));
        assert!(!i.contains(&x));
        assert!(!i.radical_contains(&xy));

        let j = ideal(&ring, &["x^2*y^2"]);
        assert!(j.radical_contains(&parse_poly("x*y", &ring).unwrap()));
        assert!(!j.radical_contains(&x));
    }

    #[test]
    fn radical_with_existing_t_variable() {
        // The fresh Rabinowitsch variable must dodge a user variable named t.
        let ring = PolyRing::new(vec!["t"]).unwrap();
        let i = ideal(&ring, &["t^3"]);
        assert!(i.radical_contains(&parse_poly("t", &ring).unwrap()));
        assert!(!i.radical_contains(&parse_poly("t + 1", &ring).unwrap()));
    }

    #[test]
    fn s_pairs_of_basis_reduce_to_zero() {
        let ring = ring_xy();
        let i = ideal(&ring, &["x^2 + y^2", "x*y", "x^3 - y"]);
        let basis = i.groebner_basis();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let s = s_polynomial(&basis[a], &basis[b]);
                assert!(reduce(&s, basis).is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent() {
        let ring = ring_xy();
        let i = ideal(&ring, &["x^2 + y^2", "x*y"]);
        let p = parse_poly("x^3 + x^2 + x + 1", &ring).unwrap();
        let nf = i.normal_form(&p);
        assert_eq!(i.normal_form(&nf), nf);
        assert!(i.contains(&(&p - &nf)));
    }

    #[test]
    fn basis_independent_of_generator_order() {
        let ring = ring_xy();
        let a = ideal(&ring, &["x^2 + y^2", "x*y", "y^3 - x"]);
        let b = ideal(&ring, &["y^3 - x", "x^2 + y^2", "x*y"]);
        let c = ideal(&ring, &["x*y", "y^3 - x", "x^2 + y^2"]);
        assert_eq!(a.groebner_basis(), b.groebner_basis());
        assert_eq!(b.groebner_basis(), c.groebner_basis());
    }

    #[test]
    fn equivalent_ideals_with_different_generators() {
        let ring = ring_xy();
        let a = ideal(&ring, &["x", "y"]);
        let b = ideal(&ring, &["x + y", "y"]);
        assert!(a.equivalent(&b));
        assert_ne!(a, b);
        let c = ideal(&ring, &["x"]);
        assert!(!a.equivalent(&c));
    }

    #[test]
    fn ideal_sum_deduplicates() {
        let ring = ring_xy();
        let a = ideal(&ring, &["x", "y"]);
        let b = ideal(&ring, &["y", "x^2"]);
        let s = a.sum(&b);
        let expect: Vec<Poly> = ["x", "y", "x^2"]
            .iter()
            .map(|t| parse_poly(t, &ring).unwrap())
            .collect();
        assert_eq!(s.generators(), expect.as_slice());
    }

    #[test]
    fn lex_order_basis() {
        let ring = PolyRing::with_order(vec!["x", "y"], MonomialOrder::Lex).unwrap();
        let i = ideal(&ring, &["x^2 - y", "y - 1"]);
        let basis = i.groebner_basis();
        let expect: Vec<Poly> = ["x^2 - 1", "y - 1"]
            .iter()
            .map(|s| parse_poly(s, &ring).unwrap())
            .collect();
        assert_eq!(basis, expect.as_slice());
    }
}
