//! The zero locus of a section of a coherent sheaf, as a constructible set.
//!
//! Input: a presentation matrix A (p × q) over R = Q(i)[x₁..x_n] together
//! with a lift y ∈ R^p of the section. At a point, the section vanishes
//! exactly when y lands in the column span of A over the residue field.
//! The locus is stratified by the rank ℓ of A: for every choice of ℓ rows
//! S and ℓ columns T, the stratum contributes the cell
//!
//!   D(f) ∩ V(I + J),   f = det A[S,T],
//!
//! where I is the ideal of all (ℓ+1)-minors of A (so rank ≤ ℓ holds on
//! V(I)) and J expresses "y lies in the span of the T-columns". J is
//! produced without leaving R: with B = A[S,T] and C = A[·,T]·adj(B) —
//! so that C[S,·] = f·Id — each row i outside S contributes
//!
//!   gᵢ = f·yᵢ − Σ_{k=1..ℓ} C[i,k]·y_{s_k}.
//!
//! On D(f) the factor f is a unit, so V-membership matches the localized
//! column reduction exactly. The independent check is `solvable_at_point`,
//! which decides y ∈ span A at a given point by exact Gaussian elimination.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructible::{Cell, ConstructibleSet};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::matrix::{combinations, PolyMatrix};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::rational::GaussianRational;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation {
    ring: Arc<PolyRing>,
    a: PolyMatrix,
    y: Vec<Poly>,
}

impl ModulePresentation {
    /// A presentation matrix with p ≥ 1 rows (q = 0 columns is allowed and
    /// describes a free module) and a lift y of length p.
    pub fn new(a: PolyMatrix, y: Vec<Poly>) -> Result<Self> {
        if a.rows() == 0 {
            return Err(Error::InvalidInput(
                "presentation matrix needs at least one row".to_string(),
            ));
        }
        if y.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: y.len(),
            });
        }
        let ring = Arc::clone(a.ring());
        for c in &y {
            if **c.ring() != *ring {
                return Err(Error::RingMismatch(format!(
                    "section component in {} but matrix over {}",
                    c.ring(),
                    ring
                )));
            }
        }
        Ok(Self { ring, a, y })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn section(&self) -> &[Poly] {
        &self.y
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// The certificate of one stratum, from row set S and column set T of
    /// equal size ℓ (both strictly increasing).
    pub fn stratum(&self, s: &[usize], t: &[usize]) -> Result<StratumCertificate> {
        if s.len() != t.len() {
            return Err(Error::BadIndexSet(format!(
                "row set has size {} but column set has size {}",
                s.len(),
                t.len()
            )));
        }
        let level = s.len();
        let b = self.a.submatrix(s, t)?;
        let f = b.determinant()?;
        let rank_ideal = if level == self.rows().min(self.cols()) {
            Ideal::zero(&self.ring)
        } else {
            Ideal::new(&self.ring, self.a.minors(level + 1)?)?
        };
        // C = A[·,T] · adj(B) satisfies C[S,·] = f·Id, so on D(f) the
        // T-columns can be combined to clear the S-rows of y.
        let all_rows: Vec<usize> = (0..self.rows()).collect();
        let c = self.a.submatrix(&all_rows, t)?.matmul(&b.adjugate()?);
        let mut span_generators = Vec::with_capacity(self.rows() - level);
        for i in 0..self.rows() {
            if s.contains(&i) {
                continue;
            }
            let mut g = &f * &self.y[i];
            for (k, &sk) in s.iter().enumerate() {
                g = &g - &(c.at(i, k) * &self.y[sk]);
            }
            span_generators.push(g);
        }
        let span_ideal = Ideal::new(&self.ring, span_generators.clone())?;
        Ok(StratumCertificate {
            level,
            rows: s.to_vec(),
            cols: t.to_vec(),
            f,
            rank_ideal,
            span_generators,
            span_ideal,
        })
    }

    /// The zero locus as a constructible set: the union of the cells
    /// D(f) ∩ V(I + J) over all ℓ in [0, min(p,q)] and all (S, T), emitted
    /// with ℓ ascending and (S, T) lexicographic. Strata whose submatrix
    /// determinant is identically zero contribute the empty set D(0) and
    /// are omitted. With `prune`, cells empty over C are removed.
    pub fn zero_locus(&self, prune: bool) -> ConstructibleSet {
        let mut cells = Vec::new();
        for level in 0..=self.rows().min(self.cols()) {
            for s in combinations(self.rows(), level) {
                for t in combinations(self.cols(), level) {
                    let cert = self
                        .stratum(&s, &t)
                        .expect("enumerated index sets are valid");
                    if cert.f.is_zero() {
                        continue;
                    }
                    let ideal = cert.rank_ideal.sum(&cert.span_ideal);
                    cells.push(Cell::new(cert.f, ideal).expect("nonzero open part"));
                }
            }
        }
        let set = ConstructibleSet::new(&self.ring, cells).expect("cells share the ring");
        if prune {
            set.prune()
        } else {
            set
        }
    }

    /// Independent oracle: does y(pt) lie in the column span of A(pt)?
    /// Decided by comparing ranks of the plain and augmented matrices via
    /// exact Gaussian elimination over Q(i).
    pub fn solvable_at_point(&self, point: &[GaussianRational]) -> Result<bool> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.num_vars(),
                got: point.len(),
            });
        }
        let a_val = self.a.evaluate(point)?;
        let mut augmented = a_val.clone();
        for (row, yc) in augmented.iter_mut().zip(&self.y) {
            row.push(yc.evaluate(point)?);
        }
        Ok(rank(a_val) == rank(augmented))
    }

    pub fn to_json_string(&self) -> String {
        let a = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| self.a.at(i, j).to_string())
                    .collect()
            })
            .collect();
        let wire = PresentationWire {
            variables: self.ring.variables().to_vec(),
            a,
            y: self.y.iter().map(Poly::to_string).collect(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<ModulePresentation> {
        let wire: PresentationWire = serde_json::from_str(text)?;
        let ring = PolyRing::new(wire.variables)?;
        let rows = wire.a.len();
        if rows == 0 {
            return Err(Error::InvalidInput(
                "presentation matrix needs at least one row".to_string(),
            ));
        }
        let cols = wire.a[0].len();
        let mut data = Vec::with_capacity(rows * cols);
        for row in &wire.a {
            if row.len() != cols {
                return Err(Error::InvalidInput(
                    "presentation matrix rows have unequal lengths".to_string(),
                ));
            }
            for entry in row {
                data.push(parse_poly(entry, &ring)?);
            }
        }
        let a = PolyMatrix::new(&ring, rows, cols, data)?;
        let y = wire
            .y
            .iter()
            .map(|s| parse_poly(s, &ring))
            .collect::<Result<Vec<Poly>>>()?;
        ModulePresentation::new(a, y)
    }
}

/// Everything computed for one stratum (S, T).
#[derive(Clone, Debug)]
pub struct StratumCertificate {
    level: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// det A[S,T]; equals 1 when ℓ = 0.
    f: Poly,
    /// I: all (ℓ+1)-minors of the original A; the zero ideal at ℓ = min(p,q).
    rank_ideal: Ideal,
    /// Exactly p − ℓ generator expressions, one per row outside S, in row
    /// order. Zero expressions are kept here but dropped in `span_ideal`.
    span_generators: Vec<Poly>,
    /// J: the ideal the span generators generate.
    span_ideal: Ideal,
}

impl StratumCertificate {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn row_set(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_set(&self) -> &[usize] {
        &self.cols
    }

    pub fn open_part(&self) -> &Poly {
        &self.f
    }

    pub fn rank_ideal(&self) -> &Ideal {
        &self.rank_ideal
    }

    pub fn span_generators(&self) -> &[Poly] {
        &self.span_generators
    }

    pub fn span_ideal(&self) -> &Ideal {
        &self.span_ideal
    }
}

/// Rank of a matrix over Q(i) by Gaussian elimination with exact arithmetic.
// The elimination reads one row while mutating another, so indexed access
// is clearer than iterator plumbing here.
#[allow(clippy::needless_range_loop)]
fn rank(mut m: Vec<Vec<GaussianRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = m[rank][col].inverse().expect("nonzero pivot");
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for cidx in col..cols {
                let delta = &factor * &m[rank][cidx];
                m[r][cidx] = &m[r][cidx] - &delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[derive(Serialize, Deserialize)]
struct PresentationWire {
    variables: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    y: Vec<String>,
}
