//! Dense matrices of polynomials, with exact determinants and adjugates.
//!
//! Determinants come in two independent routes: cofactor (Laplace)
//! expansion for small matrices and the fraction-free Bareiss elimination
//! for larger ones. Both are public so tests can cross-check them against
//! each other on the same inputs.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::GaussianRational;
use crate::ring::PolyRing;

/// All k-subsets of {0, .., n-1} in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination, rightmost index first.
        let mut idx = k;
        while idx > 0 {
            idx -= 1;
            if current[idx] < n - (k - idx) {
                current[idx] += 1;
                for j in idx + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if idx == 0 {
                return out;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    /// Row-major entries, `rows * cols` of them.
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<PolyRing>, rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        for p in &data {
            if **p.ring() != **ring {
                return Err(Error::RingMismatch(format!(
                    "matrix entry in {} but matrix ring is {}",
                    p.ring(),
                    ring
                )));
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            rows,
            cols,
            data,
        })
    }

    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        Self {
            ring: Arc::clone(ring),
            rows,
            cols,
            data: vec![Poly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for k in 0..n {
            *m.at_mut(k, k) = Poly::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }

    /// Entry-wise evaluation at a point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<Vec<Vec<GaussianRational>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).evaluate(point)?);
            }
            out.push(row);
        }
        Ok(out)
    }

    fn validate_index_set(set: &[usize], bound: usize, axis: &str) -> Result<()> {
        for (k, &v) in set.iter().enumerate() {
            if v >= bound {
                return Err(Error::BadIndexSet(format!(
                    "{axis} index {v} out of range (size {bound})"
                )));
            }
            if k > 0 && set[k - 1] >= v {
                return Err(Error::BadIndexSet(format!(
                    "{axis} indices must be strictly increasing"
                )));
            }
        }
        Ok(())
    }

    /// Submatrix with the given rows and columns, both strictly increasing.
    pub fn submatrix(&self, row_set: &[usize], col_set: &[usize]) -> Result<PolyMatrix> {
        Self::validate_index_set(row_set, self.rows, "row")?;
        Self::validate_index_set(col_set, self.cols, "column")?;
        let mut data = Vec::with_capacity(row_set.len() * col_set.len());
        for &i in row_set {
            for &j in col_set {
                data.push(self.at(i, j).clone());
            }
        }
        PolyMatrix::new(&self.ring, row_set.len(), col_set.len(), data)
    }

    /// Matrix product; dimensions must agree.
    pub fn matmul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert!(
            *self.ring == *other.ring,
            "ring mismatch in matrix product"
        );
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.at(i, k) * other.at(k, j));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    /// Scales every entry by a polynomial.
    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix {
            ring: Arc::clone(&self.ring),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * p).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Determinant; cofactor expansion up to 3x3, Bareiss elimination above.
    pub fn determinant(&self) -> Result<Poly> {
        let n = self.require_square()?;
        if n <= 3 {
            self.determinant_laplace()
        } else {
            self.determinant_bareiss()
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant_laplace(&self) -> Result<Poly> {
        let n = self.require_square()?;
        Ok(self.laplace_rec(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>()))
    }

    fn laplace_rec(&self, rows: &[usize], cols: &[usize]) -> Poly {
        if rows.is_empty() {
            return Poly::one(&self.ring);
        }
        let mut acc = Poly::zero(&self.ring);
        let sub_rows: Vec<usize> = rows[1..].to_vec();
        for (k, &j) in cols.iter().enumerate() {
            let entry = self.at(rows[0], j);
            if entry.is_zero() {
                continue;
            }
            let mut sub_cols = cols.to_vec();
            sub_cols.remove(k);
            let minor = self.laplace_rec(&sub_rows, &sub_cols);
            let signed = if k % 2 == 0 { minor } else { -&minor };
            acc = &acc + &(entry * &signed);
        }
        acc
    }

    /// Determinant by fraction-free Bareiss elimination. Every division
    /// along the way is exact; a failed division signals a broken invariant
    /// and panics.
    pub fn determinant_bareiss(&self) -> Result<Poly> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = Poly::one(&self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // Pivot on a later row; a fully zero column kills the determinant.
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(Poly::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss elimination divides exactly");
                }
                m[i][k] = Poly::zero(&self.ring);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign_flip { -&det } else { det })
    }

    /// Adjugate (transposed cofactor matrix): `m * adjugate(m) = det(m) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        let n = self.require_square()?;
        let mut adj = PolyMatrix::zero(&self.ring, n, n);
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            let mut rows = all.clone();
            rows.remove(i);
            for j in 0..n {
                let mut cols = all.clone();
                cols.remove(j);
                let minor = self.submatrix(&rows, &cols)?.determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -&minor };
                *adj.at_mut(j, i) = cof;
            }
        }
        Ok(adj)
    }

    /// Determinants of all `size`-by-`size` submatrices, ordered
    /// lexicographically by (row set, column set). Size zero yields the
    /// single empty minor, 1.
    pub fn minors(&self, size: usize) -> Result<Vec<Poly>> {
        if size > self.rows.min(self.cols) {
            return Err(Error::MinorSizeOutOfRange {
                size,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for row_set in combinations(self.rows, size) {
            for col_set in combinations(self.cols, size) {
                out.push(self.submatrix(&row_set, &col_set)?.determinant()?);
            }
        }
        Ok(out)
    }
}
