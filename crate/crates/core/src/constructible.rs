//! Constructible subsets of affine space over Q(i).
//!
//! A [`Cell`] is a locally closed set D(f) ∩ V(I): the points where f does
//! not vanish and every generator of I does. A [`ConstructibleSet`] is a
//! finite union of cells. Emptiness of a cell over the complex numbers is
//! decided exactly by radical membership: D(f) ∩ V(I) = ∅ iff f ∈ √I.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::rational::GaussianRational;
use crate::ring::PolyRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    f: Poly,
    ideal: Ideal,
}

impl Cell {
    /// D(f) ∩ V(ideal). The open part must be nonzero: D(0) is empty and
    /// is represented by omitting the cell altogether.
    pub fn new(f: Poly, ideal: Ideal) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidInput(
                "cell open part must be a nonzero polynomial".to_string(),
            ));
        }
        if **f.ring() != **ideal.ring() {
            return Err(Error::RingMismatch(format!(
                "cell open part in {} but ideal in {}",
                f.ring(),
                ideal.ring()
            )));
        }
        Ok(Self { f, ideal })
    }

    /// D(1) ∩ V(0), the whole space.
    pub fn whole_space(ring: &Arc<PolyRing>) -> Self {
        Self {
            f: Poly::one(ring),
            ideal: Ideal::zero(ring),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.f.ring()
    }

    pub fn open_part(&self) -> &Poly {
        &self.f
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Literal membership: f(point) ≠ 0 and every generator vanishes.
    pub fn contains_point(&self, point: &[GaussianRational]) -> Result<bool> {
        if self.f.evaluate(point)?.is_zero() {
            return Ok(false);
        }
        for g in self.ideal.generators() {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Emptiness over the complex numbers: f ∈ √(ideal).
    pub fn is_empty(&self) -> bool {
        self.ideal.radical_contains(&self.f)
    }

    /// D(f₁)∩V(I₁) ∩ D(f₂)∩V(I₂) = D(f₁·f₂) ∩ V(I₁ + I₂).
    pub fn intersect(&self, other: &Cell) -> Result<Cell> {
        if **self.ring() != **other.ring() {
            return Err(Error::RingMismatch(format!(
                "cell intersection across {} and {}",
                self.ring(),
                other.ring()
            )));
        }
        Cell::new(&self.f * &other.f, self.ideal.sum(&other.ideal))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleSet {
    ring: Arc<PolyRing>,
    cells: Vec<Cell>,
}

impl ConstructibleSet {
    pub fn new(ring: &Arc<PolyRing>, cells: Vec<Cell>) -> Result<Self> {
        for c in &cells {
            if **c.ring() != **ring {
                return Err(Error::RingMismatch(format!(
                    "cell over {} in a set over {}",
                    c.ring(),
                    ring
                )));
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            cells,
        })
    }

    pub fn empty(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            cells: Vec::new(),
        }
    }

    pub fn whole_space(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            cells: vec![Cell::whole_space(ring)],
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// A point is in the set iff it is in at least one cell.
    pub fn contains_point(&self, point: &[GaussianRational]) -> Result<bool> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.num_vars(),
                got: point.len(),
            });
        }
        for c in &self.cells {
            if c.contains_point(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Concatenates the cell lists, dropping structural duplicates
    /// (first occurrence wins).
    pub fn union(&self, other: &ConstructibleSet) -> Result<ConstructibleSet> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch(format!(
                "union across {} and {}",
                self.ring, other.ring
            )));
        }
        let mut cells: Vec<Cell> = Vec::with_capacity(self.cells.len() + other.cells.len());
        for c in self.cells.iter().chain(other.cells.iter()) {
            if !cells.contains(c) {
                cells.push(c.clone());
            }
        }
        Ok(ConstructibleSet {
            ring: Arc::clone(&self.ring),
            cells,
        })
    }

    /// Removes cells that are empty over the complex numbers; the
    /// remaining cells keep their order. Membership at every point is
    /// unchanged.
    pub fn prune(&self) -> ConstructibleSet {
        ConstructibleSet {
            ring: Arc::clone(&self.ring),
            cells: self.cells.iter().filter(|c| !c.is_empty()).cloned().collect(),
        }
    }

    /// Serializes to the wire form: variable names plus cells as
    /// polynomial strings in the expression grammar.
    pub fn to_json_string(&self) -> String {
        let wire = SetWire {
            variables: self.ring.variables().to_vec(),
            cells: self
                .cells
                .iter()
                .map(|c| CellWire {
                    f: c.f.to_string(),
                    ideal: c.ideal.generators().iter().map(Poly::to_string).collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses the wire form. The ring is rebuilt from the variable list
    /// with the default monomial order.
    pub fn from_json_str(text: &str) -> Result<ConstructibleSet> {
        let wire: SetWire = serde_json::from_str(text)?;
        let ring = PolyRing::new(wire.variables)?;
        let mut cells = Vec::with_capacity(wire.cells.len());
        for cw in wire.cells {
            let f = parse_poly(&cw.f, &ring)?;
            let gens = cw
                .ideal
                .iter()
                .map(|s| parse_poly(s, &ring))
                .collect::<Result<Vec<Poly>>>()?;
            cells.push(Cell::new(f, Ideal::new(&ring, gens)?)?);
        }
        ConstructibleSet::new(&ring, cells)
    }
}

#[derive(Serialize, Deserialize)]
struct CellWire {
    f: String,
    ideal: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SetWire {
    variables: Vec<String>,
    cells: Vec<CellWire>,
}
