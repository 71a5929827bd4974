//! Exact computation of the constructible zero locus of a section of a
//! coherent sheaf on affine space over Q(i).
//!
//! The pipeline: a module presentation — a polynomial matrix A with a lift
//! y of the section — is stratified by the rank of A. Each choice of ℓ
//! rows and ℓ columns contributes a locally closed cell D(f) ∩ V(I + J)
//! built from the submatrix determinant f, the ideal I of (ℓ+1)-minors and
//! an adjugate-based solvability ideal J; the zero locus is the finite
//! union of these cells. Emptiness of cells over C is decided exactly with
//! Groebner bases via radical membership, and every membership claim can
//! be cross-checked at rational points by an independent linear-algebra
//! rank oracle.
//!
//! On top of that sits a front end for variations of Hodge structure: from
//! chart-level connection data it assembles the linear system whose
//! solvability locus in the tangent bundle is the zero locus of the
//! infinitesimal invariant of a normal function, and hands it to the same
//! machinery.
//!
//! All arithmetic is exact (arbitrary-precision Gaussian rationals);
//! every computed object is canonical, so structural equality is
//! mathematical equality and serialized outputs are byte-reproducible.

pub mod constructible;
pub mod error;
pub mod groebner;
pub mod infinitesimal;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod sample;
pub mod zerolocus;

pub use constructible::{Cell, ConstructibleSet};
pub use error::{Error, Result};
pub use groebner::Ideal;
pub use infinitesimal::{
    chart_base_ring, quadric_example_checks, tangent_ring, ChartConnection, NamedCheck,
};
pub use matrix::PolyMatrix;
pub use parse::{parse_constant, parse_poly};
pub use poly::Poly;
pub use rational::GaussianRational;
pub use ring::{Monomial, MonomialOrder, PolyRing};
pub use sample::{oracle_equivalence_run, OracleReport};
pub use zerolocus::{ModulePresentation, StratumCertificate};
