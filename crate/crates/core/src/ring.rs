//! Polynomial rings over Q(i): named variables plus a monomial order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Monomial order used for canonical term sorting and Gröbner bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default).
    GrevLex,
    /// Pure lexicographic.
    Lex,
}

/// A polynomial ring Q(i)[x₁,…,xₙ] with a fixed monomial order.
///
/// Rings are compared by value (variable list and order), so two rings built
/// independently with the same data are interchangeable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    variables: Vec<String>,
    order: MonomialOrder,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// Builds a ring with the given variables under grevlex.
    pub fn new<S: Into<String>>(variables: Vec<S>) -> Result<Arc<Self>> {
        Self::with_order(variables, MonomialOrder::GrevLex)
    }

    /// Builds a ring with an explicit monomial order.
    ///
    /// Variable names must be distinct identifiers; `i` is the imaginary
    /// unit and is rejected as a variable name.
    pub fn with_order<S: Into<String>>(
        variables: Vec<S>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (k, name) in variables.iter().enumerate() {
            if name == "i" {
                return Err(Error::BadVariableName {
                    name: name.clone(),
                    reason: "'i' is reserved for the imaginary unit".into(),
                });
            }
            if !is_identifier(name) {
                return Err(Error::BadVariableName {
                    name: name.clone(),
                    reason: "not a valid identifier".into(),
                });
            }
            if variables[..k].contains(name) {
                return Err(Error::BadVariableName {
                    name: name.clone(),
                    reason: "duplicate variable".into(),
                });
            }
        }
        Ok(Arc::new(Self { variables, order }))
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Ring with one extra variable appended last, same order. The fresh
    /// variable name is derived from `hint` and made collision-free.
    pub fn extended(&self, hint: &str) -> Arc<Self> {
        let mut name = hint.to_string();
        let mut k = 0usize;
        while self.variables.iter().any(|v| v == &name) {
            name = format!("{hint}{k}");
            k += 1;
        }
        let mut variables = self.variables.clone();
        variables.push(name);
        Arc::new(Self {
            variables,
            order: self.order,
        })
    }

    /// Compares exponent vectors under this ring's order.
    pub fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self.order {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Equal total degree: the last nonzero entry of a - b decides,
                // reversed (smaller trailing exponent is larger).
                for (x, y) in a.iter().zip(b.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i)[{}]", self.variables.join(", "))
    }
}

/// An exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial degree overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn div_into(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}
