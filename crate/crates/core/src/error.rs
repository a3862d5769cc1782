use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Named axioms checked by the validating constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    MulAssociative,
    MulCommutative,
    MulIdentity,
    Distributive,
    /// Commutative monoid `(M, +, 0_M)`.
    Monoid,
    /// `m + (x ∨ y) = (m + x) ∨ (m + y)`.
    S,
    /// `r(m1 + m2) = r m1 + r m2`.
    M1,
    /// `(r1 + r2) m ≤ r1 m + r2 m`.
    M2,
    /// `(r1 r2) m = r1 (r2 m)`.
    M3,
    /// `1 m = m`, `0_R m = 0_M`, `r 0_M = 0_M`.
    M4,
    /// `r (x ∨ y) = r x ∨ r y`.
    M5,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::AddAssociative => "add-associative",
            Axiom::AddCommutative => "add-commutative",
            Axiom::AddIdentity => "add-identity",
            Axiom::AddInverse => "add-inverse",
            Axiom::MulAssociative => "mul-associative",
            Axiom::MulCommutative => "mul-commutative",
            Axiom::MulIdentity => "mul-identity",
            Axiom::Distributive => "distributive",
            Axiom::Monoid => "monoid",
            Axiom::S => "S",
            Axiom::M1 => "M1",
            Axiom::M2 => "M2",
            Axiom::M3 => "M3",
            Axiom::M4 => "M4",
            Axiom::M5 => "M5",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },

    #[error("finite module axiom {axiom} violated at {witness:?}")]
    ModuleAxiomViolation { axiom: Axiom, witness: Vec<usize> },

    #[error("the zero ring is not supported")]
    ZeroRing,

    #[error("malformed table `{table}`: {reason}")]
    InvalidTable { table: String, reason: String },

    #[error("ideal is not proper")]
    ImproperIdeal,

    #[error("subset is not an ideal")]
    NotAnIdeal,

    #[error("ideal is not prime")]
    NotPrimeIdeal,

    #[error("operation over an empty family")]
    EmptyFamily,

    #[error("order relation is not a partial order: {property} fails at {witness:?}")]
    NotAPoset {
        property: &'static str,
        witness: Vec<usize>,
    },

    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("order has no top or no bottom element")]
    Unbounded,

    #[error("annihilator is the whole ring; the spectrum is empty")]
    DegenerateModule,

    #[error("the prime spectrum is empty")]
    EmptySpectrum,

    #[error("closed-set family is not closed under {0}")]
    TopologyAxiomViolation(&'static str),

    #[error("module is not a top le-module; the quasi-Zariski topology does not exist")]
    NotTopLeModule,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn table(table: &str, reason: impl Into<String>) -> Self {
        Error::InvalidTable {
            table: table.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
