//! Small vocabulary shared by the property checkers.

use serde::Serialize;

/// A concrete failure of a checked identity or implication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub clause: String,
    /// Element indices; `clause` says what they index.
    pub witness: Vec<usize>,
}

pub type Check = Result<(), Counterexample>;

pub fn ensure(cond: bool, clause: impl Into<String>, witness: impl Into<Vec<usize>>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(Counterexample {
            clause: clause.into(),
            witness: witness.into(),
        })
    }
}

/// Named truth values of the clauses of an equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthVector(pub Vec<(String, bool)>);

impl TruthVector {
    pub fn new(clauses: impl IntoIterator<Item = (impl Into<String>, bool)>) -> Self {
        TruthVector(clauses.into_iter().map(|(n, v)| (n.into(), v)).collect())
    }

    pub fn all_equal(&self) -> bool {
        self.0.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn value(&self, name: &str) -> Option<bool> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    /// The first pair of clauses whose values differ.
    pub fn mismatch(&self) -> Option<(&str, &str)> {
        self.0
            .windows(2)
            .find(|w| w[0].1 != w[1].1)
            .map(|w| (w[0].0.as_str(), w[1].0.as_str()))
    }
}

/// Result of a check that only applies under a theorem hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Conditional<T> {
    HypothesisNotMet { hypothesis: String },
    Evaluated { outcome: T },
}

impl<T> Conditional<T> {
    pub fn not_met(hypothesis: impl Into<String>) -> Self {
        Conditional::HypothesisNotMet {
            hypothesis: hypothesis.into(),
        }
    }

    pub fn evaluated(&self) -> Option<&T> {
        match self {
            Conditional::Evaluated { outcome } => Some(outcome),
            Conditional::HypothesisNotMet { .. } => None,
        }
    }
}
