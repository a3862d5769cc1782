//! Finite bounded lattices given by their order relation.

use crate::error::{Error, Result};

/// A finite bounded lattice on `0..size` with precomputed binary joins and meets.
///
/// Finite plus bounded plus binary joins and meets is the same as complete,
/// so no infinitary check is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBoundedLattice {
    size: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
    labels: Vec<String>,
}

impl FiniteBoundedLattice {
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<Self> {
        let size = leq.len();
        if size == 0 {
            return Err(Error::table("leq", "empty table"));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (i, row) in leq.iter().enumerate() {
            if row.len() != size {
                return Err(Error::table("leq", format!("row {i} has {} entries, expected {size}", row.len())));
            }
            flat.extend_from_slice(row);
        }
        let le = |a: usize, b: usize| flat[a * size + b];

        for a in 0..size {
            if !le(a, a) {
                return Err(Error::NotAPoset {
                    property: "reflexivity",
                    witness: vec![a],
                });
            }
        }
        for a in 0..size {
            for b in 0..size {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotAPoset {
                        property: "antisymmetry",
                        witness: vec![a, b],
                    });
                }
                for c in 0..size {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::NotAPoset {
                            property: "transitivity",
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }

        let top = (0..size).find(|&t| (0..size).all(|x| le(x, t))).ok_or(Error::Unbounded)?;
        let bottom = (0..size).find(|&b| (0..size).all(|x| le(b, x))).ok_or(Error::Unbounded)?;

        let mut join = vec![0; size * size];
        let mut meet = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let uppers: Vec<usize> = (0..size).filter(|&u| le(a, u) && le(b, u)).collect();
                join[a * size + b] = *uppers
                    .iter()
                    .find(|&&u| uppers.iter().all(|&v| le(u, v)))
                    .ok_or(Error::NotALattice(a, b, "least upper bound"))?;
                let lowers: Vec<usize> = (0..size).filter(|&l| le(l, a) && le(l, b)).collect();
                meet[a * size + b] = *lowers
                    .iter()
                    .find(|&&l| lowers.iter().all(|&v| le(v, l)))
                    .ok_or(Error::NotALattice(a, b, "greatest lower bound"))?;
            }
        }

        Ok(FiniteBoundedLattice {
            size,
            leq: flat,
            join,
            meet,
            top,
            bottom,
            labels: (0..size).map(|i| i.to_string()).collect(),
        })
    }

    /// Lattice of `0..n` under the usual order.
    pub fn chain(n: usize) -> Result<Self> {
        let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self::from_leq(&leq)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size, "one label per element");
        self.labels = labels;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    /// Join of a nonempty family.
    pub fn join(&self, family: impl IntoIterator<Item = usize>) -> Result<usize> {
        family.into_iter().reduce(|a, b| self.join2(a, b)).ok_or(Error::EmptyFamily)
    }

    /// Meet of a nonempty family.
    pub fn meet(&self, family: impl IntoIterator<Item = usize>) -> Result<usize> {
        family.into_iter().reduce(|a, b| self.meet2(a, b)).ok_or(Error::EmptyFamily)
    }

    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.size).map(<[bool]>::to_vec).collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
