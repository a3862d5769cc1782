//! Finite topological spaces described by their closed sets.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of points, identified by their labels.
pub type PointSet = BTreeSet<usize>;

/// A finite space. Points carry arbitrary `usize` labels; closed sets are
/// kept as a canonical sorted family so that equal topologies compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: PointSet,
    closed: BTreeSet<PointSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointSetProperties {
    pub t0: bool,
    pub t1: bool,
    pub connected: bool,
    /// Always true: a finite space has finitely many open sets.
    pub quasi_compact: bool,
    pub spectral: bool,
}

/// The clauses of the definition of a spectral space, evaluated separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpectralClauses {
    pub t0: bool,
    pub quasi_compact: bool,
    pub compact_opens_closed_under_intersection: bool,
    pub compact_opens_form_basis: bool,
    pub generic_points: bool,
}

impl SpectralClauses {
    pub fn holds(&self) -> bool {
        self.t0
            && self.quasi_compact
            && self.compact_opens_closed_under_intersection
            && self.compact_opens_form_basis
            && self.generic_points
    }
}

impl FiniteSpace {
    /// Validates that `closed` contains `∅` and the whole space and is closed
    /// under pairwise unions and intersections.
    pub fn new(points: PointSet, closed: BTreeSet<PointSet>) -> Result<Self> {
        if !closed.contains(&PointSet::new()) {
            return Err(Error::TopologyAxiomViolation("the empty set"));
        }
        if !closed.contains(&points) {
            return Err(Error::TopologyAxiomViolation("the whole space"));
        }
        if closed.iter().any(|c| !c.is_subset(&points)) {
            return Err(Error::TopologyAxiomViolation("subsets of the point set"));
        }
        for a in &closed {
            for b in &closed {
                if !closed.contains(&a.union(b).copied().collect::<PointSet>()) {
                    return Err(Error::TopologyAxiomViolation("finite unions"));
                }
                if !closed.contains(&a.intersection(b).copied().collect::<PointSet>()) {
                    return Err(Error::TopologyAxiomViolation("finite intersections"));
                }
            }
        }
        Ok(FiniteSpace { points, closed })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn closed_sets(&self) -> &BTreeSet<PointSet> {
        &self.closed
    }

    pub fn complement(&self, set: &PointSet) -> PointSet {
        self.points.difference(set).copied().collect()
    }

    pub fn open_sets(&self) -> BTreeSet<PointSet> {
        self.closed.iter().map(|c| self.complement(c)).collect()
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        self.closed.contains(set)
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        self.closed.contains(&self.complement(set))
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: &PointSet) -> PointSet {
        self.closed
            .iter()
            .filter(|c| set.is_subset(c))
            .min_by_key(|c| c.len())
            .cloned()
            .expect("the whole space is closed")
    }

    pub fn point_closure(&self, p: usize) -> PointSet {
        self.closure(&PointSet::from([p]))
    }

    /// Irreducible as a subspace: `set` is nonempty and not covered by two
    /// closed sets unless one of them already covers it.
    pub fn is_irreducible(&self, set: &PointSet) -> Result<bool> {
        if set.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let traces: BTreeSet<PointSet> = self
            .closed
            .iter()
            .map(|c| c.intersection(set).copied().collect())
            .collect();
        Ok(traces.iter().all(|a| {
            a == set
                || traces
                    .iter()
                    .all(|b| b == set || a.union(b).copied().collect::<PointSet>() != *set)
        }))
    }

    /// Irreducible components as the closures of points that are maximal
    /// among point closures.
    pub fn irreducible_components(&self) -> Vec<PointSet> {
        let closures: BTreeSet<PointSet> = self.points.iter().map(|&p| self.point_closure(p)).collect();
        closures
            .iter()
            .filter(|c| !closures.iter().any(|d| d != *c && c.is_subset(d)))
            .cloned()
            .collect()
    }

    /// Maximal irreducible subsets by scanning every subset. Exponential;
    /// intended for cross-checking on small spaces.
    pub fn irreducible_components_brute_force(&self) -> Vec<PointSet> {
        let pts: Vec<usize> = self.points.iter().copied().collect();
        assert!(pts.len() < 24, "brute-force component search on {} points", pts.len());
        let irreducible: Vec<PointSet> = (1u32..(1 << pts.len()))
            .map(|mask| {
                pts.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect::<PointSet>()
            })
            .filter(|s| self.is_irreducible(s).expect("nonempty"))
            .collect();
        let mut maximal: Vec<PointSet> = irreducible
            .iter()
            .filter(|s| !irreducible.iter().any(|t| t != *s && s.is_subset(t)))
            .cloned()
            .collect();
        maximal.sort();
        maximal
    }

    pub fn irreducible_closed_sets(&self) -> Vec<PointSet> {
        self.closed
            .iter()
            .filter(|c| !c.is_empty() && self.is_irreducible(c).expect("nonempty"))
            .cloned()
            .collect()
    }

    /// Points `y ∈ set` with `closure({y}) = set`.
    pub fn generic_points(&self, set: &PointSet) -> Result<Vec<usize>> {
        if set.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(set
            .iter()
            .copied()
            .filter(|&y| self.point_closure(y) == *set)
            .collect())
    }

    pub fn is_t0(&self) -> bool {
        let closures: Vec<PointSet> = self.points.iter().map(|&p| self.point_closure(p)).collect();
        let distinct: BTreeSet<&PointSet> = closures.iter().collect();
        distinct.len() == closures.len()
    }

    pub fn is_t1(&self) -> bool {
        self.points.iter().all(|&p| self.is_closed(&PointSet::from([p])))
    }

    /// No clopen set other than `∅` and the whole space.
    pub fn is_connected(&self) -> bool {
        self.closed
            .iter()
            .all(|c| c.is_empty() || *c == self.points || !self.is_open(c))
    }

    /// Smallest open set containing `p`.
    pub fn minimal_open_neighbourhood(&self, p: usize) -> PointSet {
        self.open_sets()
            .into_iter()
            .filter(|u| u.contains(&p))
            .min_by_key(|u| u.len())
            .expect("the whole space is open")
    }

    /// Extracts a finite subcover of `target` from `cover` by keeping, for each
    /// point, the first member containing it. `None` when `cover` does not
    /// cover `target`.
    pub fn finite_subcover(&self, target: &PointSet, cover: &[PointSet]) -> Option<Vec<usize>> {
        let mut chosen = BTreeSet::new();
        for p in target {
            chosen.insert(cover.iter().position(|u| u.contains(p))?);
        }
        Some(chosen.into_iter().collect())
    }

    /// Every open cover of `set` admits a finite subcover. The open-set family
    /// is finite, so every cover is finite; the check additionally confirms
    /// that the cover by all open sets reduces to at most one member per point.
    pub fn is_quasi_compact(&self, set: &PointSet) -> bool {
        let cover: Vec<PointSet> = self.open_sets().into_iter().collect();
        self.finite_subcover(set, &cover)
            .is_some_and(|sub| sub.len() <= set.len().max(1))
    }

    pub fn spectral_clauses(&self) -> SpectralClauses {
        let opens = self.open_sets();
        let compact_opens: Vec<&PointSet> = opens.iter().filter(|u| self.is_quasi_compact(u)).collect();
        let closed_under_intersection = compact_opens.iter().all(|a| {
            compact_opens.iter().all(|b| {
                let i: PointSet = a.intersection(b).copied().collect();
                compact_opens.contains(&&i)
            })
        });
        let basis = opens.iter().all(|u| {
            let union: PointSet = compact_opens
                .iter()
                .filter(|c| c.is_subset(u))
                .flat_map(|c| c.iter().copied())
                .collect();
            union == *u
        });
        let generic_points = self
            .irreducible_closed_sets()
            .iter()
            .all(|y| !self.generic_points(y).expect("nonempty").is_empty());
        SpectralClauses {
            t0: self.is_t0(),
            quasi_compact: self.is_quasi_compact(&self.points),
            compact_opens_closed_under_intersection: closed_under_intersection,
            compact_opens_form_basis: basis,
            generic_points,
        }
    }

    pub fn properties(&self) -> PointSetProperties {
        PointSetProperties {
            t0: self.is_t0(),
            t1: self.is_t1(),
            connected: self.is_connected(),
            quasi_compact: self.is_quasi_compact(&self.points),
            spectral: self.spectral_clauses().holds(),
        }
    }

    /// Pairs `(p, q)` with `p ≠ q` and `q ∈ closure({p})`.
    pub fn specialization_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for &p in &self.points {
            for q in self.point_closure(p) {
                if q != p {
                    edges.push((p, q));
                }
            }
        }
        edges
    }
}
