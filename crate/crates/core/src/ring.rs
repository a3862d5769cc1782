//! Finite commutative rings with unity given by Cayley tables.
//!
//! Elements are the indices `0..order`. Ideals are element sets validated
//! against the ring they came from; nothing here assumes two rings are
//! isomorphic unless a caller checks it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Axiom, Error, Result};

pub type ElemSet = BTreeSet<usize>;

/// An ideal of some [`FiniteRing`], stored as its member indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Ideal(ElemSet);

impl Ideal {
    pub(crate) fn from_set(members: ElemSet) -> Self {
        Ideal(members)
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn contains(&self, r: usize) -> bool {
        self.0.contains(&r)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Image under an element map, e.g. a quotient projection.
    pub fn image(&self, map: &[usize]) -> Ideal {
        Ideal(self.0.iter().map(|&r| map[r]).collect())
    }

    /// Preimage under an element map defined on `0..map.len()`.
    pub fn preimage(&self, map: &[usize]) -> Ideal {
        Ideal((0..map.len()).filter(|&r| self.0.contains(&map[r])).collect())
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// A finite commutative ring with `1 ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

fn flatten(name: &str, order: usize, rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    if rows.len() != order {
        return Err(Error::table(name, format!("expected {order} rows, got {}", rows.len())));
    }
    let mut flat = Vec::with_capacity(order * order);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != order {
            return Err(Error::table(name, format!("row {i} has {} entries, expected {order}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= order) {
            return Err(Error::table(name, format!("entry {bad} in row {i} is out of range")));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

fn violation(axiom: Axiom, witness: &[usize]) -> Error {
    Error::AxiomViolation {
        axiom,
        witness: witness.to_vec(),
    }
}

impl FiniteRing {
    /// Validates the tables and locates `0` and `1` by search.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self> {
        let order = add.len();
        if order == 0 {
            return Err(Error::table("add", "empty table"));
        }
        let add = flatten("add", order, add)?;
        let mul = flatten("mul", order, mul)?;
        if order == 1 {
            return Err(Error::ZeroRing);
        }
        let at = |t: &Vec<usize>, a: usize, b: usize| t[a * order + b];

        let elems = 0..order;
        for a in elems.clone() {
            for b in elems.clone() {
                if at(&add, a, b) != at(&add, b, a) {
                    return Err(violation(Axiom::AddCommutative, &[a, b]));
                }
            }
        }
        for a in elems.clone() {
            for b in elems.clone() {
                for c in elems.clone() {
                    if at(&add, at(&add, a, b), c) != at(&add, a, at(&add, b, c)) {
                        return Err(violation(Axiom::AddAssociative, &[a, b, c]));
                    }
                }
            }
        }
        let zero = elems
            .clone()
            .find(|&z| elems.clone().all(|x| at(&add, z, x) == x))
            .ok_or_else(|| violation(Axiom::AddIdentity, &[]))?;
        let mut neg = vec![0; order];
        for a in elems.clone() {
            neg[a] = elems
                .clone()
                .find(|&b| at(&add, a, b) == zero)
                .ok_or_else(|| violation(Axiom::AddInverse, &[a]))?;
        }

        for a in elems.clone() {
            for b in elems.clone() {
                if at(&mul, a, b) != at(&mul, b, a) {
                    return Err(violation(Axiom::MulCommutative, &[a, b]));
                }
            }
        }
        for a in elems.clone() {
            for b in elems.clone() {
                for c in elems.clone() {
                    if at(&mul, at(&mul, a, b), c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(violation(Axiom::MulAssociative, &[a, b, c]));
                    }
                    if at(&mul, a, at(&add, b, c)) != at(&add, at(&mul, a, b), at(&mul, a, c)) {
                        return Err(violation(Axiom::Distributive, &[a, b, c]));
                    }
                }
            }
        }
        let one = elems
            .clone()
            .find(|&u| elems.clone().all(|x| at(&mul, u, x) == x))
            .ok_or_else(|| violation(Axiom::MulIdentity, &[]))?;

        Ok(FiniteRing {
            order,
            add,
            mul,
            neg,
            zero,
            one,
        })
    }

    /// Integers modulo `n`.
    pub fn zn(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ZeroRing);
        }
        let add: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        Self::from_tables(&add, &mul)
    }

    /// Componentwise product; the pair `(a, b)` has index `a * right.order() + b`.
    pub fn product(left: &FiniteRing, right: &FiniteRing) -> FiniteRing {
        let m = right.order;
        let order = left.order * m;
        let mut add = Vec::with_capacity(order * order);
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let (a1, b1) = (x / m, x % m);
                let (a2, b2) = (y / m, y % m);
                add.push(left.add(a1, a2) * m + right.add(b1, b2));
                mul.push(left.mul(a1, a2) * m + right.mul(b1, b2));
            }
        }
        let neg = (0..order)
            .map(|x| left.neg(x / m) * m + right.neg(x % m))
            .collect();
        FiniteRing {
            order,
            add,
            mul,
            neg,
            zero: left.zero * m + right.zero,
            one: left.one * m + right.one,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_ideal(&self, subset: &ElemSet) -> bool {
        if !subset.contains(&self.zero) || subset.iter().any(|&a| a >= self.order) {
            return false;
        }
        subset.iter().all(|&a| {
            subset.iter().all(|&b| subset.contains(&self.add(a, b)))
                && self.elements().all(|r| subset.contains(&self.mul(r, a)))
        })
    }

    /// Validates `subset` as an ideal of this ring.
    pub fn ideal(&self, subset: impl IntoIterator<Item = usize>) -> Result<Ideal> {
        let set: ElemSet = subset.into_iter().collect();
        if self.is_ideal(&set) {
            Ok(Ideal(set))
        } else {
            Err(Error::NotAnIdeal)
        }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal(ElemSet::from([self.zero]))
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal(self.elements().collect())
    }

    /// Closure of a set under addition. Finite additive orders make this a
    /// subgroup as soon as it contains `0`.
    fn additive_closure(&self, mut set: ElemSet) -> ElemSet {
        set.insert(self.zero);
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for b in current {
                let s = self.add(a, b);
                if set.insert(s) {
                    frontier.push(s);
                }
            }
        }
        set
    }

    /// Smallest ideal containing `generators`.
    pub fn ideal_generated(&self, generators: impl IntoIterator<Item = usize>) -> Ideal {
        let mut seed = ElemSet::new();
        for g in generators {
            for r in self.elements() {
                seed.insert(self.mul(r, g));
            }
        }
        Ideal(self.additive_closure(seed))
    }

    pub fn principal(&self, r: usize) -> Ideal {
        self.ideal_generated([r])
    }

    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        Ideal(self.additive_closure(i.0.union(&j.0).copied().collect()))
    }

    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let products = i
            .0
            .iter()
            .flat_map(|&a| j.0.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.mul(a, b))
            .collect();
        Ideal(self.additive_closure(products))
    }

    pub fn ideal_intersection(&self, i: &Ideal, j: &Ideal) -> Ideal {
        Ideal(i.0.intersection(&j.0).copied().collect())
    }

    pub fn is_proper(&self, i: &Ideal) -> bool {
        !i.contains(self.one)
    }

    pub fn is_prime_ideal(&self, i: &Ideal) -> bool {
        self.is_proper(i)
            && self.elements().all(|a| {
                i.contains(a) || self.elements().all(|b| i.contains(b) || !i.contains(self.mul(a, b)))
            })
    }

    /// All ideals, ordered by size and then by members.
    ///
    /// Every ideal of a finite ring is a finite sum of principal ideals, so
    /// the k-generated ideals are grown one generator at a time until a
    /// round produces nothing new.
    pub fn ideals(&self) -> Vec<Ideal> {
        let principals: BTreeSet<Ideal> = self.elements().map(|r| self.principal(r)).collect();
        let mut all = principals.clone();
        let mut frontier: Vec<Ideal> = principals.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for i in &frontier {
                for p in &principals {
                    let s = self.ideal_sum(i, p);
                    if !all.contains(&s) {
                        all.insert(s.clone());
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
        let mut ideals: Vec<Ideal> = all.into_iter().collect();
        ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        ideals
    }

    pub fn spectrum(&self) -> RingSpectrum {
        RingSpectrum {
            points: self.ideals().into_iter().filter(|i| self.is_prime_ideal(i)).collect(),
        }
    }

    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        let proper: Vec<Ideal> = self.ideals().into_iter().filter(|i| self.is_proper(i)).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j != *i && i.is_subset(j)))
            .cloned()
            .collect()
    }

    pub fn is_quasi_local(&self) -> bool {
        self.maximal_ideals().len() == 1
    }

    pub fn idempotents(&self) -> ElemSet {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// `true` when the only idempotents are `0` and `1`.
    pub fn has_trivial_idempotents(&self) -> bool {
        self.idempotents().len() == 2
    }

    pub fn has_zero_divisors(&self) -> bool {
        self.elements()
            .filter(|&a| a != self.zero)
            .any(|a| self.elements().any(|b| b != self.zero && self.mul(a, b) == self.zero))
    }

    /// The quotient `R / I` and the projection `r ↦ coset index`.
    ///
    /// Cosets are numbered by their smallest member.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(FiniteRing, Vec<usize>)> {
        if !self.is_ideal(&ideal.0) {
            return Err(Error::NotAnIdeal);
        }
        if !self.is_proper(ideal) {
            return Err(Error::ImproperIdeal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for r in self.elements() {
            if projection[r] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(r);
            for &i in ideal.members() {
                projection[self.add(r, i)] = idx;
            }
        }
        let add: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.add(a, b)]).collect())
            .collect();
        let mul: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let quotient = FiniteRing::from_tables(&add, &mul)?;
        Ok((quotient, projection))
    }

    /// `∩ Y` for a nonempty family of ideals.
    pub fn intersect_ideals<'a>(&self, family: impl IntoIterator<Item = &'a Ideal>) -> Result<Ideal> {
        family
            .into_iter()
            .map(|i| i.0.clone())
            .reduce(|acc, s| acc.intersection(&s).copied().collect())
            .map(Ideal)
            .ok_or(Error::EmptyFamily)
    }
}

/// The prime ideals of a ring in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingSpectrum {
    pub points: Vec<Ideal>,
}

impl RingSpectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, ideal: &Ideal) -> Option<usize> {
        self.points.iter().position(|p| p == ideal)
    }

    /// `V(I)`: positions of the primes containing `I`.
    pub fn variety(&self, ideal: &Ideal) -> ElemSet {
        (0..self.len())
            .filter(|&k| ideal.is_subset(&self.points[k]))
            .collect()
    }

    /// `D_r`: positions of the primes not containing `rR`.
    pub fn basic_open(&self, ring: &FiniteRing, r: usize) -> ElemSet {
        let v = self.variety(&ring.principal(r));
        (0..self.len()).filter(|k| !v.contains(k)).collect()
    }

    /// Positions of the primes minimal under inclusion.
    pub fn minimal_primes(&self) -> ElemSet {
        (0..self.len())
            .filter(|&k| {
                !self
                    .points
                    .iter()
                    .any(|q| q != &self.points[k] && q.is_subset(&self.points[k]))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn two_element_field() {
        let r = FiniteRing::zn(2).unwrap();
        assert_eq!((r.zero(), r.one()), (0, 1));
        assert_eq!(r.spectrum().points, vec![r.zero_ideal()]);
    }

    #[test]
    fn zero_ring_rejected() {
        assert_eq!(FiniteRing::zn(1), Err(Error::ZeroRing));
        assert_eq!(FiniteRing::from_tables(&[vec![0]], &[vec![0]]), Err(Error::ZeroRing));
    }

    #[test]
    fn noncommutative_mul_rejected() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 1], vec![0, 1]];
        match FiniteRing::from_tables(&add, &mul) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert_eq!(axiom, Axiom::MulCommutative);
                assert_eq!(witness, vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_table_rejected() {
        let add = vec![vec![0, 1], vec![1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(FiniteRing::from_tables(&add, &mul), Err(Error::InvalidTable { .. })));
    }

    #[test]
    fn ideal_membership_checks() {
        let z6 = FiniteRing::zn(6).unwrap();
        assert!(z6.is_ideal(&set(&[0, 2, 4])));
        assert!(!z6.is_ideal(&set(&[0, 1])));
        assert!(z6.is_ideal(&set(&[0])));
        assert!(!z6.is_ideal(&set(&[0, 7])));
    }

    #[test]
    fn ideal_arithmetic_in_z6() {
        let z6 = FiniteRing::zn(6).unwrap();
        let two = z6.principal(2);
        let three = z6.principal(3);
        assert_eq!(two.members(), &set(&[0, 2, 4]));
        assert_eq!(z6.ideal_product(&two, &three), z6.zero_ideal());
        assert_eq!(z6.ideal_sum(&two, &three), z6.unit_ideal());
        assert_eq!(z6.ideal_intersection(&two, &z6.unit_ideal()), two);
    }

    #[test]
    fn primes_of_small_rings() {
        let z6 = FiniteRing::zn(6).unwrap();
        assert!(z6.is_prime_ideal(&z6.principal(2)));
        assert!(!z6.is_prime_ideal(&z6.zero_ideal()));
        assert!(!z6.is_prime_ideal(&z6.unit_ideal()));
        let z5 = FiniteRing::zn(5).unwrap();
        assert!(z5.is_prime_ideal(&z5.zero_ideal()));

        assert_eq!(z6.spectrum().points, vec![z6.principal(3), z6.principal(2)]);
        let z4 = FiniteRing::zn(4).unwrap();
        assert_eq!(z4.spectrum().points, vec![z4.principal(2)]);
    }

    #[test]
    fn varieties_and_basic_opens() {
        let z6 = FiniteRing::zn(6).unwrap();
        let spec = z6.spectrum();
        assert_eq!(spec.variety(&z6.zero_ideal()).len(), 2);
        assert!(spec.variety(&z6.unit_ideal()).is_empty());
        // D_2 keeps only the prime not containing 2, namely {0,3}.
        let d2 = spec.basic_open(&z6, 2);
        assert_eq!(d2.len(), 1);
        assert_eq!(spec.points[*d2.iter().next().unwrap()], z6.principal(3));
        assert_eq!(spec.basic_open(&z6, 1).len(), 2);
        assert!(spec.basic_open(&z6, 0).is_empty());
    }

    #[test]
    fn quotients() {
        let z6 = FiniteRing::zn(6).unwrap();
        let (q, proj) = z6.quotient(&z6.zero_ideal()).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(proj, vec![0, 1, 2, 3, 4, 5]);
        let (q3, proj3) = z6.quotient(&z6.principal(3)).unwrap();
        assert_eq!(q3.order(), 3);
        assert_eq!(proj3, vec![0, 1, 2, 0, 1, 2]);
        let z4 = FiniteRing::zn(4).unwrap();
        assert_eq!(z4.quotient(&z4.unit_ideal()).unwrap_err(), Error::ImproperIdeal);
    }

    #[test]
    fn idempotent_scans() {
        assert_eq!(FiniteRing::zn(4).unwrap().idempotents(), set(&[0, 1]));
        assert_eq!(FiniteRing::zn(6).unwrap().idempotents(), set(&[0, 1, 3, 4]));
        assert_eq!(FiniteRing::zn(7).unwrap().idempotents(), set(&[0, 1]));
        let z2 = FiniteRing::zn(2).unwrap();
        assert_eq!(FiniteRing::product(&z2, &z2).idempotents().len(), 4);
    }

    #[test]
    fn minimal_primes_and_intersections() {
        let z6 = FiniteRing::zn(6).unwrap();
        assert_eq!(z6.spectrum().minimal_primes().len(), 2);
        let z4 = FiniteRing::zn(4).unwrap();
        assert_eq!(z4.spectrum().minimal_primes().len(), 1);
        let p = z6.principal(2);
        assert_eq!(z6.intersect_ideals([&p]).unwrap(), p);
        assert_eq!(z6.intersect_ideals(std::iter::empty()), Err(Error::EmptyFamily));
    }

    #[test]
    fn quasi_local() {
        assert!(FiniteRing::zn(8).unwrap().is_quasi_local());
        assert!(!FiniteRing::zn(12).unwrap().is_quasi_local());
    }
}
