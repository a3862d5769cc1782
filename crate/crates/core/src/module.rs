//! le-modules `(M, +, ≤, e)` over a finite commutative ring.

use std::collections::BTreeSet;

use crate::error::{Axiom, Error, Result};
use crate::lattice::FiniteBoundedLattice;
use crate::ring::{ElemSet, FiniteRing, Ideal};

/// A validated finite le-module.
///
/// `e` is the top of the lattice. The action is stored row-major by ring
/// element, so `act(r, m)` is `action[r * size + m]`.
#[derive(Debug, Clone)]
pub struct LeModule {
    ring: FiniteRing,
    lattice: FiniteBoundedLattice,
    add: Vec<usize>,
    zero: usize,
    action: Vec<usize>,
    ideals: Vec<Ideal>,
}

fn violation(axiom: Axiom, witness: &[usize]) -> Error {
    Error::AxiomViolation {
        axiom,
        witness: witness.to_vec(),
    }
}

/// Exhaustive check of the monoid, S and M1–M5 axioms in their binary forms.
/// Returns the first failure in a fixed scan order.
fn check_axioms(
    ring: &FiniteRing,
    lat: &FiniteBoundedLattice,
    add: &[usize],
    zero: usize,
    action: &[usize],
) -> Result<()> {
    let n = lat.size();
    let plus = |a: usize, b: usize| add[a * n + b];
    let act = |r: usize, m: usize| action[r * n + m];
    let elems = || lat.elements();

    for a in elems() {
        for b in elems() {
            if plus(a, b) != plus(b, a) {
                return Err(violation(Axiom::Monoid, &[a, b]));
            }
            for c in elems() {
                if plus(plus(a, b), c) != plus(a, plus(b, c)) {
                    return Err(violation(Axiom::Monoid, &[a, b, c]));
                }
            }
        }
        if plus(zero, a) != a {
            return Err(violation(Axiom::Monoid, &[zero, a]));
        }
    }

    for m in elems() {
        for x in elems() {
            for y in elems() {
                if plus(m, lat.join2(x, y)) != lat.join2(plus(m, x), plus(m, y)) {
                    return Err(violation(Axiom::S, &[m, x, y]));
                }
            }
        }
    }

    for r in ring.elements() {
        for a in elems() {
            for b in elems() {
                if act(r, plus(a, b)) != plus(act(r, a), act(r, b)) {
                    return Err(violation(Axiom::M1, &[r, a, b]));
                }
            }
        }
    }

    for r1 in ring.elements() {
        for r2 in ring.elements() {
            for m in elems() {
                if !lat.leq(act(ring.add(r1, r2), m), plus(act(r1, m), act(r2, m))) {
                    return Err(violation(Axiom::M2, &[r1, r2, m]));
                }
            }
        }
    }

    for r1 in ring.elements() {
        for r2 in ring.elements() {
            for m in elems() {
                if act(ring.mul(r1, r2), m) != act(r1, act(r2, m)) {
                    return Err(violation(Axiom::M3, &[r1, r2, m]));
                }
            }
        }
    }

    for m in elems() {
        if act(ring.one(), m) != m {
            return Err(violation(Axiom::M4, &[ring.one(), m]));
        }
        if act(ring.zero(), m) != zero {
            return Err(violation(Axiom::M4, &[ring.zero(), m]));
        }
    }
    for r in ring.elements() {
        if act(r, zero) != zero {
            return Err(violation(Axiom::M4, &[r, zero]));
        }
    }

    for r in ring.elements() {
        for x in elems() {
            for y in elems() {
                if act(r, lat.join2(x, y)) != lat.join2(act(r, x), act(r, y)) {
                    return Err(violation(Axiom::M5, &[r, x, y]));
                }
            }
        }
    }
    Ok(())
}

impl LeModule {
    /// Builds and validates an le-module from explicit tables.
    ///
    /// `add` is indexed by lattice elements; `action[r][m]` is `r·m`.
    pub fn from_tables(
        ring: FiniteRing,
        lattice: FiniteBoundedLattice,
        add: &[Vec<usize>],
        zero: usize,
        action: &[Vec<usize>],
    ) -> Result<Self> {
        let n = lattice.size();
        if zero >= n {
            return Err(Error::table("zero", format!("{zero} is not a lattice element")));
        }
        let add = flatten("add", add, n, n)?;
        let action = flatten("action", action, ring.order(), n)?;
        check_axioms(&ring, &lattice, &add, zero, &action)?;
        let ideals = ring.ideals();
        Ok(LeModule {
            ring,
            lattice,
            add,
            zero,
            action,
            ideals,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn lattice(&self) -> &FiniteBoundedLattice {
        &self.lattice
    }

    /// All ideals of the ring, in the ring's canonical order.
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    /// `0_M`.
    pub fn zero(&self) -> usize {
        self.zero
    }

    /// `e`, the top element.
    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    #[inline]
    pub fn act(&self, r: usize, m: usize) -> usize {
        self.action[r * self.size() + m]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn label(&self, m: usize) -> &str {
        self.lattice.label(m)
    }

    /// `n + n ≤ n` and `r n ≤ n` for every `r`.
    pub fn is_submodule_element(&self, n: usize) -> bool {
        self.leq(self.add(n, n), n) && self.ring.elements().all(|r| self.leq(self.act(r, n), n))
    }

    pub fn submodule_elements(&self) -> Vec<usize> {
        self.lattice
            .elements()
            .filter(|&n| self.is_submodule_element(n))
            .collect()
    }

    /// Join of every finite sum of generators (with repetition).
    fn join_of_sums(&self, generators: BTreeSet<usize>) -> Result<usize> {
        let mut sums = generators;
        let mut frontier: Vec<usize> = sums.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let current: Vec<usize> = sums.iter().copied().collect();
            for b in current {
                let s = self.add(a, b);
                if sums.insert(s) {
                    frontier.push(s);
                }
            }
        }
        self.lattice.join(sums)
    }

    /// `Σ n_i`, the join of all finite sums of members of the family.
    pub fn sum_submodule_elements(&self, family: impl IntoIterator<Item = usize>) -> Result<usize> {
        self.join_of_sums(family.into_iter().collect())
    }

    /// `(n : e) = { r : r e ≤ n }` as a plain set.
    pub fn colon_set(&self, n: usize) -> ElemSet {
        let e = self.top();
        self.ring.elements().filter(|&r| self.leq(self.act(r, e), n)).collect()
    }

    /// `(n : e)`; an ideal whenever `n` is a submodule element.
    pub fn colon(&self, n: usize) -> Ideal {
        Ideal::from_set(self.colon_set(n))
    }

    /// `Ann(M) = (0_M : e)`.
    pub fn annihilator(&self) -> Ideal {
        self.colon(self.zero)
    }

    /// `I e`, the join of all finite sums `a_1 e + … + a_k e` with `a_i ∈ I`.
    pub fn ideal_action(&self, ideal: &Ideal) -> usize {
        let e = self.top();
        let gens: BTreeSet<usize> = ideal.members().iter().map(|&a| self.act(a, e)).collect();
        // Ideals always contain 0, so the family is never empty.
        self.join_of_sums(gens).expect("ideal has a member")
    }

    /// `I e ≤ n ⇔ I ⊆ (n : e)`.
    pub fn galois_holds(&self, ideal: &Ideal, n: usize) -> bool {
        self.leq(self.ideal_action(ideal), n) == ideal.is_subset(&self.colon(n))
    }

    /// Proper submodule element `p` such that `r n ≤ p` forces `r ∈ (p:e)` or
    /// `n ≤ p`, for every ring element `r` and every lattice element `n`.
    pub fn is_prime(&self, p: usize) -> bool {
        if p == self.top() || !self.is_submodule_element(p) {
            return false;
        }
        let colon = self.colon_set(p);
        self.ring.elements().all(|r| {
            colon.contains(&r)
                || self
                    .lattice
                    .elements()
                    .all(|n| !self.leq(self.act(r, n), p) || self.leq(n, p))
        })
    }

    /// `Spec(M)` in increasing index order.
    pub fn spectrum(&self) -> Vec<usize> {
        self.lattice.elements().filter(|&p| self.is_prime(p)).collect()
    }

    /// `Spec_P(M) = { p ∈ Spec(M) : (p:e) = P }`.
    pub fn spectrum_over(&self, prime: &Ideal) -> Result<Vec<usize>> {
        if !self.ring.is_prime_ideal(prime) {
            return Err(Error::NotPrimeIdeal);
        }
        Ok(self
            .spectrum()
            .into_iter()
            .filter(|&p| &self.colon(p) == prime)
            .collect())
    }

    /// Every submodule element is `I e` for some ideal `I`.
    pub fn is_multiplication(&self) -> bool {
        let generated: BTreeSet<usize> = self.ideals.iter().map(|i| self.ideal_action(i)).collect();
        self.submodule_elements().iter().all(|n| generated.contains(n))
    }
}

fn flatten(name: &str, rows: &[Vec<usize>], nrows: usize, ncols: usize) -> Result<Vec<usize>> {
    if rows.len() != nrows {
        return Err(Error::table(name, format!("expected {nrows} rows, got {}", rows.len())));
    }
    let mut flat = Vec::with_capacity(nrows * ncols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::table(name, format!("row {i} has {} entries, expected {ncols}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= ncols) {
            return Err(Error::table(name, format!("entry {bad} in row {i} is out of range")));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}
