//! Varieties on `Spec(M)` and the three closed-set families built from them.
//!
//! Point sets here are sets of lattice indices of prime submodule elements.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::check::{ensure, Check};
use crate::error::{Error, Result};
use crate::module::LeModule;
use crate::ring::Ideal;
use crate::space::{FiniteSpace, PointSet};

/// Which closed-set family defines the topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyKind {
    /// `{ V(n) }`, a topology only on top le-modules.
    Quasi,
    /// `{ V*(n) }`, the Zariski topology.
    Star,
    /// `{ V(I e) : I ideal }`.
    Prime,
}

impl TopologyKind {
    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Quasi => "quasi",
            TopologyKind::Star => "star",
            TopologyKind::Prime => "prime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTopology {
    pub kind: TopologyKind,
    pub space: FiniteSpace,
}

#[derive(Debug, Clone)]
pub struct Topologies {
    pub star: SpectrumTopology,
    pub prime: SpectrumTopology,
    pub quasi: Option<SpectrumTopology>,
}

/// `Spec(M)` together with the data every topological check needs.
#[derive(Debug, Clone)]
pub struct ModuleSpectrum<'a> {
    module: &'a LeModule,
    points: Vec<usize>,
    submodules: Vec<usize>,
    colons: BTreeMap<usize, Ideal>,
}

impl<'a> ModuleSpectrum<'a> {
    pub fn new(module: &'a LeModule) -> Self {
        let submodules = module.submodule_elements();
        let colons = submodules.iter().map(|&n| (n, module.colon(n))).collect();
        ModuleSpectrum {
            module,
            points: module.spectrum(),
            submodules,
            colons,
        }
    }

    pub fn module(&self) -> &'a LeModule {
        self.module
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn point_set(&self) -> PointSet {
        self.points.iter().copied().collect()
    }

    pub fn submodule_elements(&self) -> &[usize] {
        &self.submodules
    }

    /// `(n : e)`, cached for submodule elements.
    pub fn colon(&self, n: usize) -> Ideal {
        self.colons.get(&n).cloned().unwrap_or_else(|| self.module.colon(n))
    }

    /// `V(n) = { p : n ≤ p }`.
    pub fn variety(&self, n: usize) -> PointSet {
        self.points
            .iter()
            .copied()
            .filter(|&p| self.module.leq(n, p))
            .collect()
    }

    /// `V*(n) = { p : (n:e) ⊆ (p:e) }`.
    pub fn variety_star(&self, n: usize) -> PointSet {
        let c = self.colon(n);
        self.points
            .iter()
            .copied()
            .filter(|&p| c.is_subset(&self.colons[&p]))
            .collect()
    }

    /// `V(I e)`.
    pub fn ideal_variety(&self, ideal: &Ideal) -> PointSet {
        self.variety(self.module.ideal_action(ideal))
    }

    pub fn star_family(&self) -> BTreeSet<PointSet> {
        self.submodules.iter().map(|&n| self.variety_star(n)).collect()
    }

    pub fn prime_family(&self) -> BTreeSet<PointSet> {
        self.module.ideals().iter().map(|i| self.ideal_variety(i)).collect()
    }

    pub fn quasi_family(&self) -> BTreeSet<PointSet> {
        self.submodules.iter().map(|&n| self.variety(n)).collect()
    }

    /// `V(M)` is closed under finite unions.
    pub fn is_top(&self) -> bool {
        let fam = self.quasi_family();
        fam.iter()
            .all(|a| fam.iter().all(|b| fam.contains(&a.union(b).copied().collect::<PointSet>())))
    }

    pub fn topology(&self, kind: TopologyKind) -> Result<SpectrumTopology> {
        let family = match kind {
            TopologyKind::Star => self.star_family(),
            TopologyKind::Prime => self.prime_family(),
            TopologyKind::Quasi => {
                if !self.is_top() {
                    return Err(Error::NotTopLeModule);
                }
                self.quasi_family()
            }
        };
        Ok(SpectrumTopology {
            kind,
            space: FiniteSpace::new(self.point_set(), family)?,
        })
    }

    pub fn build_topologies(&self) -> Result<Topologies> {
        let star = self.topology(TopologyKind::Star)?;
        let prime = self.topology(TopologyKind::Prime)?;
        let quasi = match self.topology(TopologyKind::Quasi) {
            Ok(t) => Some(t),
            Err(Error::NotTopLeModule) => None,
            Err(e) => return Err(e),
        };
        Ok(Topologies { star, prime, quasi })
    }

    /// The Zariski topology `τ*(M)`.
    pub fn zariski(&self) -> FiniteSpace {
        FiniteSpace::new(self.point_set(), self.star_family())
            .expect("the V* family is always a topology")
    }

    /// `V(Ie) ∪ V(Je) = V((I∩J)e) = V((IJ)e)` and the same with `V*`.
    pub fn union_intersection_check(&self, i: &Ideal, j: &Ideal) -> Check {
        let m = self.module;
        let ring = m.ring();
        let ie = m.ideal_action(i);
        let je = m.ideal_action(j);
        let cap = m.ideal_action(&ring.ideal_intersection(i, j));
        let prod = m.ideal_action(&ring.ideal_product(i, j));
        let union = |a: PointSet, b: PointSet| a.union(&b).copied().collect::<PointSet>();
        let witness = [ie, je];
        let v = union(self.variety(ie), self.variety(je));
        ensure(v == self.variety(cap), "V(Ie) ∪ V(Je) = V((I∩J)e) [Ie, Je]", witness)?;
        ensure(v == self.variety(prod), "V(Ie) ∪ V(Je) = V((IJ)e) [Ie, Je]", witness)?;
        let vs = union(self.variety_star(ie), self.variety_star(je));
        ensure(vs == self.variety_star(cap), "V*(Ie) ∪ V*(Je) = V*((I∩J)e) [Ie, Je]", witness)?;
        ensure(vs == self.variety_star(prod), "V*(Ie) ∪ V*(Je) = V*((IJ)e) [Ie, Je]", witness)
    }

    /// `V*(r e) ∪ V*(s e) = V*((rs) e)`.
    pub fn element_union_check(&self, r: usize, s: usize) -> Check {
        let m = self.module;
        let e = m.top();
        let lhs: PointSet = self
            .variety_star(m.act(r, e))
            .union(&self.variety_star(m.act(s, e)))
            .copied()
            .collect();
        let rhs = self.variety_star(m.act(m.ring().mul(r, s), e));
        ensure(lhs == rhs, "V*(re) ∪ V*(se) = V*((rs)e) [r, s]", [r, s])
    }

    /// For a submodule element `n`:
    /// `V*(n) = ⋃_{P ⊇ (n:e)} Spec_P(M)`, `V*(n) = V*((n:e)e) = V((n:e)e)`,
    /// and `V(Ie) = V*(Ie)` for `I = (n:e)`.
    pub fn vstar_decomposition_check(&self, n: usize) -> Check {
        let m = self.module;
        let colon = self.colon(n);
        let vs = self.variety_star(n);
        let ring_spec = m.ring().spectrum();
        let by_prime: PointSet = ring_spec
            .variety(&colon)
            .into_iter()
            .flat_map(|k| {
                m.spectrum_over(&ring_spec.points[k])
                    .expect("spectrum points are prime")
            })
            .collect();
        ensure(vs == by_prime, "V*(n) = ⋃ Spec_P(M) over P ⊇ (n:e) [n]", [n])?;
        let ce = m.ideal_action(&colon);
        ensure(vs == self.variety_star(ce), "V*(n) = V*((n:e)e) [n]", [n])?;
        ensure(vs == self.variety(ce), "V*(n) = V((n:e)e) [n]", [n])?;
        ensure(self.variety(ce) == self.variety_star(ce), "V(Ie) = V*(Ie) for I = (n:e) [n]", [n])
    }

    /// `X_r = X^M − V*(r e)`.
    pub fn basic_open(&self, r: usize) -> PointSet {
        let v = self.variety_star(self.module.act(r, self.module.top()));
        self.point_set().difference(&v).copied().collect()
    }

    /// `X_{rs} = X_r ∩ X_s` for all `r, s` and `V*(Ie) = ⋂_{a∈I} V*(ae)` for
    /// all ideals.
    pub fn product_identities_check(&self) -> Check {
        let m = self.module;
        let ring = m.ring();
        let e = m.top();
        for r in ring.elements() {
            for s in ring.elements() {
                let lhs = self.basic_open(ring.mul(r, s));
                let rhs: PointSet = self.basic_open(r).intersection(&self.basic_open(s)).copied().collect();
                ensure(lhs == rhs, "X_rs = X_r ∩ X_s [r, s]", [r, s])?;
            }
        }
        for (k, ideal) in m.ideals().iter().enumerate() {
            let lhs = self.variety_star(m.ideal_action(ideal));
            let rhs = ideal
                .members()
                .iter()
                .map(|&a| self.variety_star(m.act(a, e)))
                .reduce(|x, y| x.intersection(&y).copied().collect())
                .expect("ideals are nonempty");
            ensure(lhs == rhs, "V*(Ie) = ⋂_{a∈I} V*(ae) [ideal index]", [k])?;
        }
        Ok(())
    }

    /// Every `X_r` is open and every open set of `τ*(M)` is a union of them.
    pub fn base_check(&self) -> Check {
        let space = self.zariski();
        let basics: Vec<PointSet> = self.module.ring().elements().map(|r| self.basic_open(r)).collect();
        for (r, b) in basics.iter().enumerate() {
            ensure(space.is_open(b), "X_r is open [r]", [r])?;
        }
        for u in space.open_sets() {
            let union: PointSet = basics
                .iter()
                .filter(|b| b.is_subset(&u))
                .flat_map(|b| b.iter().copied())
                .collect();
            ensure(union == u, "open set is a union of basic opens [open set]", u.iter().copied().collect::<Vec<_>>())?;
        }
        Ok(())
    }

    pub fn basis_checks(&self) -> Check {
        self.product_identities_check()?;
        self.base_check()
    }

    /// `ℑ(Y) = ⋀_{p∈Y} p`.
    pub fn im_meet(&self, set: &PointSet) -> Result<usize> {
        self.module.lattice().meet(set.iter().copied())
    }

    /// Closure of `Y` in `τ*(M)`, cross-checked against `V*(ℑ(Y))`.
    pub fn closure(&self, space: &FiniteSpace, set: &PointSet) -> Result<PointSet> {
        let meet = self.im_meet(set)?;
        let closure = space.closure(set);
        debug_assert_eq!(closure, self.variety_star(meet));
        Ok(closure)
    }

    /// `Φ = { (p:e) : p ∈ X^M }`.
    pub fn phi(&self) -> BTreeSet<Ideal> {
        self.points.iter().map(|p| self.colons[p].clone()).collect()
    }

    /// `(p:e)` is maximal in `Φ`.
    pub fn colon_is_maximal_in_phi(&self, p: usize) -> bool {
        let c = &self.colons[&p];
        self.phi().iter().all(|q| !c.is_subset(q) || q == c)
    }

    /// `|Spec_P(M)| ≤ 1` for every prime `P` of the ring.
    pub fn at_most_one_per_prime(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.points.iter().all(|p| seen.insert(&self.colons[p]))
    }

    /// `T1 ⇔ (every (p:e) maximal in Φ) ∧ (|Spec_P(M)| ≤ 1 for all P)`.
    pub fn phi_and_t1_check(&self) -> Check {
        let t1 = self.zariski().is_t1();
        let a = self.points.iter().all(|&p| self.colon_is_maximal_in_phi(p));
        let b = self.at_most_one_per_prime();
        ensure(t1 == (a && b), "T1 ⇔ (a) ∧ (b) [T1, a, b]", [t1 as usize, a as usize, b as usize])
    }

    /// `Y` is totally ordered by `≤`.
    pub fn is_chain(&self, set: &PointSet) -> bool {
        let m = self.module;
        set.iter().all(|&a| set.iter().all(|&b| m.leq(a, b) || m.leq(b, a)))
    }

    /// Evaluates the sufficient and necessary conditions for irreducibility
    /// of a nonempty `Y` and reports the first violated implication.
    pub fn irreducibility_criteria(&self, space: &FiniteSpace, set: &PointSet) -> Result<Check> {
        let m = self.module;
        let ring = m.ring();
        let irreducible = space.is_irreducible(set)?;
        let meet = self.im_meet(set)?;
        let witness: Vec<usize> = set.iter().copied().collect();

        let meet_prime = m.is_prime(meet);
        let meet_colon = m.colon(meet);
        let check = (|| {
            ensure(!meet_prime || irreducible, "ℑ(Y) prime ⇒ Y irreducible [Y]", witness.clone())?;
            let psi_meet = ring
                .intersect_ideals(set.iter().map(|p| &self.colons[p]))
                .expect("nonempty");
            ensure(psi_meet == meet_colon, "⋂ (p:e) = (ℑ(Y):e) [Y]", witness.clone())?;
            ensure(
                !irreducible || ring.is_prime_ideal(&meet_colon),
                "Y irreducible ⇒ (ℑ(Y):e) prime [Y]",
                witness.clone(),
            )?;
            ensure(!self.is_chain(set) || irreducible, "Y a chain ⇒ Y irreducible [Y]", witness.clone())?;
            if ring.is_prime_ideal(&meet_colon) {
                let over = m.spectrum_over(&meet_colon).expect("prime");
                ensure(
                    over.is_empty() || irreducible,
                    "(ℑ(Y):e) = P prime, Spec_P(M) ≠ ∅ ⇒ Y irreducible [Y]",
                    witness.clone(),
                )?;
            }
            Ok(())
        })();
        Ok(check)
    }

    /// For every prime `P` with `Spec_P(M) ≠ ∅`: `Spec_P(M)` is irreducible,
    /// and when `P` is maximal it equals `V*(Pe)` and is closed.
    pub fn spec_over_prime_checks(&self, space: &FiniteSpace) -> Check {
        let m = self.module;
        let ring = m.ring();
        let maximal = ring.maximal_ideals();
        for (k, prime) in ring.spectrum().points.iter().enumerate() {
            let over: PointSet = m.spectrum_over(prime).expect("prime").into_iter().collect();
            if over.is_empty() {
                continue;
            }
            ensure(
                space.is_irreducible(&over).expect("nonempty"),
                "Spec_P(M) irreducible [prime index]",
                [k],
            )?;
            if maximal.contains(prime) {
                let vpe = self.variety_star(m.ideal_action(prime));
                ensure(over == vpe, "Spec_P(M) = V*(Pe) for maximal P [prime index]", [k])?;
                ensure(space.is_closed(&over), "Spec_P(M) closed for maximal P [prime index]", [k])?;
            }
        }
        Ok(())
    }
}
