//! Generators for concrete le-modules and the default catalog.

use std::collections::BTreeSet;

use crate::descriptor::{InstanceDescriptor, ModuleSpec, RingSpec};
use crate::error::{Axiom, Error, Result};
use crate::lattice::FiniteBoundedLattice;
use crate::module::LeModule;
use crate::ring::{ElemSet, FiniteRing};

/// A finite module over a [`FiniteRing`] in the classical sense: an abelian
/// group with a ring action, given by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    add: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
    zero: usize,
}

fn module_violation(axiom: Axiom, witness: &[usize]) -> Error {
    Error::ModuleAxiomViolation {
        axiom,
        witness: witness.to_vec(),
    }
}

impl FiniteModule {
    /// Validates group and action tables against `ring`.
    pub fn from_tables(ring: &FiniteRing, add: Vec<Vec<usize>>, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::table("group.add", "empty table"));
        }
        if add.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::table("group.add", "table is not total over the group elements"));
        }
        if action.len() != ring.order() || action.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::table("group.action", "table is not total over ring × group"));
        }
        let plus = |a: usize, b: usize| add[a][b];
        let act = |r: usize, x: usize| action[r][x];
        for a in 0..n {
            for b in 0..n {
                if plus(a, b) != plus(b, a) {
                    return Err(module_violation(Axiom::AddCommutative, &[a, b]));
                }
                for c in 0..n {
                    if plus(plus(a, b), c) != plus(a, plus(b, c)) {
                        return Err(module_violation(Axiom::AddAssociative, &[a, b, c]));
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| plus(z, x) == x))
            .ok_or_else(|| module_violation(Axiom::AddIdentity, &[]))?;
        for a in 0..n {
            if !(0..n).any(|b| plus(a, b) == zero) {
                return Err(module_violation(Axiom::AddInverse, &[a]));
            }
        }
        for r in ring.elements() {
            for a in 0..n {
                for b in 0..n {
                    if act(r, plus(a, b)) != plus(act(r, a), act(r, b)) {
                        return Err(module_violation(Axiom::M1, &[r, a, b]));
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                for x in 0..n {
                    if act(ring.add(r, s), x) != plus(act(r, x), act(s, x)) {
                        return Err(module_violation(Axiom::M2, &[r, s, x]));
                    }
                    if act(ring.mul(r, s), x) != act(r, act(s, x)) {
                        return Err(module_violation(Axiom::M3, &[r, s, x]));
                    }
                }
            }
        }
        for x in 0..n {
            if act(ring.one(), x) != x {
                return Err(module_violation(Axiom::M4, &[ring.one(), x]));
            }
        }
        Ok(FiniteModule { add, action, zero })
    }

    /// The ring as a module over itself.
    pub fn regular(ring: &FiniteRing) -> Self {
        FiniteModule {
            add: ring.add_table(),
            action: ring.mul_table(),
            zero: ring.zero(),
        }
    }

    /// `Z_{m_1} × … × Z_{m_k}` with ring element `r` acting as multiplication
    /// by the integer `r`. Only meaningful for rings `Z_n` with every `m_i | n`;
    /// anything else is caught by validation.
    pub fn cyclic_product(ring: &FiniteRing, moduli: &[usize]) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::table("group", "cyclic factor of order 0"));
        }
        let n: usize = moduli.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            let mut d = vec![0; moduli.len()];
            for i in (0..moduli.len()).rev() {
                d[i] = x % moduli[i];
                x /= moduli[i];
            }
            d
        };
        let encode = |d: &[usize]| d.iter().zip(moduli).fold(0, |acc, (&v, &m)| acc * m + v);
        let add = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (da, db) = (digits(a), digits(b));
                        let sum: Vec<usize> = (0..moduli.len()).map(|i| (da[i] + db[i]) % moduli[i]).collect();
                        encode(&sum)
                    })
                    .collect()
            })
            .collect();
        let action = ring
            .elements()
            .map(|r| {
                (0..n)
                    .map(|x| {
                        let d = digits(x);
                        let scaled: Vec<usize> = (0..moduli.len()).map(|i| (r * d[i]) % moduli[i]).collect();
                        encode(&scaled)
                    })
                    .collect()
            })
            .collect();
        Self::from_tables(ring, add, action)
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    fn additive_closure(&self, mut set: ElemSet) -> ElemSet {
        set.insert(self.zero);
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for b in current {
                let s = self.add[a][b];
                if set.insert(s) {
                    frontier.push(s);
                }
            }
        }
        set
    }

    fn scale(&self, r: usize, sub: &ElemSet) -> ElemSet {
        sub.iter().map(|&x| self.action[r][x]).collect()
    }

    /// All submodules, grown from cyclic submodules `R x` by sums until
    /// saturation; ordered by size, then members.
    pub fn submodules(&self, ring: &FiniteRing) -> Vec<ElemSet> {
        let cyclic: BTreeSet<ElemSet> = (0..self.order())
            .map(|x| ring.elements().map(|r| self.action[r][x]).collect())
            .collect();
        let mut all = cyclic.clone();
        let mut frontier: Vec<ElemSet> = cyclic.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    let sum = self.additive_closure(s.union(c).copied().collect());
                    if all.insert(sum.clone()) {
                        next.push(sum);
                    }
                }
            }
            frontier = next;
        }
        let mut subs: Vec<ElemSet> = all.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs
    }
}

fn set_label(s: &ElemSet) -> String {
    let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// le-module on a family of subsets ordered by inclusion, with `+` given by
/// `sum` and the action by `scale`. The family must be closed under both.
fn subset_le_module(
    ring: FiniteRing,
    family: Vec<ElemSet>,
    sum: impl Fn(&ElemSet, &ElemSet) -> ElemSet,
    scale: impl Fn(usize, &ElemSet) -> ElemSet,
) -> Result<LeModule> {
    let index = |s: &ElemSet| {
        family
            .iter()
            .position(|t| t == s)
            .ok_or_else(|| Error::table("family", format!("{} is not in the family", set_label(s))))
    };
    let leq: Vec<Vec<bool>> = family
        .iter()
        .map(|a| family.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    let labels = family.iter().map(set_label).collect();
    let lattice = FiniteBoundedLattice::from_leq(&leq)?.with_labels(labels);
    let add = family
        .iter()
        .map(|a| family.iter().map(|b| index(&sum(a, b))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let action = ring
        .elements()
        .map(|r| family.iter().map(|a| index(&scale(r, a))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let zero = lattice.bottom();
    LeModule::from_tables(ring, lattice, &add, zero, &action)
}

/// The lattice of ideals of `ring`, with ideal sum as `+` and
/// `r·N = { r a : a ∈ N }`. `0_M` is the zero ideal and `e = R`.
pub fn ideal_lattice_le_module(ring: &FiniteRing) -> Result<LeModule> {
    let family: Vec<ElemSet> = ring.ideals().into_iter().map(|i| i.members().clone()).collect();
    let r = ring.clone();
    let s = ring.clone();
    subset_le_module(
        ring.clone(),
        family,
        move |a, b| {
            let (a, b) = (r.ideal(a.iter().copied()).unwrap(), r.ideal(b.iter().copied()).unwrap());
            r.ideal_sum(&a, &b).members().clone()
        },
        move |x, a| a.iter().map(|&y| s.mul(x, y)).collect(),
    )
}

/// The lattice of submodules of a finite module, with submodule sum as `+`
/// and `r·N = { r x : x ∈ N }`.
pub fn submodule_lattice_le_module(ring: &FiniteRing, module: &FiniteModule) -> Result<LeModule> {
    let family = module.submodules(ring);
    subset_le_module(
        ring.clone(),
        family,
        |a, b| module.additive_closure(a.union(b).copied().collect()),
        |r, a| module.scale(r, a),
    )
}

/// Z_2 acting on the 3-chain `0 < a < e` through its unit only, with
/// truncated addition `a + a = e`. Here `a` is not a submodule element,
/// while `e + e = e` has to be read off the table.
pub fn truncated_chain_over_z2() -> Result<LeModule> {
    let ring = FiniteRing::zn(2)?;
    let lattice = FiniteBoundedLattice::chain(3)?.with_labels(vec!["0".into(), "a".into(), "e".into()]);
    let add: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y).min(2)).collect()).collect();
    let action = vec![vec![0, 0, 0], vec![0, 1, 2]];
    LeModule::from_tables(ring, lattice, &add, 0, &action)
}

fn named(name: &str, ring: RingSpec, module: ModuleSpec) -> InstanceDescriptor {
    InstanceDescriptor {
        name: name.to_string(),
        ring,
        module,
    }
}

/// The default instance catalog, in a fixed order.
pub fn catalog() -> Vec<InstanceDescriptor> {
    let z = RingSpec::Zn;
    let prod = |a: RingSpec, b: RingSpec| RingSpec::Product(Box::new(a), Box::new(b));
    let mut out: Vec<InstanceDescriptor> = [2, 3, 4, 5, 6, 8, 9, 12, 30]
        .into_iter()
        .map(|n| named(&format!("Z{n}-ideal-lattice"), z(n), ModuleSpec::IdealLattice))
        .collect();
    out.push(named("Z2xZ3-ideal-lattice", prod(z(2), z(3)), ModuleSpec::IdealLattice));
    out.push(named("Z2xZ2-ideal-lattice", prod(z(2), z(2)), ModuleSpec::IdealLattice));
    out.push(named("Z2xZ2-over-Z2", z(2), ModuleSpec::Cyclic(vec![2, 2])));
    out.push(named("Z4-over-Z4", z(4), ModuleSpec::Regular));
    out.push(named("Z6-over-Z6", z(6), ModuleSpec::Regular));
    out.push(named("Z2xZ4-over-Z4", z(4), ModuleSpec::Cyclic(vec![2, 4])));
    out.push(named("Z2xZ2-over-Z4", z(4), ModuleSpec::Cyclic(vec![2, 2])));
    out.push(named("Z3-over-Z9", z(9), ModuleSpec::Cyclic(vec![3])));
    out.push(named("zero-module-over-Z2", z(2), ModuleSpec::Cyclic(vec![1])));
    let chain = truncated_chain_over_z2().expect("truncated chain is a valid le-module");
    out.push(named(
        "truncated-chain-over-Z2",
        RingSpec::Zn(2),
        ModuleSpec::Explicit {
            leq: chain.lattice().leq_table(),
            add: chain.add_table(),
            zero: chain.zero(),
            action: chain.action_table(),
            labels: Some(chain.lattice().labels().to_vec()),
        },
    ));
    out
}
