//! Every numbered statement as an executable property, run per instance.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::check::{ensure, Check, Conditional, Counterexample, TruthVector};
use crate::error::Error;
use crate::module::LeModule;
use crate::natural_map::{finite_spec_criterion, NaturalMap};
use crate::space::{FiniteSpace, PointSet};
use crate::topology::ModuleSpectrum;

/// Families with at most this many members are checked on every nonempty
/// subfamily; larger ones on singletons, pairs and the whole family.
const SUBSET_LIMIT: usize = 10;

macro_rules! statements {
    ($($var:ident => $id:literal, $desc:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum StatementId { $($var),* }

        impl StatementId {
            pub const ALL: &'static [StatementId] = &[$(StatementId::$var),*];

            pub fn tag(self) -> &'static str {
                match self { $(StatementId::$var => $id),* }
            }

            pub fn description(self) -> &'static str {
                match self { $(StatementId::$var => $desc),* }
            }
        }
    };
}

statements! {
    L2_1 => "L2.1", "Ie ≤ n ⇔ I ⊆ (n:e) for submodule elements n";
    L2_2 => "L2.2", "p prime submodule element ⇒ (p:e) prime ideal";
    P3_1 => "P3.1", "V*(0)=X=V(0); V*(e)=∅=V(e); ⋂V*(n_i)=V*(Σ(n_i:e)e); ⋂V(n_i)=V(Σn_i); V*(n)∪V*(l)=V*(n∧l); V(n)∪V(l) ⊆ V(n∧l)";
    L3_2 => "L3.2", "V(Ie)∪V(Je)=V((I∩J)e)=V((IJ)e), the same for V*, and V*(re)∪V*(se)=V*((rs)e)";
    P3_3 => "P3.3", "(n:e)=(l:e) ⇒ V*(n)=V*(l); converse for prime n, l";
    P3_4 => "P3.4", "V*(n)=⋃_{P ⊇ (n:e)} Spec_P(M); V*(n)=V*((n:e)e)=V((n:e)e); V(Ie)=V*(Ie)";
    T3_5 => "T3.5", "{V*(n)} = {V(Ie)} as closed-set families";
    T3_6 => "T3.6", "top le-module ⇒ τ(M) finer than τ*(M)";
    P4_1 => "P4.1", "ψ⁻¹(V(Ī)) = V(Ie) for I ⊇ Ann(M); ψ continuous";
    P4_2 => "P4.2", "ψ injective ⇔ V* separates points ⇔ |Spec_P(M)| ≤ 1";
    T4_3 => "T4.3", "ψ surjective ⇒ ψ(V*(n)) = V((n:e)‾), ψ(X−V*(n)) = X̄−V((n:e)‾), ψ closed and open";
    C4_4 => "C4.4", "ψ bijective ⇔ ψ homeomorphism";
    T4_5 => "T4.5", "ψ surjective ⇒ (X^M connected ⇔ X^R̄ connected ⇔ R̄ has trivial idempotents)";
    P5_1 => "P5.1", "ψ⁻¹(D_r̄) = X_r; ψ(X_r) ⊆ D_r̄ with equality for surjective ψ";
    L5_2 => "L5.2", "X_rs = X_r ∩ X_s; V*(Ie) = ⋂_{a∈I} V*(ae)";
    T5_3 => "T5.3", "{X_r} is a base of τ*(M)";
    T5_4 => "T5.4", "ψ surjective ⇒ X_r and X^M quasi-compact, quasi-compact opens closed under ∩ and a base";
    P6_1 => "P6.1", "closure(Y) = V*(ℑ(Y)); Y closed ⇔ V*(ℑ(Y)) = Y";
    P6_2 => "P6.2", "closure{p} = V*(p); q ∈ closure{p} ⇔ (p:e) ⊆ (q:e) ⇔ V*(q) ⊆ V*(p); {p} closed and T1 criteria via Φ";
    C6_3 => "C6.3", "V*(p) irreducible closed";
    P6_4 => "P6.4", "ℑ(Y) prime ⇒ Y irreducible; Y irreducible ⇒ (ℑ(Y):e) prime";
    P6_5 => "P6.5", "chains irreducible; Spec_P(M) irreducible, closed for maximal P; (ℑ(Y):e)=P prime with Spec_P(M) ≠ ∅ ⇒ Y irreducible";
    T6_6 => "T6.6", "ψ surjective ⇒ irreducible closed sets are the V*(p), and components ↔ minimal primes of R̄";
    T7_1 => "T7.1", "ψ surjective ⇒ (spectral ⇔ T0 ⇔ V* separates ⇔ |Spec_P(M)| ≤ 1 ⇔ ψ injective ⇔ ψ homeomorphism)";
    T7_2 => "T7.2", "multiplication le-module with surjective ψ ⇒ X^M spectral";
    T7_3 => "T7.3", "Im ψ closed ⇒ (X^M spectral ⇔ ψ injective)";
    T7_4 => "T7.4", "X^M nonempty finite ⇒ (X^M spectral ⇔ |Spec_P(M)| ≤ 1)";
}

impl Serialize for StatementId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Verified {
        #[serde(skip_serializing_if = "Option::is_none")]
        clauses: Option<TruthVector>,
    },
    Falsified {
        clause: String,
        witness: Vec<usize>,
    },
    HypothesisNotMet {
        hypothesis: String,
    },
    NotApplicable {
        reason: String,
    },
}

impl Verdict {
    fn from_check(check: Check) -> Self {
        match check {
            Ok(()) => Verdict::Verified { clauses: None },
            Err(Counterexample { clause, witness }) => Verdict::Falsified { clause, witness },
        }
    }

    fn from_truth(tv: TruthVector) -> Self {
        match tv.mismatch() {
            None => Verdict::Verified { clauses: Some(tv) },
            Some((a, b)) => Verdict::Falsified {
                clause: format!("{a} ⇔ {b}"),
                witness: Vec::new(),
            },
        }
    }

    fn from_conditional<T>(c: Conditional<T>, f: impl FnOnce(T) -> Verdict) -> Self {
        match c {
            Conditional::HypothesisNotMet { hypothesis } => Verdict::HypothesisNotMet { hypothesis },
            Conditional::Evaluated { outcome } => f(outcome),
        }
    }

    fn not_applicable(reason: &str) -> Self {
        Verdict::NotApplicable { reason: reason.to_string() }
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub instance: String,
    pub statement: StatementId,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub statements: usize,
    pub verified: usize,
    pub falsified: usize,
    pub hypothesis_not_met: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatementInfo {
    pub id: StatementId,
    pub description: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub statements: Vec<StatementInfo>,
    pub entries: Vec<Entry>,
    pub summary: Summary,
    /// Wall time per instance; not serialized so reports stay reproducible.
    #[serde(skip)]
    pub timing: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn falsified(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.verdict.is_falsified())
    }

    pub fn verdict(&self, instance: &str, statement: StatementId) -> Option<&Verdict> {
        self.entries
            .iter()
            .find(|e| e.instance == instance && e.statement == statement)
            .map(|e| &e.verdict)
    }
}

/// Evaluates every statement on every instance. Entries are ordered by
/// instance (input order) then statement.
pub fn run_all(instances: &[(String, LeModule)]) -> VerificationReport {
    let per_instance: Vec<(Vec<Entry>, Duration)> = instances
        .par_iter()
        .map(|(name, module)| {
            let start = Instant::now();
            let entries = verify_instance(module)
                .into_iter()
                .map(|(statement, verdict)| Entry {
                    instance: name.clone(),
                    statement,
                    verdict,
                })
                .collect();
            (entries, start.elapsed())
        })
        .collect();

    let mut entries = Vec::new();
    let mut timing = Vec::new();
    for ((name, _), (e, t)) in instances.iter().zip(per_instance) {
        entries.extend(e);
        timing.push((name.clone(), t));
    }
    let mut summary = Summary {
        instances: instances.len(),
        statements: StatementId::ALL.len(),
        ..Summary::default()
    };
    for e in &entries {
        match e.verdict {
            Verdict::Verified { .. } => summary.verified += 1,
            Verdict::Falsified { .. } => summary.falsified += 1,
            Verdict::HypothesisNotMet { .. } => summary.hypothesis_not_met += 1,
            Verdict::NotApplicable { .. } => summary.not_applicable += 1,
        }
    }
    VerificationReport {
        statements: StatementId::ALL
            .iter()
            .map(|&id| StatementInfo {
                id,
                description: id.description(),
            })
            .collect(),
        entries,
        summary,
        timing,
    }
}

/// All statements on one instance, in `StatementId::ALL` order.
pub fn verify_instance(module: &LeModule) -> Vec<(StatementId, Verdict)> {
    let ctx = Context::new(module);
    StatementId::ALL.iter().map(|&id| (id, ctx.verdict(id))).collect()
}

struct Context<'a> {
    module: &'a LeModule,
    spectrum: ModuleSpectrum<'a>,
    space: FiniteSpace,
}

const DEGENERATE: &str = "Ann(M) = R, no natural map";

impl<'a> Context<'a> {
    fn new(module: &'a LeModule) -> Self {
        let spectrum = ModuleSpectrum::new(module);
        let space = spectrum.zariski();
        Context { module, spectrum, space }
    }

    fn verdict(&self, id: StatementId) -> Verdict {
        use StatementId::*;
        match id {
            L2_1 => Verdict::from_check(self.galois()),
            L2_2 => Verdict::from_check(self.colons_prime()),
            P3_1 => Verdict::from_check(self.zariski_family()),
            L3_2 => Verdict::from_check(self.union_identities()),
            P3_3 => Verdict::from_check(self.equal_colons()),
            P3_4 => Verdict::from_check(self.decomposition()),
            T3_5 => Verdict::from_check(ensure(
                self.spectrum.star_family() == self.spectrum.prime_family(),
                "{V*(n)} = {V(Ie)}",
                Vec::new(),
            )),
            T3_6 => self.finer(),
            L5_2 => Verdict::from_check(self.spectrum.product_identities_check()),
            T5_3 => Verdict::from_check(self.spectrum.base_check()),
            P6_1 => Verdict::from_check(self.closures()),
            P6_2 => Verdict::from_check(self.point_closures()),
            C6_3 => Verdict::from_check(self.point_varieties()),
            P6_4 => Verdict::from_check(self.irreducible_prime()),
            P6_5 => Verdict::from_check(self.irreducible_sufficient()),
            T7_4 => match finite_spec_criterion(&self.spectrum) {
                Ok(tv) => Verdict::from_truth(tv),
                Err(_) => Verdict::not_applicable("Spec(M) empty"),
            },
            _ => self.map_verdict(id),
        }
    }

    fn map_verdict(&self, id: StatementId) -> Verdict {
        use StatementId::*;
        let psi = match NaturalMap::new(&self.spectrum) {
            Ok(psi) => psi,
            Err(Error::DegenerateModule) => return Verdict::not_applicable(DEGENERATE),
            Err(e) => {
                return Verdict::Falsified {
                    clause: format!("ψ well defined: {e}"),
                    witness: Vec::new(),
                }
            }
        };
        match id {
            P4_1 => Verdict::from_check(psi.continuity_check().and_then(|()| psi.correspondence_check())),
            P4_2 => Verdict::from_truth(psi.injectivity_battery()),
            T4_3 => Verdict::from_conditional(psi.surjectivity_and_openclosed(), Verdict::from_check),
            C4_4 => Verdict::from_truth(psi.homeomorphism_check()),
            T4_5 => Verdict::from_conditional(psi.connectedness_equivalence(), |(tv, corollary)| {
                match corollary {
                    Err(c) => Verdict::from_check(Err(c)),
                    Ok(()) => Verdict::from_truth(tv),
                }
            }),
            P5_1 => Verdict::from_check(psi.basic_open_check()),
            T5_4 => Verdict::from_conditional(psi.quasi_compact_base_check(), Verdict::from_check),
            T6_6 => Verdict::from_conditional(psi.component_minimal_prime_bijection(), Verdict::from_check),
            T7_1 => Verdict::from_conditional(psi.spectral_battery(), Verdict::from_truth),
            T7_2 => Verdict::from_conditional(psi.multiplication_spectral_check(), Verdict::from_check),
            T7_3 => Verdict::from_conditional(psi.image_closed_criterion(), Verdict::from_truth),
            _ => unreachable!("statement {} does not use ψ", id.tag()),
        }
    }

    fn points(&self) -> &[usize] {
        self.spectrum.points()
    }

    fn submodules(&self) -> &[usize] {
        self.spectrum.submodule_elements()
    }

    fn galois(&self) -> Check {
        for (k, ideal) in self.module.ideals().iter().enumerate() {
            for &n in self.submodules() {
                ensure(
                    self.module.galois_holds(ideal, n),
                    "Ie ≤ n ⇔ I ⊆ (n:e) [ideal index, n]",
                    [k, n],
                )?;
            }
        }
        Ok(())
    }

    fn colons_prime(&self) -> Check {
        let ring = self.module.ring();
        for &p in self.points() {
            ensure(ring.is_prime_ideal(&self.spectrum.colon(p)), "(p:e) prime [p]", [p])?;
        }
        Ok(())
    }

    fn zariski_family(&self) -> Check {
        let m = self.module;
        let spec = &self.spectrum;
        let all = spec.point_set();
        ensure(spec.variety_star(m.zero()) == all, "V*(0) = X", Vec::new())?;
        ensure(spec.variety(m.zero()) == all, "V(0) = X", Vec::new())?;
        ensure(spec.variety_star(m.top()).is_empty(), "V*(e) = ∅", Vec::new())?;
        ensure(spec.variety(m.top()).is_empty(), "V(e) = ∅", Vec::new())?;

        for family in subfamilies(self.submodules()) {
            let witness = family.clone();
            let star = intersect_all(family.iter().map(|&n| spec.variety_star(n)), &all);
            let plain = intersect_all(family.iter().map(|&n| spec.variety(n)), &all);
            let colon_sum = m
                .sum_submodule_elements(family.iter().map(|&n| m.ideal_action(&spec.colon(n))))
                .expect("nonempty family");
            let sum = m.sum_submodule_elements(family.iter().copied()).expect("nonempty family");
            ensure(star == spec.variety_star(colon_sum), "⋂V*(n_i) = V*(Σ(n_i:e)e) [family]", witness.clone())?;
            ensure(plain == spec.variety(sum), "⋂V(n_i) = V(Σn_i) [family]", witness)?;
        }

        for &n in self.submodules() {
            for &l in self.submodules() {
                let meet = m.lattice().meet2(n, l);
                let star: PointSet = spec.variety_star(n).union(&spec.variety_star(l)).copied().collect();
                ensure(star == spec.variety_star(meet), "V*(n) ∪ V*(l) = V*(n∧l) [n, l]", [n, l])?;
                let plain: PointSet = spec.variety(n).union(&spec.variety(l)).copied().collect();
                ensure(plain.is_subset(&spec.variety(meet)), "V(n) ∪ V(l) ⊆ V(n∧l) [n, l]", [n, l])?;
            }
        }
        Ok(())
    }

    fn union_identities(&self) -> Check {
        let ring = self.module.ring();
        for i in self.module.ideals() {
            for j in self.module.ideals() {
                self.spectrum.union_intersection_check(i, j)?;
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                self.spectrum.element_union_check(r, s)?;
            }
        }
        Ok(())
    }

    fn equal_colons(&self) -> Check {
        let spec = &self.spectrum;
        for &n in self.submodules() {
            for &l in self.submodules() {
                let same_colon = spec.colon(n) == spec.colon(l);
                let same_variety = spec.variety_star(n) == spec.variety_star(l);
                ensure(!same_colon || same_variety, "(n:e) = (l:e) ⇒ V*(n) = V*(l) [n, l]", [n, l])?;
                let both_prime = self.module.is_prime(n) && self.module.is_prime(l);
                ensure(
                    !(both_prime && same_variety) || same_colon,
                    "n, l prime, V*(n) = V*(l) ⇒ (n:e) = (l:e) [n, l]",
                    [n, l],
                )?;
            }
        }
        Ok(())
    }

    fn decomposition(&self) -> Check {
        let spec = &self.spectrum;
        for &n in self.submodules() {
            ensure(spec.variety(n).is_subset(&spec.variety_star(n)), "V(n) ⊆ V*(n) [n]", [n])?;
            spec.vstar_decomposition_check(n)?;
        }
        for (k, ideal) in self.module.ideals().iter().enumerate() {
            let ie = self.module.ideal_action(ideal);
            ensure(spec.variety(ie) == spec.variety_star(ie), "V(Ie) = V*(Ie) [ideal index]", [k])?;
        }
        Ok(())
    }

    fn finer(&self) -> Verdict {
        if !self.spectrum.is_top() {
            return Verdict::HypothesisNotMet {
                hypothesis: "top le-module".to_string(),
            };
        }
        let quasi = self.spectrum.quasi_family();
        Verdict::from_check(ensure(
            self.spectrum.star_family().is_subset(&quasi),
            "{V*(n)} ⊆ {V(n)}",
            Vec::new(),
        ))
    }

    fn closures(&self) -> Check {
        for y in subfamilies(self.points()) {
            let set: PointSet = y.iter().copied().collect();
            let meet = self.spectrum.im_meet(&set).expect("nonempty");
            let vstar = self.spectrum.variety_star(meet);
            ensure(self.space.closure(&set) == vstar, "closure(Y) = V*(ℑ(Y)) [Y]", y.clone())?;
            ensure(self.space.is_closed(&set) == (vstar == set), "Y closed ⇔ V*(ℑ(Y)) = Y [Y]", y)?;
        }
        Ok(())
    }

    fn point_closures(&self) -> Check {
        let spec = &self.spectrum;
        for &p in self.points() {
            let closure = self.space.point_closure(p);
            ensure(closure == spec.variety_star(p), "closure{p} = V*(p) [p]", [p])?;
            for &q in self.points() {
                let a = closure.contains(&q);
                let b = spec.colon(p).is_subset(&spec.colon(q));
                let c = spec.variety_star(q).is_subset(&spec.variety_star(p));
                ensure(a == b && b == c, "q ∈ closure{p} ⇔ (p:e) ⊆ (q:e) ⇔ V*(q) ⊆ V*(p) [p, q]", [p, q])?;
            }
            let singleton = PointSet::from([p]);
            let colon = spec.colon(p);
            let alone = self.points().iter().all(|&q| q == p || spec.colon(q) != colon);
            ensure(
                self.space.is_closed(&singleton) == (spec.colon_is_maximal_in_phi(p) && alone),
                "{p} closed ⇔ (p:e) maximal in Φ ∧ Spec_(p:e)(M) = {p} [p]",
                [p],
            )?;
        }
        spec.phi_and_t1_check()
    }

    fn point_varieties(&self) -> Check {
        for &p in self.points() {
            let v = self.spectrum.variety_star(p);
            ensure(self.space.is_closed(&v), "V*(p) closed [p]", [p])?;
            ensure(self.space.is_irreducible(&v).expect("p ∈ V*(p)"), "V*(p) irreducible [p]", [p])?;
        }
        Ok(())
    }

    fn irreducible_prime(&self) -> Check {
        let ring = self.module.ring();
        for y in subfamilies(self.points()) {
            let set: PointSet = y.iter().copied().collect();
            let irreducible = self.space.is_irreducible(&set).expect("nonempty");
            let meet = self.spectrum.im_meet(&set).expect("nonempty");
            ensure(!self.module.is_prime(meet) || irreducible, "ℑ(Y) prime ⇒ Y irreducible [Y]", y.clone())?;
            let colon = self.module.colon(meet);
            let psi = ring
                .intersect_ideals(set.iter().map(|&p| self.spectrum.colon(p)).collect::<Vec<_>>().iter())
                .expect("nonempty");
            ensure(psi == colon, "⋂(p:e) = (ℑ(Y):e) [Y]", y.clone())?;
            ensure(!irreducible || ring.is_prime_ideal(&colon), "Y irreducible ⇒ (ℑ(Y):e) prime [Y]", y)?;
        }
        Ok(())
    }

    fn irreducible_sufficient(&self) -> Check {
        let ring = self.module.ring();
        for y in subfamilies(self.points()) {
            let set: PointSet = y.iter().copied().collect();
            let irreducible = self.space.is_irreducible(&set).expect("nonempty");
            ensure(!self.spectrum.is_chain(&set) || irreducible, "Y chain ⇒ Y irreducible [Y]", y.clone())?;
            let colon = self.module.colon(self.spectrum.im_meet(&set).expect("nonempty"));
            if ring.is_prime_ideal(&colon) {
                let over = self.module.spectrum_over(&colon).expect("prime");
                ensure(
                    over.is_empty() || irreducible,
                    "(ℑ(Y):e) = P prime, Spec_P(M) ≠ ∅ ⇒ Y irreducible [Y]",
                    y,
                )?;
            }
        }
        self.spectrum.spec_over_prime_checks(&self.space)
    }
}

fn intersect_all(sets: impl Iterator<Item = PointSet>, all: &PointSet) -> PointSet {
    sets.fold(all.clone(), |acc, s| acc.intersection(&s).copied().collect())
}

/// Nonempty subfamilies in a canonical order: all of them for small
/// families, otherwise singletons, pairs and the whole family.
fn subfamilies(items: &[usize]) -> Vec<Vec<usize>> {
    let n = items.len();
    if n == 0 {
        return Vec::new();
    }
    if n <= SUBSET_LIMIT {
        return (1u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).collect())
            .collect();
    }
    let mut out: BTreeSet<Vec<usize>> = items.iter().map(|&a| vec![a]).collect();
    for (i, &a) in items.iter().enumerate() {
        for &b in &items[i + 1..] {
            out.insert(vec![a, b]);
        }
    }
    out.insert(items.to_vec());
    out.into_iter().collect()
}
