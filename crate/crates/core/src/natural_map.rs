//! The natural map `ψ: Spec(M) → Spec(R/Ann(M))`, `p ↦ image of (p:e)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::check::{ensure, Check, Conditional, TruthVector};
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Ideal, RingSpectrum};
use crate::space::{FiniteSpace, PointSet};
use crate::topology::ModuleSpectrum;

const SURJECTIVE: &str = "ψ surjective";

#[derive(Debug, Clone)]
pub struct NaturalMap<'s, 'a> {
    spectrum: &'s ModuleSpectrum<'a>,
    annihilator: Ideal,
    quotient: FiniteRing,
    projection: Vec<usize>,
    quotient_spectrum: RingSpectrum,
    /// Point of `X^M` ↦ position in `quotient_spectrum`.
    table: BTreeMap<usize, usize>,
    source: FiniteSpace,
    target: FiniteSpace,
}

impl<'s, 'a> NaturalMap<'s, 'a> {
    /// Fails with `DegenerateModule` when `Ann(M) = R`; then `Spec(M)` is
    /// empty and there is no quotient ring to map to.
    pub fn new(spectrum: &'s ModuleSpectrum<'a>) -> Result<Self> {
        let module = spectrum.module();
        let ring = module.ring();
        let annihilator = module.annihilator();
        if !ring.is_proper(&annihilator) {
            return Err(Error::DegenerateModule);
        }
        let (quotient, projection) = ring.quotient(&annihilator)?;
        let quotient_spectrum = quotient.spectrum();
        let mut table = BTreeMap::new();
        for &p in spectrum.points() {
            let image = spectrum.colon(p).image(&projection);
            let pos = quotient_spectrum.position(&image).ok_or(Error::NotPrimeIdeal)?;
            table.insert(p, pos);
        }
        let target_closed = quotient
            .ideals()
            .iter()
            .map(|j| quotient_spectrum.variety(j))
            .collect();
        let target = FiniteSpace::new((0..quotient_spectrum.len()).collect(), target_closed)?;
        Ok(NaturalMap {
            spectrum,
            annihilator,
            quotient,
            projection,
            quotient_spectrum,
            table,
            source: spectrum.zariski(),
            target,
        })
    }

    pub fn annihilator(&self) -> &Ideal {
        &self.annihilator
    }

    pub fn quotient(&self) -> &FiniteRing {
        &self.quotient
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn quotient_spectrum(&self) -> &RingSpectrum {
        &self.quotient_spectrum
    }

    pub fn table(&self) -> &BTreeMap<usize, usize> {
        &self.table
    }

    /// `X^M` with the Zariski topology.
    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    /// `X^R̄` with the Zariski topology.
    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn apply(&self, p: usize) -> usize {
        self.table[&p]
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        set.iter().map(|p| self.table[p]).collect()
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        self.table
            .iter()
            .filter(|(_, q)| set.contains(q))
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<usize> = self.table.values().copied().collect();
        images.len() == self.table.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.source.points().clone()) == *self.target.points()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Preimages of closed sets are closed.
    pub fn is_continuous(&self) -> bool {
        self.target
            .closed_sets()
            .iter()
            .all(|c| self.source.is_closed(&self.preimage(c)))
    }

    pub fn is_closed_map(&self) -> bool {
        self.source
            .closed_sets()
            .iter()
            .all(|c| self.target.is_closed(&self.image(c)))
    }

    pub fn is_open_map(&self) -> bool {
        self.source
            .open_sets()
            .iter()
            .all(|u| self.target.is_open(&self.image(u)))
    }

    /// `ψ` is a bijective, continuous, closed map.
    pub fn is_homeomorphism(&self) -> bool {
        self.is_bijective() && self.is_continuous() && self.is_closed_map()
    }

    fn bar(&self, ideal: &Ideal) -> Ideal {
        ideal.image(&self.projection)
    }

    /// Ideals of `R` containing `Ann(M)`.
    pub fn ideals_over_annihilator(&self) -> Vec<&Ideal> {
        let module = self.spectrum.module();
        module
            .ideals()
            .iter()
            .filter(|i| self.annihilator.is_subset(i))
            .collect()
    }

    /// Primes of `R̄` correspond to primes of `R` over `Ann(M)` via the
    /// projection.
    pub fn correspondence_check(&self) -> Check {
        let ring = self.spectrum.module().ring();
        let over: BTreeSet<Ideal> = ring
            .spectrum()
            .points
            .into_iter()
            .filter(|p| self.annihilator.is_subset(p))
            .collect();
        let pulled: BTreeSet<Ideal> = self
            .quotient_spectrum
            .points
            .iter()
            .map(|q| q.preimage(&self.projection))
            .collect();
        ensure(over == pulled, "Spec(R̄) ↔ primes of R over Ann(M)", Vec::new())
    }

    /// `ψ⁻¹(V^R̄(Ī)) = V(Ie)` for every ideal `I ⊇ Ann(M)`.
    pub fn continuity_check(&self) -> Check {
        let module = self.spectrum.module();
        for (k, ideal) in module.ideals().iter().enumerate() {
            if !self.annihilator.is_subset(ideal) {
                continue;
            }
            let lhs = self.preimage(&self.quotient_spectrum.variety(&self.bar(ideal)));
            let rhs = self.spectrum.ideal_variety(ideal);
            ensure(lhs == rhs, "ψ⁻¹(V(Ī)) = V(Ie) [ideal index]", [k])?;
        }
        ensure(self.is_continuous(), "ψ continuous", Vec::new())
    }

    /// Clauses: ψ injective; `V*(p) = V*(q) ⇒ p = q`; `|Spec_P(M)| ≤ 1`.
    pub fn injectivity_battery(&self) -> TruthVector {
        TruthVector::new([
            ("ψ injective", self.is_injective()),
            ("V* separates points", v_star_separates(self.spectrum)),
            ("|Spec_P(M)| ≤ 1", self.spectrum.at_most_one_per_prime()),
        ])
    }

    /// Under surjectivity: `ψ(V*(n)) = V^R̄((n:e)‾)` and
    /// `ψ(X^M − V*(n)) = X^R̄ − V^R̄((n:e)‾)` for every submodule element, so
    /// `ψ` is closed and open.
    pub fn surjectivity_and_openclosed(&self) -> Conditional<Check> {
        if !self.is_surjective() {
            return Conditional::not_met(SURJECTIVE);
        }
        let check = (|| {
            for &n in self.spectrum.submodule_elements() {
                let vs = self.spectrum.variety_star(n);
                let target = self.quotient_spectrum.variety(&self.bar(&self.spectrum.colon(n)));
                ensure(self.image(&vs) == target, "ψ(V*(n)) = V(n:e)‾ [n]", [n])?;
                let open = self.source.complement(&vs);
                ensure(
                    self.image(&open) == self.target.complement(&target),
                    "ψ(X − V*(n)) = X̄ − V(n:e)‾ [n]",
                    [n],
                )?;
            }
            ensure(self.is_closed_map(), "ψ closed", Vec::new())?;
            ensure(self.is_open_map(), "ψ open", Vec::new())
        })();
        Conditional::Evaluated { outcome: check }
    }

    /// Clauses: ψ bijective; ψ a homeomorphism.
    pub fn homeomorphism_check(&self) -> TruthVector {
        TruthVector::new([
            ("ψ bijective", self.is_bijective()),
            ("ψ homeomorphism", self.is_homeomorphism()),
        ])
    }

    /// Under surjectivity, clauses: `X^M` connected; `X^R̄` connected; `R̄`
    /// has only the trivial idempotents. The check part covers the corollary
    /// that a quasi-local `R` or a prime `Ann(M)` forces both to be connected.
    pub fn connectedness_equivalence(&self) -> Conditional<(TruthVector, Check)> {
        if !self.is_surjective() {
            return Conditional::not_met(SURJECTIVE);
        }
        let ring = self.spectrum.module().ring();
        let clauses = TruthVector::new([
            ("X^M connected", self.source.is_connected()),
            ("X^R̄ connected", self.target.is_connected()),
            ("R̄ has trivial idempotents", self.quotient.has_trivial_idempotents()),
        ]);
        let forcing = ring.is_quasi_local() || ring.is_prime_ideal(&self.annihilator);
        let corollary = ensure(
            !forcing || (self.source.is_connected() && self.target.is_connected()),
            "R quasi-local or Ann(M) prime ⇒ both spaces connected",
            Vec::new(),
        );
        Conditional::Evaluated {
            outcome: (clauses, corollary),
        }
    }

    /// `ψ⁻¹(D_r̄) = X_r` for every `r`, and `ψ(X_r) ⊆ D_r̄` with equality
    /// when ψ is surjective.
    pub fn basic_open_check(&self) -> Check {
        let ring = self.spectrum.module().ring();
        let surjective = self.is_surjective();
        for r in ring.elements() {
            let d = self.quotient_spectrum.basic_open(&self.quotient, self.projection[r]);
            let xr = self.spectrum.basic_open(r);
            ensure(self.preimage(&d) == xr, "ψ⁻¹(D_r̄) = X_r [r]", [r])?;
            let image = self.image(&xr);
            ensure(image.is_subset(&d), "ψ(X_r) ⊆ D_r̄ [r]", [r])?;
            ensure(!surjective || image == d, "ψ surjective ⇒ ψ(X_r) = D_r̄ [r]", [r])?;
        }
        Ok(())
    }

    /// Under surjectivity: each `X_r` and `X^M` are quasi-compact, and the
    /// quasi-compact opens are closed under finite intersections and form a
    /// basis.
    pub fn quasi_compact_base_check(&self) -> Conditional<Check> {
        if !self.is_surjective() {
            return Conditional::not_met(SURJECTIVE);
        }
        let ring = self.spectrum.module().ring();
        let check = (|| {
            for r in ring.elements() {
                ensure(
                    self.source.is_quasi_compact(&self.spectrum.basic_open(r)),
                    "X_r quasi-compact [r]",
                    [r],
                )?;
            }
            let clauses = self.source.spectral_clauses();
            ensure(clauses.quasi_compact, "X^M quasi-compact", Vec::new())?;
            ensure(
                clauses.compact_opens_closed_under_intersection,
                "quasi-compact opens closed under ∩",
                Vec::new(),
            )?;
            ensure(clauses.compact_opens_form_basis, "quasi-compact opens form a basis", Vec::new())
        })();
        Conditional::Evaluated { outcome: check }
    }

    /// Under surjectivity: irreducible closed sets are exactly the `V*(p)`,
    /// each has a generic point, and `V*(p) ↦ ψ(p)` is a bijection from the
    /// irreducible components onto the minimal primes of `R̄`.
    pub fn component_minimal_prime_bijection(&self) -> Conditional<Check> {
        if !self.is_surjective() {
            return Conditional::not_met(SURJECTIVE);
        }
        let spec = self.spectrum;
        let check = (|| {
            let point_varieties: BTreeSet<PointSet> =
                spec.points().iter().map(|&p| spec.variety_star(p)).collect();
            let irreducible_closed: BTreeSet<PointSet> =
                self.source.irreducible_closed_sets().into_iter().collect();
            ensure(
                irreducible_closed == point_varieties,
                "irreducible closed sets = { V*(p) }",
                Vec::new(),
            )?;
            for y in &irreducible_closed {
                let generic = self.source.generic_points(y).expect("nonempty");
                ensure(!generic.is_empty(), "irreducible closed set has a generic point [Y]", y.iter().copied().collect::<Vec<_>>())?;
            }

            let components = self.source.irreducible_components();
            let mut assignment: BTreeMap<PointSet, BTreeSet<usize>> = BTreeMap::new();
            for &p in spec.points() {
                let v = spec.variety_star(p);
                if components.contains(&v) {
                    assignment.entry(v).or_default().insert(self.apply(p));
                }
            }
            for (comp, images) in &assignment {
                ensure(images.len() == 1, "V*(p) ↦ ψ(p) well defined [component]", comp.iter().copied().collect::<Vec<_>>())?;
            }
            ensure(assignment.len() == components.len(), "every component is some V*(p)", Vec::new())?;
            let images: Vec<usize> = assignment.values().map(|s| *s.iter().next().unwrap()).collect();
            let distinct: BTreeSet<usize> = images.iter().copied().collect();
            ensure(distinct.len() == images.len(), "component map injective", Vec::new())?;
            ensure(
                distinct == self.quotient_spectrum.minimal_primes(),
                "component map onto minimal primes of R̄",
                Vec::new(),
            )
        })();
        Conditional::Evaluated { outcome: check }
    }

    /// Under surjectivity, clauses: spectral; T0; `V*` separates points;
    /// `|Spec_P(M)| ≤ 1`; ψ injective; ψ a homeomorphism.
    pub fn spectral_battery(&self) -> Conditional<TruthVector> {
        if !self.is_surjective() {
            return Conditional::not_met(SURJECTIVE);
        }
        Conditional::Evaluated {
            outcome: TruthVector::new([
                ("X^M spectral", self.source.spectral_clauses().holds()),
                ("X^M T0", self.source.is_t0()),
                ("V* separates points", v_star_separates(self.spectrum)),
                ("|Spec_P(M)| ≤ 1", self.spectrum.at_most_one_per_prime()),
                ("ψ injective", self.is_injective()),
                ("ψ homeomorphism", self.is_homeomorphism()),
            ]),
        }
    }

    /// For multiplication le-modules with surjective ψ: `(n:e)e = n` for every
    /// submodule element and `X^M` is spectral.
    pub fn multiplication_spectral_check(&self) -> Conditional<Check> {
        let module = self.spectrum.module();
        if !module.is_multiplication() {
            return Conditional::not_met("multiplication le-module");
        }
        if !self.is_surjective() {
            return Conditional::not_met(SURJECTIVE);
        }
        let check = (|| {
            for &n in self.spectrum.submodule_elements() {
                ensure(
                    module.ideal_action(&self.spectrum.colon(n)) == n,
                    "(n:e)e = n [n]",
                    [n],
                )?;
            }
            ensure(self.source.spectral_clauses().holds(), "X^M spectral", Vec::new())
        })();
        Conditional::Evaluated { outcome: check }
    }

    /// When `Im ψ` is closed in `X^R̄`, clauses: spectral; ψ injective.
    pub fn image_closed_criterion(&self) -> Conditional<TruthVector> {
        let image = self.image(&self.source.points().clone());
        if !self.target.is_closed(&image) {
            return Conditional::not_met("Im ψ closed");
        }
        Conditional::Evaluated {
            outcome: TruthVector::new([
                ("X^M spectral", self.source.spectral_clauses().holds()),
                ("ψ injective", self.is_injective()),
            ]),
        }
    }
}

/// `V*(p) = V*(q) ⇒ p = q` on `Spec(M)`.
pub fn v_star_separates(spectrum: &ModuleSpectrum) -> bool {
    let varieties: BTreeSet<PointSet> = spectrum.points().iter().map(|&p| spectrum.variety_star(p)).collect();
    varieties.len() == spectrum.points().len()
}

/// For nonempty `Spec(M)`, clauses: spectral; `|Spec_P(M)| ≤ 1` for all `P`.
pub fn finite_spec_criterion(spectrum: &ModuleSpectrum) -> Result<TruthVector> {
    if spectrum.points().is_empty() {
        return Err(Error::EmptySpectrum);
    }
    Ok(TruthVector::new([
        ("X^M spectral", spectrum.zariski().spectral_clauses().holds()),
        ("|Spec_P(M)| ≤ 1", spectrum.at_most_one_per_prime()),
    ]))
}
