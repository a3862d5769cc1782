//! Output records for each command and their text renderings.

use std::fmt::Write as _;

use lespec::space::PointSetProperties;
use lespec::verifier::Verdict;
use lespec::{Error, Ideal, LeModule, ModuleSpectrum, NaturalMap, TopologyKind, VerificationReport};
use serde::Serialize;

#[derive(Serialize)]
pub struct Element {
    pub index: usize,
    pub label: String,
}

fn element(module: &LeModule, index: usize) -> Element {
    Element {
        index,
        label: module.label(index).to_string(),
    }
}

#[derive(Serialize)]
pub struct Validation {
    pub instance: String,
    pub valid: bool,
    pub ring_order: usize,
    pub lattice_size: usize,
    pub submodule_elements: usize,
}

impl Validation {
    pub fn to_text(&self) -> String {
        format!(
            "{}: valid (ring order {}, lattice size {}, {} submodule elements)\n",
            self.instance, self.ring_order, self.lattice_size, self.submodule_elements
        )
    }
}

pub fn validation(name: &str, module: &LeModule) -> Validation {
    Validation {
        instance: name.to_string(),
        valid: true,
        ring_order: module.ring().order(),
        lattice_size: module.size(),
        submodule_elements: module.submodule_elements().len(),
    }
}

#[derive(Serialize)]
pub struct Point {
    pub index: usize,
    pub label: String,
    pub colon: Ideal,
    /// Position of ψ(p) in `quotient.spectrum`.
    pub psi: Option<usize>,
}

#[derive(Serialize)]
pub struct Quotient {
    pub order: usize,
    pub projection: Vec<usize>,
    pub spectrum: Vec<Ideal>,
    pub psi_injective: bool,
    pub psi_surjective: bool,
}

#[derive(Serialize)]
pub struct SpecReport {
    pub instance: String,
    pub ring_order: usize,
    pub lattice_size: usize,
    pub submodule_elements: Vec<Element>,
    pub annihilator: Ideal,
    pub points: Vec<Point>,
    pub quotient: Option<Quotient>,
}

pub fn spectrum(name: &str, module: &LeModule) -> SpecReport {
    let spec = ModuleSpectrum::new(module);
    let psi = NaturalMap::new(&spec).ok();
    let points = spec
        .points()
        .iter()
        .map(|&p| Point {
            index: p,
            label: module.label(p).to_string(),
            colon: spec.colon(p),
            psi: psi.as_ref().map(|m| m.apply(p)),
        })
        .collect();
    let quotient = psi.as_ref().map(|m| Quotient {
        order: m.quotient().order(),
        projection: m.projection().to_vec(),
        spectrum: m.quotient_spectrum().points.clone(),
        psi_injective: m.is_injective(),
        psi_surjective: m.is_surjective(),
    });
    SpecReport {
        instance: name.to_string(),
        ring_order: module.ring().order(),
        lattice_size: module.size(),
        submodule_elements: spec.submodule_elements().iter().map(|&n| element(module, n)).collect(),
        annihilator: module.annihilator(),
        points,
        quotient,
    }
}

impl SpecReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "instance {}", self.instance).unwrap();
        writeln!(s, "ring order {}, lattice size {}", self.ring_order, self.lattice_size).unwrap();
        let subs: Vec<&str> = self.submodule_elements.iter().map(|e| e.label.as_str()).collect();
        writeln!(s, "submodule elements: {}", subs.join(" ")).unwrap();
        writeln!(s, "Ann(M) = {}", self.annihilator).unwrap();
        if self.points.is_empty() {
            writeln!(s, "Spec(M) is empty").unwrap();
        } else {
            writeln!(s, "Spec(M): {} point(s)", self.points.len()).unwrap();
            for p in &self.points {
                write!(s, "  [{}] {}  (p:e) = {}", p.index, p.label, p.colon).unwrap();
                if let (Some(k), Some(q)) = (p.psi, &self.quotient) {
                    write!(s, "  ψ ↦ {} in R̄", q.spectrum[k]).unwrap();
                }
                s.push('\n');
            }
        }
        match &self.quotient {
            Some(q) => {
                writeln!(s, "R̄ = R/Ann(M): order {}, projection {:?}", q.order, q.projection).unwrap();
                let primes: Vec<String> = q.spectrum.iter().map(ToString::to_string).collect();
                writeln!(s, "Spec(R̄): {}", primes.join(" ")).unwrap();
                writeln!(s, "ψ injective: {}, surjective: {}", q.psi_injective, q.psi_surjective).unwrap();
            }
            None => writeln!(s, "Ann(M) = R: no quotient ring").unwrap(),
        }
        s
    }
}

#[derive(Serialize)]
pub struct TopologyReport {
    pub instance: String,
    pub which: TopologyKind,
    pub points: Vec<Element>,
    /// Each closed set as a sorted list of point indices.
    pub closed_sets: Vec<Vec<usize>>,
    pub properties: PointSetProperties,
    pub note: &'static str,
}

const QUASI_COMPACT_NOTE: &str = "every finite space is quasi-compact";

pub fn topology(name: &str, module: &LeModule, kind: TopologyKind) -> Result<TopologyReport, Error> {
    let spec = ModuleSpectrum::new(module);
    let top = spec.topology(kind)?;
    Ok(TopologyReport {
        instance: name.to_string(),
        which: kind,
        points: spec.points().iter().map(|&p| element(module, p)).collect(),
        closed_sets: top
            .space
            .closed_sets()
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect(),
        properties: top.space.properties(),
        note: QUASI_COMPACT_NOTE,
    })
}

impl TopologyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "instance {} topology {}", self.instance, self.which.name()).unwrap();
        let labels: Vec<String> = self.points.iter().map(|p| format!("[{}] {}", p.index, p.label)).collect();
        writeln!(s, "points: {}", labels.join(", ")).unwrap();
        writeln!(s, "closed sets: {}", self.closed_sets.len()).unwrap();
        for c in &self.closed_sets {
            let items: Vec<String> = c.iter().map(ToString::to_string).collect();
            writeln!(s, "  {{{}}}", items.join(",")).unwrap();
        }
        let p = &self.properties;
        writeln!(
            s,
            "T0 {} T1 {} connected {} quasi-compact {} spectral {}",
            p.t0, p.t1, p.connected, p.quasi_compact, p.spectral
        )
        .unwrap();
        writeln!(s, "note: {}", self.note).unwrap();
        s
    }
}

pub fn verification_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    for e in &report.entries {
        let detail = match &e.verdict {
            Verdict::Verified { clauses: None } => "verified".to_string(),
            Verdict::Verified { clauses: Some(tv) } => {
                let values: Vec<&str> = tv.0.iter().map(|(_, v)| if *v { "T" } else { "F" }).collect();
                format!("verified [{}]", values.join(""))
            }
            Verdict::Falsified { clause, witness } => format!("FALSIFIED {clause} at {witness:?}"),
            Verdict::HypothesisNotMet { hypothesis } => format!("hypothesis not met: {hypothesis}"),
            Verdict::NotApplicable { reason } => format!("not applicable: {reason}"),
        };
        writeln!(s, "{:<28} {:<5} {}", e.instance, e.statement.tag(), detail).unwrap();
    }
    let m = &report.summary;
    writeln!(
        s,
        "instances {} statements {} verified {} falsified {} hypothesis-not-met {} not-applicable {}",
        m.instances, m.statements, m.verified, m.falsified, m.hypothesis_not_met, m.not_applicable
    )
    .unwrap();
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn lattice_dot(name: &str, module: &LeModule) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    for m in module.lattice().elements() {
        writeln!(s, "  n{m} [label={}];", quote(module.label(m))).unwrap();
    }
    for (a, b) in module.lattice().covers() {
        writeln!(s, "  n{a} -> n{b};").unwrap();
    }
    s.push_str("}\n");
    s
}

/// Edge `p -> q` iff `q` lies in the closure of `{p}`.
pub fn specialization_dot(name: &str, module: &LeModule) -> String {
    let spec = ModuleSpectrum::new(module);
    let space = spec.zariski();
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    for &p in spec.points() {
        writeln!(s, "  n{p} [label={}];", quote(module.label(p))).unwrap();
    }
    for (p, q) in space.specialization_edges() {
        writeln!(s, "  n{p} -> n{q};").unwrap();
    }
    s.push_str("}\n");
    s
}
