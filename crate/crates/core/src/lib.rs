//! Finite le-modules over finite commutative rings, their prime spectra,
//! the topologies on those spectra, and the natural map to the spectrum of
//! `R/Ann(M)`.

pub mod check;
pub mod descriptor;
pub mod error;
pub mod instances;
pub mod lattice;
pub mod module;
pub mod natural_map;
pub mod ring;
pub mod space;
pub mod topology;
pub mod verifier;

pub use check::{Check, Conditional, Counterexample, TruthVector};
pub use descriptor::{parse_descriptors, InstanceDescriptor, ModuleSpec, RingSpec};
pub use error::{Axiom, Error, Result};
pub use lattice::FiniteBoundedLattice;
pub use module::LeModule;
pub use natural_map::NaturalMap;
pub use ring::{FiniteRing, Ideal, RingSpectrum};
pub use space::{FiniteSpace, PointSet};
pub use topology::{ModuleSpectrum, SpectrumTopology, TopologyKind};
pub use verifier::{run_all, StatementId, Verdict, VerificationReport};
