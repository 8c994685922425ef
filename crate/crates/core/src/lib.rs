//! Representation-multiplicity spectra over finite abelian groups and
//! exact verification of Pollard-type lower bounds.
//!
//! Groups are written additively. For nonempty `A, B ⊆ G` the spectrum
//! `r(x) = |{(a, b) ∈ A × B : a + b = x}|` determines the sets
//! `N_t = {x : r(x) >= t}` and the partial sums `S_t = Σ_{i<=t} |N_i|`, which
//! are the left-hand side of every bound in [`bounds`].

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod group;
pub mod search;
pub mod setops;
pub mod spectrum;

pub use bounds::{BoundReport, BoundSet, Evaluator, StrictCase};
pub use certificate::{build_certificate, verify_certificate, Certificate, CertificateNode, NodeKind};
pub use error::{Error, Result};
pub use group::{Element, GroupSpec, SubgroupLattice};
pub use search::{sweep, Mode, SearchConfig, SearchWitness, SweepOutput, SweepSummary};
pub use setops::GSet;
pub use spectrum::{compute_spectrum, Spectrum};
