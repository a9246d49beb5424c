//! Entropic and information inequalities for single qudits and bipartite
//! quantum states, together with their spin-tomographic counterparts.
//!
//! A 4-level state can be read as two qubits, as a spin-3/2, or in the
//! triplet/singlet basis; the same partial-trace and permutation maps then
//! turn bipartite inequalities into inequalities for a single qudit.

pub mod entropy;
pub mod error;
pub mod maps;
pub mod matcore;
pub mod random;
pub mod report;
pub mod states;
pub mod tomography;

pub use entropy::{shannon, von_neumann, ProbabilityVector};
pub use error::{Error, Result};
pub use maps::{IndexCoding, Keep, Permutation};
pub use matcore::ComplexMatrix;
pub use report::InequalityReport;
pub use states::{DensityMatrix, Measure, StateLabel};
