//! Exact analysis of convex neural codes.
//!
//! The crate covers three layers:
//!
//! * [`code`]: neural codes, restriction, relabeling and the simplicial
//!   complex of a code;
//! * [`topology`]: links, contractibility certificates, rational homology,
//!   mandatory codewords and local goodness;
//! * [`geometry`]: exact rational polyhedra and the extraction of the code of
//!   an arrangement of open or closed polyhedral sets.
//!
//! On top of these, [`generators`] holds a corpus of named codes with
//! explicit realizations, [`formats`] the text file formats, and
//! [`analysis`] the report bundle used by the command-line frontend.

pub mod analysis;
pub mod code;
pub mod error;
pub mod formats;
pub mod generators;
pub mod geometry;
pub mod topology;

pub use analysis::AnalysisReport;
pub use code::{Codeword, NeuralCode, Permutation, SimplicialComplex};
pub use error::{Error, Result};
pub use geometry::{
    code_of_arrangement, Arrangement, LinearConstraint, Polyhedron, Rational, Relation, Topology,
};
pub use topology::{
    contractibility, is_locally_good, link, mandatory_codewords, reduced_homology, BettiVector,
    ContractibilityStatus, Verdict,
};
