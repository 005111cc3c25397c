//! Exact rational polyhedral geometry: feasibility of mixed strict and weak
//! linear systems, atoms of an arrangement, and extraction of its code.

mod atoms;
mod constraint;
mod feasibility;

pub use atoms::{
    atom_is_nonempty, code_of_arrangement, extract, intersection_is_nonempty, line_meets,
    set_is_empty, Extraction, MAX_EXTRACTION_SETS,
};
pub use constraint::{
    int, parse_rational, ratio, Arrangement, LinearConstraint, Polyhedron, Rational, Relation,
    Topology,
};
pub use feasibility::is_feasible;
