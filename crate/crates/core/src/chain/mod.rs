//! Integer chain complexes, Smith normal form, and homology.

pub mod complex;
pub mod homology;
pub mod matrix;
pub mod snf;

pub use complex::{ChainComplex, Coefficients};
pub use homology::{
    bettis, chain_map, check_retract_obstruction, cycle_basis, homology, homology_all, induced_homology_map,
    reduce_rows, solve_boundary, sset_homology, ChainMap, HomologyPresentation, RetractReport, Solve,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
