//! Exact-arithmetic machinery for proper axis-parallel box tilings of
//! [-1,+1]^d: slicing and cutting, properness checks, separations and
//! general-position perturbation, the orientation digraph, and the
//! construction and verification of (d+1)-order realizers of the induced
//! simplicial complex.

pub mod complex;
pub mod coord;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod order;
pub mod properness;
pub mod separations;
pub mod tiling;

pub use complex::{
    build_complex, dm_dimension, verify_realizer, DmOptions, DmResult, LinearOrder, Realizer,
    SimplicialComplex, VerifyResult,
};
pub use coord::{Coord, Rat};
pub use error::{Error, Result};
pub use geometry::{sides_of, Box, BoxId, Interval, Side, Sign};
pub use order::{
    build_digraph, collapse_corner, construct_realizer, is_acyclic, Acyclicity, Collapse, Digraph,
};
pub use properness::{
    check_depth, check_families, check_pairwise, max_depth, touch_witness, DepthResult,
    PropernessReport, Witness,
};
pub use separations::{
    compute_separations, coplanar_pairs, perturb_general_position, separation_is_box,
    touch_relation, PerturbationResult, Separation, ShapeResult,
};
pub use tiling::{
    frame_box, make_exterior, ExtendedTiling, MappedTiling, Tiling, ValidationReport, Violation,
};
pub use generate::{all_fixtures, fixture, random_proper, Fixture, GenSpec};
