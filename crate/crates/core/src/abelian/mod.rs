//! Integer linear algebra: Smith normal form, (co)homology presentations over
//! `Z`, and presentations of subgroups given by generators.

mod group;
mod matrix;
mod snf;

pub use group::{
    relative_cohomology, relative_homology, subgroup_image, CohomologyGroup, CoordinateError,
    GroupPresentation, HomologyGroup, IsoType, SubgroupPresentation,
};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
