//! Integer specializations of `A`-complexes and their homology.

pub mod euler;
pub mod groups;
pub mod homology;
pub mod matrix;
pub mod smith;
pub mod spectral;

pub use euler::Laurent;
pub use groups::{dims_table, render_table, BigradedGroups, Group};
pub use homology::{
    euler_characteristic, euler_of_groups, field_dims, field_dims_char, homology,
    specialize_reduced, specialize_unreduced, HomologyError, IntComplex,
};
pub use matrix::Matrix;
pub use smith::{invariant_factors, smith_normal_form, Smith};
pub use spectral::{specialize_blt, spectral_pages, FilteredComplex, SpectralPage};
