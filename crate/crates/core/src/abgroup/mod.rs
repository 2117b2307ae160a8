//! Finitely generated abelian groups and the exact linear algebra behind
//! them: integer matrices, Smith normal form, homology.

mod group;
mod homology;
mod matrix;
mod snf;

pub use group::{FGAbelianGroup, GradedGroup};
pub use homology::{cokernel_group, homology, homology_presented, kernel_group, PresentedGroup};
pub use matrix::IntMatrix;
pub use snf::{snf, Snf};

pub(crate) use snf::smith;
