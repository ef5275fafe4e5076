//! Exact computation with finite-dimensional algebras over `Q_p`.

pub mod algebra;
pub mod analysis;
pub mod bstar;
pub mod check;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod ideal;
pub mod idempotent;
pub mod linalg;
pub mod radical;
pub mod residue;
pub mod spec;
pub mod star;

pub use algebra::{Algebra, Element};
pub use error::{Error, Result};
pub use field::{Field, Norm, Scalar};
pub use linalg::{Subspace, UltraMatrix};
pub use spec::AlgebraSpec;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    pub mod algebras {}
    #[doc = include_str!("../../../book/src/radical.md")]
    pub mod radical {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    pub mod ideals {}
    #[doc = include_str!("../../../book/src/idempotents.md")]
    pub mod idempotents {}
    #[doc = include_str!("../../../book/src/involutions.md")]
    pub mod involutions {}
    #[doc = include_str!("../../../book/src/bstar.md")]
    pub mod bstar {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
