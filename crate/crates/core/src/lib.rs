//! Computational core for half-translation surfaces: validation, Delaunay
//! triangulations, orientation double covers, anti-invariant homology,
//! period coordinates, deformations and the associated analytic checks.

pub mod bundled;
pub mod cover;
pub mod deformation;
pub mod delaunay;
pub mod error;
pub mod homology;
pub mod io;
pub mod levi;
pub mod linalg;
pub mod periods;
pub mod random;
pub mod report;
pub mod scalar;
pub mod strata;
pub mod suite;
pub mod surface;
pub mod svg;

pub use error::{QdError, Result};
pub use scalar::{Scalar, ScalarMode, Q};
pub use surface::{stratum_dim, FlatSurface, StratumSymbol};
