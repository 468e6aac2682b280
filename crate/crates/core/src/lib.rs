//! Cluster g-vector fans computed by seed mutation.
//!
//! * [`quiver`], [`canon`], [`class`]: quivers as skew-symmetric matrices,
//!   canonical forms, mutation classes and the mutation-finite families.
//! * [`seeds`]: g-vector seeds with principal coefficients.
//! * [`cone`], [`fan`], [`coverage`]: exact simplicial cone geometry, fan
//!   validity, half-space detection and sampled coverage of the sphere.

pub mod canon;
pub mod class;
pub mod cone;
pub mod coverage;
pub mod error;
pub mod fan;
pub mod lp;
pub mod quiver;
pub mod seeds;

pub use class::{classify, explore_class, explore_class_with, mutation_class, Classification, Exceptional, MutationClassReport, Verdict};
pub use cone::{normalize_ray, SimplicialCone};
pub use coverage::{coverage, CoverageReport, Sampler};
pub use error::{Error, Result};
pub use fan::{fan_from_seeds, fan_is_valid, halfspace_detect, supporting_normal, Fan, FanFile, ValidityReport};
pub use quiver::ExchangeMatrix;
pub use seeds::{enumerate_seeds, GSeed, IntMatrix, SeedSet};
