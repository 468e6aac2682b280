//! Truncated cluster scattering diagrams, with wall functions stored as
//! logarithms in the graded Lie algebra spanned by `x^d`, `d ∈ N⁺`.

pub mod error;
pub mod series;
pub mod walls;

pub use error::{Error, Result};
pub use series::{bch_mul, bracket, delta, LieSeries, ScatterLattice, SeriesTerm};
pub use walls::{
    attach_fan_functions, complete_rank2, dilog, initial_walls, is_dilog, loop_crossings, path_ordered_product, support_condition, wall_terms, Attachment, Completion, Wall, WallFile,
};
