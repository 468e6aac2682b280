//! Two-term complexes of projective modules over `kQ / I`: Hom spaces in the
//! homotopy category, presilting tests, cylinders and Krull–Schmidt splitting.

pub mod algebra;
pub mod complex;
pub mod cylinder;
pub mod decompose;
pub mod error;
pub mod field;
pub mod hom;
pub mod linalg;
pub mod poly;
pub mod ring;

pub use algebra::{Algebra, AlgebraPresentation, ArrowSpec, Coefficient, FieldSpec, Path, Term};
pub use complex::{minimalize, random_complex, ComplexFile, TwoTermComplex};
pub use cylinder::{cylinder, cylinder_iterates, Cylinder};
pub use decompose::{
    classify_summand, decompose, generic_decomposition, GenericDecomposition, GenericSummand, Summand, SummandKind,
};
pub use error::{Error, Result};
pub use field::{Field, Gf, GfElem, Rationals, DEFAULT_PRIME};
pub use hom::{e_invariant, hom_complexes, hom_dim, is_presilting, is_presilting_over, EInvariant, HomSpace};
pub use ring::{LMat, Ring};
