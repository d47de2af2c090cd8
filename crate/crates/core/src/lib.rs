//! Matroids from Latin squares and hypercubes, Orlik–Solomon algebras and
//! the cohomology of their Aomoto complexes over exact fields.
//!
//! The algebra is generic over [`scalar::Field`]; the aliases below fix the
//! two fields used in practice, the rationals and cyclotomic fields.

mod bits;
pub mod exterior;
pub mod latin;
pub mod matroid;
pub mod oscohomology;
pub mod realization;
pub mod scalar;

pub use exterior::{decomposable_relation_check, ExteriorElement};
pub use latin::{LatinHypercube, LatinSquare, Subsquare};
pub use matroid::{CircuitFamily, Matroid};
pub use oscohomology::{CohomologyReport, OsAlgebra, Weight};
pub use realization::Configuration;
pub use scalar::{Cyclotomic, Field, Matrix, Rational};

pub type QMatrix = Matrix<Rational>;
pub type CyclotomicMatrix = Matrix<Cyclotomic>;
pub type QExterior = ExteriorElement<Rational>;
pub type CyclotomicExterior = ExteriorElement<Cyclotomic>;
pub type QWeight = Weight<Rational>;
pub type CyclotomicWeight = Weight<Cyclotomic>;
pub type QConfiguration = Configuration<Rational>;
pub type CyclotomicConfiguration = Configuration<Cyclotomic>;
