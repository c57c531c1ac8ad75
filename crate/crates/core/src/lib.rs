//! Exact flag-vector combinatorics of convex polytopes.
//!
//! * [`lattice`] builds face lattices of standard families and counts
//!   chains of faces by brute force.
//! * [`flagalg`] handles the generalized Dehn–Sommerville relations, the
//!   sparse basis and completion of sparse data.
//! * [`forms`] provides linear forms on flag vectors, their convolution and
//!   the inequality batteries for dimensions 5 to 7.
//! * [`cdindex`] converts flag vectors to `ab`/`cd`-indices (numerically or
//!   symbolically) and runs the toric g recursion.
//! * [`families`] has closed-form f-vectors, connected sums and the
//!   convexity/unimodality predicates.
//! * [`verify`] collects all of the above into one reproducible report.
//!
//! Math that does not depend on exactness is generic over [`Scalar`]; the
//! aliases below fix the exact instantiation used throughout.

pub mod cdindex;
pub mod error;
pub mod families;
pub mod flagalg;
pub mod flagset;
pub mod forms;
pub mod lattice;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use flagalg::{FVector, FlagVector, SparseBasis};
pub use flagset::FlagSet;
pub use lattice::FaceLattice;
pub use scalar::{Module, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Flag form with exact coefficients.
pub type Form = forms::FlagForm<Rational>;

/// Flag form with `f64` coefficients, for approximate evaluation.
pub type FormF64 = forms::FlagForm<f64>;

/// cd-index with exact coefficients.
pub type CdIndex = cdindex::CdPolynomial<Rational>;

/// cd-index whose coefficients are flag forms.
pub type SymbolicCdIndex = cdindex::CdPolynomial<Form>;

/// Log-convexity ratios with exact values.
pub type Ratios = families::RatioTriple<Rational>;
