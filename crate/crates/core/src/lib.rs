//! Exact construction of spin-adapted w-ensemble occupation-number polytopes.
//!
//! The pipeline runs configuration poset → lineups → generating vertices →
//! normal fan → minimal hyperplane representation. Everything that defines a
//! polytope is computed in exact rational arithmetic; the only floating point
//! code is the eigenvalue routine used to read spectra off user matrices.
//!
//! ```
//! use spin_polytope::{build_polytope, QuantumSystem, WeightVector};
//!
//! let sys = QuantumSystem::new(4, 2, 4, None).unwrap();
//! let w = WeightVector::parse("7/10,3/10").unwrap();
//! let p = build_polytope(&sys, &w).unwrap();
//! assert_eq!(p.vertices().len(), 2);
//! ```

pub mod affine;
pub mod catalog;
pub mod error;
pub mod geometry;
pub mod lineups;
pub mod oracle;
pub mod poset;
pub mod scalar;
pub mod system;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

pub use affine::AffineForm;
pub use error::{Error, Result};
pub use geometry::{
    build_polytope, contraction_check, density_domain_check, member_hrep,
    member_majorization, minimize_linear, HRep, LinearConstraint, Polytope,
};
pub use lineups::{enumerate_lineups, generating_vertex, generating_vertices, GeneratingVertex, Lineup};
pub use poset::{build_poset, enumerate_configurations, hilbert_dim, multiplicity, Configuration};
pub use scalar::{format_rational, parse_rational};
pub use system::{majorizes, sort_descending, QuantumSystem, Spectrum, WeightVector};
