//! Exact computation with linear maps that preserve rank-one Toeplitz
//! matrices.
//!
//! The crate works over exact fields only: the rationals [`Q`], the Gaussian
//! rationals [`QI`] and the prime fields [`Fp`]. A linear map on `m x n`
//! Toeplitz matrices is represented by its coordinate matrix `L`, an
//! `ℓ x ℓ` matrix with `ℓ = m + n - 1` acting on Toeplitz coordinates.
//!
//! ```
//! use toeplitz_preservers::{classify, Q, Field, DenseMatrix, PreserverKind};
//!
//! // coordinate reversal is the transpose map A -> Aᵀ
//! let l = DenseMatrix::from_fn(3, 3, |i, j| if i + j == 2 { Q::from_i64(1) } else { Q::from_i64(0) });
//! let verdict = classify(&l).unwrap();
//! assert!(verdict.is_preserver());
//! assert_eq!(verdict.kind(), PreserverKind::VFlip);
//! ```

pub mod classifier;
pub mod error;
pub mod generators;
pub mod json;
pub mod moment;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod structmat;

pub use classifier::{classify, PreserverKind, PreserverVerdict, Regime};
pub use error::{Error, Result};
pub use generators::{build_preserver, GeneratorSpec, PreserverForm, PreserverPair};
pub use moment::{moment_membership, ProjectiveParameter};
pub use poly::Polynomial;
pub use scalar::{binomial, powu, Field, FieldDescriptor, FieldKind, Fp, GaussianRational};
pub use structmat::{hankel_conjugate, toeplitz_conjugate, DenseMatrix, HankelMatrix, ToeplitzMatrix};

pub use num_rational::BigRational;

/// The rationals.
pub type Q = BigRational;
/// The Gaussian rationals `Q(i)`.
pub type QI = GaussianRational;
pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
pub type Gf7 = Fp<7>;
pub type Gf13 = Fp<13>;

pub type MatrixQ = DenseMatrix<Q>;
pub type ToeplitzQ = ToeplitzMatrix<Q>;
pub type PolyQ = Polynomial<Q>;
