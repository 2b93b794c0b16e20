//! Exact arithmetic for monogenic polynomials over the quaternions, real
//! Clifford algebras and the octonions: Fischer decompositions,
//! Cauchy–Kovalevskaya extensions, extremal norm ratios and
//! subharmonicity checks for `|∇ᵐf|^α`.

pub mod algebra;
pub mod error;
pub mod extremal;
pub mod gegenbauer;
pub mod inner;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod setting;
pub mod spaces;
pub mod subharmonic;

pub use algebra::{AlgebraElement, AlgebraKind, Blade};
pub use error::{Error, Result};
pub use poly::{HPolynomial, OperatorSpec};
pub use rational::Rational;
pub use setting::Setting;
