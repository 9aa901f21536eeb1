//! Fueter–Sce mapping theorem in R^{m+1} for odd m: the forward map
//! Ft[h, P_k], its constructive inverse, and numerical verification tools.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod clifford;
pub mod error;
pub mod forward;
pub mod inverse;
pub mod io;
pub mod jet;
pub mod monogenic;
pub mod ode;
pub mod oracles;
pub mod quadrature;
pub mod radial;
pub mod symbolic;
pub mod verify;

pub use clifford::{Multivector, Paravector};
pub use error::{FueterError, Result};
pub use forward::{fueter_map, FueterConfig};
pub use inverse::{invert, AxialFunction, FueterPrimitive, Rectangle};
pub use jet::{Holomorphic, HolomorphicExpr, Jet};
pub use monogenic::{builtin_pk, HomogeneousPolynomial, MonogenicPolynomial, PkVariant};
pub use ode::OdeConfig;
pub use quadrature::QuadratureConfig;
