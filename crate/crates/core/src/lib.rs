//! Conformal modules and half-plane conformal maps of two stretched
//! polyominoes: the P-pentomino `P_H` and the L-tetromino `R_H`.
//!
//! `P_H` is the hexagon with vertices `i, 3i, 2H+3i, 2H, H, H+i`; `R_H` has
//! vertices `2i, 3i, 2H+3i, 2H, H, H+2i`. Both are L-shaped unions of unit
//! squares stretched by `x+iy -> Hx+iy`. For each shape the crate computes,
//! in closed form up to scalar root-finding and quadrature:
//!
//! * the conformal module of the quadrilateral marked at sides `AB` and `EF`
//!   (an elliptic-integral ratio of a modulus built from accessory
//!   parameters of a degree-5 rational map),
//! * the Schwarz-Christoffel map of the upper half-plane onto the polygon,
//!   with all prevertices known analytically,
//! * an independent finite-difference estimate of the same module from the
//!   extremal-length definition, for cross-validation.
//!
//! The numerical core is generic over the scalar type through [`Real`];
//! `f64` aliases are exported at the crate root. Accuracy in `f64` holds for
//! stretch factors `H` in `[1/16, 30]`: beyond that the complementary
//! elliptic modulus underflows the significand of `1 - lambda`.

// `!(x > y)` style guards are used on purpose throughout: they reject NaN
// inputs, which `x <= y` rewrites would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod elliptic;
pub mod error;
pub mod oracle;
pub mod pentomino;
mod quad;
pub mod rootfind;
pub mod scmap;
pub mod shapes;
pub mod tetromino;

mod real;

pub use error::{Error, Result};
pub use real::Real;

/// `f64` elliptic modulus pair.
pub type Modulus64 = elliptic::Modulus<f64>;
/// `f64` pentomino solution.
pub type PentominoSolution64 = pentomino::PentominoSolution<f64>;
/// `f64` tetromino solution.
pub type TetrominoSolution64 = tetromino::TetrominoSolution<f64>;
/// `f64` Schwarz-Christoffel map.
pub type ScSpec64 = scmap::ScSpec<f64>;
/// `f64` oracle quadrilateral.
pub type QuadrilateralSpec64 = oracle::QuadrilateralSpec<f64>;
