//! Projective incidence geometry over exact rings: von Staudt gadgets,
//! compilation of polynomial systems into point/line arrangements, and the
//! Artin/Shephard group representations attached to their realizations.
//!
//! The geometric core is generic over [`arith::Scalar`]; the aliases below
//! fix the three rings used in practice.

pub mod arith;
pub mod arrangement;
pub mod deform;
pub mod error;
pub mod gadgets;
pub mod geom;
pub mod geometrizer;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod represent;

pub use arith::{RatFunc, Rational, RingDescriptor, Scalar, Truncated};
pub use error::{Error, Result};

/// Points, lines and realizations over ℚ.
pub type QPoint = geom::ProjPoint<Rational>;
pub type QLine = geom::ProjLine<Rational>;
pub type QRealization = gadgets::Realization<Rational>;

/// Over the rational function field `ℚ(a, b, …)`.
pub type FuncPoint = geom::ProjPoint<RatFunc>;
pub type FuncLine = geom::ProjLine<RatFunc>;
pub type FuncRealization = gadgets::Realization<RatFunc>;

/// Over `ℚ[t]/(t^(m+1))`.
pub type TruncPoint = geom::ProjPoint<Truncated>;
pub type TruncLine = geom::ProjLine<Truncated>;
pub type TruncRealization = gadgets::Realization<Truncated>;
