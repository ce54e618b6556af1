//! Exact commutative rings underneath every other module.
//!
//! Everything in the crate is generic over [`Scalar`], a commutative
//! ℚ-algebra with a decidable unit test. Three rings ship:
//!
//! * [`Rational`] is ℚ, arbitrary precision.
//! * [`RatFunc`] is ℚ(x₁, …, xₙ), reduced quotients of integer polynomials.
//! * [`Truncated`] is ℚ[t]/(t^(m+1)).
//!
//! The subtrait [`Field`] marks rings where every nonzero element is a unit;
//! anything that needs a zero test with field semantics (anisotropy, kernels,
//! matrix groups) asks for `Field`.

mod parse;
mod poly;
mod ratfunc;
mod rational;
mod truncated;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse_expr;
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use rational::{parse_rational, Rational};
pub use truncated::Truncated;

/// A commutative ℚ-algebra with exact equality and a unit test.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_unit(&self) -> bool;

    fn unit_inverse(&self) -> Option<Self>;

    /// Image of a rational number under the structure map ℚ → R.
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    /// Whether `self` and `other` live in the same ring. Constants are
    /// compatible with everything.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

/// A [`Scalar`] ring in which every nonzero element is a unit.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self> {
        self.unit_inverse()
    }
}

/// Ring operations exposed through [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked ring arithmetic. `Neg` ignores `b` apart from the descriptor check.
pub fn arith<S: Scalar>(op: ArithOp, a: &S, b: &S) -> Result<S> {
    if !a.compatible(b) {
        return Err(Error::DescriptorMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(match op {
        ArithOp::Add => a.clone() + b.clone(),
        ArithOp::Sub => a.clone() - b.clone(),
        ArithOp::Mul => a.clone() * b.clone(),
        ArithOp::Neg => -a.clone(),
    })
}

pub fn unit_inverse<S: Scalar>(a: &S) -> Result<S> {
    a.unit_inverse()
        .ok_or_else(|| Error::NotAUnit(format!("{a:?}")))
}

/// Runtime description of which ring a value lives in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    Rationals,
    FunctionField { variables: Vec<String> },
    Truncated { order: usize },
}

impl RingDescriptor {
    pub fn function_field<I, T>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let d = RingDescriptor::FunctionField {
            variables: vars.into_iter().map(Into::into).collect(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn truncated(order: usize) -> Result<Self> {
        let d = RingDescriptor::Truncated { order };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Rationals => Ok(()),
            RingDescriptor::Truncated { order } => {
                if *order == 0 {
                    Err(Error::InvalidRing(
                        "truncation order must be at least 1".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            RingDescriptor::FunctionField { variables } => {
                for (i, v) in variables.iter().enumerate() {
                    let ok = !v.is_empty()
                        && v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
                    }
                    if variables[..i].contains(v) {
                        return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Parses the command-line syntax `q`, `func(a,b,...)`, `trunc(m)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidRing(format!("cannot parse ring `{s}`"));
        let d = if s == "q" || s == "Q" {
            RingDescriptor::Rationals
        } else if let Some(rest) = s.strip_prefix("func(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let variables = inner
                .split(',')
                .map(|v| v.trim().to_string())
                .filter(|v| !v.is_empty())
                .collect();
            RingDescriptor::FunctionField { variables }
        } else if let Some(rest) = s.strip_prefix("trunc(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let order = inner.trim().parse().map_err(|_| bad())?;
            RingDescriptor::Truncated { order }
        } else {
            return Err(bad());
        };
        d.validate()?;
        Ok(d)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rationals => write!(f, "q"),
            RingDescriptor::FunctionField { variables } => {
                write!(f, "func({})", variables.join(","))
            }
            RingDescriptor::Truncated { order } => write!(f, "trunc({order})"),
        }
    }
}

/// Text round-tripping of ring elements relative to a descriptor.
pub trait ScalarIo: Scalar {
    /// Whether values of this type can live in the described ring.
    fn accepts(ring: &RingDescriptor) -> bool;

    fn parse_in(ring: &RingDescriptor, s: &str) -> Result<Self>;

    fn render_in(&self, ring: &RingDescriptor) -> String;
}

fn check_accepts<S: ScalarIo>(ring: &RingDescriptor) -> Result<()> {
    if S::accepts(ring) {
        Ok(())
    } else {
        Err(Error::DescriptorMismatch(format!(
            "value type does not belong to ring {ring}"
        )))
    }
}

impl ScalarIo for Rational {
    fn accepts(ring: &RingDescriptor) -> bool {
        matches!(ring, RingDescriptor::Rationals)
    }

    fn parse_in(ring: &RingDescriptor, s: &str) -> Result<Self> {
        check_accepts::<Self>(ring)?;
        parse_expr(s, |name| {
            Err(Error::Syntax {
                pos: 0,
                msg: format!("unknown symbol `{name}` over q"),
            })
        })
    }

    fn render_in(&self, _ring: &RingDescriptor) -> String {
        self.to_string()
    }
}

impl ScalarIo for RatFunc {
    fn accepts(ring: &RingDescriptor) -> bool {
        matches!(ring, RingDescriptor::FunctionField { .. })
    }

    fn parse_in(ring: &RingDescriptor, s: &str) -> Result<Self> {
        check_accepts::<Self>(ring)?;
        let RingDescriptor::FunctionField { variables } = ring else {
            unreachable!()
        };
        parse_expr(s, |name| {
            variables
                .iter()
                .position(|v| v == name)
                .map(RatFunc::var)
                .ok_or_else(|| Error::Syntax {
                    pos: 0,
                    msg: format!("unknown variable `{name}`"),
                })
        })
    }

    fn render_in(&self, ring: &RingDescriptor) -> String {
        match ring {
            RingDescriptor::FunctionField { variables } => self.display_with(variables),
            _ => format!("{self}"),
        }
    }
}

impl ScalarIo for Truncated {
    fn accepts(ring: &RingDescriptor) -> bool {
        matches!(ring, RingDescriptor::Truncated { .. })
    }

    fn parse_in(ring: &RingDescriptor, s: &str) -> Result<Self> {
        check_accepts::<Self>(ring)?;
        let RingDescriptor::Truncated { order } = ring else {
            unreachable!()
        };
        let order = *order;
        let v: Truncated = parse_expr(s, |name| {
            if name == "t" {
                Ok(Truncated::t(order))
            } else {
                Err(Error::Syntax {
                    pos: 0,
                    msg: format!("unknown symbol `{name}` (only `t`)"),
                })
            }
        })?;
        // Constants parse as exact values; pin them to the ring's order.
        Ok(v.with_order(order))
    }

    fn render_in(&self, _ring: &RingDescriptor) -> String {
        self.to_string()
    }
}
