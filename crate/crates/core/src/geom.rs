//! Points and lines of the projective plane over a [`Scalar`] ring.
//!
//! A point is stored as a triple with at least one unit coordinate, scaled so
//! that the first unit coordinate (scan order x, y, z) is 1. Two points are
//! projectively equal exactly when their stored triples are equal. Lines are
//! the same data read as dual coordinates `[α:β:γ]`, meaning αx + βy + γz = 0.

use std::fmt;

use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};

fn canonical<S: Scalar>(v: [S; 3]) -> Option<[S; 3]> {
    let k = v.iter().position(Scalar::is_unit)?;
    if v[k].is_one() {
        return Some(v);
    }
    let inv = v[k].unit_inverse()?;
    Some(v.map(|c| c * inv.clone()))
}

pub(crate) fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub(crate) fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

macro_rules! homogeneous {
    ($name:ident, $what:literal) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash)]
        pub struct $name<S> {
            coords: [S; 3],
        }

        impl<S: Scalar> $name<S> {
            /// Builds the canonical representative. Fails if no coordinate
            /// is a unit.
            pub fn new(x: S, y: S, z: S) -> Result<Self> {
                Self::from_coords([x, y, z])
            }

            pub fn from_coords(coords: [S; 3]) -> Result<Self> {
                match canonical(coords.clone()) {
                    Some(coords) => Ok($name { coords }),
                    None => Err(Error::NoUnitCoordinate(format!(
                        concat!($what, " {:?}"),
                        coords
                    ))),
                }
            }

            pub fn coords(&self) -> &[S; 3] {
                &self.coords
            }

            pub fn x(&self) -> &S {
                &self.coords[0]
            }

            pub fn y(&self) -> &S {
                &self.coords[1]
            }

            pub fn z(&self) -> &S {
                &self.coords[2]
            }

            /// Applies a coordinatewise map, e.g. a ring morphism.
            pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Result<$name<T>> {
                let [a, b, c] = &self.coords;
                let mut f = f;
                $name::new(f(a), f(b), f(c))
            }
        }

        impl<S: Field> $name<S> {
            /// Whether x² + y² + z² ≠ 0.
            pub fn is_anisotropic(&self) -> bool {
                !dot(&self.coords, &self.coords).is_zero()
            }
        }

        impl<S: Scalar + fmt::Display> fmt::Display for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = &self.coords;
                write!(f, "[{a}:{b}:{c}]")
            }
        }
    };
}

homogeneous!(ProjPoint, "point");
homogeneous!(ProjLine, "line");

impl<S: Scalar> ProjPoint<S> {
    /// The line with the same coordinates.
    pub fn dual(&self) -> ProjLine<S> {
        ProjLine {
            coords: self.coords.clone(),
        }
    }

    /// Affine point `(x, y) = [x:y:1]`.
    pub fn affine(x: S, y: S) -> Self {
        ProjPoint {
            coords: [x, y, S::one()],
        }
        .recanon()
    }

    fn recanon(self) -> Self {
        ProjPoint::from_coords(self.coords).expect("unit coordinate present")
    }
}

impl<S: Scalar> ProjLine<S> {
    /// The point with the same coordinates.
    pub fn dual(&self) -> ProjPoint<S> {
        ProjPoint {
            coords: self.coords.clone(),
        }
    }
}

/// The line through two points, via the cross product.
///
/// Fails with [`Error::DependentElements`] when no coordinate of the cross
/// product is a unit.
pub fn join<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjLine<S>> {
    ProjLine::from_coords(cross(&p.coords, &q.coords))
        .map_err(|_| Error::DependentElements(format!("join({p:?}, {q:?})")))
}

/// The intersection point of two lines.
pub fn meet<S: Scalar>(l: &ProjLine<S>, m: &ProjLine<S>) -> Result<ProjPoint<S>> {
    ProjPoint::from_coords(cross(&l.coords, &m.coords))
        .map_err(|_| Error::DependentElements(format!("meet({l:?}, {m:?})")))
}

pub fn incident<S: Scalar>(p: &ProjPoint<S>, l: &ProjLine<S>) -> bool {
    dot(&p.coords, &l.coords).is_zero()
}

/// Affine reading of a point. `(x, ∞)`-style names follow the slope
/// convention: `[0:1:0]` is `(0,∞)`, `[1:0:0]` is `(∞,0)`, `[1:1:0]` is `(∞,∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Affine<S> {
    Finite(S, S),
    ZeroInf,
    InfZero,
    InfInf,
    /// Some other point whose z-coordinate is not a unit.
    Infinite,
}

impl<S: Scalar> Affine<S> {
    pub fn to_point(&self) -> Option<ProjPoint<S>> {
        let (o, z) = (S::one(), S::zero());
        Some(match self {
            Affine::Finite(x, y) => ProjPoint::affine(x.clone(), y.clone()),
            Affine::ZeroInf => ProjPoint::new(z.clone(), o, z).ok()?,
            Affine::InfZero => ProjPoint::new(o, z.clone(), z).ok()?,
            Affine::InfInf => ProjPoint::new(o.clone(), o, z).ok()?,
            Affine::Infinite => return None,
        })
    }
}

pub fn affine_convert<S: Scalar>(p: &ProjPoint<S>) -> Affine<S> {
    let [x, y, z] = &p.coords;
    if let Some(zi) = z.unit_inverse() {
        return Affine::Finite(x.clone() * zi.clone(), y.clone() * zi);
    }
    let (o, zero) = (S::one(), S::zero());
    // Canonical forms make these plain comparisons.
    if p.coords == [zero.clone(), o.clone(), zero.clone()] {
        Affine::ZeroInf
    } else if p.coords == [o.clone(), zero.clone(), zero.clone()] {
        Affine::InfZero
    } else if p.coords == [o.clone(), o, zero] {
        Affine::InfInf
    } else {
        Affine::Infinite
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Affine<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Affine::Finite(x, y) => write!(f, "({x}, {y})"),
            Affine::ZeroInf => f.write_str("(0, ∞)"),
            Affine::InfZero => f.write_str("(∞, 0)"),
            Affine::InfInf => f.write_str("(∞, ∞)"),
            Affine::Infinite => f.write_str("(∞)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{RatFunc, Rational, Truncated};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qp(x: i64, y: i64, z: i64) -> ProjPoint<Rational> {
        ProjPoint::new(q(x), q(y), q(z)).unwrap()
    }

    #[test]
    fn join_vertical_line_symbolic() {
        let a = RatFunc::var(0);
        let (o, z) = (RatFunc::one(), RatFunc::zero());
        let p = ProjPoint::new(a.clone(), z.clone(), o.clone()).unwrap();
        let vy = ProjPoint::new(z.clone(), o.clone(), z.clone()).unwrap();
        let l = join(&p, &vy).unwrap();
        assert_eq!(l, ProjLine::new(o, z, -a).unwrap());
    }

    #[test]
    fn meet_with_line_at_infinity() {
        let b = RatFunc::var(1);
        let (o, z) = (RatFunc::one(), RatFunc::zero());
        let l2 = ProjLine::new(o.clone(), b.clone() - o.clone(), -b.clone()).unwrap();
        let linf = ProjLine::new(z.clone(), z.clone(), o.clone()).unwrap();
        let u = meet(&l2, &linf).unwrap();
        let expect = ProjPoint::new(b.clone() - o.clone(), -o, z).unwrap();
        assert_eq!(u, expect);
    }

    #[test]
    fn axes_meet_at_origin() {
        let lx = qp(0, 1, 0).dual();
        let ly = qp(1, 0, 0).dual();
        assert_eq!(meet(&lx, &ly).unwrap(), qp(0, 0, 1));
    }

    #[test]
    fn incidence_examples() {
        assert!(incident(&qp(0, 0, 1), &qp(0, 1, 0).dual()));
        assert!(!incident(&qp(1, 1, 1), &qp(1, 0, 0).dual()));
        let a = RatFunc::var(0);
        let b = RatFunc::var(1);
        let o = RatFunc::one();
        let v = ProjPoint::new(a.clone(), a.clone(), o.clone()).unwrap();
        let m1 = ProjLine::new(-o.clone(), o - b.clone(), a * b).unwrap();
        assert!(incident(&v, &m1));
    }

    #[test]
    fn dependent_points_rejected() {
        let p = qp(1, 2, 3);
        assert!(matches!(join(&p, &p), Err(Error::DependentElements(_))));
        // Over a local ring the test is on units, not on nonzero-ness.
        let t = Truncated::t(2);
        let o = Truncated::one();
        let z = Truncated::zero();
        let p1 = ProjPoint::new(z.clone(), z.clone(), o.clone()).unwrap();
        let p2 = ProjPoint::new(t, z, o).unwrap();
        assert!(matches!(join(&p1, &p2), Err(Error::DependentElements(_))));
    }

    #[test]
    fn anisotropy() {
        assert!(qp(1, 0, 0).is_anisotropic());
        assert!(qp(1, 2, 3).is_anisotropic());
    }

    #[test]
    fn affine_tags() {
        assert_eq!(affine_convert(&qp(0, 1, 0)), Affine::ZeroInf);
        assert_eq!(affine_convert(&qp(5, 0, 0)), Affine::InfZero);
        assert_eq!(affine_convert(&qp(-2, -2, 0)), Affine::InfInf);
        assert_eq!(affine_convert(&qp(1, 2, 0)), Affine::Infinite);
        assert_eq!(Affine::Finite(q(1), q(1)).to_point().unwrap(), qp(1, 1, 1));
        let a = RatFunc::var(0);
        let b = RatFunc::var(1);
        let w = ProjPoint::new(a.clone() * b.clone(), RatFunc::zero(), RatFunc::one()).unwrap();
        assert_eq!(affine_convert(&w), Affine::Finite(a * b, RatFunc::zero()));
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn point() -> impl Strategy<Value = ProjPoint<Rational>> {
        (rat(), rat(), rat())
            .prop_filter_map("zero vector", |(x, y, z)| ProjPoint::new(x, y, z).ok())
    }

    fn trunc_point(m: usize) -> impl Strategy<Value = ProjPoint<Truncated>> {
        proptest::collection::vec(proptest::collection::vec(-5i64..5, m + 1), 3).prop_filter_map(
            "no unit coordinate",
            move |cs| {
                let v: Vec<Truncated> = cs
                    .into_iter()
                    .map(|c| Truncated::new(m, c.into_iter().map(q).collect()))
                    .collect();
                ProjPoint::new(v[0].clone(), v[1].clone(), v[2].clone()).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn join_contains_both(p in point(), r in point()) {
            if let Ok(l) = join(&p, &r) {
                prop_assert!(incident(&p, &l));
                prop_assert!(incident(&r, &l));
            } else {
                prop_assert_eq!(p, r);
            }
        }

        #[test]
        fn join_contains_both_truncated(p in trunc_point(2), r in trunc_point(2)) {
            if let Ok(l) = join(&p, &r) {
                prop_assert!(incident(&p, &l));
                prop_assert!(incident(&r, &l));
            }
        }

        #[test]
        fn meet_join_duality(p in point(), r in point()) {
            let via_lines = meet(&p.dual(), &r.dual()).map(|x| x.dual());
            let direct = join(&p, &r);
            prop_assert_eq!(via_lines.ok(), direct.ok());
        }

        #[test]
        fn canonicalization_idempotent(p in point(), s in rat()) {
            let again = ProjPoint::from_coords(p.coords().clone()).unwrap();
            prop_assert_eq!(&again, &p);
            if !s.is_zero() {
                let scaled = p.map(|c| c.clone() * s.clone()).unwrap();
                prop_assert_eq!(scaled, p);
            }
        }
    }
}
