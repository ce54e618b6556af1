//! Projective 3×3 matrices over ℚ and the representations `alg(ψ)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Field, Rational};
use crate::arrangement::{BasedArrangement, Sort, T_LINES, T_POINTS};
use crate::error::{Error, Result};
use crate::gadgets::{standard_coords, Realization};
use crate::geom::{cross, dot, ProjPoint};
use crate::groups::{build_lambda, shephard_presentation, LabelledGraph, Letter, Presentation};
use crate::linalg::{kernel, rank, Matrix};

pub type Mat3 = [[Rational; 3]; 3];

pub fn identity3() -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    })
}

pub fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Rational::zero(), |s, k| s + &a[i][k] * &b[k][j]))
    })
}

pub fn det3(a: &Mat3) -> Rational {
    dot(&cross(&a[0], &a[1]), &a[2])
}

/// Adjugate, so that `a · adj(a) = det(a) · I`.
pub fn adj3(a: &Mat3) -> Mat3 {
    let cols: [[Rational; 3]; 3] =
        std::array::from_fn(|j| std::array::from_fn(|i| a[i][j].clone()));
    [
        cross(&cols[1], &cols[2]),
        cross(&cols[2], &cols[0]),
        cross(&cols[0], &cols[1]),
    ]
}

pub fn transpose3(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

fn scale3(a: &Mat3, s: &Rational) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * s))
}

/// An invertible 3×3 rational matrix up to a nonzero scalar, stored with
/// its first nonzero entry (row-major) equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix(Mat3);

impl ProjMatrix {
    pub fn new(m: Mat3) -> Result<Self> {
        if det3(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = m.iter().flatten().find(|x| !x.is_zero()).unwrap().clone();
        Ok(ProjMatrix(scale3(&m, &lead.recip())))
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(m.map(|r| r.map(|x| Rational::from_integer(x.into()))))
    }

    pub fn identity() -> Self {
        ProjMatrix(identity3())
    }

    pub fn entries(&self) -> &Mat3 {
        &self.0
    }

    /// The primitive integer matrix with the same first nonzero entry sign.
    pub fn integer_rep(&self) -> [[BigInt; 3]; 3] {
        let l = self
            .0
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .flatten()
            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        std::array::from_fn(|i| std::array::from_fn(|j| &ints[3 * i + j] / &g))
    }

    pub fn mul(&self, other: &ProjMatrix) -> ProjMatrix {
        ProjMatrix::new(mul3(&self.0, &other.0)).expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> ProjMatrix {
        ProjMatrix::new(adj3(&self.0)).expect("adjugate of invertible matrix")
    }

    pub fn pow(&self, k: u32) -> ProjMatrix {
        (0..k).fold(ProjMatrix::identity(), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == identity3()
    }

    /// Image of a point.
    pub fn apply(&self, p: &ProjPoint<Rational>) -> ProjPoint<Rational> {
        let v = p.coords();
        let w: [Rational; 3] = std::array::from_fn(|i| {
            (0..3).fold(Rational::zero(), |s, k| s + &self.0[i][k] * &v[k])
        });
        ProjPoint::from_coords(w).expect("invertible image")
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| {
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// `φ(v)·I − 2·v·vᵀ` with `φ(v) = x² + y² + z²`.
pub fn eta(v: &[Rational; 3]) -> Result<ProjMatrix> {
    let phi = dot(v, v);
    if phi.is_zero() {
        return Err(Error::Isotropic(format!("{v:?}")));
    }
    let two = Rational::from_integer(2.into());
    let m: Mat3 = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let d = if i == j {
                phi.clone()
            } else {
                Rational::zero()
            };
            d - &two * &v[i] * &v[j]
        })
    });
    ProjMatrix::new(m)
}

/// The order-2 rotation with neutral fixed point `p`.
pub fn involution_about_point(p: &ProjPoint<Rational>) -> Result<ProjMatrix> {
    eta(p.coords()).map_err(|_| Error::Isotropic(p.to_string()))
}

/// The reflection fixing the line `l` pointwise.
pub fn reflection_in_line(l: &crate::geom::ProjLine<Rational>) -> Result<ProjMatrix> {
    eta(l.coords()).map_err(|_| Error::Isotropic(l.to_string()))
}

/// Isolated fixed point of an involution of the form `η(v)`.
pub fn neutral_fixed_point(m: &ProjMatrix) -> Option<ProjPoint<Rational>> {
    let a = m.entries();
    let t = &a[0][0] + &a[1][1] + &a[2][2];
    if t.is_zero() {
        return None;
    }
    let shifted: Matrix<Rational> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    if i == j {
                        &a[i][j] + &t
                    } else {
                        a[i][j].clone()
                    }
                })
                .collect()
        })
        .collect();
    let k = kernel(&shifted, 3);
    if k.len() != 1 {
        return None;
    }
    ProjPoint::from_coords([k[0][0].clone(), k[0][1].clone(), k[0][2].clone()]).ok()
}

/// Cyclic permutation `e1 → e2 → e3 → e1`; fixes `(1,1)` and sends
/// `(0,0)` to `(∞,0)`.
pub fn order3_rotation() -> ProjMatrix {
    ProjMatrix::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub presentation: Presentation,
    pub images: Vec<ProjMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

impl Representation {
    pub fn new(presentation: Presentation, images: Vec<ProjMatrix>) -> Result<Self> {
        if images.len() != presentation.generators.len() {
            return Err(Error::UnknownGenerator(format!(
                "{} images for {} generators",
                images.len(),
                presentation.generators.len()
            )));
        }
        Ok(Representation {
            presentation,
            images,
        })
    }

    pub fn image(&self, gen: &str) -> Result<&ProjMatrix> {
        Ok(&self.images[self.presentation.generator(gen)?])
    }

    pub fn eval_word(&self, w: &[Letter]) -> ProjMatrix {
        w.iter().fold(ProjMatrix::identity(), |acc, l| {
            let m = &self.images[l.gen];
            acc.mul(&if l.inv { m.inverse() } else { m.clone() })
        })
    }

    /// Every relation and torsion relation, checked projectively.
    pub fn verify_relations(&self) -> Vec<RelationCheck> {
        let p = &self.presentation;
        let mut out: Vec<RelationCheck> = p
            .relations
            .iter()
            .map(|r| {
                let (l, rr) = r.words();
                RelationCheck {
                    relation: p.render_relation(r),
                    holds: self.eval_word(&l) == self.eval_word(&rr),
                }
            })
            .collect();
        for &(g, k) in &p.torsion {
            out.push(RelationCheck {
                relation: format!("ord {} {k}", p.generators[g]),
                holds: self.images[g].pow(k).is_identity(),
            });
        }
        out
    }

    pub fn satisfies_relations(&self) -> bool {
        self.verify_relations().iter().all(|c| c.holds)
    }

    /// Same images against another presentation on the same generators.
    pub fn pullback(&self, presentation: Presentation) -> Result<Representation> {
        if presentation.generators != self.presentation.generators {
            return Err(Error::UnknownGenerator("generator lists differ".into()));
        }
        Representation::new(presentation, self.images.clone())
    }

    /// Replaces the image of `gen` by its inverse.
    pub fn omega(&self, gen: &str) -> Result<Representation> {
        let i = self.presentation.generator(gen)?;
        let mut r = self.clone();
        r.images[i] = r.images[i].inverse();
        Ok(r)
    }

    pub fn trivial(presentation: Presentation) -> Representation {
        let n = presentation.generators.len();
        Representation {
            presentation,
            images: vec![ProjMatrix::identity(); n],
        }
    }
}

/// Checks that `psi` restricts to the standard realization on the base.
fn check_based(based: &BasedArrangement, psi: &Realization<Rational>) -> Result<()> {
    let std = Realization::<Rational>::standard();
    for t in T_POINTS {
        if psi.point(based.base_of(t))? != std.point(t)? {
            return Err(Error::InvalidBase(format!(
                "`{t}` is not at its standard position"
            )));
        }
    }
    for t in T_LINES {
        if psi.line(based.base_of(t))? != std.line(t)? {
            return Err(Error::InvalidBase(format!(
                "`{t}` is not at its standard position"
            )));
        }
    }
    Ok(())
}

/// The representation of the Shephard group of `build_lambda(based)`
/// attached to an anisotropic based realization.
pub fn alg(based: &BasedArrangement, psi: &Realization<Rational>) -> Result<Representation> {
    check_based(based, psi)?;
    let lambda = build_lambda(based)?;
    let v11 = based.base_of("v11");
    let mut images = Vec::with_capacity(lambda.vertices.len());
    for v in &lambda.vertices {
        let m = if v == v11 {
            order3_rotation()
        } else {
            match based.arrangement.sort_of(v) {
                Some(Sort::Point) => {
                    eta(psi.point(v)?.coords()).map_err(|_| Error::Isotropic(v.clone()))?
                }
                Some(Sort::Line) => {
                    eta(psi.line(v)?.coords()).map_err(|_| Error::Isotropic(v.clone()))?
                }
                None => return Err(Error::UnknownElement(v.clone())),
            }
        };
        images.push(m);
    }
    Representation::new(shephard_presentation(&lambda), images)
}

/// `alg` of the standard realization of the triangle.
pub fn alg_standard() -> Representation {
    let based = crate::arrangement::standard_triangle();
    alg(&based, &Realization::standard()).expect("standard realization")
}

/// Least `k ≤ bound` with `m^k` scalar.
pub fn projective_order(m: &ProjMatrix, bound: u32) -> Option<u32> {
    let mut acc = ProjMatrix::identity();
    for k in 1..=bound {
        acc = acc.mul(m);
        if acc.is_identity() {
            return Some(k);
        }
    }
    None
}

/// Generator images nontrivial, and edge products of order `ε` when both
/// endpoints have order 2, `ε/2` otherwise.
pub fn is_nondegenerate(rep: &Representation, lambda: &LabelledGraph) -> bool {
    if rep.images.len() < lambda.vertices.len() {
        return false;
    }
    if rep.images[..lambda.vertices.len()]
        .iter()
        .any(ProjMatrix::is_identity)
    {
        return false;
    }
    lambda.edges.iter().all(|(&(i, j), &e)| {
        let both_two = lambda.vertex_labels[i] == 2 && lambda.vertex_labels[j] == 2;
        let want = if both_two { e } else { e / 2 };
        projective_order(&rep.images[i].mul(&rep.images[j]), 12.max(e)) == Some(want)
    })
}

/// Order of the image group if it is at most `cap`.
pub fn group_closure(rep: &Representation, cap: usize) -> Option<usize> {
    let gens: Vec<ProjMatrix> = rep
        .images
        .iter()
        .filter(|m| !m.is_identity())
        .cloned()
        .collect();
    let mut seen: HashSet<ProjMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(ProjMatrix::identity());
    queue.push_back(ProjMatrix::identity());
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let n = m.mul(g);
            if seen.insert(n.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(n);
            }
        }
    }
    Some(seen.len())
}

/// `so(3)` element with axis coordinates `(a, b, c)`.
pub fn hat(v: &[Rational; 3]) -> Mat3 {
    let z = Rational::zero();
    [
        [z.clone(), -v[2].clone(), v[1].clone()],
        [v[2].clone(), z.clone(), -v[0].clone()],
        [-v[1].clone(), v[0].clone(), z],
    ]
}

/// Axis coordinates of an antisymmetric matrix.
pub fn vee(x: &Mat3) -> [Rational; 3] {
    [x[2][1].clone(), x[0][2].clone(), x[1][0].clone()]
}

pub fn is_antisymmetric(x: &Mat3) -> bool {
    (0..3).all(|i| (0..3).all(|j| x[i][j] == -x[j][i].clone()))
}

/// Dimension of `{X ∈ so(3) : XM = MX}` over all generator images `M`.
pub fn centralizer_dim(rep: &Representation) -> usize {
    let basis: Vec<Mat3> = (0..3)
        .map(|k| {
            hat(&std::array::from_fn(|i| {
                if i == k {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }))
        })
        .collect();
    let mut rows: Matrix<Rational> = Vec::new();
    for m in &rep.images {
        let cols: Vec<Mat3> = basis
            .iter()
            .map(|x| {
                let a = mul3(x, m.entries());
                let b = mul3(m.entries(), x);
                std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j]))
            })
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                rows.push(cols.iter().map(|c| c[i][j].clone()).collect());
            }
        }
    }
    3 - rank(&rows)
}

/// No three of `ψ(v00), ψ(vx), ψ(vy), ψ(v11)` are collinear.
pub fn is_stable<S: Field>(based: &BasedArrangement, psi: &Realization<S>) -> Result<bool> {
    let w = ["v00", "vx", "vy", "v11"]
        .iter()
        .map(|t| psi.point(based.base_of(t)).map(|p| p.coords().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        .iter()
        .all(|&(i, j, k)| !dot(&cross(&w[i], &w[j]), &w[k]).is_zero()))
}

/// The four points `(±1, ±1)`.
pub fn sigma_points() -> Vec<ProjPoint<Rational>> {
    [(1, 1), (-1, 1), (-1, -1), (1, -1)]
        .iter()
        .map(|&(x, y)| {
            ProjPoint::affine(
                Rational::from_integer(x.into()),
                Rational::from_integer(y.into()),
            )
        })
        .collect()
}

/// Standard coordinates of a triangle element as a rational point.
pub fn standard_point(t: &str) -> Option<ProjPoint<Rational>> {
    let c = standard_coords(t)?;
    ProjPoint::from_coords(c.map(|x| Rational::from_integer(x.into()))).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{artin_presentation, LabelledGraph};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint<Rational> {
        ProjPoint::from_coords([q(x), q(y), q(z)]).unwrap()
    }

    #[test]
    fn eta_at_basis_vector() {
        let m = involution_about_point(&pt(0, 0, 1)).unwrap();
        assert_eq!(
            m,
            ProjMatrix::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, -1]]).unwrap()
        );
    }

    #[test]
    fn eta_at_diagonal() {
        let v = pt(1, 1, 1);
        let m = involution_about_point(&v).unwrap();
        assert!(m.pow(2).is_identity());
        assert_eq!(m.apply(&v), v);
        assert_eq!(neutral_fixed_point(&m), Some(v));
    }

    #[test]
    fn isotropic_rejected() {
        assert!(eta(&[q(0), q(0), q(0)]).is_err());
    }

    #[test]
    fn rotation_of_order_three() {
        let p = order3_rotation();
        assert_eq!(projective_order(&p, 12), Some(3));
        assert_eq!(p.apply(&pt(0, 0, 1)), pt(1, 0, 0));
        assert_eq!(p.apply(&pt(1, 1, 1)), pt(1, 1, 1));
        assert!(det3(p.entries()) > q(0));
    }

    #[test]
    fn triangle_representation() {
        let rep = alg_standard();
        assert_eq!(rep.images.len(), 9);
        assert!(rep.satisfies_relations(), "{:?}", rep.verify_relations());
        let g = |n: &str| rep.image(n).unwrap().clone();
        assert_eq!(projective_order(&g("v00").mul(&g("v11")), 12), Some(3));
        assert_eq!(projective_order(&g("v00").mul(&g("v10")), 12), Some(4));
        assert_eq!(centralizer_dim(&rep), 0);
        let lambda = build_lambda(&crate::arrangement::standard_triangle()).unwrap();
        assert!(is_nondegenerate(&rep, &lambda));
        let artin = rep.pullback(artin_presentation(&lambda)).unwrap();
        assert!(artin.satisfies_relations());
    }

    #[test]
    fn triangle_image_preserves_sigma() {
        let rep = alg_standard();
        let sigma = sigma_points();
        for m in &rep.images {
            for p in &sigma {
                assert!(sigma.contains(&m.apply(p)));
            }
        }
    }

    #[test]
    fn commuting_and_anticommuting() {
        let a = involution_about_point(&pt(0, 0, 1)).unwrap();
        let b = involution_about_point(&pt(1, 0, 0)).unwrap();
        assert!(a.mul(&b).pow(2).is_identity());
        let line = |c: [i64; 3]| crate::geom::ProjLine::from_coords(c.map(q)).unwrap();
        let alpha = involution_about_point(&pt(1, 0, 1)).unwrap();
        let beta = reflection_in_line(&line([1, 0, -1])).unwrap();
        assert!(alpha.mul(&beta).pow(2).is_identity());
        assert_ne!(alpha, beta);
        // (1,0) is not on the y-axis
        let gamma = reflection_in_line(&line([1, 0, 0])).unwrap();
        assert!(!alpha.mul(&gamma).pow(2).is_identity());
    }

    #[test]
    fn broken_image_reported() {
        let mut rep = alg_standard();
        rep.images[0] = involution_about_point(&pt(1, 2, 3)).unwrap();
        let bad: Vec<_> = rep
            .verify_relations()
            .into_iter()
            .filter(|c| !c.holds)
            .collect();
        assert!(!bad.is_empty());
        assert!(bad.iter().any(|c| c.relation.contains("v00")));
    }

    #[test]
    fn closure_and_centralizer_small() {
        let mut g = LabelledGraph::new(vec!["a".into()]);
        g.vertex_labels = vec![2];
        let p = shephard_presentation(&g);
        let rep = Representation::new(
            p.clone(),
            vec![involution_about_point(&pt(0, 0, 1)).unwrap()],
        )
        .unwrap();
        assert_eq!(group_closure(&rep, 100), Some(2));
        assert_eq!(centralizer_dim(&rep), 1);
        assert_eq!(centralizer_dim(&Representation::trivial(p)), 3);
        assert_eq!(projective_order(&ProjMatrix::identity(), 12), Some(1));
    }

    #[test]
    fn stability() {
        let based = crate::arrangement::standard_triangle();
        assert!(is_stable(&based, &Realization::<Rational>::standard()).unwrap());
        let mut collapsed = Realization::<Rational>::standard();
        for p in collapsed.points.values_mut() {
            *p = pt(0, 0, 1);
        }
        assert!(!is_stable(&based, &collapsed).unwrap());
        let mut diag = Realization::<Rational>::standard();
        diag.points.insert("vx".into(), pt(2, 2, 1));
        diag.points.insert("vy".into(), pt(1, 1, 0));
        assert!(!is_stable(&based, &diag).unwrap());
    }

    #[test]
    fn integer_representative() {
        let m =
            ProjMatrix::new([[q(2), q(4), q(0)], [q(0), q(6), q(0)], [q(0), q(0), q(8)]]).unwrap();
        let r = m.integer_rep();
        assert_eq!(r[0][0], 1.into());
        assert_eq!(r[2][2], 4.into());
    }

    fn small_point() -> impl Strategy<Value = [i64; 3]> {
        prop::array::uniform3(-4i64..5).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
    }

    /// Cayley transform of an antisymmetric matrix: rational orthogonal.
    fn cayley(a: &[Rational; 3]) -> Mat3 {
        let h = hat(a);
        let i = identity3();
        let minus: Mat3 = std::array::from_fn(|r| std::array::from_fn(|c| &i[r][c] - &h[r][c]));
        let plus: Mat3 = std::array::from_fn(|r| std::array::from_fn(|c| &i[r][c] + &h[r][c]));
        let d = det3(&plus);
        scale3(&mul3(&minus, &adj3(&plus)), &d.recip())
    }

    proptest! {
        #[test]
        fn involution_square_and_fixed_point(v in small_point()) {
            let p = pt(v[0], v[1], v[2]);
            let m = involution_about_point(&p).unwrap();
            prop_assert!(m.pow(2).is_identity());
            prop_assert_eq!(neutral_fixed_point(&m), Some(p));
        }

        #[test]
        fn commutation_criterion(u in small_point(), v in small_point()) {
            let (p, r) = (pt(u[0], u[1], u[2]), pt(v[0], v[1], v[2]));
            let a = involution_about_point(&p).unwrap();
            let b = involution_about_point(&r).unwrap();
            let commute = a.mul(&b) == b.mul(&a);
            let orthogonal = dot(p.coords(), r.coords()).is_zero();
            prop_assert_eq!(commute, orthogonal || p == r);
        }

        #[test]
        fn eta_equivariant(v in small_point(), a in prop::array::uniform3(-3i64..4)) {
            let g = cayley(&a.map(q));
            let vr: [Rational; 3] = v.map(q);
            let gv: [Rational; 3] = std::array::from_fn(|i| (0..3).fold(q(0), |s, k| s + &g[i][k] * &vr[k]));
            let lhs = eta(&gv).unwrap();
            let gm = ProjMatrix::new(g.clone()).unwrap();
            let rhs = gm.mul(&eta(&vr).unwrap()).mul(&gm.inverse());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
