//! First-order deformations: twisted cocycles with adjoint coefficients.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::groups::{Letter, Presentation};
use crate::linalg::{is_consistent, kernel, mat_vec, rank, Matrix};
use crate::represent::{
    adj3, centralizer_dim, det3, hat, is_antisymmetric, mul3, vee, Mat3, ProjMatrix, Representation,
};

/// Values `ξ(g) ∈ so(3)` on the generators, as antisymmetric matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub values: Vec<Mat3>,
}

impl Cocycle {
    pub fn from_axes(axes: &[[Rational; 3]]) -> Self {
        Cocycle {
            values: axes.iter().map(hat).collect(),
        }
    }

    fn flat(&self) -> Result<Vec<Rational>> {
        let mut v = Vec::with_capacity(3 * self.values.len());
        for x in &self.values {
            if !is_antisymmetric(x) {
                return Err(Error::NotACocycle("value is not antisymmetric".into()));
            }
            v.extend(vee(x));
        }
        Ok(v)
    }

    fn from_flat(v: &[Rational]) -> Self {
        Cocycle {
            values: v
                .chunks(3)
                .map(|c| hat(&[c[0].clone(), c[1].clone(), c[2].clone()]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub h0: usize,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

/// `Ad(M)` on axis coordinates: `X ↦ M X M⁻¹`.
pub fn ad_matrix(m: &ProjMatrix) -> Result<Mat3> {
    let a = m.entries();
    let adj = adj3(a);
    let d = det3(a).recip();
    let mut out: Mat3 = Default::default();
    for k in 0..3 {
        let e: [Rational; 3] = std::array::from_fn(|i| {
            if i == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let y = mul3(&mul3(a, &hat(&e)), &adj);
        let y: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| &y[i][j] * &d));
        if !is_antisymmetric(&y) {
            return Err(Error::NotOrthogonal(m.to_string()));
        }
        let col = vee(&y);
        for i in 0..3 {
            out[i][k] = col[i].clone();
        }
    }
    Ok(out)
}

/// Generator images, for Fox derivatives.
struct AdTable {
    images: Vec<ProjMatrix>,
}

impl AdTable {
    /// Linear map `(ξ(g))_g ↦ ξ(w)` as a `3 × 3n` matrix.
    fn fox(&self, w: &[Letter]) -> Result<Matrix<Rational>> {
        let n = self.images.len();
        let mut d: Matrix<Rational> = vec![vec![Rational::zero(); 3 * n]; 3];
        let mut prefix = ProjMatrix::identity();
        for l in w {
            let g = &self.images[l.gen];
            let (ad, sign) = if l.inv {
                prefix = prefix.mul(&g.inverse());
                (ad_matrix(&prefix)?, -Rational::one())
            } else {
                let ad = ad_matrix(&prefix)?;
                prefix = prefix.mul(g);
                (ad, Rational::one())
            };
            for i in 0..3 {
                for j in 0..3 {
                    d[i][3 * l.gen + j] += &sign * &ad[i][j];
                }
            }
        }
        Ok(d)
    }
}

fn checked(pres: &Presentation, rep: &Representation) -> Result<Representation> {
    let r = rep.pullback(pres.clone())?;
    if let Some(bad) = r.verify_relations().into_iter().find(|c| !c.holds) {
        return Err(Error::RelationFailure(bad.relation));
    }
    Ok(r)
}

fn cocycle_system(pres: &Presentation, rep: &Representation) -> Result<Matrix<Rational>> {
    let r = checked(pres, rep)?;
    let table = AdTable { images: r.images };
    let mut rows = Vec::new();
    for (lhs, rhs) in pres.relation_words() {
        let a = table.fox(&lhs)?;
        let b = table.fox(&rhs)?;
        for (ra, rb) in a.into_iter().zip(b) {
            rows.push(ra.into_iter().zip(rb).map(|(x, y)| x - y).collect());
        }
    }
    Ok(rows)
}

/// Basis of `Z¹(G, ad∘ρ)`.
pub fn cocycle_space(pres: &Presentation, rep: &Representation) -> Result<Vec<Cocycle>> {
    let sys = cocycle_system(pres, rep)?;
    let n = 3 * pres.generators.len();
    Ok(kernel(&sys, n)
        .iter()
        .map(|v| Cocycle::from_flat(v))
        .collect())
}

pub fn is_cocycle(pres: &Presentation, rep: &Representation, xi: &Cocycle) -> Result<bool> {
    let sys = cocycle_system(pres, rep)?;
    let v = xi.flat()?;
    if v.len() != 3 * pres.generators.len() {
        return Err(Error::NotACocycle("wrong number of values".into()));
    }
    Ok(mat_vec(&sys, &v).iter().all(Zero::is_zero))
}

pub fn h0_h1_dims(pres: &Presentation, rep: &Representation) -> Result<CohomologyDims> {
    let sys = cocycle_system(pres, rep)?;
    let n = 3 * pres.generators.len();
    let z1 = n - rank(&sys);
    let h0 = centralizer_dim(rep);
    let b1 = 3 - h0;
    Ok(CohomologyDims {
        h0,
        z1,
        b1,
        h1: z1 - b1,
    })
}

/// `δθ(g) = Ad(ρ(g))θ − θ`.
pub fn coboundary(rep: &Representation, theta: &[Rational; 3]) -> Result<Cocycle> {
    let mut axes = Vec::with_capacity(rep.images.len());
    for m in &rep.images {
        let ad = ad_matrix(m)?;
        let v = mat_vec(&ad.iter().map(|r| r.to_vec()).collect(), theta);
        axes.push(std::array::from_fn(|i| &v[i] - &theta[i]));
    }
    Ok(Cocycle::from_axes(&axes))
}

/// Whether some `θ` gives `ξ(g) = Ad(ρ(g))θ − θ` for every listed `g`.
pub fn restrict_is_coboundary(
    pres: &Presentation,
    rep: &Representation,
    xi: &Cocycle,
    gens: &[&str],
) -> Result<bool> {
    if !is_cocycle(pres, rep, xi)? {
        return Err(Error::NotACocycle("relations not annihilated".into()));
    }
    let mut a: Matrix<Rational> = Vec::new();
    let mut b = Vec::new();
    for g in gens {
        let i = pres.generator(g)?;
        let ad = ad_matrix(&rep.images[i])?;
        for r in 0..3 {
            a.push(
                (0..3)
                    .map(|c| {
                        let id = if r == c {
                            Rational::one()
                        } else {
                            Rational::zero()
                        };
                        &ad[r][c] - id
                    })
                    .collect(),
            );
        }
        b.extend(vee(&xi.values[i]));
    }
    Ok(is_consistent(&a, &b))
}
