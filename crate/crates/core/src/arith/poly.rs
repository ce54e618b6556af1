use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exponent vector with trailing zeros trimmed, so that the derived
/// lexicographic `Ord` is the lex monomial order with `x0` most significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &o) in other.0.iter().enumerate() {
            e[i] = e[i].checked_sub(o)?;
        }
        Some(Monomial::new(e))
    }

    fn with_exp(&self, i: usize, k: u32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() <= i {
            e.resize(i + 1, 0);
        }
        e[i] = k;
        Monomial::new(e)
    }
}

/// Multivariate polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(Monomial::var(i), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Largest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.0.len().checked_sub(1))
            .max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    /// gcd of the integer coefficients, nonnegative.
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_integer(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k / c)).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        if let Some(c) = d.as_constant() {
            if self.terms.values().any(|k| !(k % &c).is_zero()) {
                return None;
            }
            return Some(self.div_integer(&c));
        }
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&dm)?;
            let (c, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem = rem - d.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Coefficients as a polynomial in `x_v`, indexed by degree.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Content with respect to `x_v`: gcd of the coefficients in the
    /// remaining variables.
    fn content_in(&self, v: usize) -> Poly {
        self.coeffs_in(v)
            .into_iter()
            .fold(Poly::zero(), |g, c| Poly::gcd(&g, &c))
    }

    /// Pseudo-remainder of `a` by `b` as polynomials in `x_v`.
    fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v).unwrap_or(0);
        let bc = b.coeffs_in(v);
        let lb = bc[db as usize].clone();
        let mut r = a.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v).unwrap_or(0);
            if dr < db {
                break;
            }
            let lr = r.coeffs_in(v)[dr as usize].clone();
            let shift = Monomial::var(v);
            let mut t = b.clone() * lr;
            for _ in 0..(dr - db) {
                t = t.mul_monomial(&shift, &BigInt::one());
            }
            r = r * lb.clone() - t;
        }
        r
    }

    /// Greatest common divisor, normalized to a positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
            return Poly::constant(x.gcd(&y));
        }
        if let Some(c) = a.as_constant() {
            return Poly::constant(c.gcd(&b.integer_content()));
        }
        if let Some(c) = b.as_constant() {
            return Poly::constant(c.gcd(&a.integer_content()));
        }
        let v = a.max_var().max(b.max_var()).expect("nonconstant");
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let g = Poly::gcd(&ca, &cb);
        let mut p = a.exact_div(&ca).expect("content divides");
        let mut q = b.exact_div(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() && q.degree_in(v).unwrap_or(0) > 0 {
            let r = Poly::prem(&p, &q, v);
            p = q;
            q = if r.is_zero() {
                r
            } else {
                let c = r.content_in(v);
                r.exact_div(&c).expect("content divides")
            };
        }
        let pp = if q.is_zero() {
            // p is the primitive gcd in x_v.
            p
        } else {
            // q is a nonzero polynomial free of x_v: primitive parts coprime.
            Poly::one()
        };
        let pp = {
            let c = pp.content_in(v);
            pp.exact_div(&c).expect("content divides")
        };
        (g * pp).normalize_sign()
    }

    fn normalize_sign(&self) -> Poly {
        if self.leading_coeff().is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                let name = names
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", v + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(BigInt::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            let e = self.terms.entry(m).or_default();
            *e += c;
        }
        self.terms.retain(|_, v| !v.is_zero());
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *terms.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Poly { terms }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(n.into())
    }

    #[test]
    fn gcd_of_products() {
        let f = x(0) + x(1);
        let g = x(0) - c(2) * x(1) + c(1);
        let h = x(1) * x(1) + c(3);
        let a = f.clone() * g.clone() * c(6);
        let b = f.clone() * h.clone() * c(4);
        assert_eq!(Poly::gcd(&a, &b), f * c(2));
    }

    #[test]
    fn gcd_coprime_is_constant() {
        let a = x(0) * x(1) - c(1);
        let b = x(0) + x(1);
        assert_eq!(Poly::gcd(&a, &b), c(1));
    }

    #[test]
    fn exact_division() {
        let f = x(0) * x(0) - x(1) * x(1);
        assert_eq!(f.exact_div(&(x(0) - x(1))), Some(x(0) + x(1)));
        assert_eq!(f.exact_div(&(x(0) + c(1))), None);
    }

    #[test]
    fn renders() {
        let p = c(2) * x(0) * x(0) - x(1) + c(3);
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(p.display_with(&names), "2*a^2 - b + 3");
    }
}
