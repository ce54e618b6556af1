use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::is_integer_one_abs;
use super::{Rational, Scalar};

/// Element of ℚ[t]/(t^(m+1)).
///
/// The order `m` travels with the value so that mixing rings is caught.
/// Constants produced by [`Scalar::from_rational`], `zero()` and `one()`
/// carry no order and adopt the order of whatever they meet.
#[derive(Debug, Clone)]
pub struct Truncated {
    order: Option<usize>,
    coeffs: Vec<Rational>,
}

impl Truncated {
    pub fn new(order: usize, coeffs: Vec<Rational>) -> Self {
        Truncated::build(Some(order), coeffs)
    }

    fn build(order: Option<usize>, mut coeffs: Vec<Rational>) -> Self {
        if let Some(m) = order {
            coeffs.truncate(m + 1);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Truncated { order, coeffs }
    }

    /// The generator `t` of ℚ[t]/(t^(m+1)).
    pub fn t(order: usize) -> Self {
        Truncated::new(order, vec![Rational::zero(), Rational::one()])
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn with_order(&self, order: usize) -> Self {
        Truncated::build(Some(order), self.coeffs.clone())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn joint_order(&self, other: &Self) -> Option<usize> {
        match (self.order, other.order) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "truncation orders differ");
                Some(a)
            }
            (a, b) => a.or(b),
        }
    }
}

impl PartialEq for Truncated {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Truncated {}

impl Hash for Truncated {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Zero for Truncated {
    fn zero() -> Self {
        Truncated {
            order: None,
            coeffs: Vec::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Truncated {
    fn one() -> Self {
        Truncated {
            order: None,
            coeffs: vec![Rational::one()],
        }
    }
}

impl Add for Truncated {
    type Output = Truncated;
    fn add(self, rhs: Truncated) -> Truncated {
        let order = self.joint_order(&rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Truncated::build(order, c)
    }
}

impl Neg for Truncated {
    type Output = Truncated;
    fn neg(self) -> Truncated {
        Truncated {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for Truncated {
    type Output = Truncated;
    fn sub(self, rhs: Truncated) -> Truncated {
        self + (-rhs)
    }
}

impl Mul for Truncated {
    type Output = Truncated;
    fn mul(self, rhs: Truncated) -> Truncated {
        let order = self.joint_order(&rhs);
        if self.is_zero() || rhs.is_zero() {
            return Truncated::build(order, Vec::new());
        }
        let mut n = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(m) = order {
            n = n.min(m + 1);
        }
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < n {
                    c[i + j] += a * b;
                }
            }
        }
        Truncated::build(order, c)
    }
}

impl Scalar for Truncated {
    fn is_unit(&self) -> bool {
        !self.coeff(0).is_zero()
    }

    fn unit_inverse(&self) -> Option<Self> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return None;
        }
        let inv0 = a0.recip();
        let n = match self.order {
            Some(m) => m + 1,
            None => 1,
        };
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += self.coeff(i) * &b[k - i];
            }
            b.push(-(&inv0 * s));
        }
        Some(Truncated::build(self.order, b))
    }

    fn from_rational(q: &Rational) -> Self {
        Truncated::build(None, vec![q.clone()])
    }

    fn compatible(&self, other: &Self) -> bool {
        match (self.order, other.order) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

impl fmt::Display for Truncated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let pow = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if is_integer_one_abs(&a) {
                f.write_str(&pow)?;
            } else {
                write!(f, "{a}*{pow}")?;
            }
        }
        Ok(())
    }
}
