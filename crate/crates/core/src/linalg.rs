//! Dense exact linear algebra over a [`Field`].

use crate::arith::Field;

/// Row-major dense matrix.
pub type Matrix<S> = Vec<Vec<S>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Field>(m: &mut Matrix<S>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Field>(m: &Matrix<S>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn kernel<S: Field>(m: &Matrix<S>, cols: usize) -> Vec<Vec<S>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Whether `m x = b` has a solution.
pub fn is_consistent<S: Field>(m: &Matrix<S>, b: &[S]) -> bool {
    let aug: Matrix<S> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    rank(m) == rank(&aug)
}

pub fn mat_vec<S: Field>(m: &Matrix<S>, v: &[S]) -> Vec<S> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| x == &q(0)));
        }
    }

    #[test]
    fn consistency() {
        let m = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(is_consistent(&m, &[q(1), q(2)]));
        assert!(!is_consistent(&m, &[q(1), q(3)]));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12)) {
            let m: Matrix<Rational> = entries.chunks(4).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let k = kernel(&m, 4);
            prop_assert_eq!(rank(&m) + k.len(), 4);
            for v in &k {
                prop_assert!(mat_vec(&m, v).iter().all(|x| x == &q(0)));
            }
        }
    }
}
