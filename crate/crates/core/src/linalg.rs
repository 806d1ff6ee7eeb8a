//! Dense exact rational matrices, just enough for the propagators and
//! quadratic forms used here: inverse, determinant, rank, minors.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Ratio;

pub type Matrix = Vec<Vec<Ratio>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Ratio::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Ratio::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let mut out = zeros(m[0].len(), m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let prod = a[i][k].clone() * &b[k][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.clone() + y).collect())
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.clone() - y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &Ratio) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x.clone() * c).collect())
        .collect()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = a[col][j].clone() * &f;
                a[r][j] -= t;
                let t = inv[col][j].clone() * &f;
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn determinant(m: &Matrix) -> Ratio {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Ratio::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ratio::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col].clone();
        let p = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / &p;
            for j in col..n {
                let t = a[col][j].clone() * &f;
                a[r][j] -= t;
            }
        }
    }
    det
}

pub fn rank(m: &Matrix) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let p = a[r][col].clone();
        for i in 0..rows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() / &p;
            for j in col..cols {
                let t = a[r][j].clone() * &f;
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Positive definiteness of a symmetric matrix by leading principal minors.
pub fn is_positive_definite(m: &Matrix) -> bool {
    let n = m.len();
    for k in 1..=n {
        let sub: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        if !crate::rational::is_positive(&determinant(&sub)) {
            return false;
        }
    }
    true
}

pub fn is_antisymmetric(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i].clone()))
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qq};

    #[test]
    fn inverse_and_det() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(determinant(&m), q(1));
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&sing).is_none());
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn positive_definite_minors() {
        let good = vec![vec![q(2), q(1)], vec![q(1), q(2)]];
        assert!(is_positive_definite(&good));
        let bad = vec![vec![q(1), q(3)], vec![q(3), q(1)]];
        assert!(!is_positive_definite(&bad));
        assert!(is_positive_definite(&vec![vec![qq(1, 2)]]));
    }
}
