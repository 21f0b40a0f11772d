//! Small exact linear-algebra helpers.

use crate::rational::Rational;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| dot(row, x)).collect()
}

/// Row rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for row in rows {
        let mut reduced = row.clone();
        for basis in &echelon {
            let lead = basis.iter().position(|v| !v.is_zero()).unwrap();
            if !reduced[lead].is_zero() {
                let factor = &reduced[lead] / &basis[lead];
                for k in 0..width {
                    let delta = &factor * &basis[k];
                    reduced[k] = &reduced[k] - &delta;
                }
            }
        }
        if reduced.iter().any(|v| !v.is_zero()) {
            echelon.push(reduced);
        }
    }
    echelon.len()
}

/// Solves the square system `A x = rhs` by fraction-pivoting Gaussian
/// elimination. Returns `None` when the matrix is singular.
pub fn solve_square(a: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rhs.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut augmented = row.clone();
            augmented.push(r.clone());
            augmented
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let pivot_value = m[col][col].clone();
        for entry in &mut m[col][col..] {
            *entry = &*entry / &pivot_value;
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone();
            let pivot_row = m[col][col..].to_vec();
            for (entry, pivot) in m[row][col..].iter_mut().zip(&pivot_row) {
                let delta = &factor * pivot;
                *entry = &*entry - &delta;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}
