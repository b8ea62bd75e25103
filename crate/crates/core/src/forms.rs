//! Inertia of symmetric bilinear forms over the rationals.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rational::Rat;

/// Sylvester inertia `(n_plus, n_minus, n_zero)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.zero
    }
}

/// Inertia of a symmetric matrix by exact congruence diagonalization.
///
/// A zero pivot with a nonzero diagonal entry further down is fixed by a
/// symmetric swap; otherwise a nonzero off-diagonal entry `s_kj` is folded
/// in by adding row and column `j` to `k`, which makes the pivot `2 s_kj`.
pub fn signature_of_symmetric(s: &Mat) -> Result<Inertia> {
    if !s.is_square() {
        return Err(Error::invalid(format!("signature of a non-square {}x{} matrix", s.rows(), s.cols())));
    }
    if !s.is_symmetric() {
        return Err(Error::invalid("signature of an asymmetric matrix"));
    }
    let n = s.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| s.row(i).to_vec()).collect();
    let mut inertia = Inertia { plus: 0, minus: 0, zero: 0 };

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                let src = a[j].clone();
                for (x, v) in a[k].iter_mut().zip(src) {
                    *x += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                inertia.zero += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            inertia.plus += 1;
        } else {
            inertia.minus += 1;
        }
        let pivot_row = a[k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k + 1..n {
                let v = &f * &pivot_row[j];
                a[i][j] -= v;
            }
            a[i][k] = Rat::zero();
            a[k][i] = Rat::zero();
        }
    }
    Ok(inertia)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inertia(m: &Mat) -> (usize, usize, usize) {
        let i = signature_of_symmetric(m).unwrap();
        (i.plus, i.minus, i.zero)
    }

    #[test]
    fn named_examples() {
        assert_eq!(inertia(&Mat::from_i64(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&Mat::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]])), (1, 1, 1));
        assert_eq!(inertia(&Mat::zeros(3, 3)), (0, 0, 3));
        assert_eq!(inertia(&Mat::zeros(0, 0)), (0, 0, 0));
    }

    #[test]
    fn zero_diagonal_needs_fold() {
        // hyperbolic plane sitting behind a zero row
        let m = Mat::from_i64(&[&[0, 0, 0], &[0, 0, 2], &[0, 2, 0]]);
        assert_eq!(inertia(&m), (1, 1, 1));
    }

    #[test]
    fn dense_indefinite() {
        let m = Mat::from_i64(&[
            &[-26, 26, -16, -52],
            &[26, -16, 12, 28],
            &[-16, 12, -8, -22],
            &[-52, 28, -22, -46],
        ]);
        assert_eq!(inertia(&m), (2, 2, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(signature_of_symmetric(&Mat::zeros(2, 3)).is_err());
        assert!(signature_of_symmetric(&Mat::from_i64(&[&[0, 1], &[0, 0]])).is_err());
    }
}
