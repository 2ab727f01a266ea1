//! Small dense linear algebra: LU with partial pivoting, solve, and signed
//! determinant. Systems here are tiny (a truncation N=9 gives 82 unknowns),
//! so a straightforward row-major implementation is plenty.

/// Error for a numerically singular factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matrix is singular to working precision")]
pub struct Singular;

/// LU factors of a square matrix with row pivoting.
pub struct Lu {
    n: usize,
    /// Combined L (unit diagonal, below) and U (on/above diagonal).
    lu: Vec<f64>,
    piv: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factorizes `a` (row-major, n×n). Fails when a pivot vanishes.
    pub fn factor(mut a: Vec<f64>, n: usize) -> Result<Lu, Singular> {
        assert_eq!(a.len(), n * n);
        let mut piv: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for col in 0..n {
            let mut best = col;
            let mut best_val = a[col * n + col].abs();
            for row in col + 1..n {
                let v = a[row * n + col].abs();
                if v > best_val {
                    best = row;
                    best_val = v;
                }
            }
            if best_val == 0.0 {
                return Err(Singular);
            }
            if best != col {
                for k in 0..n {
                    a.swap(col * n + k, best * n + k);
                }
                piv.swap(col, best);
                sign = -sign;
            }
            let pivot = a[col * n + col];
            for row in col + 1..n {
                let factor = a[row * n + col] / pivot;
                a[row * n + col] = factor;
                for k in col + 1..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
        Ok(Lu { n, lu: a, piv, sign })
    }

    /// Solves `A x = b` in place.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for k in 0..i {
                x[i] -= self.lu[i * n + k] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                x[i] -= self.lu[i * n + k] * x[k];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// Determinant from the pivot product.
    pub fn det(&self) -> f64 {
        let mut d = self.sign;
        for i in 0..self.n {
            d *= self.lu[i * self.n + i];
        }
        d
    }
}

/// Determinant of a row-major n×n matrix; zero when singular.
pub fn det(a: &[f64], n: usize) -> f64 {
    match Lu::factor(a.to_vec(), n) {
        Ok(lu) => lu.det(),
        Err(Singular) => 0.0,
    }
}

/// Solves `A x = b` for a fresh matrix.
pub fn solve(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>, Singular> {
    Ok(Lu::factor(a.to_vec(), n)?.solve(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = vec![2.0, 1.0, -1.0, -3.0, -1.0, 2.0, -2.0, 1.0, 2.0];
        let b = vec![8.0, -11.0, -3.0];
        let x = solve(&a, &b, 3).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
        assert!((x[2] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn det_sign_tracks_pivoting() {
        let a = vec![0.0, 1.0, 1.0, 0.0];
        assert_eq!(det(&a, 2), -1.0);
        let id = vec![1.0, 0.0, 0.0, 1.0];
        assert_eq!(det(&id, 2), 1.0);
    }

    #[test]
    fn singular_detected() {
        let a = vec![1.0, 2.0, 2.0, 4.0];
        assert!(solve(&a, &[1.0, 1.0], 2).is_err());
        assert_eq!(det(&a, 2), 0.0);
    }
}
