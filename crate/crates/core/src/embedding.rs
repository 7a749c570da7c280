//! Barycentric ("rubber band") placement: every free point sits at a fixed
//! convex combination of its neighbours, some of which are pinned.

use num_traits::Float;

/// One free point: `x = Σ weight·x_j + constant`, where `j` ranges over free
/// points and `constant` collects the pinned neighbours.
#[derive(Clone, Debug, PartialEq)]
pub struct Row<T> {
    pub coeffs: Vec<(usize, T)>,
    pub constant: T,
}

/// Solved positions of the free points.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexEmbedding<T> {
    values: Vec<T>,
}

impl<T: Float> ConvexEmbedding<T> {
    /// Solves the system by Gaussian elimination with partial pivoting.
    /// Returns `None` if it is singular.
    pub fn solve(rows: &[Row<T>]) -> Option<Self> {
        let k = rows.len();
        let mut a = vec![T::zero(); k * (k + 1)];
        let w = k + 1;
        for (i, row) in rows.iter().enumerate() {
            a[i * w + i] = T::one();
            for &(j, c) in &row.coeffs {
                a[i * w + j] = a[i * w + j] - c;
            }
            a[i * w + k] = row.constant;
        }
        let eps = T::epsilon() * T::from(64).unwrap();
        for col in 0..k {
            let piv = (col..k).max_by(|&x, &y| {
                a[x * w + col].abs().partial_cmp(&a[y * w + col].abs()).unwrap_or(std::cmp::Ordering::Equal)
            })?;
            if a[piv * w + col].abs() <= eps {
                return None;
            }
            if piv != col {
                for c in 0..w {
                    a.swap(piv * w + c, col * w + c);
                }
            }
            let p = a[col * w + col];
            for r in 0..k {
                if r == col {
                    continue;
                }
                let f = a[r * w + col] / p;
                if f == T::zero() {
                    continue;
                }
                for c in col..w {
                    a[r * w + c] = a[r * w + c] - f * a[col * w + c];
                }
            }
        }
        Some(ConvexEmbedding { values: (0..k).map(|i| a[i * w + k] / a[i * w + i]).collect() })
    }

    /// Gauss-Seidel sweeps from the all-`start` vector until the largest
    /// update falls below `tol`. Returns `None` if `max_sweeps` is reached.
    pub fn solve_iterative(rows: &[Row<T>], start: T, tol: T, max_sweeps: usize) -> Option<Self> {
        let mut x = vec![start; rows.len()];
        for _ in 0..max_sweeps {
            let mut delta = T::zero();
            for (i, row) in rows.iter().enumerate() {
                let mut v = row.constant;
                for &(j, c) in &row.coeffs {
                    v = v + c * x[j];
                }
                delta = delta.max((v - x[i]).abs());
                x[i] = v;
            }
            if delta <= tol {
                return Some(ConvexEmbedding { values: x });
            }
        }
        None
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}
