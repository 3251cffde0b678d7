//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! Every eigenpair comes back with a residual `|A v - λ v|` at rounding level
//! relative to `|A|`, including pairs whose eigenvalues sit far below the
//! largest one. Sweeps visit pairs in a fixed order, so results are
//! reproducible bit for bit.

const MAX_SWEEPS: usize = 100;

pub(crate) struct SymmetricEigen {
    /// Unsorted eigenvalues.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Diagonalizes the symmetric matrix `a` (full storage, rows). Returns
/// `None` if the off-diagonal mass does not vanish within the sweep budget.
// rows and columns p, q are updated together, so indexing reads clearer
#[allow(clippy::needless_range_loop)]
pub(crate) fn symmetric_eigen(mut a: Vec<Vec<f64>>) -> Option<SymmetricEigen> {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let norm = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let floor = f64::EPSILON * f64::EPSILON * norm;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                let (app, aqq) = (a[p][p], a[q][q]);
                if apq.abs() <= floor || apq.abs() <= f64::EPSILON * (app * aqq).abs().sqrt() {
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = (t * t + 1.0).sqrt().recip();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let (g, h) = (a[r][p], a[r][q]);
                        let rp = g - s * (h + g * tau);
                        let rq = h + s * (g - h * tau);
                        a[r][p] = rp;
                        a[p][r] = rp;
                        a[r][q] = rq;
                        a[q][r] = rq;
                    }
                }
                for row in v.iter_mut() {
                    let (g, h) = (row[p], row[q]);
                    row[p] = g - s * (h + g * tau);
                    row[q] = h + s * (g - h * tau);
                }
            }
        }
        if !rotated {
            let values = (0..n).map(|k| a[k][k]).collect();
            let vectors = (0..n)
                .map(|k| v.iter().map(|row| row[k]).collect())
                .collect();
            return Some(SymmetricEigen { values, vectors });
        }
    }
    None
}
