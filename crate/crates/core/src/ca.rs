//! Correspondence analysis of a scene × word contingency table.
//!
//! Counts `k(i,j)` become relative frequencies `f_ij = k(i,j)/k` with row
//! masses `f_i` and column masses `f_j`. Rows are compared through their
//! profiles `f_ij/f_i` under the χ² metric (weights `1/f_j`). The fit maps
//! rows and columns into one Euclidean factor space in which inter-row
//! distances equal the χ² distances exactly, factors ordered by decreasing
//! inertia (eigenvalue).
//!
//! The inertia is decomposed on the smaller of the two sets: the Gram matrix
//! of standardized residuals `s_ij = (f_ij - f_i f_j) / sqrt(f_i f_j)` is
//! formed on that side and diagonalized by Jacobi rotations; the other
//! side's coordinates follow from the transition formulas
//!
//! ```text
//! F_a(i) = λ_a^{-1/2} Σ_j (f_ij / f_i) G_a(j)
//! G_a(j) = λ_a^{-1/2} Σ_i (f_ij / f_j) F_a(i)
//! ```

use serde::{Deserialize, Serialize};

use crate::eigen::symmetric_eigen;
use crate::script::TermMatrix;
use crate::{Error, Result};

/// Factors with `λ < RELATIVE_CUTOFF * λ_1` are numerical null space.
pub const RELATIVE_CUTOFF: f64 = 1e-12;

/// Factors below this absolute eigenvalue are dropped as well, which
/// matters when the table is (numerically) independent and `λ_1` itself is
/// rounding noise.
pub const ABSOLUTE_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct FrequencyTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// Relative frequencies, one row per scene.
    f: Vec<Vec<f64>>,
    row_mass: Vec<f64>,
    col_mass: Vec<f64>,
    grand_total: u64,
}

/// Relative frequencies and marginal masses of a count table.
pub fn to_frequencies(m: &TermMatrix) -> Result<FrequencyTable> {
    let ncols = m.ncols();
    for (row, counts) in m.counts.iter().enumerate() {
        if counts.len() != ncols {
            return Err(Error::ShapeMismatch {
                row,
                len: counts.len(),
                expected: ncols,
            });
        }
    }
    if let Some(i) = m.row_totals().iter().position(|&t| t == 0) {
        return Err(Error::ZeroMarginal {
            axis: "row",
            index: i,
        });
    }
    let col_totals = m.col_totals();
    if let Some(j) = col_totals.iter().position(|&t| t == 0) {
        return Err(Error::ZeroMarginal {
            axis: "column",
            index: j,
        });
    }

    let k = m.grand_total();
    let total = k as f64;
    let f = m
        .counts
        .iter()
        .map(|row| row.iter().map(|&c| f64::from(c) / total).collect())
        .collect();
    let row_mass = m.row_totals().iter().map(|&t| t as f64 / total).collect();
    let col_mass = col_totals.iter().map(|&t| t as f64 / total).collect();
    Ok(FrequencyTable {
        row_labels: m.row_labels.iter().map(|r| r.to_string()).collect(),
        col_labels: m.col_labels.clone(),
        f,
        row_mass,
        col_mass,
        grand_total: k,
    })
}

impl FrequencyTable {
    pub fn nrows(&self) -> usize {
        self.row_mass.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_mass.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.f[i][j]
    }

    pub fn row_mass(&self) -> &[f64] {
        &self.row_mass
    }

    pub fn col_mass(&self) -> &[f64] {
        &self.col_mass
    }

    pub fn grand_total(&self) -> u64 {
        self.grand_total
    }

    /// The same table with the roles of rows and columns exchanged.
    pub fn transpose(&self) -> Self {
        Self {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            f: (0..self.ncols())
                .map(|j| self.f.iter().map(|row| row[j]).collect())
                .collect(),
            row_mass: self.col_mass.clone(),
            col_mass: self.row_mass.clone(),
            grand_total: self.grand_total,
        }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < self.nrows() {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds {
                what: "row",
                index: i,
                len: self.nrows(),
            })
        }
    }
}

/// χ² distance between the profiles of rows `i` and `i2`, centered on the
/// column masses.
pub fn chi2_distance(ft: &FrequencyTable, i: usize, i2: usize) -> Result<f64> {
    ft.check_row(i)?;
    ft.check_row(i2)?;
    let (fi, fi2) = (ft.row_mass[i], ft.row_mass[i2]);
    let d2: f64 = ft
        .col_mass
        .iter()
        .enumerate()
        .map(|(j, &fj)| {
            let diff = ft.f[i][j] / fi - ft.f[i2][j] / fi2;
            diff * diff / fj
        })
        .sum();
    Ok(d2.sqrt())
}

/// Total inertia: the χ² divergence of the table from the product of its
/// margins.
pub fn total_inertia(ft: &FrequencyTable) -> f64 {
    let mut sum = 0.0;
    for (i, &fi) in ft.row_mass.iter().enumerate() {
        for (j, &fj) in ft.col_mass.iter().enumerate() {
            let expected = fi * fj;
            let dev = ft.f[i][j] - expected;
            sum += dev * dev / expected;
        }
    }
    sum
}

/// A fitted correspondence analysis.
///
/// Coordinates are stored per point: `row_coords[i][a]` is the projection of
/// row `i` on factor `a + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaModel {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// Retained eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Share of retained inertia per factor, in percent.
    pub percent_inertia: Vec<f64>,
    pub total_inertia: f64,
    pub row_mass: Vec<f64>,
    pub col_mass: Vec<f64>,
    pub row_coords: Vec<Vec<f64>>,
    pub col_coords: Vec<Vec<f64>>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl CaModel {
    pub fn n_factors(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn nrows(&self) -> usize {
        self.row_coords.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_coords.len()
    }

    fn row(&self, i: usize) -> Result<&[f64]> {
        self.row_coords
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfBounds {
                what: "row",
                index: i,
                len: self.nrows(),
            })
    }

    fn col(&self, j: usize) -> Result<&[f64]> {
        self.col_coords
            .get(j)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfBounds {
                what: "column",
                index: j,
                len: self.ncols(),
            })
    }

    /// Euclidean distance between two rows over all retained factors.
    pub fn factor_distance(&self, i: usize, i2: usize) -> Result<f64> {
        Ok(sq_dist(self.row(i)?, self.row(i2)?).sqrt())
    }

    /// Squared full-dimensional distance between row `i` and column `j`.
    pub fn row_word_sq_distance(&self, i: usize, j: usize) -> Result<f64> {
        Ok(sq_dist(self.row(i)?, self.col(j)?))
    }

    /// Full-dimensional Euclidean distance between row `i` and column `j`.
    pub fn row_word_distance(&self, i: usize, j: usize) -> Result<f64> {
        self.row_word_sq_distance(i, j).map(f64::sqrt)
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }
}

/// Fits the analysis. See the module docs for the method.
pub fn fit_ca(ft: &FrequencyTable) -> Result<CaModel> {
    let (n, m) = (ft.nrows(), ft.ncols());
    if n < 2 || m < 2 {
        return Err(Error::DegenerateMatrix {
            scenes: n,
            words: m,
        });
    }
    let rows_smaller = n <= m;
    let residual = |i: usize, j: usize| {
        let expected = ft.row_mass[i] * ft.col_mass[j];
        (ft.f[i][j] - expected) / expected.sqrt()
    };
    // standardized residuals laid out with the diagonalized side first
    let (size, other) = if rows_smaller { (n, m) } else { (m, n) };
    let s: Vec<Vec<f64>> = (0..size)
        .map(|k| {
            (0..other)
                .map(|l| {
                    if rows_smaller {
                        residual(k, l)
                    } else {
                        residual(l, k)
                    }
                })
                .collect()
        })
        .collect();
    let mut gram = vec![vec![0.0; size]; size];
    for p in 0..size {
        for q in p..size {
            let dot: f64 = s[p].iter().zip(&s[q]).map(|(x, y)| x * y).sum();
            gram[p][q] = dot;
            gram[q][p] = dot;
        }
    }
    let eig = symmetric_eigen(gram).ok_or(Error::DecompositionFailure { size })?;

    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]));
    let lambda_1 = eig.values[order[0]];
    let kept: Vec<usize> = order
        .into_iter()
        .take_while(|&a| {
            let l = eig.values[a];
            l > ABSOLUTE_CUTOFF && l >= RELATIVE_CUTOFF * lambda_1
        })
        .take((n - 1).min(m - 1))
        .collect();
    let eigenvalues: Vec<f64> = kept.iter().map(|&a| eig.values[a]).collect();

    // coordinates on the diagonalized side, then the other side by transition
    let (small_mass, large_mass) = if rows_smaller {
        (&ft.row_mass, &ft.col_mass)
    } else {
        (&ft.col_mass, &ft.row_mass)
    };
    // sqrt(mass) spans the trivial null direction of the centered residuals;
    // the transition formulas give it eigenvalue 1, so any trace of it left
    // in an eigenvector is amplified by 1/λ. Project it out exactly.
    let trivial: Vec<f64> = small_mass.iter().map(|m| m.sqrt()).collect();
    let vectors: Vec<Vec<f64>> = kept
        .iter()
        .map(|&a| {
            let mut v = eig.vectors[a].clone();
            let overlap: f64 = v.iter().zip(&trivial).map(|(x, t)| x * t).sum();
            v.iter_mut()
                .zip(&trivial)
                .for_each(|(x, t)| *x -= overlap * t);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            v
        })
        .collect();
    let small: Vec<Vec<f64>> = (0..size)
        .map(|k| {
            vectors
                .iter()
                .zip(&eigenvalues)
                .map(|(v, &l)| v[k] * l.sqrt() / small_mass[k].sqrt())
                .collect()
        })
        .collect();
    let freq = |k: usize, l: usize| if rows_smaller { ft.f[k][l] } else { ft.f[l][k] };
    let large: Vec<Vec<f64>> = (0..other)
        .map(|l| {
            eigenvalues
                .iter()
                .enumerate()
                .map(|(a, &lambda)| {
                    let bary: f64 = (0..size)
                        .map(|k| freq(k, l) / large_mass[l] * small[k][a])
                        .sum();
                    bary / lambda.sqrt()
                })
                .collect()
        })
        .collect();
    let (mut row_coords, mut col_coords) = if rows_smaller {
        (small, large)
    } else {
        (large, small)
    };

    orient_factors(&mut row_coords, &mut col_coords, eigenvalues.len());

    let retained: f64 = eigenvalues.iter().sum();
    let percent_inertia = eigenvalues.iter().map(|l| 100.0 * l / retained).collect();
    Ok(CaModel {
        row_labels: ft.row_labels.clone(),
        col_labels: ft.col_labels.clone(),
        eigenvalues,
        percent_inertia,
        total_inertia: total_inertia(ft),
        row_mass: ft.row_mass.clone(),
        col_mass: ft.col_mass.clone(),
        row_coords,
        col_coords,
    })
}

/// Flips each factor so that its largest-magnitude row coordinate is
/// positive. Magnitudes within a relative 1e-9 of the maximum count as tied
/// and the first such row decides.
fn orient_factors(rows: &mut [Vec<f64>], cols: &mut [Vec<f64>], factors: usize) {
    for a in 0..factors {
        let max_abs = rows.iter().map(|r| r[a].abs()).fold(0.0, f64::max);
        let lead = rows
            .iter()
            .map(|r| r[a])
            .find(|x| x.abs() >= max_abs * (1.0 - 1e-9))
            .unwrap_or(0.0);
        if lead < 0.0 {
            rows.iter_mut()
                .chain(cols.iter_mut())
                .for_each(|p| p[a] = -p[a]);
        }
    }
}

/// Frequencies and fit in one step.
pub fn fit_counts(m: &TermMatrix) -> Result<(FrequencyTable, CaModel)> {
    let ft = to_frequencies(m)?;
    let model = fit_ca(&ft)?;
    Ok((ft, model))
}

/// Largest absolute violation of the transition formulas, per direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionResidual {
    /// Rows rebuilt from columns.
    pub rows: f64,
    /// Columns rebuilt from rows.
    pub cols: f64,
}

impl TransitionResidual {
    pub fn max(&self) -> f64 {
        self.rows.max(self.cols)
    }
}

pub fn transition_check(model: &CaModel, ft: &FrequencyTable) -> TransitionResidual {
    let mut rows: f64 = 0.0;
    let mut cols: f64 = 0.0;
    for (a, &lambda) in model.eigenvalues.iter().enumerate() {
        let scale = lambda.sqrt().recip();
        for i in 0..ft.nrows() {
            let bary: f64 = (0..ft.ncols())
                .map(|j| ft.f[i][j] / ft.row_mass[i] * model.col_coords[j][a])
                .sum();
            rows = rows.max((model.row_coords[i][a] - scale * bary).abs());
        }
        for j in 0..ft.ncols() {
            let bary: f64 = (0..ft.nrows())
                .map(|i| ft.f[i][j] / ft.col_mass[j] * model.row_coords[i][a])
                .sum();
            cols = cols.max((model.col_coords[j][a] - scale * bary).abs());
        }
    }
    TransitionResidual { rows, cols }
}
