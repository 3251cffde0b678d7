#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scenecloud::TermMatrix;

pub fn fixture(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/").to_owned() + name;
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub const FIXTURES: [&str; 7] = [
    "lab_night.txt",
    "desert_case.txt",
    "distinct.txt",
    "duplicate.txt",
    "identity.txt",
    "uniform.txt",
    "scene25.txt",
];

/// Count table with entries in 0..=9 and no empty row or column.
pub fn random_counts(rng: &mut impl Rng, max_rows: usize, max_cols: usize) -> Vec<Vec<u32>> {
    let n = rng.gen_range(2..=max_rows);
    let m = rng.gen_range(2..=max_cols);
    loop {
        let counts: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=9)).collect())
            .collect();
        let rows_ok = counts.iter().all(|r| r.iter().any(|&c| c > 0));
        let cols_ok = (0..m).all(|j| counts.iter().any(|r| r[j] > 0));
        if rows_ok && cols_ok {
            return counts;
        }
    }
}

pub fn random_matrices(
    seed: u64,
    count: usize,
    max_rows: usize,
    max_cols: usize,
) -> Vec<TermMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| TermMatrix::from_counts(random_counts(&mut rng, max_rows, max_cols)))
        .collect()
}

/// χ² distance between rows computed straight from the counts:
/// d² = Σ_j (k / k_j) (k_ij / k_i - k_i'j / k_i')².
pub fn chi2_oracle(counts: &[Vec<u32>], a: usize, b: usize) -> f64 {
    let k: f64 = counts.iter().flatten().map(|&c| c as f64).sum();
    let ka: f64 = counts[a].iter().map(|&c| c as f64).sum();
    let kb: f64 = counts[b].iter().map(|&c| c as f64).sum();
    let mut d2 = 0.0;
    for j in 0..counts[0].len() {
        let kj: f64 = counts.iter().map(|r| r[j] as f64).sum();
        let diff = counts[a][j] as f64 / ka - counts[b][j] as f64 / kb;
        d2 += k / kj * diff * diff;
    }
    d2.sqrt()
}

/// Pearson's χ² statistic of the table divided by its grand total.
pub fn pearson_over_total(counts: &[Vec<u32>]) -> f64 {
    let k: f64 = counts.iter().flatten().map(|&c| c as f64).sum();
    let rows: Vec<f64> = counts
        .iter()
        .map(|r| r.iter().map(|&c| c as f64).sum())
        .collect();
    let cols: Vec<f64> = (0..counts[0].len())
        .map(|j| counts.iter().map(|r| r[j] as f64).sum())
        .collect();
    let mut stat = 0.0;
    for (i, r) in counts.iter().enumerate() {
        for (j, &o) in r.iter().enumerate() {
            let e = rows[i] * cols[j] / k;
            stat += (o as f64 - e).powi(2) / e;
        }
    }
    stat / k
}

/// Relative closeness; two values that are both at rounding level of zero
/// (identical profiles) compare equal.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let diff = (a - b).abs();
    diff <= tol * a.abs().max(b.abs()) || diff <= 1e-12
}
