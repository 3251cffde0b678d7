//! Most pertinent word per scene and display bands.
//!
//! A scene's pertinent word is its nearest column point in the full factor
//! space, so no information is lost to a planar projection. Restricting the
//! candidates to a list of character names turns the same query into a
//! per-scene character track.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ca::CaModel;
use crate::{Error, Result};

pub const DEFAULT_BANDS: usize = 6;

/// Principal characters of the CSI fixtures, as lowercase tokens.
pub const DEFAULT_CHARACTERS: [&str; 6] =
    ["grissom", "warrick", "nick", "catherine", "brass", "sara"];

/// Smallest squared distance fed to the logarithm.
const MIN_SQ_DISTANCE: f64 = 1e-300;

/// Squared distances this close (relative) are treated as ties.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "words", rename_all = "snake_case")]
pub enum CandidateSet {
    FullVocabulary,
    Restricted(Vec<String>),
}

impl CandidateSet {
    /// Parses a comma separated list; words are lowercased and trimmed.
    pub fn from_list(list: &str) -> Self {
        let mut words: Vec<String> = list
            .split(|c: char| c == ',' || c.is_whitespace())
            .map(|w| w.trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        words.dedup();
        CandidateSet::Restricted(words)
    }

    pub fn characters() -> Self {
        CandidateSet::Restricted(DEFAULT_CHARACTERS.iter().map(|s| s.to_string()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PertinenceEntry {
    pub scene_index: usize,
    pub word: String,
    pub distance: f64,
    /// 1..=band_count, the highest band being the closest fit.
    pub band: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PertinenceMap {
    pub entries: Vec<PertinenceEntry>,
    pub candidate_set: CandidateSet,
    pub band_count: usize,
}

impl PertinenceMap {
    pub fn words(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.word.as_str()).collect()
    }
}

fn resolve(model: &CaModel, candidates: &CandidateSet) -> Result<Vec<usize>> {
    let cols: Vec<usize> = match candidates {
        CandidateSet::FullVocabulary => (0..model.ncols()).collect(),
        CandidateSet::Restricted(words) => words
            .iter()
            .map(|w| {
                model
                    .col_index(w)
                    .ok_or_else(|| Error::UnknownCandidate(w.clone()))
            })
            .collect::<Result<_>>()?,
    };
    if cols.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    Ok(cols)
}

/// Index (into `cols`) of the candidate nearest to row `i`. Near-equal
/// distances go to the lexicographically smaller label.
fn nearest(model: &CaModel, i: usize, cols: &[usize]) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for &j in cols {
        let d2 = model.row_word_sq_distance(i, j)?;
        best = match best {
            None => Some((j, d2)),
            Some((bj, bd2)) => {
                let tied = (d2 - bd2).abs() <= TIE_TOLERANCE * d2.max(bd2);
                if (tied && model.col_labels[j] < model.col_labels[bj]) || (!tied && d2 < bd2) {
                    Some((j, d2))
                } else {
                    Some((bj, bd2))
                }
            }
        };
    }
    Ok(best.expect("non-empty candidates"))
}

/// First nearest candidate word for every scene, banded into
/// `band_count` display levels.
pub fn nearest_word_per_scene(
    model: &CaModel,
    candidates: &CandidateSet,
    band_count: usize,
) -> Result<PertinenceMap> {
    let cols = resolve(model, candidates)?;
    let picks = (0..model.nrows())
        .map(|i| nearest(model, i, &cols))
        .collect::<Result<Vec<_>>>()?;
    let distances: Vec<f64> = picks.iter().map(|&(_, d2)| d2.sqrt()).collect();
    let bands = assign_bands(&distances, band_count);
    let entries = picks
        .iter()
        .zip(distances)
        .zip(bands)
        .enumerate()
        .map(|(i, ((&(j, _), distance), band))| PertinenceEntry {
            scene_index: i + 1,
            word: model.col_labels[j].clone(),
            distance,
            band,
        })
        .collect();
    Ok(PertinenceMap {
        entries,
        candidate_set: candidates.clone(),
        band_count: band_count.max(1),
    })
}

/// Bins distances by `log10(d²)` into `band_count` equal-width intervals
/// over the observed range. The closest interval gets the highest band.
///
/// `d²` is clamped below at 1e-300, so coincident points (d = 0) take the
/// minimum and always land in the top band. A value on an interior boundary
/// goes to the farther interval; the maximum stays in the last one.
pub fn assign_bands(distances: &[f64], band_count: usize) -> Vec<usize> {
    let top = band_count.max(1);
    let logs: Vec<f64> = distances
        .iter()
        .map(|&d| (d * d).max(MIN_SQ_DISTANCE).log10())
        .collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (hi - lo) / top as f64;

    logs.iter()
        .map(|&v| {
            if width.is_nan() || width <= 0.0 || v <= lo {
                return top;
            }
            let slot = (((v - lo) / width).floor() as usize).min(top - 1);
            top - slot
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplicate {
    pub word: String,
    pub scenes: Vec<usize>,
}

/// Words chosen for more than one scene, in order of first use.
pub fn uniqueness_report(map: &PertinenceMap) -> Vec<Duplicate> {
    let mut uses: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for e in &map.entries {
        uses.entry(&e.word).or_default().push(e.scene_index);
    }
    let mut dups: Vec<Duplicate> = uses
        .into_iter()
        .filter(|(_, scenes)| scenes.len() > 1)
        .map(|(word, scenes)| Duplicate {
            word: word.to_owned(),
            scenes,
        })
        .collect();
    dups.sort_by_key(|d| d.scenes[0]);
    dups
}
