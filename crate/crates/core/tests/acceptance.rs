//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any gating criterion fails.
//!
//! The CSI 101 corpus check runs only when `SCENECLOUD_CSI101` points at a
//! transcript; otherwise it prints SKIP.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{chi2_oracle, fixture, random_matrices, rel_close, FIXTURES};
use scenecloud::ca::{chi2_distance, fit_counts, total_inertia, transition_check};
use scenecloud::pertinence::{
    nearest_word_per_scene, uniqueness_report, CandidateSet, DEFAULT_BANDS,
};
use scenecloud::render::{render_cloud, CloudOptions};
use scenecloud::script::{build_matrix, parse_script, tokenize, ParseOptions, Setting, TimeOfDay};
use scenecloud::{CaModel, Error, FrequencyTable, PertinenceMap, Script};

const SUITE_SEED: u64 = 0x5ce_c10d;
const SUITE_SIZE: usize = 200;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn check(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

type Suite = Vec<(Vec<Vec<u32>>, FrequencyTable, CaModel)>;

fn fitted_suite() -> (Suite, f64) {
    let start = Instant::now();
    let suite = random_matrices(SUITE_SEED, SUITE_SIZE, 20, 40)
        .into_iter()
        .map(|m| {
            let (ft, model) = fit_counts(&m).expect("suite matrices have no empty margins");
            (m.counts, ft, model)
        })
        .collect();
    (suite, start.elapsed().as_secs_f64())
}

fn metric_preservation(suite: &Suite, fit_secs: f64) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for (counts, ft, model) in suite {
        for a in 0..counts.len() {
            for b in a + 1..counts.len() {
                let f = model.factor_distance(a, b).unwrap();
                let c = chi2_distance(ft, a, b).unwrap();
                let o = chi2_oracle(counts, a, b);
                if !rel_close(f, c, 1e-9) || !rel_close(c, o, 1e-9) {
                    failures += 1;
                }
                if c > 1e-12 {
                    worst = worst.max((f - c).abs() / c);
                }
            }
        }
    }
    let secs = fit_secs + start.elapsed().as_secs_f64();
    Outcome::check(
        failures == 0 && secs < 10.0,
        format!("{failures} failing row pairs, worst rel err {worst:.2e}, {secs:.2} s"),
    )
}

fn inertia_decomposition(suite: &Suite) -> Outcome {
    let mut bad_sum = 0;
    let mut bad_rank = 0;
    let mut worst = 0.0f64;
    for (counts, ft, model) in suite {
        let sum: f64 = model.eigenvalues.iter().sum();
        let inertia = total_inertia(ft);
        worst = worst.max((sum - inertia).abs() / inertia.max(f64::MIN_POSITIVE));
        if !rel_close(sum, inertia, 1e-10) {
            bad_sum += 1;
        }
        if model.n_factors() > (counts.len() - 1).min(counts[0].len() - 1) {
            bad_rank += 1;
        }
    }
    Outcome::check(
        bad_sum == 0 && bad_rank == 0,
        format!("sum mismatches {bad_sum}, rank violations {bad_rank}, worst rel err {worst:.2e}"),
    )
}

fn transition_formulas(suite: &Suite) -> Outcome {
    let (mut rows, mut cols) = (0.0f64, 0.0f64);
    for (_, ft, model) in suite {
        let r = transition_check(model, ft);
        rows = rows.max(r.rows);
        cols = cols.max(r.cols);
    }
    Outcome::check(
        rows < 1e-9 && cols < 1e-9,
        format!("max residual rows-from-columns {rows:.2e}, columns-from-rows {cols:.2e}"),
    )
}

fn centering(suite: &Suite) -> Outcome {
    let mut worst = 0.0f64;
    for (_, _, model) in suite {
        for a in 0..model.n_factors() {
            let rows: f64 = model
                .row_coords
                .iter()
                .zip(&model.row_mass)
                .map(|(c, m)| c[a] * m)
                .sum();
            let cols: f64 = model
                .col_coords
                .iter()
                .zip(&model.col_mass)
                .map(|(c, m)| c[a] * m)
                .sum();
            worst = worst.max(rows.abs()).max(cols.abs());
        }
    }
    Outcome::check(
        worst < 1e-10,
        format!("max |weighted centroid| {worst:.2e}"),
    )
}

fn hand_case() -> Outcome {
    let m = scenecloud::TermMatrix::from_counts(vec![vec![1, 0], vec![0, 1]]);
    let (ft, model) = fit_counts(&m).unwrap();
    let inertia = total_inertia(&ft);
    let rows = model.factor_distance(0, 1).unwrap();
    let coincide = model
        .row_word_distance(0, 0)
        .unwrap()
        .max(model.row_word_distance(1, 1).unwrap());
    let passed = (inertia - 1.0).abs() <= 1e-12
        && model.eigenvalues.len() == 1
        && (model.eigenvalues[0] - 1.0).abs() <= 1e-12
        && (rows - 2.0).abs() <= 1e-12
        && coincide <= 1e-12;
    Outcome::check(
        passed,
        format!(
            "inertia {inertia}, eigenvalues {:?}, row distance {rows}, scene-word distance {coincide:.1e}",
            model.eigenvalues
        ),
    )
}

fn tokenizer_fidelity() -> Outcome {
    let contraction = tokenize("doesn't");
    let parsed = parse_script(&fixture("scene25.txt"), &ParseOptions::default());
    let Ok(parsed) = parsed else {
        return Outcome::check(false, "scene-25 excerpt failed to parse");
    };
    let scene = &parsed.script.scenes[0];
    let passed = contraction == ["doesn"]
        && parsed.script.scenes.len() == 1
        && scene.header.setting == Setting::Interior
        && scene.header.time_of_day == TimeOfDay::Night
        && scene.header.location == "CSI - EVIDENCE ROOM"
        && scene.speakers.iter().any(|s| s == "WARRICK BROWN");
    Outcome::check(
        passed,
        format!(
            "doesn't -> {contraction:?}; {:?}/{:?}, location {:?}, speakers {:?}",
            scene.header.setting, scene.header.time_of_day, scene.header.location, scene.speakers
        ),
    )
}

fn analyze(text: &str, candidates: &CandidateSet) -> scenecloud::Result<(Script, PertinenceMap)> {
    let script = parse_script(text, &ParseOptions::default())?.script;
    let (_, model) = fit_counts(&build_matrix(&script)?)?;
    let map = nearest_word_per_scene(&model, candidates, DEFAULT_BANDS)?;
    Ok((script, map))
}

fn cloud_shape() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for name in FIXTURES {
        let text = fixture(name);
        let (script, map) = match analyze(&text, &CandidateSet::FullVocabulary) {
            Ok(r) => r,
            // a single scene has no second profile to compare against
            Err(Error::DegenerateMatrix { scenes, .. }) if scenes < 2 => continue,
            Err(e) => {
                problems.push(format!("{name}: {e}"));
                continue;
            }
        };
        checked += 1;
        let opts = CloudOptions::default();
        let doc = render_cloud(&map, &opts);
        let in_order = doc
            .items
            .iter()
            .enumerate()
            .all(|(i, t)| t.scene_index == i + 1);
        let monotone = doc.items.iter().all(|a| {
            doc.items
                .iter()
                .all(|b| a.distance > b.distance || a.band >= b.band)
        });
        let (_, again) = analyze(&text, &CandidateSet::FullVocabulary).unwrap();
        let redo = render_cloud(&again, &opts);
        let deterministic = doc.to_svg() == redo.to_svg() && doc.to_html() == redo.to_html();
        if doc.items.len() != script.scenes.len() || !in_order || !monotone || !deterministic {
            problems.push(format!(
                "{name}: tags {} scenes {} ordered {in_order} monotone {monotone} deterministic {deterministic}",
                doc.items.len(),
                script.scenes.len()
            ));
        }
    }
    Outcome::check(
        problems.is_empty() && checked > 0,
        if problems.is_empty() {
            format!("{checked} analyzable fixtures")
        } else {
            problems.join("; ")
        },
    )
}

fn uniqueness() -> Outcome {
    let distinct = analyze(&fixture("distinct.txt"), &CandidateSet::FullVocabulary)
        .map(|(_, m)| uniqueness_report(&m));
    let forced = analyze(&fixture("duplicate.txt"), &CandidateSet::FullVocabulary)
        .map(|(_, m)| uniqueness_report(&m));
    match (distinct, forced) {
        (Ok(d), Ok(f)) => {
            let listed = f
                .iter()
                .any(|dup| dup.word == "kettle" && dup.scenes == [1, 3]);
            Outcome::check(
                d.is_empty() && listed,
                format!(
                    "distinct fixture duplicates {}, forced fixture {:?}",
                    d.len(),
                    f
                ),
            )
        }
        (d, f) => Outcome::check(
            false,
            format!("analysis failed: {:?} / {:?}", d.err(), f.err()),
        ),
    }
}

const CSI101_SEQUENCE: [&str; 50] = [
    "royce",
    "soon",
    "coughs",
    "tape",
    "building",
    "makes",
    "gasps",
    "shift",
    "sign",
    "forced",
    "rushes",
    "city",
    "feet",
    "body",
    "hotel",
    "ah",
    "trying",
    "or",
    "business",
    "shoes",
    "screaming",
    "swab",
    "gun",
    "were",
    "rattle",
    "print",
    "really",
    "brass",
    "remember",
    "judge",
    "any",
    "latex",
    "skin",
    "both",
    "herself",
    "believe",
    "hospital",
    "dress",
    "finger",
    "minute",
    "deep",
    "statement",
    "minutes",
    "shh",
    "match",
    "second",
    "watching",
    "enters",
    "ring",
    "full",
];

fn csi101(path: &str) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::check(false, format!("{path}: {e}")),
    };
    let run = || -> scenecloud::Result<Outcome> {
        let script = parse_script(&text, &ParseOptions::default())?.script;
        let lengths: Vec<usize> = script.scenes.iter().map(|s| s.tokens.len()).collect();
        let (lo, hi) = (lengths.iter().min().copied(), lengths.iter().max().copied());
        let (_, model) = fit_counts(&build_matrix(&script)?)?;
        let map = nearest_word_per_scene(&model, &CandidateSet::FullVocabulary, DEFAULT_BANDS)?;
        let matching = map
            .words()
            .iter()
            .zip(CSI101_SEQUENCE)
            .filter(|(a, b)| **a == *b)
            .count();
        let passed = script.scenes.len() == 50
            && script.vocabulary.len() == 1679
            && script.total_tokens() == 9934
            && model.n_factors() == 49
            && (lo, hi) == (Some(146), Some(676))
            && map.entries.len() == 50
            && matching == 50;
        Ok(Outcome::check(
            passed,
            format!(
                "scenes {}, unique {}, total {}, factors {}, lengths {lo:?}..{hi:?}, sequence matches {matching}/50",
                script.scenes.len(),
                script.vocabulary.len(),
                script.total_tokens(),
                model.n_factors()
            ),
        ))
    };
    run().unwrap_or_else(|e| Outcome::check(false, e.to_string()))
}

fn main() -> ExitCode {
    let (suite, fit_secs) = fitted_suite();
    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "1 metric preservation",
            metric_preservation(&suite, fit_secs),
        ),
        ("2 inertia decomposition", inertia_decomposition(&suite)),
        ("3 transition formulas", transition_formulas(&suite)),
        ("4 centering", centering(&suite)),
        ("5 hand-derived 2x2", hand_case()),
        ("6 tokenizer fidelity", tokenizer_fidelity()),
        ("7 cloud shape", cloud_shape()),
        ("8 uniqueness report", uniqueness()),
    ];

    let mut failed = 0;
    for (name, outcome) in &criteria {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {}", outcome.detail);
        failed += usize::from(!outcome.passed);
    }

    // corpus-dependent; reported but never gating
    match std::env::var("SCENECLOUD_CSI101") {
        Ok(path) => {
            let o = csi101(&path);
            let tag = if o.passed { "PASS" } else { "FAIL" };
            println!(
                "{tag} 9 CSI 101 reproduction (optional, not gating): {}",
                o.detail
            );
        }
        Err(_) => {
            println!("SKIP 9 CSI 101 reproduction: set SCENECLOUD_CSI101 to a transcript path")
        }
    }

    println!(
        "{} of {} gating criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
