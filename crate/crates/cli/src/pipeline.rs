use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use scenecloud::artifact::{from_json, peek_kind, to_json, Artifact};
use scenecloud::ca::fit_counts;
use scenecloud::pertinence::{
    nearest_word_per_scene, uniqueness_report, CandidateSet, DEFAULT_BANDS,
};
use scenecloud::render::{
    render_cloud, render_factor_map, render_frequency_cloud, CloudOptions, FactorMapSpec, Layout,
};
use scenecloud::script::{
    self, build_matrix, parse_script, HeaderPatterns, ParseOptions, DEFAULT_MIN_WORD_LEN,
};
use scenecloud::{CaModel, Error, PertinenceMap, Script, TermMatrix};

use crate::config::FileConfig;

const DEFAULT_STATS_TOP_K: usize = 10;
const DEFAULT_BASELINE_TOP_K: usize = 50;

/// Command line values; `None` or `false` defers to the config file.
pub struct Flags {
    pub header_patterns: Vec<String>,
    pub min_word_len: Option<usize>,
    pub keep_frontpiece: bool,
    pub count_headers: bool,
    pub title: Option<String>,
    pub bands: Option<usize>,
    pub layout: Option<Layout>,
    pub color_by_band: bool,
}

pub struct Settings {
    pub parse: ParseOptions,
    pub bands: usize,
    pub layout: Layout,
    pub color_by_band: bool,
    pub top_k: Option<usize>,
    pub characters: Option<Vec<String>>,
    pub out_dir: PathBuf,
}

impl Settings {
    pub fn merge(file: FileConfig, out_dir: Option<PathBuf>, flags: Flags) -> anyhow::Result<Self> {
        let patterns = if !flags.header_patterns.is_empty() {
            HeaderPatterns::new(&flags.header_patterns)?
        } else if let Some(p) = &file.header_patterns {
            HeaderPatterns::new(p)?
        } else {
            HeaderPatterns::default()
        };
        Ok(Settings {
            parse: ParseOptions {
                header_patterns: patterns,
                min_word_len: flags
                    .min_word_len
                    .or(file.min_word_len)
                    .unwrap_or(DEFAULT_MIN_WORD_LEN),
                keep_frontpiece: flags.keep_frontpiece || file.keep_frontpiece.unwrap_or(false),
                count_headers: flags.count_headers || file.count_headers.unwrap_or(false),
                title: flags.title.or(file.title),
            },
            bands: flags.bands.or(file.bands).unwrap_or(DEFAULT_BANDS),
            layout: flags.layout.or(file.layout).unwrap_or_default(),
            color_by_band: flags.color_by_band || file.color_by_band.unwrap_or(false),
            top_k: file.top_k,
            characters: file.characters,
            out_dir: out_dir
                .or(file.out_dir)
                .unwrap_or_else(|| PathBuf::from(".")),
        })
    }
}

pub enum Job {
    Stats {
        top_k: Option<usize>,
    },
    Analyze,
    Cloud {
        baseline: bool,
        top_k: Option<usize>,
    },
    Characters {
        list: Option<String>,
    },
    Map {
        axes: Option<(usize, usize)>,
        label: bool,
    },
}

pub struct Outcome {
    pub warnings: Vec<String>,
    pub result: anyhow::Result<String>,
}

/// Stable process exit code for an error.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(
            Error::DegenerateMatrix { .. }
            | Error::ZeroMarginal { .. }
            | Error::DecompositionFailure { .. }
            | Error::ShapeMismatch { .. },
        ) => 3,
        Some(Error::UnknownCandidate(_) | Error::EmptyCandidates) => 4,
        Some(Error::InsufficientFactors { .. } | Error::AxisOutOfRange { .. }) => 5,
        _ => 2,
    }
}

/// What an input file turned out to hold.
enum Input {
    Script(Script),
    Matrix(TermMatrix),
    Model(CaModel),
}

/// Output file prefix: the file name without its artifact suffix.
pub fn stem(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    for suffix in [".script.json", ".matrix.json", ".model.json"] {
        if let Some(s) = name.strip_suffix(suffix) {
            return s.to_owned();
        }
    }
    match path.file_stem() {
        Some(s) => s.to_string_lossy().into_owned(),
        None => name,
    }
}

fn load(path: &Path, opts: &ParseOptions, warnings: &mut Vec<String>) -> anyhow::Result<Input> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "json") {
        let kind = peek_kind(&text)?;
        return Ok(match kind.as_str() {
            Script::KIND => Input::Script(from_json(&text)?),
            TermMatrix::KIND => Input::Matrix(from_json(&text)?),
            CaModel::KIND => Input::Model(from_json(&text)?),
            other => bail!("cannot start from a `{other}` artifact"),
        });
    }
    let parsed = parse_script(&text, opts)?;
    warnings.extend(parsed.warnings.iter().map(ToString::to_string));
    Ok(Input::Script(parsed.script))
}

struct Stage {
    stem: String,
    out_dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Stage {
    fn write(&mut self, suffix: &str, contents: &str) -> anyhow::Result<()> {
        let path = self.out_dir.join(format!("{}.{suffix}", self.stem));
        std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    fn artifact<T: Artifact>(&mut self, suffix: &str, value: &T) -> anyhow::Result<()> {
        self.write(suffix, &to_json(value))
    }
}

fn matrix_of(input: Input, stage: &mut Stage) -> anyhow::Result<TermMatrix> {
    match input {
        Input::Script(s) => {
            let m = build_matrix(&s)?;
            stage.artifact("script.json", &s)?;
            stage.artifact("matrix.json", &m)?;
            Ok(m)
        }
        Input::Matrix(m) => Ok(m),
        Input::Model(_) => bail!("a fitted model has no counts; pass the script or matrix instead"),
    }
}

fn model_of(input: Input, stage: &mut Stage) -> anyhow::Result<(Option<TermMatrix>, CaModel)> {
    if let Input::Model(model) = input {
        return Ok((None, model));
    }
    let m = matrix_of(input, stage)?;
    let (_, model) = fit_counts(&m)?;
    stage.artifact("model.json", &model)?;
    Ok((Some(m), model))
}

fn title_of(settings: &Settings, stem: &str) -> String {
    settings
        .parse
        .title
        .clone()
        .unwrap_or_else(|| stem.to_owned())
}

fn cloud_options(settings: &Settings, title: String) -> CloudOptions {
    CloudOptions {
        title,
        layout: settings.layout,
        color_by_band: settings.color_by_band,
        ..CloudOptions::default()
    }
}

/// Names from a file (one or more per line) or an inline comma list.
fn candidates(list: Option<&str>, settings: &Settings) -> anyhow::Result<CandidateSet> {
    Ok(match list {
        Some(arg) if Path::new(arg).is_file() => {
            let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
            CandidateSet::from_list(&text)
        }
        Some(arg) => CandidateSet::from_list(arg),
        None => match &settings.characters {
            Some(names) => CandidateSet::from_list(&names.join(",")),
            None => CandidateSet::characters(),
        },
    })
}

fn describe(report: &mut String, map: &PertinenceMap) {
    for e in &map.entries {
        let _ = writeln!(
            report,
            "  scene {:>3}  {:<16} band {}  distance {:.4}",
            e.scene_index, e.word, e.band, e.distance
        );
    }
}

pub fn run(path: &Path, settings: &Settings, job: &Job) -> Outcome {
    let mut warnings = Vec::new();
    let result = run_inner(path, settings, job, &mut warnings);
    Outcome { warnings, result }
}

fn run_inner(
    path: &Path,
    settings: &Settings,
    job: &Job,
    warnings: &mut Vec<String>,
) -> anyhow::Result<String> {
    let input = load(path, &settings.parse, warnings)?;
    let mut stage = Stage {
        stem: stem(path),
        out_dir: settings.out_dir.clone(),
        written: Vec::new(),
    };
    let mut report = format!("{}\n", path.display());

    match job {
        Job::Stats { top_k } => {
            let Input::Script(s) = input else {
                bail!("stats needs a script text or script artifact");
            };
            let k = top_k.or(settings.top_k).unwrap_or(DEFAULT_STATS_TOP_K);
            let st = script::stats(&s, k);
            stage.artifact("stats.json", &st)?;
            let _ = writeln!(
                report,
                "scenes: {}, unique words: {}",
                st.scenes, st.unique_words
            );
            let _ = writeln!(
                report,
                "total words: {}, words per scene: {}..{}",
                st.total_words, st.min_scene_words, st.max_scene_words
            );
            let top: Vec<String> = st
                .top_words
                .iter()
                .map(|w| format!("{} {}", w.word, w.count))
                .collect();
            let _ = writeln!(report, "top words: {}", top.join(", "));
        }
        Job::Analyze => {
            let (_, model) = model_of(input, &mut stage)?;
            let _ = writeln!(
                report,
                "factors: {}, total inertia: {:.6}",
                model.n_factors(),
                model.total_inertia
            );
            if model.n_factors() == 0 {
                warnings.push("0 retained factors: scene profiles do not differ".into());
            }
            for (a, (l, p)) in model
                .eigenvalues
                .iter()
                .zip(&model.percent_inertia)
                .enumerate()
            {
                let _ = writeln!(report, "  factor {:>2}  eigenvalue {l:.6}  {p:6.2}%", a + 1);
            }
        }
        Job::Cloud { baseline, top_k } => {
            let (matrix, model) = if *baseline && matches!(input, Input::Model(_)) {
                bail!("--baseline needs word counts; pass the script or matrix instead of a model");
            } else {
                model_of(input, &mut stage)?
            };
            let map =
                nearest_word_per_scene(&model, &CandidateSet::FullVocabulary, settings.bands)?;
            stage.artifact("pertinence.json", &map)?;
            let title = title_of(settings, &stage.stem);
            let doc = render_cloud(&map, &cloud_options(settings, title.clone()));
            stage.write("cloud.svg", &doc.to_svg())?;
            stage.write("cloud.html", &doc.to_html())?;
            if *baseline {
                let k = top_k.or(settings.top_k).unwrap_or(DEFAULT_BASELINE_TOP_K);
                let m = matrix.expect("baseline inputs carry counts");
                let freq = render_frequency_cloud(&m, k, &format!("{title}: most frequent words"));
                stage.write("baseline.html", &freq.to_html())?;
            }
            let _ = writeln!(report, "tags: {}", map.entries.len());
            describe(&mut report, &map);
            let dups = uniqueness_report(&map);
            if dups.is_empty() {
                let _ = writeln!(report, "all scene words are distinct");
            }
            for d in dups {
                let scenes: Vec<String> = d.scenes.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    report,
                    "repeated: {} in scenes {}",
                    d.word,
                    scenes.join(", ")
                );
            }
        }
        Job::Characters { list } => {
            let set = candidates(list.as_deref(), settings)?;
            let (_, model) = model_of(input, &mut stage)?;
            let map = nearest_word_per_scene(&model, &set, settings.bands)?;
            stage.artifact("characters.json", &map)?;
            let title = format!("{}: characters", title_of(settings, &stage.stem));
            let doc = render_cloud(&map, &cloud_options(settings, title));
            stage.write("characters.svg", &doc.to_svg())?;
            stage.write("characters.html", &doc.to_html())?;
            let _ = writeln!(report, "tags: {}", map.entries.len());
            describe(&mut report, &map);
        }
        Job::Map { axes, label } => {
            let (_, model) = model_of(input, &mut stage)?;
            let spec = FactorMapSpec {
                axes: axes.unwrap_or((1, 2)),
                labels: *label,
                ..FactorMapSpec::default()
            };
            let svg = render_factor_map(&model, &spec)?;
            stage.write("map.svg", &svg)?;
            let _ = writeln!(
                report,
                "plane: factors {} and {}, {} scenes, {} words",
                spec.axes.0,
                spec.axes.1,
                model.nrows(),
                model.ncols()
            );
        }
    }

    for p in &stage.written {
        let _ = writeln!(report, "wrote {}", p.display());
    }
    Ok(report)
}
