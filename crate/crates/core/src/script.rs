//! Scene segmentation, tokenization and scene × word counting.
//!
//! A script is read line by line. Lines matching one of the configured
//! header patterns open a new scene; everything up to the next header is the
//! scene body. Text before the first header (title page, credits, teaser
//! notes) is the frontpiece and is dropped unless asked for.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::{Error, Result};

pub const DEFAULT_MIN_WORD_LEN: usize = 2;

/// Splits `text` into lowercase word tokens of at least two characters.
///
/// Every code point that is neither a letter nor a digit is a delimiter,
/// apostrophes included, so `doesn't` yields `doesn` and a dropped `t`.
/// Text is put in NFKC form and lowercased first; the few capitals without
/// a lowercase mapping are delimiters too.
pub fn tokenize(text: &str) -> Vec<String> {
    tokenize_with(text, DEFAULT_MIN_WORD_LEN)
}

pub fn tokenize_with(text: &str, min_len: usize) -> Vec<String> {
    let lowered: String = text.nfkc().collect::<String>().to_lowercase();
    let normalized: String = lowered.nfkc().collect();
    normalized
        .split(|c: char| !c.is_alphanumeric() || c.is_uppercase())
        .filter(|frag| !frag.is_empty() && frag.chars().count() >= min_len)
        .map(str::to_owned)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Interior,
    Exterior,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeOfDay {
    Day,
    Night,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneHeader {
    pub raw_text: String,
    pub setting: Setting,
    pub location: String,
    pub time_of_day: TimeOfDay,
}

fn setting_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^(?P<kind>INT|EXT|I/E)\b\.?(?:\s*/\s*(?:INT|EXT)\b\.?)?\s*").unwrap()
    })
}

fn time_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"(?i)^(?P<loc>.*?)[\s\-\u{2013}\u{2014},.]*\b(?P<tod>day|night)\b[\s.]*$")
            .unwrap()
    })
}

fn speaker_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^\s*(?P<name>\p{Lu}[\p{Lu} ]*\p{Lu})\s*:").unwrap())
}

impl SceneHeader {
    /// Extracts setting, location and time of day from a header line such
    /// as `[INT. CSI - EVIDENCE ROOM -- NIGHT]` or `EXT. DESERT - DAY`.
    pub fn parse(line: &str) -> Self {
        let raw_text = line.trim().to_owned();
        let mut inner = raw_text.as_str();
        if let Some(rest) = inner.strip_prefix('[') {
            inner = rest.strip_suffix(']').unwrap_or(rest).trim();
        }

        let (setting, rest) = match setting_re().captures(inner) {
            Some(caps) => {
                let setting = match &caps["kind"] {
                    "INT" => Setting::Interior,
                    "EXT" => Setting::Exterior,
                    _ => Setting::Unknown,
                };
                (setting, &inner[caps.get(0).unwrap().end()..])
            }
            None => (Setting::Unknown, inner),
        };

        let (location, time_of_day) = match time_re().captures(rest) {
            Some(caps) => {
                let tod = if caps["tod"].eq_ignore_ascii_case("day") {
                    TimeOfDay::Day
                } else {
                    TimeOfDay::Night
                };
                (caps["loc"].to_owned(), tod)
            }
            None => (rest.to_owned(), TimeOfDay::Unknown),
        };
        let location = location
            .trim_matches(|c: char| {
                c.is_whitespace() || matches!(c, '-' | '\u{2013}' | '\u{2014}' | ',' | '.')
            })
            .to_owned();

        Self {
            raw_text,
            setting,
            location,
            time_of_day,
        }
    }

    fn frontpiece() -> Self {
        Self {
            raw_text: "(frontpiece)".to_owned(),
            setting: Setting::Unknown,
            location: String::new(),
            time_of_day: TimeOfDay::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scene {
    /// 1-based position in the script.
    pub index: usize,
    /// 1-based source line of the header (0 for a kept frontpiece).
    pub line: usize,
    pub header: SceneHeader,
    /// Speaker names as written, in order of first appearance.
    pub speakers: Vec<String>,
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    pub title: String,
    pub scenes: Vec<Scene>,
    /// Sorted union of all scene tokens.
    pub vocabulary: Vec<String>,
}

impl Script {
    /// Assembles a script, renumbering scenes by position and deriving the
    /// vocabulary.
    pub fn new(title: impl Into<String>, mut scenes: Vec<Scene>) -> Self {
        for (pos, scene) in scenes.iter_mut().enumerate() {
            scene.index = pos + 1;
        }
        let vocabulary: BTreeSet<&str> = scenes
            .iter()
            .flat_map(|s| s.tokens.iter().map(String::as_str))
            .collect();
        let vocabulary = vocabulary.into_iter().map(str::to_owned).collect();
        Self {
            title: title.into(),
            scenes,
            vocabulary,
        }
    }

    pub fn total_tokens(&self) -> usize {
        self.scenes.iter().map(|s| s.tokens.len()).sum()
    }
}

/// Lines that open a scene.
#[derive(Debug, Clone)]
pub struct HeaderPatterns(Vec<Regex>);

impl HeaderPatterns {
    pub fn new<S: AsRef<str>>(patterns: &[S]) -> Result<Self> {
        let compiled = patterns
            .iter()
            .map(|p| Regex::new(p.as_ref()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self(compiled))
    }

    pub fn is_header(&self, line: &str) -> bool {
        self.0.iter().any(|re| re.is_match(line))
    }

    pub fn as_strs(&self) -> Vec<&str> {
        self.0.iter().map(Regex::as_str).collect()
    }
}

impl Default for HeaderPatterns {
    /// Bracketed `[INT. ...]` / `[EXT. ...]` transcript headers and plain
    /// `INT.` / `EXT.` slug lines.
    fn default() -> Self {
        Self::new(&[r"^\s*\[\s*(?:INT|EXT)\b", r"^\s*(?:INT|EXT)\."]).unwrap()
    }
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    pub header_patterns: HeaderPatterns,
    pub min_word_len: usize,
    /// Keep text before the first header as a leading scene.
    pub keep_frontpiece: bool,
    /// Count the words of header lines in the scene's tokens.
    pub count_headers: bool,
    /// Overrides the title taken from the first frontpiece line.
    pub title: Option<String>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            header_patterns: HeaderPatterns::default(),
            min_word_len: DEFAULT_MIN_WORD_LEN,
            keep_frontpiece: false,
            count_headers: false,
            title: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A scene produced no tokens and was dropped.
    EmptyScene { line: usize, header: String },
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::EmptyScene { line, header } => {
                write!(f, "line {line}: scene `{header}` has no words, dropped")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub script: Script,
    pub warnings: Vec<ParseWarning>,
}

struct Segment {
    line: usize,
    header: SceneHeader,
    speakers: Vec<String>,
    tokens: Vec<String>,
}

impl Segment {
    fn new(line: usize, header: SceneHeader) -> Self {
        Self {
            line,
            header,
            speakers: Vec::new(),
            tokens: Vec::new(),
        }
    }

    fn push_body(&mut self, text: &str, min_len: usize) {
        if let Some(caps) = speaker_re().captures(text) {
            let name = caps["name"].trim().to_owned();
            if !self.speakers.contains(&name) {
                self.speakers.push(name);
            }
        }
        self.tokens.extend(tokenize_with(text, min_len));
    }
}

pub fn parse_script(text: &str, opts: &ParseOptions) -> Result<Parsed> {
    let mut frontpiece = Segment::new(0, SceneHeader::frontpiece());
    let mut first_frontpiece_line: Option<&str> = None;
    let mut segments: Vec<Segment> = Vec::new();
    let mut line_count = 0;

    for (n, line) in text.lines().enumerate() {
        line_count = n + 1;
        if opts.header_patterns.is_header(line) {
            let mut seg = Segment::new(n + 1, SceneHeader::parse(line));
            if opts.count_headers {
                seg.tokens.extend(tokenize_with(line, opts.min_word_len));
            }
            segments.push(seg);
        } else if let Some(seg) = segments.last_mut() {
            seg.push_body(line, opts.min_word_len);
        } else {
            if first_frontpiece_line.is_none() && !line.trim().is_empty() {
                first_frontpiece_line = Some(line.trim());
            }
            if opts.keep_frontpiece {
                frontpiece.push_body(line, opts.min_word_len);
            }
        }
    }

    if segments.is_empty() {
        return Err(Error::NoScenesFound { lines: line_count });
    }
    if opts.keep_frontpiece {
        segments.insert(0, frontpiece);
    }

    let mut warnings = Vec::new();
    let mut scenes = Vec::with_capacity(segments.len());
    for seg in segments {
        if seg.tokens.is_empty() {
            warnings.push(ParseWarning::EmptyScene {
                line: seg.line,
                header: seg.header.raw_text,
            });
            continue;
        }
        scenes.push(Scene {
            index: 0,
            line: seg.line,
            header: seg.header,
            speakers: seg.speakers,
            tokens: seg.tokens,
        });
    }
    if scenes.is_empty() {
        return Err(Error::DegenerateMatrix {
            scenes: 0,
            words: 0,
        });
    }

    let title = opts
        .title
        .clone()
        .or_else(|| first_frontpiece_line.map(str::to_owned))
        .unwrap_or_else(|| "untitled".to_owned());
    Ok(Parsed {
        script: Script::new(title, scenes),
        warnings,
    })
}

/// Scene × word occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermMatrix {
    /// Scene ordinals, one per row.
    pub row_labels: Vec<usize>,
    /// Vocabulary words, one per column.
    pub col_labels: Vec<String>,
    /// Dense rows of counts.
    pub counts: Vec<Vec<u32>>,
}

impl TermMatrix {
    /// Unlabeled matrix: rows are numbered from 1, columns named `w1`, `w2`, ...
    pub fn from_counts(counts: Vec<Vec<u32>>) -> Self {
        let ncols = counts.first().map_or(0, Vec::len);
        Self {
            row_labels: (1..=counts.len()).collect(),
            col_labels: (1..=ncols).map(|j| format!("w{j}")).collect(),
            counts,
        }
    }

    pub fn nrows(&self) -> usize {
        self.counts.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_totals(&self) -> Vec<u64> {
        self.counts
            .iter()
            .map(|row| row.iter().map(|&c| u64::from(c)).sum())
            .collect()
    }

    pub fn col_totals(&self) -> Vec<u64> {
        let mut totals = vec![0u64; self.ncols()];
        for row in &self.counts {
            for (t, &c) in totals.iter_mut().zip(row) {
                *t += u64::from(c);
            }
        }
        totals
    }

    pub fn grand_total(&self) -> u64 {
        self.row_totals().iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let counts = (0..self.ncols())
            .map(|j| self.counts.iter().map(|row| row[j]).collect())
            .collect();
        Self {
            row_labels: (1..=self.ncols()).collect(),
            col_labels: self.row_labels.iter().map(|r| r.to_string()).collect(),
            counts,
        }
    }
}

/// Counts every vocabulary word in every scene. No stopwords, no stemming.
pub fn build_matrix(script: &Script) -> Result<TermMatrix> {
    let scenes = script.scenes.len();
    let words = script.vocabulary.len();
    if scenes < 2 || words < 2 {
        return Err(Error::DegenerateMatrix { scenes, words });
    }
    let column: HashMap<&str, usize> = script
        .vocabulary
        .iter()
        .enumerate()
        .map(|(j, w)| (w.as_str(), j))
        .collect();
    let counts = script
        .scenes
        .iter()
        .map(|scene| {
            let mut row = vec![0u32; words];
            for tok in &scene.tokens {
                row[column[tok.as_str()]] += 1;
            }
            row
        })
        .collect();
    Ok(TermMatrix {
        row_labels: script.scenes.iter().map(|s| s.index).collect(),
        col_labels: script.vocabulary.clone(),
        counts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCount {
    pub word: String,
    pub count: u64,
}

/// Word frequencies sorted by decreasing count, ties in lexicographic order.
pub fn ranked_words<'a, I>(tokens: I) -> Vec<WordCount>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut freq: BTreeMap<&str, u64> = BTreeMap::new();
    for tok in tokens {
        *freq.entry(tok).or_default() += 1;
    }
    let mut ranked: Vec<WordCount> = freq
        .into_iter()
        .map(|(word, count)| WordCount {
            word: word.to_owned(),
            count,
        })
        .collect();
    // stable sort keeps the BTreeMap's lexicographic order among ties
    ranked.sort_by_key(|w| std::cmp::Reverse(w.count));
    ranked
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStats {
    pub title: String,
    pub scenes: usize,
    pub unique_words: usize,
    pub total_words: usize,
    pub min_scene_words: usize,
    pub max_scene_words: usize,
    pub top_words: Vec<WordCount>,
}

pub fn stats(script: &Script, top_k: usize) -> ScriptStats {
    let lengths = script.scenes.iter().map(|s| s.tokens.len());
    let mut top_words = ranked_words(
        script
            .scenes
            .iter()
            .flat_map(|s| s.tokens.iter().map(String::as_str)),
    );
    top_words.truncate(top_k);
    ScriptStats {
        title: script.title.clone(),
        scenes: script.scenes.len(),
        unique_words: script.vocabulary.len(),
        total_words: script.total_tokens(),
        min_scene_words: lengths.clone().min().unwrap_or(0),
        max_scene_words: lengths.max().unwrap_or(0),
        top_words,
    }
}
