use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{escape, generator_comment};
use crate::script::TermMatrix;

const LARGEST_PX: f64 = 31.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyItem {
    pub word: String,
    pub count: u64,
    /// Font size in px, proportional to `count`.
    pub size: f64,
}

/// Plain word-count cloud: the most frequent words in alphabetical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyCloud {
    pub title: String,
    pub items: Vec<FrequencyItem>,
}

/// Keeps the `top_k` most frequent words (ties in lexicographic order),
/// then orders them alphabetically. The largest count is drawn at 31 px.
pub fn render_frequency_cloud(m: &TermMatrix, top_k: usize, title: &str) -> FrequencyCloud {
    let mut ranked: Vec<(&str, u64)> = m
        .col_labels
        .iter()
        .map(String::as_str)
        .zip(m.col_totals())
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.truncate(top_k.max(1));
    let max_count = ranked.iter().map(|r| r.1).max().unwrap_or(1).max(1) as f64;
    ranked.sort_by(|a, b| a.0.cmp(b.0));
    FrequencyCloud {
        title: title.to_owned(),
        items: ranked
            .into_iter()
            .map(|(word, count)| FrequencyItem {
                word: word.to_owned(),
                count,
                size: LARGEST_PX * count as f64 / max_count,
            })
            .collect(),
    }
}

impl FrequencyCloud {
    pub fn to_html(&self) -> String {
        let mut out = String::new();
        out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
        let _ = writeln!(out, "{}", generator_comment(self));
        let _ = writeln!(
            out,
            "<!-- frequency cloud: {} tags, alphabetical, font px = 31 * count / max count -->",
            self.items.len()
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        out.push_str("</head>\n<body style=\"font-family:Georgia,serif;margin:2em;color:#222222;background:#ffffff\">\n");
        let _ = writeln!(
            out,
            "<h1 style=\"font-size:18px\">{}</h1>",
            escape(&self.title)
        );
        out.push_str("<div class=\"cloud\" style=\"display:flex;flex-wrap:wrap;align-items:baseline;gap:0.3em 0.8em;max-width:800px\">\n");
        for item in &self.items {
            let _ = writeln!(
                out,
                r#"<span class="tag" data-count="{}" style="font-size:{:.2}px" title="{} occurrences">{}</span>"#,
                item.count,
                item.size,
                item.count,
                escape(&item.word)
            );
        }
        out.push_str("</div>\n</body>\n</html>\n");
        out
    }
}
