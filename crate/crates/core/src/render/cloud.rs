use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{escape, generator_comment};
use crate::pertinence::PertinenceMap;

const SMALLEST_PX: f64 = 10.0;
const LARGEST_PX: f64 = 31.0;
const MARGIN: f64 = 20.0;
const GAP: f64 = 12.0;
const GRID_COLUMNS: usize = 8;

/// Font sizes in px, index 0 for band 1. Geometric from 10 to 31 px, so six
/// bands give 10, 13, 16, 20, 25, 31.
pub fn font_ramp(band_count: usize) -> Vec<u32> {
    match band_count {
        0 | 1 => vec![LARGEST_PX as u32],
        b => (0..b)
            .map(|k| {
                let t = k as f64 / (b - 1) as f64;
                (SMALLEST_PX * (LARGEST_PX / SMALLEST_PX).powf(t)).round() as u32
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Left to right, wrapping at the page width.
    #[default]
    Flow,
    /// Fixed columns, one tag per cell.
    Grid,
}

impl std::str::FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flow" => Ok(Layout::Flow),
            "grid" => Ok(Layout::Grid),
            other => Err(format!("unknown layout `{other}` (flow, grid)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloudOptions {
    pub title: String,
    pub layout: Layout,
    pub color_by_band: bool,
    /// Page width in user units.
    pub width: f64,
}

impl Default for CloudOptions {
    fn default() -> Self {
        Self {
            title: "Scene cloud".to_owned(),
            layout: Layout::Flow,
            color_by_band: false,
            width: 800.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudItem {
    pub word: String,
    pub band: usize,
    pub scene_index: usize,
    pub distance: f64,
}

/// A scene-ordered tag cloud: one tag per scene.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudDocument {
    pub title: String,
    pub items: Vec<CloudItem>,
    pub band_count: usize,
    pub layout: Layout,
    pub color_by_band: bool,
    pub width: f64,
}

pub fn render_cloud(map: &PertinenceMap, opts: &CloudOptions) -> CloudDocument {
    CloudDocument {
        title: opts.title.clone(),
        items: map
            .entries
            .iter()
            .map(|e| CloudItem {
                word: e.word.clone(),
                band: e.band,
                scene_index: e.scene_index,
                distance: e.distance,
            })
            .collect(),
        band_count: map.band_count.max(1),
        layout: opts.layout,
        color_by_band: opts.color_by_band,
        width: opts.width,
    }
}

struct Placed {
    x: f64,
    y: f64,
    size: u32,
}

impl CloudDocument {
    fn size_of(&self, band: usize, ramp: &[u32]) -> u32 {
        ramp[band.clamp(1, ramp.len()) - 1]
    }

    fn color_of(&self, band: usize) -> String {
        if !self.color_by_band || self.band_count < 2 {
            return "#222222".to_owned();
        }
        let t = (band.saturating_sub(1)) as f64 / (self.band_count - 1) as f64;
        format!("hsl(210, 60%, {:.0}%)", 65.0 - 50.0 * t)
    }

    /// Baseline positions for every item plus the page height.
    fn place(&self, ramp: &[u32]) -> (Vec<Placed>, f64) {
        let max_px = f64::from(*ramp.iter().max().unwrap());
        let line_height = (max_px * 1.4).ceil();
        let inner = self.width - 2.0 * MARGIN;
        let mut placed = Vec::with_capacity(self.items.len());
        let mut lines = 0usize;
        match self.layout {
            Layout::Flow => {
                let mut x = MARGIN;
                for item in &self.items {
                    let size = self.size_of(item.band, ramp);
                    let w = estimate_width(&item.word, size);
                    if x > MARGIN && x + w > MARGIN + inner {
                        x = MARGIN;
                        lines += 1;
                    }
                    placed.push(Placed {
                        x,
                        y: MARGIN + max_px + lines as f64 * line_height,
                        size,
                    });
                    x += w + GAP;
                }
            }
            Layout::Grid => {
                let cell = inner / GRID_COLUMNS as f64;
                for (k, item) in self.items.iter().enumerate() {
                    lines = k / GRID_COLUMNS;
                    placed.push(Placed {
                        x: MARGIN + cell * ((k % GRID_COLUMNS) as f64 + 0.5),
                        y: MARGIN + max_px + lines as f64 * line_height,
                        size: self.size_of(item.band, ramp),
                    });
                }
            }
        }
        let height = MARGIN * 2.0 + max_px + lines as f64 * line_height + max_px * 0.4;
        (placed, height.ceil())
    }

    fn tooltip(item: &CloudItem) -> String {
        format!(
            "scene {}: {} (distance {:.4})",
            item.scene_index, item.word, item.distance
        )
    }

    fn ramp_comment(&self, ramp: &[u32]) -> String {
        let sizes: Vec<String> = ramp.iter().map(u32::to_string).collect();
        format!(
            "<!-- layout: {:?}; bands: {}; font ramp px (band 1..{}): {} -->",
            self.layout,
            self.band_count,
            self.band_count,
            sizes.join(", ")
        )
    }

    pub fn to_svg(&self) -> String {
        let ramp = font_ramp(self.band_count);
        let (placed, height) = self.place(&ramp);
        let anchor = match self.layout {
            Layout::Flow => "start",
            Layout::Grid => "middle",
        };
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(out, "{}", generator_comment(self));
        let _ = writeln!(out, "{}", self.ramp_comment(&ramp));
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="Georgia, serif">"#,
            w = self.width,
            h = height
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        for (item, p) in self.items.iter().zip(&placed) {
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-size="{}" fill="{}" text-anchor="{anchor}" class="tag band-{}" data-scene="{}"><title>{}</title>{}</text>"#,
                p.x,
                p.y,
                p.size,
                self.color_of(item.band),
                item.band,
                item.scene_index,
                escape(&Self::tooltip(item)),
                escape(&item.word)
            );
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn to_html(&self) -> String {
        let ramp = font_ramp(self.band_count);
        let display = match self.layout {
            Layout::Flow => "display:flex;flex-wrap:wrap;align-items:baseline;gap:0.3em 0.8em;".to_owned(),
            Layout::Grid => format!(
                "display:grid;grid-template-columns:repeat({GRID_COLUMNS},1fr);align-items:baseline;gap:0.3em;"
            ),
        };
        let mut out = String::new();
        out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
        let _ = writeln!(out, "{}", generator_comment(self));
        let _ = writeln!(out, "{}", self.ramp_comment(&ramp));
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        out.push_str("</head>\n<body style=\"font-family:Georgia,serif;margin:2em;color:#222222;background:#ffffff\">\n");
        let _ = writeln!(
            out,
            "<h1 style=\"font-size:18px\">{}</h1>",
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            "<div class=\"cloud\" style=\"{display}max-width:{:.0}px\">",
            self.width
        );
        for item in &self.items {
            let _ = writeln!(
                out,
                r#"<span class="tag band-{}" data-scene="{}" style="font-size:{}px;color:{}" title="{}">{}</span>"#,
                item.band,
                item.scene_index,
                self.size_of(item.band, &ramp),
                self.color_of(item.band),
                escape(&Self::tooltip(item)),
                escape(&item.word)
            );
        }
        out.push_str("</div>\n</body>\n</html>\n");
        out
    }
}

/// Rough advance width of a serif word.
fn estimate_width(word: &str, size: u32) -> f64 {
    0.6 * f64::from(size) * word.chars().count() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pertinence::{CandidateSet, PertinenceEntry};

    fn map(bands: &[usize]) -> PertinenceMap {
        PertinenceMap {
            entries: bands
                .iter()
                .enumerate()
                .map(|(i, &band)| PertinenceEntry {
                    scene_index: i + 1,
                    word: format!("word{}", i + 1),
                    distance: 0.5 * (i + 1) as f64,
                    band,
                })
                .collect(),
            candidate_set: CandidateSet::FullVocabulary,
            band_count: 6,
        }
    }

    #[test]
    fn six_band_ramp() {
        assert_eq!(font_ramp(6), vec![10, 13, 16, 20, 25, 31]);
        assert_eq!(font_ramp(1), vec![31]);
        assert_eq!(font_ramp(2), vec![10, 31]);
    }

    #[test]
    fn one_text_element_per_scene() {
        let doc = render_cloud(&map(&[6, 6, 1]), &CloudOptions::default());
        let svg = doc.to_svg();
        assert_eq!(svg.matches("<text ").count(), 3);
        let sizes: Vec<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<text"))
            .map(|l| {
                l.split("font-size=\"")
                    .nth(1)
                    .unwrap()
                    .split('"')
                    .next()
                    .unwrap()
            })
            .collect();
        assert_eq!(sizes, vec!["31", "31", "10"]);
        assert!(svg.contains("font ramp px (band 1..6): 10, 13, 16, 20, 25, 31"));
        assert!(svg.contains("scene 3: word3 (distance 1.5000)"));

        let html = doc.to_html();
        assert_eq!(html.matches("<span class=\"tag").count(), 3);
        assert!(html.find("word1").unwrap() < html.find("word2").unwrap());
    }

    #[test]
    fn output_is_deterministic() {
        let m = map(&[1, 2, 3, 4, 5, 6, 1, 2, 3]);
        let a = render_cloud(&m, &CloudOptions::default());
        let b = render_cloud(&m, &CloudOptions::default());
        assert_eq!(a.to_svg(), b.to_svg());
        assert_eq!(a.to_html(), b.to_html());
    }

    #[test]
    fn flow_wraps_and_grid_uses_columns() {
        let m = map(&[6; 30]);
        let flow = render_cloud(&m, &CloudOptions::default());
        let (placed, height) = flow.place(&font_ramp(6));
        assert!(placed.iter().any(|p| p.y > placed[0].y));
        assert!(placed.iter().all(|p| p.x >= MARGIN && p.y < height));

        let grid = render_cloud(
            &m,
            &CloudOptions {
                layout: Layout::Grid,
                ..CloudOptions::default()
            },
        );
        let (placed, _) = grid.place(&font_ramp(6));
        assert_eq!(placed[0].y, placed[7].y);
        assert!(placed[8].y > placed[7].y);
    }

    #[test]
    fn band_colors() {
        let opts = CloudOptions {
            color_by_band: true,
            ..CloudOptions::default()
        };
        let svg = render_cloud(&map(&[1, 6]), &opts).to_svg();
        assert!(svg.contains("hsl(210, 60%, 65%)"));
        assert!(svg.contains("hsl(210, 60%, 15%)"));
        assert!(!render_cloud(&map(&[1, 6]), &CloudOptions::default())
            .to_svg()
            .contains("hsl("));
    }

    #[test]
    fn words_are_escaped() {
        let mut m = map(&[3]);
        m.entries[0].word = "a<b".into();
        let svg = render_cloud(&m, &CloudOptions::default()).to_svg();
        assert!(svg.contains("a&lt;b</text>"));
    }
}
