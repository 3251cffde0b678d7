use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{escape, generator_comment};
use crate::ca::CaModel;
use crate::{Error, Result};

const MARGIN: f64 = 60.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FactorMapSpec {
    /// 1-based factor numbers for the horizontal and vertical axes.
    pub axes: (usize, usize),
    /// Print point labels next to markers.
    pub labels: bool,
    pub width: f64,
    pub height: f64,
}

impl Default for FactorMapSpec {
    fn default() -> Self {
        Self {
            axes: (1, 2),
            labels: false,
            width: 640.0,
            height: 640.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
}

/// Scenes and words projected on one factor plane, in the same frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorMap {
    pub axes: (usize, usize),
    pub axis_percent: (f64, f64),
    pub row_points: Vec<MapPoint>,
    pub col_points: Vec<MapPoint>,
    pub labels: bool,
    pub width: f64,
    pub height: f64,
}

impl FactorMap {
    pub fn build(model: &CaModel, spec: &FactorMapSpec) -> Result<Self> {
        let retained = model.n_factors();
        if retained < 2 {
            return Err(Error::InsufficientFactors { retained });
        }
        let (a, b) = spec.axes;
        for axis in [a, b] {
            if axis == 0 || axis > retained {
                return Err(Error::AxisOutOfRange { axis, retained });
            }
        }
        let project = |labels: &[String], coords: &[Vec<f64>]| -> Vec<MapPoint> {
            labels
                .iter()
                .zip(coords)
                .map(|(label, c)| MapPoint {
                    label: label.clone(),
                    x: c[a - 1],
                    y: c[b - 1],
                })
                .collect()
        };
        Ok(Self {
            axes: spec.axes,
            axis_percent: (model.percent_inertia[a - 1], model.percent_inertia[b - 1]),
            row_points: project(&model.row_labels, &model.row_coords),
            col_points: project(&model.col_labels, &model.col_coords),
            labels: spec.labels,
            width: spec.width,
            height: spec.height,
        })
    }

    /// Maps factor coordinates to page coordinates with one scale for both
    /// axes, so the plane is not distorted.
    fn frame(&self) -> impl Fn(f64, f64) -> (f64, f64) {
        let all = self.row_points.iter().chain(&self.col_points);
        let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for p in all {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let span_x = (x1 - x0).max(f64::MIN_POSITIVE);
        let span_y = (y1 - y0).max(f64::MIN_POSITIVE);
        let scale =
            ((self.width - 2.0 * MARGIN) / span_x).min((self.height - 2.0 * MARGIN) / span_y);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let (mx, my) = (self.width / 2.0, self.height / 2.0);
        move |x, y| (mx + (x - cx) * scale, my - (y - cy) * scale)
    }

    pub fn to_svg(&self) -> String {
        let to_page = self.frame();
        let (w, h) = (self.width, self.height);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(out, "{}", generator_comment(self));
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="Helvetica, Arial, sans-serif" font-size="10">"#
        );
        let _ = writeln!(
            out,
            r##"<rect x="0" y="0" width="{w:.0}" height="{h:.0}" fill="#ffffff"/>"##
        );

        let (ox, oy) = to_page(0.0, 0.0);
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="#999999" stroke-width="0.5"/>"##,
            MARGIN / 2.0,
            w - MARGIN / 2.0
        );
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{ox:.2}" y1="{:.2}" x2="{ox:.2}" y2="{:.2}" stroke="#999999" stroke-width="0.5"/>"##,
            MARGIN / 2.0,
            h - MARGIN / 2.0
        );
        let _ = writeln!(
            out,
            r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">Factor {} ({:.2}%)</text>"#,
            w / 2.0,
            h - MARGIN / 4.0,
            self.axes.0,
            self.axis_percent.0
        );
        let _ = writeln!(
            out,
            r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12" transform="rotate(-90 {:.2} {:.2})">Factor {} ({:.2}%)</text>"#,
            MARGIN / 4.0 + 8.0,
            h / 2.0,
            MARGIN / 4.0 + 8.0,
            h / 2.0,
            self.axes.1,
            self.axis_percent.1
        );

        out.push_str("<g class=\"words\" fill=\"#555555\">\n");
        for p in &self.col_points {
            let (x, y) = to_page(p.x, p.y);
            let _ = writeln!(
                out,
                r#"<circle class="word" cx="{x:.2}" cy="{y:.2}" r="1.5"/>"#
            );
            if self.labels {
                let _ = writeln!(
                    out,
                    r#"<text class="label" x="{:.2}" y="{:.2}">{}</text>"#,
                    x + 3.0,
                    y - 3.0,
                    escape(&p.label)
                );
            }
        }
        out.push_str(
            "</g>\n<g class=\"scenes\" stroke=\"#c0392b\" stroke-width=\"1.2\" fill=\"#c0392b\">\n",
        );
        for p in &self.row_points {
            let (x, y) = to_page(p.x, p.y);
            let _ = writeln!(
                out,
                r#"<path class="scene" d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}"/>"#,
                x - 4.0,
                y - 4.0,
                x + 4.0,
                y + 4.0,
                x - 4.0,
                y + 4.0,
                x + 4.0,
                y - 4.0
            );
            if self.labels {
                let _ = writeln!(
                    out,
                    r#"<text class="label" x="{:.2}" y="{:.2}" stroke="none">{}</text>"#,
                    x + 5.0,
                    y - 5.0,
                    escape(&p.label)
                );
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

/// Planar view of a fitted model on the requested pair of factors.
pub fn render_factor_map(model: &CaModel, spec: &FactorMapSpec) -> Result<String> {
    FactorMap::build(model, spec).map(|m| m.to_svg())
}
