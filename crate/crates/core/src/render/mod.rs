//! Static SVG and HTML output.
//!
//! Every document is a pure function of its input: fixed element order, no
//! timestamps, numbers printed with fixed precision. A leading comment
//! carries the generator version and a SHA-256 digest of the serialized
//! input.

mod cloud;
mod factor_map;
mod frequency;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub use cloud::{font_ramp, render_cloud, CloudDocument, CloudItem, CloudOptions, Layout};
pub use factor_map::{render_factor_map, FactorMap, FactorMapSpec, MapPoint};
pub use frequency::{render_frequency_cloud, FrequencyCloud, FrequencyItem};

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

/// Hex SHA-256 of the JSON form of `input`.
pub fn input_digest<T: Serialize>(input: &T) -> String {
    let json = serde_json::to_vec(input).expect("render inputs serialize");
    hex::encode(Sha256::digest(&json))
}

pub(crate) fn generator_comment<T: Serialize>(input: &T) -> String {
    format!(
        "<!-- generator: scenecloud {}; input sha256: {} -->",
        env!("CARGO_PKG_VERSION"),
        input_digest(input)
    )
}
