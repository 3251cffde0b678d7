//! Browser bindings for the static demo page in `www/`.
//!
//! Each exported function takes the pasted script text, runs the pipeline
//! from scratch and returns an SVG document. The plain Rust versions in
//! [`demo`] carry the logic so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod demo {
    use scenecloud::ca::fit_counts;
    use scenecloud::pertinence::{nearest_word_per_scene, uniqueness_report, CandidateSet};
    use scenecloud::render::{
        render_cloud, render_factor_map, CloudOptions, FactorMapSpec, Layout,
    };
    use scenecloud::script::{build_matrix, parse_script, ParseOptions};
    use scenecloud::{CaModel, Result, Script};

    fn fit(text: &str) -> Result<(Script, CaModel)> {
        let script = parse_script(text, &ParseOptions::default())?.script;
        let (_, model) = fit_counts(&build_matrix(&script)?)?;
        Ok((script, model))
    }

    /// One line describing the parsed script and its model.
    pub fn summary(text: &str) -> Result<String> {
        let (script, model) = fit(text)?;
        let map = nearest_word_per_scene(&model, &CandidateSet::FullVocabulary, 1)?;
        let repeated = uniqueness_report(&map).len();
        Ok(format!(
            "{} scenes, {} unique words, {} words in all, {} factors, {} repeated scene words",
            script.scenes.len(),
            script.vocabulary.len(),
            script.total_tokens(),
            model.n_factors(),
            repeated
        ))
    }

    pub fn scene_cloud(
        text: &str,
        bands: usize,
        grid: bool,
        color_by_band: bool,
    ) -> Result<String> {
        let (script, model) = fit(text)?;
        let map = nearest_word_per_scene(&model, &CandidateSet::FullVocabulary, bands)?;
        let opts = CloudOptions {
            title: script.title,
            layout: if grid { Layout::Grid } else { Layout::Flow },
            color_by_band,
            ..CloudOptions::default()
        };
        Ok(render_cloud(&map, &opts).to_svg())
    }

    /// `names` is a comma separated list; empty means the default cast.
    pub fn character_cloud(text: &str, names: &str, bands: usize) -> Result<String> {
        let (script, model) = fit(text)?;
        let set = if names.trim().is_empty() {
            CandidateSet::characters()
        } else {
            CandidateSet::from_list(names)
        };
        let map = nearest_word_per_scene(&model, &set, bands)?;
        let opts = CloudOptions {
            title: format!("{}: characters", script.title),
            color_by_band: true,
            ..CloudOptions::default()
        };
        Ok(render_cloud(&map, &opts).to_svg())
    }

    pub fn factor_map(text: &str, x: usize, y: usize, labels: bool) -> Result<String> {
        let (_, model) = fit(text)?;
        let spec = FactorMapSpec {
            axes: (x, y),
            labels,
            ..FactorMapSpec::default()
        };
        render_factor_map(&model, &spec)
    }
}

fn js(r: scenecloud::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn summary(text: &str) -> Result<String, JsError> {
    js(demo::summary(text))
}

#[wasm_bindgen(js_name = sceneCloud)]
pub fn scene_cloud(
    text: &str,
    bands: usize,
    grid: bool,
    color_by_band: bool,
) -> Result<String, JsError> {
    js(demo::scene_cloud(text, bands, grid, color_by_band))
}

#[wasm_bindgen(js_name = characterCloud)]
pub fn character_cloud(text: &str, names: &str, bands: usize) -> Result<String, JsError> {
    js(demo::character_cloud(text, names, bands))
}

#[wasm_bindgen(js_name = factorMap)]
pub fn factor_map(text: &str, x: usize, y: usize, labels: bool) -> Result<String, JsError> {
    js(demo::factor_map(text, x, y, labels))
}
