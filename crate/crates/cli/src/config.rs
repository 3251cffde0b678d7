//! TOML configuration file. Every key is optional; command line flags win.
//!
//! ```toml
//! header_patterns = ['^\s*\[\s*(?:INT|EXT)\b']
//! min_word_len = 2
//! keep_frontpiece = false
//! count_headers = false
//! bands = 6
//! top_k = 50
//! characters = ["grissom", "warrick", "nick", "catherine", "brass", "sara"]
//! layout = "flow"
//! color_by_band = false
//! out_dir = "out"
//! ```

use std::path::{Path, PathBuf};

use anyhow::Context;
use scenecloud::render::Layout;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub header_patterns: Option<Vec<String>>,
    pub min_word_len: Option<usize>,
    pub keep_frontpiece: Option<bool>,
    pub count_headers: Option<bool>,
    pub title: Option<String>,
    pub bands: Option<usize>,
    pub top_k: Option<usize>,
    pub characters: Option<Vec<String>>,
    pub layout: Option<Layout>,
    pub color_by_band: Option<bool>,
    pub out_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: FileConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        if cfg.bands == Some(0) {
            anyhow::bail!("{}: bands must be at least 1", path.display());
        }
        if cfg.min_word_len == Some(0) {
            anyhow::bail!("{}: min_word_len must be at least 1", path.display());
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let cfg: FileConfig = toml::from_str(
            r#"
            header_patterns = ['^SCENE']
            min_word_len = 3
            bands = 4
            characters = ["alice", "bob"]
            layout = "grid"
            color_by_band = true
            "#,
        )
        .unwrap();
        assert_eq!(cfg.header_patterns.unwrap(), vec!["^SCENE"]);
        assert_eq!(cfg.min_word_len, Some(3));
        assert_eq!(cfg.layout, Some(Layout::Grid));
        assert_eq!(cfg.characters.unwrap().len(), 2);
        assert!(cfg.out_dir.is_none());
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("colour = true").is_err());
    }
}
