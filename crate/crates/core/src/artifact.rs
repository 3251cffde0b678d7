//! Versioned JSON artifacts.
//!
//! Every artifact is a JSON object with two header fields followed by the
//! fields of the payload:
//!
//! ```json
//! { "schema_version": 1, "kind": "term_matrix", "row_labels": [1, 2], ... }
//! ```
//!
//! | kind             | payload                                              |
//! |------------------|------------------------------------------------------|
//! | `script`         | title, scenes (index, line, header, speakers, tokens), vocabulary |
//! | `term_matrix`    | row_labels (scene ordinals), col_labels (words), counts (dense rows) |
//! | `ca_model`       | labels, eigenvalues, percent_inertia, total_inertia, masses, row_coords / col_coords (one array per point, one entry per factor) |
//! | `pertinence_map` | entries (scene_index, word, distance, band), candidate_set, band_count |
//! | `stats`          | scene and word counts, scene length range, top_words |
//!
//! Floats are written in shortest round-trip form and read back exactly.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::ca::CaModel;
use crate::pertinence::PertinenceMap;
use crate::script::{Script, ScriptStats, TermMatrix};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub trait Artifact: Serialize + DeserializeOwned {
    const KIND: &'static str;
}

impl Artifact for Script {
    const KIND: &'static str = "script";
}

impl Artifact for TermMatrix {
    const KIND: &'static str = "term_matrix";
}

impl Artifact for CaModel {
    const KIND: &'static str = "ca_model";
}

impl Artifact for PertinenceMap {
    const KIND: &'static str = "pertinence_map";
}

impl Artifact for ScriptStats {
    const KIND: &'static str = "stats";
}

pub fn to_json<T: Artifact>(value: &T) -> String {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), SCHEMA_VERSION.into());
    obj.insert("kind".into(), T::KIND.into());
    match serde_json::to_value(value).expect("artifacts serialize") {
        Value::Object(fields) => obj.extend(fields),
        other => {
            obj.insert("data".into(), other);
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("artifacts serialize");
    text.push('\n');
    text
}

fn header(obj: &Map<String, Value>) -> Result<(u32, String)> {
    let version = obj
        .get("schema_version")
        .and_then(Value::as_u64)
        .ok_or_else(|| serde::de::Error::missing_field("schema_version"))
        .map_err(Error::Json)?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| serde::de::Error::missing_field("kind"))
        .map_err(Error::Json)?;
    Ok((version as u32, kind.to_owned()))
}

/// The `kind` of a serialized artifact, without decoding the payload.
pub fn peek_kind(text: &str) -> Result<String> {
    match serde_json::from_str::<Value>(text)? {
        Value::Object(obj) => header(&obj).map(|(_, kind)| kind),
        _ => Err(Error::Json(serde::de::Error::custom(
            "artifact is not a JSON object",
        ))),
    }
}

pub fn from_json<T: Artifact>(text: &str) -> Result<T> {
    let Value::Object(mut obj) = serde_json::from_str::<Value>(text)? else {
        return Err(Error::Json(serde::de::Error::custom(
            "artifact is not a JSON object",
        )));
    };
    let (version, kind) = header(&obj)?;
    if version != SCHEMA_VERSION {
        return Err(Error::SchemaVersion {
            found: version,
            supported: SCHEMA_VERSION,
        });
    }
    if kind != T::KIND {
        return Err(Error::ArtifactKind {
            expected: T::KIND.to_owned(),
            found: kind,
        });
    }
    obj.remove("schema_version");
    obj.remove("kind");
    Ok(serde_json::from_value(Value::Object(obj))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_layout() {
        let m = TermMatrix {
            row_labels: vec![1, 2],
            col_labels: vec!["aa".into(), "bb".into()],
            counts: vec![vec![2, 1], vec![0, 1]],
        };
        let json = to_json(&m);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["kind"], "term_matrix");
        assert_eq!(v["counts"][0][0], 2);
        assert_eq!(v["col_labels"][1], "bb");
        assert_eq!(peek_kind(&json).unwrap(), "term_matrix");
        assert_eq!(from_json::<TermMatrix>(&json).unwrap(), m);
    }

    #[test]
    fn wrong_kind_and_version() {
        let m = TermMatrix::from_counts(vec![vec![1, 2], vec![3, 4]]);
        let json = to_json(&m);
        assert!(matches!(
            from_json::<Script>(&json),
            Err(Error::ArtifactKind { .. })
        ));
        let bumped = json.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(
            from_json::<TermMatrix>(&bumped),
            Err(Error::SchemaVersion { found: 9, .. })
        ));
        assert!(from_json::<TermMatrix>("[1, 2]").is_err());
        assert!(from_json::<TermMatrix>("{\"kind\": \"term_matrix\"}").is_err());
    }
}
