//! Filmscript semantics through correspondence analysis.
//!
//! The pipeline runs in four stages, each usable on its own:
//!
//! 1. [`script`] segments a plain-text script into scenes, tokenizes the
//!    body text and counts words per scene into a [`TermMatrix`].
//! 2. [`ca`] turns the counts into relative frequencies and fits a
//!    correspondence analysis: scenes and words land in one Euclidean
//!    factor space whose distances between scenes are their χ² distances.
//! 3. [`pertinence`] picks, for each scene, the closest word (or the closest
//!    of a restricted set, such as principal characters) and bins the
//!    distances into display bands.
//! 4. [`render`] writes scene-ordered tag clouds, a frequency baseline cloud
//!    and principal-plane factor maps as SVG/HTML.
//!
//! Intermediate results serialize to versioned JSON through [`artifact`].

pub mod artifact;
pub mod ca;
mod eigen;
mod error;
pub mod pertinence;
pub mod render;
pub mod script;

pub use ca::{CaModel, FrequencyTable};
pub use error::{Error, Result};
pub use pertinence::{PertinenceEntry, PertinenceMap};
pub use script::{Scene, SceneHeader, Script, TermMatrix};
