use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{KripkeModel, ModelError};

/// On-disk model format.
///
/// ```json
/// {"worlds": ["i", "s"], "edges": [["i", "s"]], "val": {"p": ["i"]}}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<String>>,
}

impl ModelFile {
    pub fn from_model(m: &KripkeModel) -> ModelFile {
        ModelFile {
            worlds: m.names().iter().map(|n| n.to_string()).collect(),
            edges: m
                .edges()
                .into_iter()
                .map(|(a, b)| (m.name(a).to_string(), m.name(b).to_string()))
                .collect(),
            val: m
                .atoms()
                .iter()
                .map(|a| {
                    let ws = m.valuation(a).iter().map(|w| m.name(w).to_string()).collect();
                    (a.to_string(), ws)
                })
                .collect(),
        }
    }

    pub fn into_model(self) -> Result<KripkeModel, ModelError> {
        let val: Vec<(String, Vec<String>)> = self.val.into_iter().collect();
        KripkeModel::new(&self.worlds, &self.edges, &val)
    }
}

impl KripkeModel {
    pub fn from_json(text: &str) -> Result<KripkeModel, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.into_model()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModelFile::from_model(self)).expect("model serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from_model(self)).expect("model serializes")
    }
}

pub fn load_model(path: impl AsRef<Path>) -> Result<KripkeModel, ModelError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })?;
    KripkeModel::from_json(&text)
}

pub fn save_model(m: &KripkeModel, path: impl AsRef<Path>) -> Result<(), ModelError> {
    let path = path.as_ref();
    std::fs::write(path, m.to_json_pretty() + "\n").map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Graphviz rendering; labels list the atoms true at each world.
pub fn to_dot(m: &KripkeModel) -> String {
    let mut out = String::from("digraph model {\n");
    for w in m.worlds() {
        let label = m.label(w);
        let text = if label.is_empty() {
            m.name(w).to_string()
        } else {
            format!("{}\\n{}", m.name(w), label.join(","))
        };
        let _ = writeln!(out, "  {:?} [label=\"{}\"];", m.name(w), text.replace('"', "\\\""));
    }
    for (a, b) in m.edges() {
        let _ = writeln!(out, "  {:?} -> {:?};", m.name(a), m.name(b));
    }
    out.push_str("}\n");
    out
}
