//! Run configuration: LINGO thresholds, BM25 parameters and the content
//! discovery strategy.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LingoError, Result};

/// Backend used to assign documents to induced labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Literal term matching against the tf-idf matrix.
    #[serde(rename = "vsm")]
    Vsm,
    /// Matching against the rank-k reconstruction of the tf-idf matrix.
    #[serde(rename = "lsi")]
    Lsi,
    /// Rank-k reconstruction of a BM25-weighted matrix.
    #[serde(rename = "lsi-bm25")]
    LsiBm25,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Vsm, Strategy::Lsi, Strategy::LsiBm25];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Vsm => "vsm",
            Strategy::Lsi => "lsi",
            Strategy::LsiBm25 => "lsi-bm25",
        }
    }

    /// Whether the term-document matrix carries BM25 rather than tf-idf weights.
    pub fn uses_bm25(self) -> bool {
        matches!(self, Strategy::LsiBm25)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = LingoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vsm" => Ok(Strategy::Vsm),
            "lsi" => Ok(Strategy::Lsi),
            "lsi-bm25" => Ok(Strategy::LsiBm25),
            other => Err(LingoError::UnknownStrategy(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LingoConfig {
    /// Terms and phrases must occur strictly more often than this.
    pub term_frequency_threshold: usize,
    /// Target for the cumulative singular value ratio that fixes k.
    pub candidate_label_threshold: f64,
    /// Labels whose term vectors are at least this similar are merged.
    pub label_similarity_threshold: f64,
    /// A document joins a label's cluster when its similarity exceeds this.
    pub snippet_assignment_threshold: f64,
    pub k1: f64,
    pub b: f64,
    pub strategy: Strategy,
    /// One stop word per line; the bundled English list is used when unset.
    pub stopword_list_path: Option<PathBuf>,
    /// Longest phrase (in tokens) kept as a label candidate.
    pub max_phrase_length: usize,
}

impl Default for LingoConfig {
    fn default() -> Self {
        Self {
            term_frequency_threshold: 2,
            candidate_label_threshold: 0.775,
            label_similarity_threshold: 0.30,
            snippet_assignment_threshold: 0.15,
            k1: 1.2,
            b: 0.75,
            strategy: Strategy::Lsi,
            stopword_list_path: None,
            max_phrase_length: 8,
        }
    }
}

impl LingoConfig {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        fn in_unit(x: f64) -> bool {
            (0.0..=1.0).contains(&x)
        }
        let c = self.candidate_label_threshold;
        if !(c > 0.0 && c <= 1.0) {
            return Err(LingoError::InvalidConfig {
                field: "candidate_label_threshold",
                range: "(0,1]",
            });
        }
        if !in_unit(self.label_similarity_threshold) {
            return Err(LingoError::InvalidConfig {
                field: "label_similarity_threshold",
                range: "[0,1]",
            });
        }
        if !in_unit(self.snippet_assignment_threshold) {
            return Err(LingoError::InvalidConfig {
                field: "snippet_assignment_threshold",
                range: "[0,1]",
            });
        }
        if !(self.k1 >= 0.0 && self.k1.is_finite()) {
            return Err(LingoError::InvalidConfig {
                field: "k1",
                range: "[0,inf)",
            });
        }
        if !in_unit(self.b) {
            return Err(LingoError::InvalidConfig {
                field: "b",
                range: "[0,1]",
            });
        }
        if self.max_phrase_length == 0 {
            return Err(LingoError::InvalidConfig {
                field: "max_phrase_length",
                range: "[1,inf)",
            });
        }
        Ok(())
    }
}

/// Parses a JSON config object; absent fields keep their defaults.
pub fn parse_config(json: &str) -> Result<LingoConfig> {
    let config: LingoConfig = serde_json::from_str(json)?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<LingoConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LingoError::io(path, e))?;
    parse_config(&text).map_err(|e| match e {
        LingoError::Json(err) => LingoError::Parse {
            path: path.to_path_buf(),
            line: Some(err.line()),
            message: err.to_string(),
        },
        other => other,
    })
}
