//! Search-results clustering with LINGO-style label induction.
//!
//! The pipeline tokenizes and stems the corpus, mines frequent complete
//! phrases with a suffix array, builds a weighted term-document matrix,
//! induces cluster labels from its singular vectors and finally assigns
//! documents to labels with one of three strategies:
//!
//! * `vsm`: cosine against the tf-idf matrix,
//! * `lsi`: cosine against the rank-k reconstruction of the tf-idf matrix,
//! * `lsi-bm25`: as `lsi`, over a BM25-weighted matrix.

pub mod bench;
pub mod config;
pub mod corpus_io;
pub mod error;
pub mod linalg;
pub mod lingo;
pub mod phrase;
pub mod preprocess;
pub mod synth;
pub mod weighting;

pub use config::{load_config, parse_config, LingoConfig, Strategy};
pub use corpus_io::{load_corpus, write_outputs, ClusteringResult, Document};
pub use error::{LingoError, Result};
pub use lingo::{run_lingo, run_lingo_with, Cluster, LabelCandidate, RankSelection};
