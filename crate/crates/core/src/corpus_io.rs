//! Corpus loading and result serialization (JSON, text table, CSV).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::LingoConfig;
use crate::error::{LingoError, Result};
use crate::lingo::Cluster;

/// One input document. Ids are 1-based and contiguous in load order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: usize,
    pub title: String,
    pub body: String,
}

impl Document {
    pub fn new(id: usize, title: impl Into<String>, body: impl Into<String>) -> Self {
        Document {
            id,
            title: title.into(),
            body: body.into(),
        }
    }
}

/// Builds a corpus from bodies, numbering documents from 1.
pub fn documents_from_texts<S: AsRef<str>>(texts: &[S]) -> Vec<Document> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| Document::new(i + 1, "", t.as_ref()))
        .collect()
}

#[derive(Deserialize)]
struct JsonLine {
    #[serde(default)]
    title: String,
    body: String,
}

/// Loads a corpus from a directory (one UTF-8 file per document, read in
/// filename order) or from a JSON-lines file of `{"title", "body"}` objects.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let meta = fs::metadata(path).map_err(|e| LingoError::io(path, e))?;
    let docs = if meta.is_dir() {
        load_directory(path)?
    } else {
        load_json_lines(path)?
    };
    if docs.is_empty() {
        return Err(LingoError::EmptyCorpus);
    }
    Ok(docs)
}

fn load_directory(dir: &Path) -> Result<Vec<Document>> {
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| LingoError::io(dir, e))? {
        let entry = entry.map_err(|e| LingoError::io(dir, e))?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        let is_file = entry
            .file_type()
            .map_err(|e| LingoError::io(entry.path(), e))?
            .is_file();
        if is_file && !hidden {
            files.push(entry.path());
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));

    files
        .iter()
        .enumerate()
        .map(|(i, file)| {
            let bytes = fs::read(file).map_err(|e| LingoError::io(file, e))?;
            let body = String::from_utf8(bytes).map_err(|_| LingoError::Decode {
                path: file.clone(),
                line: None,
            })?;
            Ok(Document::new(i + 1, "", body))
        })
        .collect()
}

fn load_json_lines(file: &Path) -> Result<Vec<Document>> {
    let bytes = fs::read(file).map_err(|e| LingoError::io(file, e))?;
    let mut docs = Vec::new();
    for (n, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line = std::str::from_utf8(raw).map_err(|_| LingoError::Decode {
            path: file.to_path_buf(),
            line: Some(n + 1),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: JsonLine = serde_json::from_str(line).map_err(|e| LingoError::Parse {
            path: file.to_path_buf(),
            line: Some(n + 1),
            message: e.to_string(),
        })?;
        docs.push(Document::new(docs.len() + 1, parsed.title, parsed.body));
    }
    Ok(docs)
}

/// Full output of one clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    /// Sorted by descending score.
    pub clusters: Vec<Cluster>,
    /// Ids assigned to no cluster, ascending.
    pub others: Vec<usize>,
    pub config_echo: LingoConfig,
    pub corpus_size: usize,
}

impl ClusteringResult {
    /// Distinct documents that belong to at least one cluster.
    pub fn assigned_count(&self) -> usize {
        let seen: BTreeSet<usize> = self
            .clusters
            .iter()
            .flat_map(|c| c.members.iter().copied())
            .collect();
        seen.len()
    }

    pub fn total_score(&self) -> f64 {
        self.clusters.iter().map(|c| c.score).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Renders a score as a two-decimal mantissa with a signed two-digit
/// exponent, e.g. `5.34E+00` or `4.90E-01`.
pub fn format_score(score: f64) -> String {
    let rendered = format!("{score:.2e}");
    let (mantissa, exponent) = rendered
        .split_once('e')
        .expect("exponent format always contains 'e'");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let sign = if exponent < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exponent.abs())
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Plain-text table, one row per cluster plus the "Other topics" row.
pub fn render_table(result: &ClusteringResult) -> String {
    let mut out = String::from(
        "Serial # | No of Doc's in the cluster | Score of the cluster | Doc's of the cluster\n",
    );
    for (i, c) in result.clusters.iter().enumerate() {
        let _ = writeln!(
            out,
            "Cluster {} | {} | {} | {}",
            i + 1,
            c.members.len(),
            format_score(c.score),
            join_ids(&c.members)
        );
    }
    let _ = writeln!(
        out,
        "Other topics = {} | {}",
        result.others.len(),
        join_ids(&result.others)
    );
    out
}

/// CSV with `dataset,strategy,cluster_id,size,score` rows and a trailing
/// `others` row carrying the unassigned count.
pub fn render_csv(result: &ClusteringResult, dataset: &str) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dataset", "strategy", "cluster_id", "size", "score"])?;
    let strategy = result.config_echo.strategy.as_str();
    for (i, c) in result.clusters.iter().enumerate() {
        w.write_record([
            dataset,
            strategy,
            &(i + 1).to_string(),
            &c.members.len().to_string(),
            &c.score.to_string(),
        ])?;
    }
    w.write_record([
        dataset,
        strategy,
        "others",
        &result.others.len().to_string(),
        "",
    ])?;
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFiles {
    pub json: PathBuf,
    pub table: PathBuf,
    pub csv: PathBuf,
}

pub const RESULT_JSON: &str = "result.json";
pub const RESULT_TABLE: &str = "clusters.txt";
pub const RESULT_CSV: &str = "clusters.csv";

/// Writes `result.json`, `clusters.txt` and `clusters.csv` into `out_dir`.
pub fn write_outputs(
    result: &ClusteringResult,
    dataset: &str,
    out_dir: impl AsRef<Path>,
) -> Result<OutputFiles> {
    let out_dir = out_dir.as_ref();
    fs::create_dir_all(out_dir).map_err(|e| LingoError::io(out_dir, e))?;
    let files = OutputFiles {
        json: out_dir.join(RESULT_JSON),
        table: out_dir.join(RESULT_TABLE),
        csv: out_dir.join(RESULT_CSV),
    };
    let write = |path: &Path, contents: String| {
        fs::write(path, contents).map_err(|e| LingoError::io(path, e))
    };
    write(&files.json, result.to_json()?)?;
    write(&files.table, render_table(result))?;
    write(&files.csv, render_csv(result, dataset)?)?;
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_notation() {
        assert_eq!(format_score(5.34), "5.34E+00");
        assert_eq!(format_score(0.49), "4.90E-01");
        assert_eq!(format_score(13.0), "1.30E+01");
        assert_eq!(format_score(0.711), "7.11E-01");
        assert_eq!(format_score(9.999), "1.00E+01");
        assert_eq!(format_score(0.0), "0.00E+00");
        assert_eq!(format_score(1.23e-12), "1.23E-12");
        assert_eq!(format_score(4.5e123), "4.50E+123");
    }

    #[test]
    fn directory_corpus_ordering() {
        let dir = tempfile::tempdir().unwrap();
        for (name, body) in [("c.txt", "third"), ("a.txt", "first"), ("b.txt", "second")] {
            fs::write(dir.path().join(name), body).unwrap();
        }
        fs::write(dir.path().join(".hidden"), "skip").unwrap();
        let docs = load_corpus(dir.path()).unwrap();
        let ids: Vec<_> = docs.iter().map(|d| d.id).collect();
        assert_eq!(ids, [1, 2, 3]);
        let bodies: Vec<_> = docs.iter().map(|d| d.body.as_str()).collect();
        assert_eq!(bodies, ["first", "second", "third"]);
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_corpus(dir.path()).unwrap_err();
        assert_eq!(err.to_string(), "empty corpus");
    }

    #[test]
    fn json_lines_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("corpus.jsonl");
        fs::write(
            &file,
            "{\"title\": \"T1\", \"body\": \"one\"}\n\n{\"title\": \"\", \"body\": \"two\"}\n",
        )
        .unwrap();
        let docs = load_corpus(&file).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!((docs[0].id, docs[0].title.as_str()), (1, "T1"));
        assert_eq!((docs[1].id, docs[1].body.as_str()), (2, "two"));
    }

    #[test]
    fn bad_bytes_name_the_location() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("corpus.jsonl");
        let mut bytes = b"{\"body\": \"ok\"}\n".to_vec();
        bytes.extend_from_slice(b"{\"body\": \"\xff\xfe\"}\n");
        fs::write(&file, bytes).unwrap();
        let err = load_corpus(&file).unwrap_err();
        assert!(matches!(err, LingoError::Decode { line: Some(2), .. }));
        assert!(err.to_string().contains("corpus.jsonl:2"));

        let docs_dir = dir.path().join("docs");
        fs::create_dir(&docs_dir).unwrap();
        fs::write(docs_dir.join("bad.txt"), b"\xc3\x28").unwrap();
        let err = load_corpus(&docs_dir).unwrap_err();
        assert!(err.to_string().contains("bad.txt"));
    }

    #[test]
    fn malformed_json_line() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("c.jsonl");
        fs::write(&file, "{\"body\": \"a\"}\nnot json\n").unwrap();
        assert!(matches!(
            load_corpus(&file),
            Err(LingoError::Parse { line: Some(2), .. })
        ));
    }

    #[test]
    fn empty_others_row() {
        let result = ClusteringResult {
            clusters: Vec::new(),
            others: Vec::new(),
            config_echo: LingoConfig::default(),
            corpus_size: 0,
        };
        let table = render_table(&result);
        assert!(table
            .lines()
            .last()
            .unwrap()
            .starts_with("Other topics = 0 | "));
        let csv = render_csv(&result, "d").unwrap();
        assert_eq!(csv.lines().nth(1), Some("d,lsi,others,0,"));
    }
}
