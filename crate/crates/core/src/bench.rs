//! Runs several content-discovery strategies over one corpus and reports
//! them side by side.

use std::path::Path;

use serde::Serialize;

use crate::config::{LingoConfig, Strategy};
use crate::corpus_io::{ClusteringResult, Document};
use crate::error::{LingoError, Result};
use crate::lingo::run_lingo;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategySummary {
    pub cluster_count: usize,
    /// Distinct documents in at least one cluster.
    pub assigned_doc_count: usize,
    pub others_count: usize,
    pub total_score: f64,
}

impl StrategySummary {
    pub fn of(result: &ClusteringResult) -> Self {
        StrategySummary {
            cluster_count: result.clusters.len(),
            assigned_doc_count: result.assigned_count(),
            others_count: result.others.len(),
            total_score: result.total_score(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyRun {
    pub strategy: Strategy,
    pub result: ClusteringResult,
}

impl StrategyRun {
    pub fn summary(&self) -> StrategySummary {
        StrategySummary::of(&self.result)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub corpus: String,
    pub runs: Vec<StrategyRun>,
}

impl ComparisonReport {
    pub fn run(&self, strategy: Strategy) -> Option<&StrategyRun> {
        self.runs.iter().find(|r| r.strategy == strategy)
    }
}

/// Clusters the corpus once per strategy; only the strategy differs
/// between runs.
pub fn compare_strategies(
    corpus_name: &str,
    docs: &[Document],
    config: &LingoConfig,
    strategies: &[Strategy],
) -> Result<ComparisonReport> {
    if strategies.is_empty() {
        return Err(LingoError::InvalidConfig {
            field: "strategies",
            range: "a nonempty subset of {vsm, lsi, lsi-bm25}",
        });
    }
    let runs = strategies
        .iter()
        .map(|&strategy| {
            let config = config.clone().with_strategy(strategy);
            Ok(StrategyRun {
                strategy,
                result: run_lingo(docs, &config)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ComparisonReport {
        corpus: corpus_name.to_string(),
        runs,
    })
}

/// Per-cluster rows for every strategy followed by one
/// `strategy,TOTAL,assigned,others,total_score` row per strategy.
pub fn render_comparison_csv(report: &ComparisonReport) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    w.write_record(["strategy", "cluster_id", "size", "score"])?;
    for run in &report.runs {
        for (i, c) in run.result.clusters.iter().enumerate() {
            w.write_record([
                run.strategy.as_str(),
                &(i + 1).to_string(),
                &c.members.len().to_string(),
                &c.score.to_string(),
            ])?;
        }
    }
    for run in &report.runs {
        let s = run.summary();
        w.write_record([
            run.strategy.as_str(),
            "TOTAL",
            &s.assigned_doc_count.to_string(),
            &s.others_count.to_string(),
            &s.total_score.to_string(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn emit_comparison_csv(report: &ComparisonReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let csv = render_comparison_csv(report)?;
    std::fs::write(path, csv).map_err(|e| LingoError::io(path, e))
}
