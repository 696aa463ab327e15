//! Prints per-strategy summaries for the planted corpus.
//! Usage: cargo run --example planted -- [key=value ...]

use lingo_core::bench::compare_strategies;
use lingo_core::synth::{generate, PlantedCorpusSpec};
use lingo_core::{LingoConfig, Strategy};

fn main() {
    let mut spec = PlantedCorpusSpec::default();
    for arg in std::env::args().skip(1) {
        let (key, value) = arg.split_once('=').expect("key=value");
        match key {
            "seed" => spec.seed = value.parse().unwrap(),
            "core_rate" => spec.core_rate = value.parse().unwrap(),
            "background_rate" => spec.background_rate = value.parse().unwrap(),
            "core_words" => spec.core_words = value.parse().unwrap(),
            "background_words" => spec.background_words = value.parse().unwrap(),
            "sentences" => spec.sentences_per_doc = value.parse().unwrap(),
            "lo" => spec.words_per_sentence.0 = value.parse().unwrap(),
            "hi" => spec.words_per_sentence.1 = value.parse().unwrap(),
            _ => panic!("unknown key {key}"),
        }
    }
    let corpus = generate(&spec);
    let report = compare_strategies(
        "planted",
        &corpus.documents,
        &LingoConfig::default(),
        &Strategy::ALL,
    )
    .unwrap();
    for run in &report.runs {
        let s = run.summary();
        println!(
            "{:<9} clusters={:<3} assigned={:<3} others={:<3} score={:.3}",
            run.strategy, s.cluster_count, s.assigned_doc_count, s.others_count, s.total_score
        );
    }
}
