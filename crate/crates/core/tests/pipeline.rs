mod common;

use std::collections::{BTreeMap, BTreeSet};

use lingo_core::bench::compare_strategies;
use lingo_core::lingo::induce_labels;
use lingo_core::synth::{generate, PlantedCorpusSpec};
use lingo_core::{
    run_lingo, run_lingo_with, ClusteringResult, Document, LingoConfig, LingoError, RankSelection,
    Strategy,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_term_corpus;

fn strategy() -> impl proptest::strategy::Strategy<Value = Strategy> {
    prop_oneof![
        Just(Strategy::Vsm),
        Just(Strategy::Lsi),
        Just(Strategy::LsiBm25)
    ]
}

fn members_by_label(r: &ClusteringResult) -> BTreeMap<Vec<String>, Vec<usize>> {
    r.clusters
        .iter()
        .map(|c| (c.label.phrase.terms.clone(), c.members.clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partition_and_score_identity(seed in any::<u64>(), docs in 5usize..25, terms in 8usize..40, s in strategy()) {
        let docs = random_term_corpus(&mut ChaCha8Rng::seed_from_u64(seed), docs, terms);
        let result = match run_lingo(&docs, &LingoConfig::default().with_strategy(s)) {
            Ok(r) => r,
            Err(LingoError::NoClusterableTerms) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let members: BTreeSet<usize> = result.clusters.iter().flat_map(|c| c.members.clone()).collect();
        let others: BTreeSet<usize> = result.others.iter().copied().collect();
        prop_assert!(members.is_disjoint(&others));
        prop_assert_eq!(members.len() + others.len(), docs.len());
        for c in &result.clusters {
            prop_assert!(!c.members.is_empty());
            prop_assert_eq!(c.score, c.label.score * c.members.len() as f64);
        }
        prop_assert!(result.clusters.windows(2).all(|w| w[0].score >= w[1].score));
    }

    #[test]
    fn raising_the_assignment_threshold_never_adds_members(
        seed in any::<u64>(),
        s in strategy(),
        low in 0.0f64..0.6,
        step in 0.0f64..0.4,
    ) {
        let docs = random_term_corpus(&mut ChaCha8Rng::seed_from_u64(seed), 20, 25);
        let mut config = LingoConfig::default().with_strategy(s);
        config.snippet_assignment_threshold = low;
        let Ok(before) = run_lingo(&docs, &config) else { return Ok(()) };
        config.snippet_assignment_threshold = low + step;
        let after = run_lingo(&docs, &config).unwrap();
        let before = members_by_label(&before);
        for (label, ids) in members_by_label(&after) {
            let prev = before.get(&label).expect("no new labels appear");
            prop_assert!(ids.iter().all(|id| prev.contains(id)));
        }
    }

    #[test]
    fn full_rank_lsi_agrees_with_vsm(seed in any::<u64>(), terms in 10usize..50) {
        let docs = random_term_corpus(&mut ChaCha8Rng::seed_from_u64(seed), 20, terms);
        let config = LingoConfig::default();
        let Ok(induction) = induce_labels(&docs, &config, RankSelection::Full) else { return Ok(()) };
        let vsm = induction.discover(Strategy::Vsm, 0.15).unwrap();
        let lsi = induction.discover(Strategy::Lsi, 0.15).unwrap();
        prop_assert!((&vsm.similarities - &lsi.similarities).amax() < 1e-8);
        prop_assert_eq!(vsm.members, lsi.members);
    }
}

#[test]
fn runs_are_bit_identical() {
    let corpus = generate(&PlantedCorpusSpec::default());
    for s in Strategy::ALL {
        let config = LingoConfig::default().with_strategy(s);
        let a = run_lingo(&corpus.documents, &config)
            .unwrap()
            .to_json()
            .unwrap();
        let b = run_lingo(&corpus.documents, &config)
            .unwrap()
            .to_json()
            .unwrap();
        assert_eq!(a, b);
    }
}

/// Three topics with disjoint vocabularies. Every document repeats its
/// topic's two-word phrase and adds one word of its own.
fn clean_topics() -> (Vec<Document>, Vec<Vec<usize>>) {
    let topics = [("kato", "bumi"), ("rado", "fenu"), ("zolo", "gapu")];
    let extras = ["mika", "tovu", "nabo", "pura", "duka"];
    let mut docs = Vec::new();
    let mut groups = vec![Vec::new(); topics.len()];
    for (t, (a, b)) in topics.iter().enumerate() {
        for extra in extras {
            let id = docs.len() + 1;
            docs.push(Document::new(
                id,
                "",
                format!("{a} {b}. {a} {b} {extra}{t}."),
            ));
            groups[t].push(id);
        }
    }
    (docs, groups)
}

#[test]
fn orthogonal_topics_become_one_cluster_each() {
    let (docs, groups) = clean_topics();
    let result = run_lingo(&docs, &LingoConfig::default()).unwrap();
    assert_eq!(result.clusters.len(), 3);
    let found: BTreeSet<Vec<usize>> = result.clusters.iter().map(|c| c.members.clone()).collect();
    assert_eq!(found, groups.into_iter().collect());
    assert!(result.others.is_empty());
    for c in &result.clusters {
        assert_eq!(c.label.phrase.terms.len(), 2, "label {}", c.label.text());
    }
}

#[test]
fn identical_documents_cluster_together_under_bm25() {
    let docs: Vec<Document> = (1..=3)
        .map(|i| Document::new(i, "", "kato bumi. kato bumi. kato bumi."))
        .collect();
    let result = run_lingo(
        &docs,
        &LingoConfig::default().with_strategy(Strategy::LsiBm25),
    )
    .unwrap();
    assert_eq!(result.clusters.len(), 1);
    assert_eq!(result.clusters[0].members, vec![1, 2, 3]);
    assert!(result.others.is_empty());
    // tf-idf of a term present in every document vanishes
    let err = run_lingo(&docs, &LingoConfig::default()).unwrap_err();
    assert_eq!(err.to_string(), "no clusterable terms");
}

#[test]
fn unique_terms_are_rejected() {
    let docs = vec![
        Document::new(1, "", "kato bumi"),
        Document::new(2, "", "rado fenu"),
    ];
    let err = run_lingo(&docs, &LingoConfig::default()).unwrap_err();
    assert_eq!(err.to_string(), "no clusterable terms");
}

#[test]
fn fixed_rank_must_fit() {
    let (docs, _) = clean_topics();
    let config = LingoConfig::default();
    assert!(run_lingo_with(&docs, &config, RankSelection::Fixed(1)).is_ok());
    assert!(matches!(
        run_lingo_with(&docs, &config, RankSelection::Fixed(99)),
        Err(LingoError::RankOutOfRange { .. })
    ));
}

#[test]
fn comparison_covers_each_requested_strategy() {
    let corpus = generate(&PlantedCorpusSpec::default());
    let report = compare_strategies(
        "planted",
        &corpus.documents,
        &LingoConfig::default(),
        &[Strategy::Vsm],
    )
    .unwrap();
    assert_eq!(report.runs.len(), 1);
    let summary = report.runs[0].summary();
    assert_eq!(
        summary.assigned_doc_count + summary.others_count,
        corpus.documents.len()
    );

    let all = compare_strategies(
        "planted",
        &corpus.documents,
        &LingoConfig::default(),
        &Strategy::ALL,
    )
    .unwrap();
    let vsm = all.run(Strategy::Vsm).unwrap().summary();
    let lsi = all.run(Strategy::Lsi).unwrap().summary();
    assert!(lsi.others_count < vsm.others_count);
    assert_eq!(
        all.run(Strategy::Vsm).unwrap().result,
        report.runs[0].result
    );
}
