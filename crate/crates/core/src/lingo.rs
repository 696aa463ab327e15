//! Label induction, content discovery and final cluster formation.
//!
//! Labels are induced from the leading left singular vectors of the weighted
//! term-document matrix: every abstract concept (a column of U_k) is labelled
//! by the candidate phrase whose unit term vector projects most strongly
//! onto it. Documents are then assigned to labels by cosine similarity,
//! either against the original matrix (VSM) or against its rank-k
//! reconstruction (LSI, LSI with BM25 weights).

use std::collections::{BTreeMap, HashMap};

use log::warn;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::config::{LingoConfig, Strategy};
use crate::corpus_io::{ClusteringResult, Document};
use crate::error::{LingoError, Result};
use crate::linalg::{cosine_similarity, reconstruct_rank_k, svd, SvdFactors, TruncationChoice};
use crate::phrase::{discover_frequent_complete_phrases, Phrase};
use crate::preprocess::{preprocess_with, PreprocessedDocument, StopWords, Vocabulary};
use crate::weighting::{normalize_columns, TermDocumentMatrix, TermWeighting};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelCandidate {
    pub phrase: Phrase,
    /// Largest absolute component of the phrase's column in U_k^T P.
    pub score: f64,
    /// Unit-length weighted term vector over the vocabulary.
    pub term_vector: Vec<f64>,
}

impl LabelCandidate {
    pub fn text(&self) -> &str {
        &self.phrase.surface_form
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub label: LabelCandidate,
    /// Ascending document ids.
    pub members: Vec<usize>,
    /// `label.score * members.len()`.
    pub score: f64,
}

/// t x m matrix whose columns are the surviving labels' term vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMatrix(pub DMatrix<f64>);

impl LabelMatrix {
    pub fn from_labels(labels: &[LabelCandidate], terms: usize) -> Self {
        let mut q = DMatrix::zeros(terms, labels.len());
        for (j, label) in labels.iter().enumerate() {
            q.set_column(j, &DVector::from_column_slice(&label.term_vector));
        }
        LabelMatrix(q)
    }

    pub fn len(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.0.ncols() == 0
    }
}

/// Smallest k whose cumulative singular value ratio reaches `threshold`,
/// or the full rank when none does.
pub fn select_k(f: &SvdFactors, candidate_label_threshold: f64) -> TruncationChoice {
    let r = f.rank();
    let mut prefix = Vec::with_capacity(r);
    let mut sum = 0.0;
    for s in &f.sigma {
        sum += s;
        prefix.push(sum);
    }
    for k in 1..=r {
        let quality = prefix[k - 1] / sum;
        if quality >= candidate_label_threshold {
            return TruncationChoice { k, quality };
        }
    }
    TruncationChoice {
        k: r,
        quality: if r == 0 { 0.0 } else { 1.0 },
    }
}

/// Frequent phrases plus every vocabulary term as a one-word candidate,
/// sorted by term sequence.
pub fn candidate_phrases(
    phrases: &[Phrase],
    docs: &[PreprocessedDocument],
    vocab: &Vocabulary,
) -> Vec<Phrase> {
    let mut surfaces: HashMap<&str, BTreeMap<&str, usize>> = HashMap::new();
    for tok in docs
        .iter()
        .flat_map(|d| d.tokens())
        .filter(|t| !t.is_stopword)
    {
        if vocab.index_of(&tok.stem).is_some() {
            *surfaces
                .entry(tok.stem.as_str())
                .or_default()
                .entry(tok.surface.as_str())
                .or_default() += 1;
        }
    }

    let mut all: BTreeMap<(Vec<String>, Vec<bool>), Phrase> = phrases
        .iter()
        .map(|p| ((p.terms.clone(), p.stopword_mask.clone()), p.clone()))
        .collect();
    for (i, term) in vocab.terms().iter().enumerate() {
        let key = (vec![term.clone()], vec![false]);
        all.entry(key).or_insert_with(|| {
            // BTreeMap order makes the lexicographically smallest surface win ties
            let surface_form = surfaces
                .get(term.as_str())
                .and_then(|s| s.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))))
                .map(|(s, _)| s.to_string())
                .unwrap_or_else(|| term.clone());
            Phrase {
                terms: vec![term.clone()],
                stopword_mask: vec![false],
                occurrence_count: vocab.corpus_frequency(i),
                surface_form,
            }
        });
    }
    all.into_values().collect()
}

/// Unit term vectors for each candidate, treating the phrase as a
/// pseudo-document. Candidates whose weighted vector vanishes are dropped.
pub fn build_phrase_matrix(
    candidates: &[Phrase],
    vocab: &Vocabulary,
    weighting: &TermWeighting,
) -> (Vec<Phrase>, DMatrix<f64>) {
    let mut kept = Vec::new();
    let mut columns = Vec::new();
    for phrase in candidates {
        let mut counts = DVector::zeros(vocab.len());
        for term in phrase.content_terms() {
            if let Some(i) = vocab.index_of(term) {
                counts[i] += 1.0;
            }
        }
        let mut v = weighting.weigh(&counts, phrase.len() as f64);
        let norm = v.norm();
        if norm == 0.0 {
            warn!(
                "dropping label candidate '{}': no weighted vocabulary terms",
                phrase.surface_form
            );
            continue;
        }
        v /= norm;
        kept.push(phrase.clone());
        columns.push(v);
    }
    let matrix = if columns.is_empty() {
        DMatrix::zeros(vocab.len(), 0)
    } else {
        DMatrix::from_columns(&columns)
    };
    (kept, matrix)
}

/// One label per abstract concept: for each of the k leading left singular
/// vectors, the candidate column of U_k^T P with the largest absolute
/// component wins (lowest column on ties). A candidate's score is the
/// largest absolute component of its whole column.
pub fn induce_label_candidates(
    f: &SvdFactors,
    k: usize,
    candidates: &[Phrase],
    p: &DMatrix<f64>,
) -> Result<Vec<LabelCandidate>> {
    let m = f.u_k(k)?.tr_mul(p);
    let column_max: Vec<f64> = m
        .column_iter()
        .map(|c| c.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
        .collect();

    let mut chosen: Vec<usize> = Vec::new();
    for row in m.row_iter() {
        let mut best: Option<(usize, f64)> = None;
        for (c, x) in row.iter().enumerate() {
            if best.is_none_or(|(_, b)| x.abs() > b) {
                best = Some((c, x.abs()));
            }
        }
        if let Some((c, value)) = best {
            if value > 0.0 && !chosen.contains(&c) {
                chosen.push(c);
            }
        }
    }

    Ok(chosen
        .into_iter()
        .map(|c| LabelCandidate {
            phrase: candidates[c].clone(),
            score: column_max[c],
            term_vector: p.column(c).iter().copied().collect(),
        })
        .collect())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Merges labels whose term vectors have cosine >= `threshold` (transitively)
/// and keeps the best-scoring label of each group. Ties go to the
/// lexicographically smaller phrase. Survivors keep their input order.
pub fn dedupe_labels(candidates: Vec<LabelCandidate>, threshold: f64) -> Vec<LabelCandidate> {
    let n = candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            let cos = cosine_similarity(&candidates[i].term_vector, &candidates[j].term_vector)
                .expect("label vectors share the vocabulary length");
            if cos >= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        let better = match best.get(&root) {
            None => true,
            Some(&cur) => {
                let (a, b) = (&candidates[i], &candidates[cur]);
                a.score > b.score || (a.score == b.score && a.phrase.terms < b.phrase.terms)
            }
        };
        if better {
            best.insert(root, i);
        }
    }
    let mut keep = vec![false; n];
    for &i in best.values() {
        keep[i] = true;
    }
    candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Label-by-document similarity matrix for `strategy`.
///
/// VSM compares labels with the unit-normalised columns of `a`; the LSI
/// strategies compare them with the unit-normalised columns of the rank-k
/// reconstruction, taking absolute values to cancel the sign ambiguity of
/// singular vectors.
pub fn similarity_matrix(
    strategy: Strategy,
    q: &LabelMatrix,
    a: &TermDocumentMatrix,
    f: &SvdFactors,
    k: usize,
) -> Result<DMatrix<f64>> {
    match strategy {
        Strategy::Vsm => Ok(q.0.tr_mul(&a.normalized_columns())),
        Strategy::Lsi | Strategy::LsiBm25 => {
            let a_k = normalize_columns(&reconstruct_rank_k(f, k)?);
            Ok(q.0.tr_mul(&a_k).abs())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContentAssignment {
    /// Member document ids per label, ascending.
    pub members: Vec<Vec<usize>>,
    /// Documents matched by no label, ascending.
    pub unassigned: Vec<usize>,
    pub similarities: DMatrix<f64>,
}

/// Assigns each document to every label it is more similar to than
/// `snippet_assignment_threshold`.
pub fn discover_contents(
    strategy: Strategy,
    q: &LabelMatrix,
    a: &TermDocumentMatrix,
    f: &SvdFactors,
    k: usize,
    snippet_assignment_threshold: f64,
) -> Result<ContentAssignment> {
    let similarities = similarity_matrix(strategy, q, a, f, k)?;
    let mut members = vec![Vec::new(); q.len()];
    let mut assigned = vec![false; a.docs()];
    for (label, row) in similarities.row_iter().enumerate() {
        for (j, &s) in row.iter().enumerate() {
            if s > snippet_assignment_threshold {
                members[label].push(a.doc_ids[j]);
                assigned[j] = true;
            }
        }
    }
    let unassigned = a
        .doc_ids
        .iter()
        .zip(&assigned)
        .filter(|(_, &hit)| !hit)
        .map(|(&id, _)| id)
        .collect();
    Ok(ContentAssignment {
        members,
        unassigned,
        similarities,
    })
}

/// Drops empty clusters, scores the rest and orders them by descending score.
pub fn form_final_clusters(
    labels: &[LabelCandidate],
    members: &[Vec<usize>],
    unassigned: &[usize],
    config: &LingoConfig,
    corpus_size: usize,
) -> ClusteringResult {
    let mut clusters: Vec<Cluster> = labels
        .iter()
        .zip(members)
        .filter(|(_, m)| !m.is_empty())
        .map(|(label, m)| {
            let mut members = m.clone();
            members.sort_unstable();
            Cluster {
                score: label.score * members.len() as f64,
                label: label.clone(),
                members,
            }
        })
        .collect();
    clusters.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.label.phrase.terms.cmp(&b.label.phrase.terms))
            .then_with(|| a.members.cmp(&b.members))
    });
    let mut others = unassigned.to_vec();
    others.sort_unstable();
    ClusteringResult {
        clusters,
        others,
        config_echo: config.clone(),
        corpus_size,
    }
}

/// How the truncation rank k is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankSelection {
    /// Smallest k reaching the candidate label threshold.
    #[default]
    Quality,
    /// k equals the numerical rank.
    Full,
    Fixed(usize),
}

/// Everything computed before content discovery.
#[derive(Debug, Clone)]
pub struct LabelInduction {
    pub documents: Vec<PreprocessedDocument>,
    pub vocabulary: Vocabulary,
    pub phrases: Vec<Phrase>,
    pub weighting: TermWeighting,
    pub matrix: TermDocumentMatrix,
    pub factors: SvdFactors,
    pub truncation: TruncationChoice,
    /// Labels surviving similarity deduplication.
    pub labels: Vec<LabelCandidate>,
    pub label_matrix: LabelMatrix,
}

impl LabelInduction {
    pub fn discover(&self, strategy: Strategy, threshold: f64) -> Result<ContentAssignment> {
        discover_contents(
            strategy,
            &self.label_matrix,
            &self.matrix,
            &self.factors,
            self.truncation.k,
            threshold,
        )
    }
}

/// Runs preprocessing, phrase discovery, weighting, SVD and label induction.
pub fn induce_labels(
    docs: &[Document],
    config: &LingoConfig,
    rank: RankSelection,
) -> Result<LabelInduction> {
    config.validate()?;
    let stopwords = StopWords::for_config(config)?;
    let (documents, vocabulary) =
        preprocess_with(docs, &stopwords, config.term_frequency_threshold)?;
    if vocabulary.is_empty() {
        return Err(LingoError::NoClusterableTerms);
    }

    let phrases = discover_frequent_complete_phrases(
        &documents,
        config.term_frequency_threshold,
        config.max_phrase_length,
    );

    let weighting = if config.strategy.uses_bm25() {
        TermWeighting::bm25(&documents, &vocabulary, config.k1, config.b)
    } else {
        TermWeighting::tfidf(&documents, &vocabulary)
    };
    let matrix = weighting.matrix(&documents, &vocabulary);
    let factors = svd(&matrix.matrix)?;
    if factors.rank() == 0 {
        // every weight vanished, e.g. each term occurs in every document
        return Err(LingoError::NoClusterableTerms);
    }

    let truncation = match rank {
        RankSelection::Quality => select_k(&factors, config.candidate_label_threshold),
        RankSelection::Full => TruncationChoice {
            k: factors.rank(),
            quality: 1.0,
        },
        RankSelection::Fixed(k) => {
            factors.u_k(k)?;
            TruncationChoice {
                k,
                quality: factors.quality(k),
            }
        }
    };

    let candidates = candidate_phrases(&phrases, &documents, &vocabulary);
    let (candidates, p) = build_phrase_matrix(&candidates, &vocabulary, &weighting);
    let labels = induce_label_candidates(&factors, truncation.k, &candidates, &p)?;
    let labels = dedupe_labels(labels, config.label_similarity_threshold);
    let label_matrix = LabelMatrix::from_labels(&labels, vocabulary.len());

    Ok(LabelInduction {
        documents,
        vocabulary,
        phrases,
        weighting,
        matrix,
        factors,
        truncation,
        labels,
        label_matrix,
    })
}

/// Clusters `docs` end to end with `config.strategy`.
pub fn run_lingo(docs: &[Document], config: &LingoConfig) -> Result<ClusteringResult> {
    run_lingo_with(docs, config, RankSelection::Quality)
}

pub fn run_lingo_with(
    docs: &[Document],
    config: &LingoConfig,
    rank: RankSelection,
) -> Result<ClusteringResult> {
    let induction = induce_labels(docs, config, rank)?;
    let assignment = induction.discover(config.strategy, config.snippet_assignment_threshold)?;
    Ok(form_final_clusters(
        &induction.labels,
        &assignment.members,
        &assignment.unassigned,
        config,
        docs.len(),
    ))
}
