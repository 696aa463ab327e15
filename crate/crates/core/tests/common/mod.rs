//! Helpers shared by the integration tests: seeded corpus builders and
//! brute-force reference implementations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lingo_core::preprocess::PreprocessedDocument;
use lingo_core::Document;
use nalgebra::DMatrix;
use rand::Rng;

/// (terms, stop-word mask, occurrence count)
pub type PhraseKey = (Vec<String>, Vec<bool>, usize);

type Gram = Vec<(String, bool)>;

/// Enumerates every n-gram of every sentence and keeps the frequent complete
/// ones, trimmed of stop words at both ends.
///
/// An n-gram is complete when its occurrences do not all share one left
/// neighbour and do not all share one right neighbour. A sentence boundary
/// counts as a neighbour distinct from every other, including other
/// boundaries.
pub fn brute_force_phrases(
    docs: &[PreprocessedDocument],
    threshold: usize,
    max_len: usize,
) -> BTreeSet<PhraseKey> {
    let sentences: Vec<Gram> = docs
        .iter()
        .flat_map(|d| &d.sentences)
        .map(|s| s.iter().map(|t| (t.stem.clone(), t.is_stopword)).collect())
        .collect();

    type Context = Option<(String, bool)>;
    let mut occurrences: BTreeMap<Gram, Vec<(Context, Context)>> = BTreeMap::new();
    for s in &sentences {
        for i in 0..s.len() {
            for j in i + 1..=s.len() {
                let left = i.checked_sub(1).map(|p| s[p].clone());
                let right = s.get(j).cloned();
                occurrences
                    .entry(s[i..j].to_vec())
                    .or_default()
                    .push((left, right));
            }
        }
    }

    let varied = |ctx: Vec<&Context>| {
        ctx.iter().any(|c| c.is_none()) || ctx.windows(2).any(|w| w[0] != w[1])
    };

    let mut out = BTreeSet::new();
    for (gram, occ) in &occurrences {
        if occ.len() <= threshold {
            continue;
        }
        let left_complete = varied(occ.iter().map(|o| &o.0).collect());
        let right_complete = varied(occ.iter().map(|o| &o.1).collect());
        if !(left_complete && right_complete) {
            continue;
        }
        let Some(first) = gram.iter().position(|t| !t.1) else {
            continue;
        };
        let last = gram.iter().rposition(|t| !t.1).unwrap();
        let trimmed = &gram[first..=last];
        if trimmed.len() > max_len {
            continue;
        }
        let count = occurrences[trimmed].len();
        out.insert((
            trimmed.iter().map(|t| t.0.clone()).collect(),
            trimmed.iter().map(|t| t.1).collect(),
            count,
        ));
    }
    out
}

pub const STOP_ALPHABET: [&str; 3] = ["the", "of", "and"];
pub const CONTENT_ALPHABET: [&str; 12] = [
    "kato", "bumi", "rado", "fenu", "zolo", "gapu", "mika", "tovu", "nabo", "pura", "duka", "vomi",
];

/// Random documents over `alphabet`, with sentences of 1..=8 words, keeping
/// the total token count at or below `max_tokens`.
pub fn random_phrase_corpus<R: Rng>(
    rng: &mut R,
    alphabet: &[&str],
    max_tokens: usize,
) -> Vec<Document> {
    let mut budget = rng.gen_range(1..=max_tokens);
    let mut docs = Vec::new();
    while budget > 0 {
        let mut sentences = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            if budget == 0 {
                break;
            }
            let len = rng.gen_range(1..=8usize).min(budget);
            budget -= len;
            let words: Vec<&str> = (0..len)
                .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                .collect();
            sentences.push(format!("{}.", words.join(" ")));
        }
        docs.push(Document::new(docs.len() + 1, "", sentences.join(" ")));
    }
    docs
}

/// An alphabet of at most `size` words mixing content and stop words.
pub fn random_alphabet<R: Rng>(rng: &mut R, size: usize) -> Vec<&'static str> {
    let stops = rng.gen_range(0..=STOP_ALPHABET.len().min(size - 1));
    let mut out: Vec<&str> = STOP_ALPHABET[..stops].to_vec();
    out.extend_from_slice(&CONTENT_ALPHABET[..size - stops]);
    out
}

/// `n_docs` documents over a vocabulary of `n_terms` synthetic words, with
/// skewed term usage so frequencies vary.
pub fn random_term_corpus<R: Rng>(rng: &mut R, n_docs: usize, n_terms: usize) -> Vec<Document> {
    (0..n_docs)
        .map(|i| {
            let len = rng.gen_range(4..=14);
            let words: Vec<String> = (0..len)
                .map(|_| {
                    let a = rng.gen_range(0..n_terms);
                    let b = rng.gen_range(0..n_terms);
                    format!("w{}", a.min(b))
                })
                .collect();
            Document::new(i + 1, "", format!("{}.", words.join(" ")))
        })
        .collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

pub fn frobenius(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Largest entry of |M^T M - I|.
pub fn orthonormality_error(m: &DMatrix<f64>) -> f64 {
    let gram = m.tr_mul(m);
    let eye = DMatrix::<f64>::identity(gram.nrows(), gram.ncols());
    (gram - eye).amax()
}
