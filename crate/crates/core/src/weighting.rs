//! Term-document matrices under tf-idf and Okapi BM25 weighting.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::preprocess::{PreprocessedDocument, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightingKind {
    TfIdf,
    Bm25,
}

/// Weighted t x d matrix; row i is vocabulary term i, column j is `doc_ids[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDocumentMatrix {
    pub matrix: DMatrix<f64>,
    pub doc_ids: Vec<usize>,
    pub kind: WeightingKind,
}

impl TermDocumentMatrix {
    pub fn terms(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn docs(&self) -> usize {
        self.matrix.ncols()
    }

    /// Copy with every nonzero column scaled to unit length.
    pub fn normalized_columns(&self) -> DMatrix<f64> {
        normalize_columns(&self.matrix)
    }
}

/// Scales nonzero columns to unit Euclidean norm; zero columns stay zero.
pub fn normalize_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for mut col in out.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    out
}

/// Raw occurrence counts of vocabulary terms, t x d.
pub fn term_counts(docs: &[PreprocessedDocument], vocab: &Vocabulary) -> DMatrix<f64> {
    let mut counts = DMatrix::zeros(vocab.len(), docs.len());
    for (j, doc) in docs.iter().enumerate() {
        for tok in doc.tokens().filter(|t| !t.is_stopword) {
            if let Some(i) = vocab.index_of(&tok.stem) {
                counts[(i, j)] += 1.0;
            }
        }
    }
    counts
}

/// Okapi BM25 inverse document frequency, ln((n - n_t + 0.5) / (n_t + 0.5)).
///
/// Negative once a term appears in more than half of the documents.
pub fn bm25_idf(n: usize, n_t: usize) -> f64 {
    let (n, n_t) = (n as f64, n_t as f64);
    ((n - n_t + 0.5) / (n_t + 0.5)).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
    /// Mean of `doc_lens`.
    pub avg_doc_len: f64,
    pub doc_lens: Vec<f64>,
    /// Document frequency of each vocabulary term.
    pub doc_freqs: Vec<usize>,
    pub n: usize,
}

impl Bm25Params {
    /// Document lengths count every token, stop words included.
    pub fn from_corpus(docs: &[PreprocessedDocument], vocab: &Vocabulary, k1: f64, b: f64) -> Self {
        let doc_lens: Vec<f64> = docs.iter().map(|d| d.len() as f64).collect();
        let avg_doc_len = if doc_lens.is_empty() {
            0.0
        } else {
            doc_lens.iter().sum::<f64>() / doc_lens.len() as f64
        };
        Bm25Params {
            k1,
            b,
            avg_doc_len,
            doc_lens,
            doc_freqs: (0..vocab.len())
                .map(|i| vocab.document_frequency(i))
                .collect(),
            n: docs.len(),
        }
    }

    pub fn idf(&self, term: usize) -> f64 {
        bm25_idf(self.n, self.doc_freqs[term])
    }

    /// Saturated, length-normalised term frequency.
    pub fn tf_factor(&self, count: f64, len: f64) -> f64 {
        if count == 0.0 {
            return 0.0;
        }
        let rel_len = if self.avg_doc_len > 0.0 {
            len / self.avg_doc_len
        } else {
            1.0
        };
        count * (self.k1 + 1.0) / (count + self.k1 * (1.0 - self.b + self.b * rel_len))
    }
}

/// Sums the BM25 contribution of each query term for the document in
/// column `doc` of `counts`.
pub fn bm25_score(query: &[usize], doc: usize, params: &Bm25Params, counts: &DMatrix<f64>) -> f64 {
    let len = params.doc_lens[doc];
    query
        .iter()
        .map(|&t| {
            let c = counts[(t, doc)];
            if c == 0.0 {
                0.0
            } else {
                params.idf(t) * params.tf_factor(c, len)
            }
        })
        .sum()
}

/// Weighting applied both to documents and to label pseudo-documents.
#[derive(Debug, Clone, PartialEq)]
pub enum TermWeighting {
    /// Raw tf times ln(d / df).
    TfIdf {
        doc_count: usize,
        doc_freqs: Vec<usize>,
    },
    Bm25(Bm25Params),
}

impl TermWeighting {
    pub fn tfidf(docs: &[PreprocessedDocument], vocab: &Vocabulary) -> Self {
        TermWeighting::TfIdf {
            doc_count: docs.len(),
            doc_freqs: (0..vocab.len())
                .map(|i| vocab.document_frequency(i))
                .collect(),
        }
    }

    pub fn bm25(docs: &[PreprocessedDocument], vocab: &Vocabulary, k1: f64, b: f64) -> Self {
        TermWeighting::Bm25(Bm25Params::from_corpus(docs, vocab, k1, b))
    }

    pub fn kind(&self) -> WeightingKind {
        match self {
            TermWeighting::TfIdf { .. } => WeightingKind::TfIdf,
            TermWeighting::Bm25(_) => WeightingKind::Bm25,
        }
    }

    /// Weight of `count` occurrences of `term` in a text of `len` tokens.
    pub fn weight(&self, term: usize, count: f64, len: f64) -> f64 {
        if count == 0.0 {
            return 0.0;
        }
        match self {
            TermWeighting::TfIdf {
                doc_count,
                doc_freqs,
            } => count * (*doc_count as f64 / doc_freqs[term] as f64).ln(),
            TermWeighting::Bm25(p) => p.idf(term) * p.tf_factor(count, len),
        }
    }

    /// Weighted vector for a bag of term counts.
    pub fn weigh(&self, counts: &DVector<f64>, len: f64) -> DVector<f64> {
        DVector::from_iterator(
            counts.len(),
            counts
                .iter()
                .enumerate()
                .map(|(i, &c)| self.weight(i, c, len)),
        )
    }

    pub fn matrix(&self, docs: &[PreprocessedDocument], vocab: &Vocabulary) -> TermDocumentMatrix {
        let counts = term_counts(docs, vocab);
        let mut matrix = DMatrix::zeros(counts.nrows(), counts.ncols());
        for (j, doc) in docs.iter().enumerate() {
            let len = doc.len() as f64;
            for i in 0..counts.nrows() {
                matrix[(i, j)] = self.weight(i, counts[(i, j)], len);
            }
        }
        TermDocumentMatrix {
            matrix,
            doc_ids: docs.iter().map(|d| d.doc_id).collect(),
            kind: self.kind(),
        }
    }
}

pub fn tfidf_matrix(docs: &[PreprocessedDocument], vocab: &Vocabulary) -> TermDocumentMatrix {
    TermWeighting::tfidf(docs, vocab).matrix(docs, vocab)
}

/// BM25-weighted matrix; columns are left unnormalised.
pub fn bm25_weight_matrix(
    docs: &[PreprocessedDocument],
    vocab: &Vocabulary,
    params: &Bm25Params,
) -> TermDocumentMatrix {
    TermWeighting::Bm25(params.clone()).matrix(docs, vocab)
}
