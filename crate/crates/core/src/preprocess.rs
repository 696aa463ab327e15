//! Tokenization, stop-word marking, stemming and vocabulary construction.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use rust_stemmers::{Algorithm, Stemmer};
use serde::{Deserialize, Serialize};

use crate::config::LingoConfig;
use crate::corpus_io::Document;
use crate::error::{LingoError, Result};

const BUNDLED_STOPWORDS: &str = include_str!("stopwords_en.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    /// Stop words keep their surface form here; everything else is stemmed.
    pub stem: String,
    pub is_stopword: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessedDocument {
    pub doc_id: usize,
    pub sentences: Vec<Vec<Token>>,
}

impl PreprocessedDocument {
    /// Total token count, stop words included.
    pub fn len(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.iter().all(Vec::is_empty)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }
}

#[derive(Debug, Clone, Default)]
pub struct StopWords(HashSet<String>);

impl StopWords {
    pub fn english() -> Self {
        Self::parse(BUNDLED_STOPWORDS)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        StopWords(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| LingoError::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn for_config(config: &LingoConfig) -> Result<Self> {
        match &config.stopword_list_path {
            Some(path) => Self::load(path),
            None => Ok(Self::english()),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for StopWords {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        StopWords(iter.into_iter().map(|s| s.into().to_lowercase()).collect())
    }
}

/// Splits text into sentences of lowercase alphanumeric tokens.
///
/// Sentences end at `.`, `!`, `?` and newlines; every other
/// non-alphanumeric character only separates tokens.
pub fn tokenize(text: &str) -> Vec<Vec<String>> {
    let mut sentences = Vec::new();
    let mut sentence = Vec::new();
    let mut word = String::new();

    for ch in text.chars() {
        if ch.is_alphanumeric() {
            word.extend(ch.to_lowercase());
            continue;
        }
        if !word.is_empty() {
            sentence.push(std::mem::take(&mut word));
        }
        if matches!(ch, '.' | '!' | '?' | '\n') && !sentence.is_empty() {
            sentences.push(std::mem::take(&mut sentence));
        }
    }
    if !word.is_empty() {
        sentence.push(word);
    }
    if !sentence.is_empty() {
        sentences.push(sentence);
    }
    sentences
}

/// English (Porter family) stem of a lowercase token.
pub fn stem_token(surface: &str) -> String {
    Stemmer::create(Algorithm::English)
        .stem(surface)
        .into_owned()
}

/// Filtered term list with stable, lexicographic indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
    corpus_freq: Vec<usize>,
    doc_freq: Vec<usize>,
}

impl Vocabulary {
    /// Keeps every non-stop stem whose corpus frequency exceeds `threshold`.
    pub fn build(docs: &[PreprocessedDocument], threshold: usize) -> Self {
        // (corpus frequency, document frequency)
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for doc in docs {
            let mut seen = HashSet::new();
            for tok in doc.tokens().filter(|t| !t.is_stopword) {
                let entry = counts.entry(tok.stem.as_str()).or_default();
                entry.0 += 1;
                if seen.insert(tok.stem.as_str()) {
                    entry.1 += 1;
                }
            }
        }

        let mut vocab = Vocabulary {
            terms: Vec::new(),
            index: HashMap::new(),
            corpus_freq: Vec::new(),
            doc_freq: Vec::new(),
        };
        for (stem, (cf, df)) in counts.into_iter().filter(|(_, (cf, _))| *cf > threshold) {
            vocab.index.insert(stem.to_string(), vocab.terms.len());
            vocab.terms.push(stem.to_string());
            vocab.corpus_freq.push(cf);
            vocab.doc_freq.push(df);
        }
        vocab
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn index_of(&self, stem: &str) -> Option<usize> {
        self.index.get(stem).copied()
    }

    pub fn corpus_frequency(&self, index: usize) -> usize {
        self.corpus_freq[index]
    }

    pub fn document_frequency(&self, index: usize) -> usize {
        self.doc_freq[index]
    }
}

pub fn preprocess_document(doc: &Document, stopwords: &StopWords) -> PreprocessedDocument {
    let stemmer = Stemmer::create(Algorithm::English);
    let mut sentences = tokenize(&doc.title);
    sentences.extend(tokenize(&doc.body));
    let sentences = sentences
        .into_iter()
        .map(|sentence| {
            sentence
                .into_iter()
                .map(|surface| {
                    let is_stopword = stopwords.contains(&surface);
                    let stem = if is_stopword {
                        surface.clone()
                    } else {
                        stemmer.stem(&surface).into_owned()
                    };
                    Token {
                        surface,
                        stem,
                        is_stopword,
                    }
                })
                .collect()
        })
        .collect();
    PreprocessedDocument {
        doc_id: doc.id,
        sentences,
    }
}

pub fn preprocess_with(
    docs: &[Document],
    stopwords: &StopWords,
    term_frequency_threshold: usize,
) -> Result<(Vec<PreprocessedDocument>, Vocabulary)> {
    if docs.is_empty() {
        return Err(LingoError::EmptyCorpus);
    }
    let processed: Vec<_> = docs
        .iter()
        .map(|d| preprocess_document(d, stopwords))
        .collect();
    let vocab = Vocabulary::build(&processed, term_frequency_threshold);
    Ok((processed, vocab))
}

/// Preprocesses the corpus with the stop-word list and threshold in `config`.
pub fn preprocess_corpus(
    docs: &[Document],
    config: &LingoConfig,
) -> Result<(Vec<PreprocessedDocument>, Vocabulary)> {
    let stopwords = StopWords::for_config(config)?;
    preprocess_with(docs, &stopwords, config.term_frequency_threshold)
}
