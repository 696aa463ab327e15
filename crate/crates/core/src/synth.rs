//! Seeded planted-topic corpus generator.
//!
//! Every topic owns a disjoint vocabulary: a pool of core words plus synonym
//! pairs. The defaults keep documents short and spread each topic over many
//! rarely repeated core words, so two documents of a topic seldom share a
//! literal term. Each document of a topic picks one side of every synonym pair, with
//! the two sides split evenly across the topic's documents, so the two words
//! of a pair never occur together but share the same context. Literal term
//! matching cannot relate them; co-occurrence through the shared context can.

use std::collections::HashSet;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus_io::Document;
use crate::error::{LingoError, Result};
use crate::preprocess::{stem_token, StopWords};

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedCorpusSpec {
    pub topics: usize,
    pub docs_per_topic: usize,
    pub synonym_pairs: usize,
    pub seed: u64,
    /// Size of each topic's core word pool.
    pub core_words: usize,
    /// Words shared by all topics.
    pub background_words: usize,
    pub sentences_per_doc: usize,
    /// Content words per sentence, drawn uniformly from this range.
    pub words_per_sentence: (usize, usize),
    /// Chance that a content slot draws a core word.
    pub core_rate: f64,
    /// Chance that a content slot draws a background word.
    pub background_rate: f64,
}

impl Default for PlantedCorpusSpec {
    fn default() -> Self {
        PlantedCorpusSpec {
            topics: 3,
            docs_per_topic: 30,
            synonym_pairs: 5,
            seed: 7,
            core_words: 40,
            background_words: 12,
            sentences_per_doc: 1,
            words_per_sentence: (2, 3),
            core_rate: 0.7,
            background_rate: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topic {
    pub core: Vec<String>,
    pub synonyms: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedCorpus {
    pub documents: Vec<Document>,
    /// Topic index of each document, parallel to `documents`.
    pub topic_of: Vec<usize>,
    pub topics: Vec<Topic>,
}

impl PlantedCorpus {
    /// Document ids belonging to `topic`.
    pub fn topic_members(&self, topic: usize) -> Vec<usize> {
        self.documents
            .iter()
            .zip(&self.topic_of)
            .filter(|(_, &t)| t == topic)
            .map(|(d, _)| d.id)
            .collect()
    }
}

const GLUE: [&str; 8] = ["the", "of", "and", "a", "in", "for", "with", "on"];
const ONSETS: [&str; 12] = ["b", "d", "f", "g", "k", "m", "n", "p", "r", "t", "v", "z"];
const VOWELS: [&str; 3] = ["a", "o", "u"];

/// Draws pronounceable pseudo-words whose stems are pairwise distinct and
/// never collide with a stop word.
struct WordSource {
    used_stems: HashSet<String>,
    stop: StopWords,
}

impl WordSource {
    fn new() -> Self {
        WordSource {
            used_stems: HashSet::new(),
            stop: StopWords::english(),
        }
    }

    fn next(&mut self, rng: &mut ChaCha8Rng) -> String {
        loop {
            let syllables = rng.gen_range(2..=3);
            let word: String = (0..syllables)
                .map(|_| {
                    let c = ONSETS[rng.gen_range(0..ONSETS.len())];
                    let v = VOWELS[rng.gen_range(0..VOWELS.len())];
                    format!("{c}{v}")
                })
                .collect();
            if self.stop.contains(&word) {
                continue;
            }
            let stem = stem_token(&word);
            if stem == word && self.used_stems.insert(stem) {
                return word;
            }
        }
    }
}

pub fn generate(spec: &PlantedCorpusSpec) -> PlantedCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut words = WordSource::new();

    let background: Vec<String> = (0..spec.background_words)
        .map(|_| words.next(&mut rng))
        .collect();
    let topics: Vec<Topic> = (0..spec.topics)
        .map(|_| Topic {
            core: (0..spec.core_words).map(|_| words.next(&mut rng)).collect(),
            synonyms: (0..spec.synonym_pairs)
                .map(|_| (words.next(&mut rng), words.next(&mut rng)))
                .collect(),
        })
        .collect();

    let mut documents = Vec::new();
    let mut topic_of = Vec::new();
    for (t, topic) in topics.iter().enumerate() {
        // one shuffled column per pair, half of the documents on each side;
        // sides[d][p] tells which word of pair p document d uses
        let columns: Vec<Vec<bool>> = (0..spec.synonym_pairs)
            .map(|_| {
                let mut column: Vec<bool> = (0..spec.docs_per_topic)
                    .map(|d| d < spec.docs_per_topic / 2)
                    .collect();
                column.shuffle(&mut rng);
                column
            })
            .collect();
        let sides: Vec<Vec<bool>> = (0..spec.docs_per_topic)
            .map(|d| columns.iter().map(|c| c[d]).collect())
            .collect();

        for side in &sides {
            let mut sentences = Vec::new();
            for _ in 0..spec.sentences_per_doc {
                let (lo, hi) = spec.words_per_sentence;
                let n = rng.gen_range(lo..=hi);
                let mut sentence: Vec<&str> = Vec::new();
                for slot in 0..n {
                    if slot > 0 && rng.gen_bool(0.4) {
                        sentence.push(GLUE[rng.gen_range(0..GLUE.len())]);
                    }
                    let roll: f64 = rng.gen();
                    let word = if roll < spec.background_rate && !background.is_empty() {
                        &background[rng.gen_range(0..background.len())]
                    } else if roll < spec.background_rate + spec.core_rate && !topic.core.is_empty()
                    {
                        &topic.core[rng.gen_range(0..topic.core.len())]
                    } else if !topic.synonyms.is_empty() {
                        let p = rng.gen_range(0..topic.synonyms.len());
                        let (a, b) = &topic.synonyms[p];
                        if side[p] {
                            a
                        } else {
                            b
                        }
                    } else {
                        &topic.core[rng.gen_range(0..topic.core.len())]
                    };
                    sentence.push(word);
                }
                let mut text = sentence.join(" ");
                if let Some(first) = text.get_mut(0..1) {
                    first.make_ascii_uppercase();
                }
                sentences.push(format!("{text}."));
            }
            documents.push(Document::new(documents.len() + 1, "", sentences.join(" ")));
            topic_of.push(t);
        }
    }

    PlantedCorpus {
        documents,
        topic_of,
        topics,
    }
}

/// Writes one `doc_NNNN.txt` file per document, in id order.
pub fn write_corpus(corpus: &PlantedCorpus, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| LingoError::io(dir, e))?;
    let width = corpus.documents.len().to_string().len().max(4);
    for doc in &corpus.documents {
        let path = dir.join(format!("doc_{:0width$}.txt", doc.id));
        std::fs::write(&path, format!("{}\n", doc.body)).map_err(|e| LingoError::io(&path, e))?;
    }
    Ok(())
}
