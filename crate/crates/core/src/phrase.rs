//! Frequent complete phrase discovery over a suffix array of stems.
//!
//! The corpus is flattened into one integer sequence with a unique sentinel
//! after every sentence. Sentinels sort below every term and never match each
//! other, so no common prefix (and therefore no phrase) crosses a sentence
//! boundary.
//!
//! A phrase is *complete* when no single token extends it in all of its
//! occurrences, on either side. Right-complete repeats are exactly the
//! lcp-intervals of the suffix array; left-completeness is checked by looking
//! at the token preceding each suffix of the interval. Complete phrases are
//! then trimmed of leading and trailing stop words.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::preprocess::PreprocessedDocument;

/// Suffix array over an integer alphabet, with its LCP array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    /// `sa[i]` is the start of the i-th smallest suffix.
    pub sa: Vec<usize>,
    /// `lcp[i]` is the common prefix length of suffixes `sa[i-1]` and `sa[i]`;
    /// `lcp[0] = 0`.
    pub lcp: Vec<usize>,
}

impl SuffixArray {
    /// Prefix doubling construction, O(n log^2 n), followed by Kasai's LCP.
    pub fn build(tokens: &[u32]) -> Self {
        let n = tokens.len();
        if n == 0 {
            return SuffixArray {
                sa: Vec::new(),
                lcp: Vec::new(),
            };
        }

        let mut sa: Vec<usize> = (0..n).collect();
        // ranks start at 1 so that 0 can stand for "past the end"
        let mut rank: Vec<usize> = tokens.iter().map(|&t| t as usize + 1).collect();
        let mut next = vec![0usize; n];
        let mut step = 1;
        loop {
            let key = |i: usize| (rank[i], if i + step < n { rank[i + step] } else { 0 });
            sa.sort_unstable_by_key(|&i| key(i));
            next[sa[0]] = 1;
            for w in 1..n {
                let bump = usize::from(key(sa[w - 1]) != key(sa[w]));
                next[sa[w]] = next[sa[w - 1]] + bump;
            }
            std::mem::swap(&mut rank, &mut next);
            if rank[sa[n - 1]] == n || step >= n {
                break;
            }
            step *= 2;
        }

        let lcp = kasai(tokens, &sa);
        SuffixArray { sa, lcp }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Range of suffix-array slots whose suffixes start with `pattern`.
    pub fn find(&self, tokens: &[u32], pattern: &[u32]) -> std::ops::Range<usize> {
        let prefix_cmp = |start: usize| {
            let end = (start + pattern.len()).min(tokens.len());
            tokens[start..end].cmp(pattern)
        };
        let lo = self
            .sa
            .partition_point(|&s| prefix_cmp(s) == Ordering::Less);
        let hi = lo + self.sa[lo..].partition_point(|&s| prefix_cmp(s) == Ordering::Equal);
        lo..hi
    }

    /// Number of starting positions of `pattern` (overlaps included).
    pub fn count(&self, tokens: &[u32], pattern: &[u32]) -> usize {
        self.find(tokens, pattern).len()
    }
}

fn kasai(tokens: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = tokens.len();
    let mut rank = vec![0usize; n];
    for (i, &s) in sa.iter().enumerate() {
        rank[s] = i;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] == 0 {
            h = 0;
            continue;
        }
        let j = sa[rank[i] - 1];
        while i + h < n && j + h < n && tokens[i + h] == tokens[j + h] {
            h += 1;
        }
        lcp[rank[i]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phrase {
    /// Stems, with stop words kept verbatim.
    pub terms: Vec<String>,
    /// Parallel to `terms`.
    pub stopword_mask: Vec<bool>,
    pub occurrence_count: usize,
    /// Most frequent surface rendering across occurrences.
    pub surface_form: String,
}

impl Phrase {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-stop stems of the phrase, in order.
    pub fn content_terms(&self) -> impl Iterator<Item = &str> {
        self.terms
            .iter()
            .zip(&self.stopword_mask)
            .filter(|(_, &stop)| !stop)
            .map(|(t, _)| t.as_str())
    }
}

/// The corpus flattened into an integer sequence, one sentinel per sentence.
#[derive(Debug, Clone)]
pub struct TokenStream<'a> {
    pub ids: Vec<u32>,
    /// Number of sentinel ids; term ids start here.
    pub sentinels: u32,
    surfaces: Vec<&'a str>,
    /// (stem, is_stopword) for each term id, offset by `sentinels`.
    lexicon: Vec<(&'a str, bool)>,
}

impl<'a> TokenStream<'a> {
    pub fn new(docs: &'a [PreprocessedDocument]) -> Self {
        let mut lexicon: Vec<(&str, bool)> = docs
            .iter()
            .flat_map(|d| d.tokens())
            .map(|t| (t.stem.as_str(), t.is_stopword))
            .collect();
        lexicon.sort_unstable();
        lexicon.dedup();
        let sentence_count: usize = docs.iter().map(|d| d.sentences.len()).sum();
        let sentinels = u32::try_from(sentence_count).expect("sentence count exceeds u32");
        let term_id: HashMap<(&str, bool), u32> = lexicon
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, sentinels + i as u32))
            .collect();

        let mut ids = Vec::new();
        let mut surfaces = Vec::new();
        for (sentinel, sentence) in (0u32..).zip(docs.iter().flat_map(|d| &d.sentences)) {
            for tok in sentence {
                ids.push(term_id[&(tok.stem.as_str(), tok.is_stopword)]);
                surfaces.push(tok.surface.as_str());
            }
            ids.push(sentinel);
            surfaces.push("");
        }
        TokenStream {
            ids,
            sentinels,
            surfaces,
            lexicon,
        }
    }

    pub fn is_sentinel(&self, id: u32) -> bool {
        id < self.sentinels
    }

    fn entry(&self, id: u32) -> (&'a str, bool) {
        self.lexicon[(id - self.sentinels) as usize]
    }

    pub fn is_stop(&self, id: u32) -> bool {
        self.entry(id).1
    }

    /// Token before `pos` within its sentence, if any.
    fn left_of(&self, pos: usize) -> Option<u32> {
        let prev = *self.ids.get(pos.checked_sub(1)?)?;
        (!self.is_sentinel(prev)).then_some(prev)
    }
}

/// Finds every frequent complete phrase, trimmed of stop words at both ends.
///
/// A phrase is kept when its untrimmed complete form occurs more than
/// `threshold` times, and the trimmed result is non-empty and at most
/// `max_len` tokens long. The reported count is the number of start
/// positions of the trimmed phrase.
pub fn discover_frequent_complete_phrases(
    docs: &[PreprocessedDocument],
    threshold: usize,
    max_len: usize,
) -> Vec<Phrase> {
    let stream = TokenStream::new(docs);
    let ids = &stream.ids;
    let n = ids.len();
    if n == 0 {
        return Vec::new();
    }
    let sa = SuffixArray::build(ids);

    // breaks[x] counts suffix-array slots in 1..=x whose left context differs
    // from the previous slot's (a missing left context differs from everything)
    let mut breaks = vec![0usize; n];
    for x in 1..n {
        let a = stream.left_of(sa.sa[x - 1]);
        let b = stream.left_of(sa.sa[x]);
        let differs = a.is_none() || b.is_none() || a != b;
        breaks[x] = breaks[x - 1] + usize::from(differs);
    }

    let mut found: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
    let mut accept = |start: usize, len: usize| {
        let raw = &ids[start..start + len];
        let first = raw.iter().position(|&t| !stream.is_stop(t));
        let last = raw.iter().rposition(|&t| !stream.is_stop(t));
        if let (Some(f), Some(l)) = (first, last) {
            if l + 1 - f <= max_len {
                found.insert(raw[f..=l].to_vec(), ());
            }
        }
    };

    // lcp-intervals via the usual bottom-up stack walk
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)]; // (lcp, left bound)
    for x in 1..=n {
        let cur = if x < n { sa.lcp[x] } else { 0 };
        let mut lb = x - 1;
        while cur < stack.last().unwrap().0 {
            let (depth, left) = stack.pop().unwrap();
            let right = x - 1;
            let count = right - left + 1;
            let left_uniform = breaks[right] == breaks[left];
            if count > threshold && !left_uniform {
                accept(sa.sa[left], depth);
            }
            lb = left;
        }
        if cur > stack.last().unwrap().0 {
            stack.push((cur, lb));
        }
    }

    // With a zero threshold, sentences that occur exactly once are complete too.
    if threshold == 0 {
        for x in 0..n {
            let start = sa.sa[x];
            if stream.left_of(start).is_some() || stream.is_sentinel(ids[start]) {
                continue;
            }
            let len = ids[start..]
                .iter()
                .position(|&t| stream.is_sentinel(t))
                .expect("every sentence ends with a sentinel");
            let shared = sa.lcp[x].max(sa.lcp.get(x + 1).copied().unwrap_or(0));
            if len > shared {
                accept(start, len);
            }
        }
    }

    found
        .into_keys()
        .map(|pattern| {
            let range = sa.find(ids, &pattern);
            let mut surfaces: HashMap<String, usize> = HashMap::new();
            for &pos in &sa.sa[range.clone()] {
                let text = stream.surfaces[pos..pos + pattern.len()].join(" ");
                *surfaces.entry(text).or_default() += 1;
            }
            let surface_form = surfaces
                .into_iter()
                .min_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)))
                .map(|(s, _)| s)
                .unwrap_or_default();
            let (terms, stopword_mask) = pattern
                .iter()
                .map(|&id| {
                    let (stem, stop) = stream.entry(id);
                    (stem.to_string(), stop)
                })
                .unzip();
            Phrase {
                terms,
                stopword_mask,
                occurrence_count: range.len(),
                surface_form,
            }
        })
        .collect()
}
