use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::MessageType;
use crate::corpus::{CONTACT_PLACEHOLDER, SOURCE_PLACEHOLDER};
use crate::error::{Error, Result};
use crate::syntax::lexicon::{parse_word_list, Lexicon};

/// Longest n-gram used as a feature.
pub const MAX_NGRAM: usize = 5;

const DEFAULT_STOP_WORDS: &str = include_str!("../../data/stop_words.txt");

/// Tokens removed before n-gram extraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopWords(BTreeSet<String>);

impl StopWords {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        StopWords(words.into_iter().map(Into::into).collect())
    }

    /// One token per line, `#` comments.
    pub fn parse(list: &str) -> Self {
        StopWords::new(parse_word_list(list))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(StopWords::parse(&text))
    }

    /// Add single-token contact names, skipping names that are also
    /// auxiliaries or wh-words (`will`, `may`): those carry the question
    /// cues the classifier needs.
    pub fn with_names(mut self, lexicon: &Lexicon) -> Self {
        for name in lexicon.names() {
            if !name.contains(' ') && lexicon.auxiliary(name).is_none() && !lexicon.is_wh(name) {
                self.0.insert(name.to_string());
            }
        }
        self
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for StopWords {
    /// Articles, prepositions and fillers from the bundled list, the
    /// bundled first names, and both placeholders.
    fn default() -> Self {
        let mut words = StopWords::parse(DEFAULT_STOP_WORDS).with_names(&Lexicon::default());
        words.0.insert(CONTACT_PLACEHOLDER.to_string());
        words.0.insert(SOURCE_PLACEHOLDER.to_string());
        words
    }
}

/// All 1..=`max_n`-grams of `tokens`, space-joined, in order of appearance.
pub fn ngrams<S: AsRef<str>>(tokens: &[S], max_n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 1..=max_n.min(tokens.len()) {
        for window in tokens.windows(n) {
            let parts: Vec<&str> = window.iter().map(AsRef::as_ref).collect();
            out.push(parts.join(" "));
        }
    }
    out
}

/// Sparse vector as (feature index, value) pairs in increasing index order.
pub type SparseVector = Vec<(usize, f64)>;

/// TF-IDF vocabulary and weights.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FeatureSpace {
    /// N-gram for each feature index.
    pub vocabulary: Vec<String>,
    pub idf: Vec<f64>,
    pub stop_words: StopWords,
    /// N-grams whose IDF falls below this are dropped before ranking.
    pub min_idf_threshold: f64,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl PartialEq for FeatureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.vocabulary == other.vocabulary
            && self
                .idf
                .iter()
                .map(|x| x.to_bits())
                .eq(other.idf.iter().map(|x| x.to_bits()))
            && self.stop_words == other.stop_words
            && self.min_idf_threshold.to_bits() == other.min_idf_threshold.to_bits()
    }
}

impl FeatureSpace {
    pub fn from_parts(
        vocabulary: Vec<String>,
        idf: Vec<f64>,
        stop_words: StopWords,
        min_idf_threshold: f64,
    ) -> Result<Self> {
        if vocabulary.len() != idf.len() {
            return Err(Error::Model(format!(
                "{} vocabulary entries but {} idf weights",
                vocabulary.len(),
                idf.len()
            )));
        }
        if let Some(w) = idf.iter().find(|w| w.is_nan() || **w <= 0.0) {
            return Err(Error::Model(format!("non-positive idf weight {w}")));
        }
        let index: HashMap<String, usize> = vocabulary.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        if index.len() != vocabulary.len() {
            return Err(Error::Model("duplicate vocabulary entry".into()));
        }
        Ok(FeatureSpace {
            vocabulary,
            idf,
            stop_words,
            min_idf_threshold,
            index,
        })
    }

    pub(crate) fn rebuild_index(&mut self) {
        self.index = self
            .vocabulary
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
    }

    pub fn len(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocabulary.is_empty()
    }

    pub fn index_of(&self, ngram: &str) -> Option<usize> {
        self.index.get(ngram).copied()
    }

    /// Stop-word-filtered whitespace tokens of a normalized text.
    pub fn tokens<'a>(&self, text: &'a str) -> Vec<&'a str> {
        filtered_tokens(text, &self.stop_words)
    }
}

fn filtered_tokens<'a>(text: &'a str, stop_words: &StopWords) -> Vec<&'a str> {
    text.split_whitespace()
        .map(|t| t.trim_matches(|c: char| matches!(c, ',' | ';' | ':')))
        .filter(|t| !t.is_empty() && !stop_words.contains(t))
        .collect()
}

/// Smoothed inverse document frequency: `ln((1 + n) / (1 + df)) + 1`.
pub(crate) fn smoothed_idf(n_docs: usize, df: usize) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

/// Extract 1-5-grams from the corpus and keep the `max_features` with the
/// largest summed TF-IDF (ties broken lexicographically). Retained n-grams
/// are indexed in lexicographic order.
pub fn build_feature_space(
    corpus: &[(String, MessageType)],
    stop_words: StopWords,
    max_features: usize,
    min_idf_threshold: f64,
) -> Result<FeatureSpace> {
    if corpus.is_empty() {
        return Err(Error::Empty("feature corpus".into()));
    }
    if max_features < 1 {
        return Err(Error::InvalidArgument("max_features must be at least 1".into()));
    }

    let mut term_freq: HashMap<String, usize> = HashMap::new();
    let mut doc_freq: HashMap<String, usize> = HashMap::new();
    for (text, _) in corpus {
        let grams = ngrams(&filtered_tokens(text, &stop_words), MAX_NGRAM);
        let mut seen = BTreeSet::new();
        for gram in grams {
            *term_freq.entry(gram.clone()).or_default() += 1;
            seen.insert(gram);
        }
        for gram in seen {
            *doc_freq.entry(gram).or_default() += 1;
        }
    }

    let n_docs = corpus.len();
    let mut ranked: Vec<(f64, String, f64)> = term_freq
        .into_iter()
        .map(|(gram, tf)| {
            let idf = smoothed_idf(n_docs, doc_freq[&gram]);
            (tf as f64 * idf, gram, idf)
        })
        .filter(|(_, _, idf)| *idf >= min_idf_threshold)
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    ranked.truncate(max_features);

    let kept: BTreeMap<String, f64> = ranked.into_iter().map(|(_, g, idf)| (g, idf)).collect();
    let (vocabulary, idf) = kept.into_iter().unzip();
    FeatureSpace::from_parts(vocabulary, idf, stop_words, min_idf_threshold)
}

/// Raw-count TF times IDF over in-vocabulary n-grams, L2-normalized.
/// Returns an empty (all-zero) vector when nothing matches.
pub fn featurize(text: &str, fs: &FeatureSpace) -> SparseVector {
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for gram in ngrams(&fs.tokens(text), MAX_NGRAM) {
        if let Some(i) = fs.index_of(&gram) {
            *counts.entry(i).or_default() += 1.0;
        }
    }
    let mut vector: SparseVector = counts.into_iter().map(|(i, tf)| (i, tf * fs.idf[i])).collect();
    let norm = vector.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (_, v) in &mut vector {
            *v /= norm;
        }
    }
    vector
}
