use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";
pub const UNK: &str = "<unk>";

/// Training corpora smaller than this get a warning.
const RECOMMENDED_SENTENCES: usize = 100;

/// A scorer that assigns each token of a text a negative log-likelihood.
pub trait LanguageModel: Send + Sync {
    /// Natural-log negative log-likelihood of every scored token, in order.
    fn token_nlls(&self, text: &str) -> Result<Vec<f64>>;
}

/// Every token (and the end marker) has probability `1 / vocab_size`.
#[derive(Clone, Copy, Debug)]
pub struct UniformLm {
    pub vocab_size: usize,
}

impl LanguageModel for UniformLm {
    fn token_nlls(&self, text: &str) -> Result<Vec<f64>> {
        let n = text.split_whitespace().count();
        if n == 0 {
            return Err(Error::Empty("cannot score empty text".into()));
        }
        Ok(vec![(self.vocab_size as f64).ln(); n + 1])
    }
}

/// Counts for one n-gram order: `context -> (word -> count)`.
#[derive(Clone, Debug, Default, PartialEq)]
struct Level {
    table: HashMap<Vec<u32>, HashMap<u32, f64>>,
    /// `context -> (total count, distinct followers)`.
    totals: HashMap<Vec<u32>, (f64, f64)>,
}

impl Level {
    fn add(&mut self, context: &[u32], word: u32, count: f64) {
        *self
            .table
            .entry(context.to_vec())
            .or_default()
            .entry(word)
            .or_insert(0.0) += count;
    }

    fn finish(&mut self) {
        self.totals = self
            .table
            .iter()
            .map(|(ctx, followers)| (ctx.clone(), (followers.values().sum(), followers.len() as f64)))
            .collect();
    }
}

/// Interpolated Kneser-Ney n-gram model.
///
/// Sentences are padded with `order - 1` copies of `<s>` and closed with
/// `</s>`. Word types seen once in training are replaced by `<unk>`, as are
/// unseen words at scoring time. The highest order uses raw counts; lower
/// orders use continuation counts (number of distinct left extensions).
/// The unigram level interpolates with a uniform distribution over the
/// predictable vocabulary: known words, `<unk>` and `</s>`.
#[derive(Clone, Debug, PartialEq)]
pub struct NgramLm {
    order: usize,
    discount: f64,
    ids: HashMap<String, u32>,
    words: Vec<String>,
    /// `levels[k]` holds (k+1)-grams.
    levels: Vec<Level>,
}

impl NgramLm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    /// Predictable vocabulary: every id except `<s>`.
    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str).filter(|w| *w != BOS)
    }

    pub fn vocab_size(&self) -> usize {
        self.words.len() - 1
    }

    fn id(&self, word: &str) -> u32 {
        self.ids
            .get(word)
            .or_else(|| self.ids.get(UNK))
            .copied()
            .expect("<unk> is always present")
    }

    fn encode(&self, text: &str) -> Vec<u32> {
        let bos = self.id(BOS);
        let mut ids = vec![bos; self.order - 1];
        ids.extend(text.split_whitespace().map(|w| self.id(w)));
        ids.push(self.id(EOS));
        ids
    }

    /// `P(word | context)`, using the last `order - 1` context tokens.
    pub fn probability(&self, context: &[&str], word: &str) -> f64 {
        let ids: Vec<u32> = context.iter().map(|w| self.id(w)).collect();
        self.prob_ids(&ids, self.id(word))
    }

    fn prob_ids(&self, context: &[u32], word: u32) -> f64 {
        let keep = context.len().min(self.order - 1);
        self.prob_level(&context[context.len() - keep..], word)
    }

    fn prob_level(&self, context: &[u32], word: u32) -> f64 {
        let level = &self.levels[context.len()];
        let lower = if context.is_empty() {
            1.0 / self.vocab_size() as f64
        } else {
            self.prob_level(&context[1..], word)
        };
        match level.totals.get(context) {
            Some(&(total, types)) if total > 0.0 => {
                let count = level.table[context].get(&word).copied().unwrap_or(0.0);
                (count - self.discount).max(0.0) / total + self.discount * types / total * lower
            }
            _ => lower,
        }
    }
}

impl LanguageModel for NgramLm {
    fn token_nlls(&self, text: &str) -> Result<Vec<f64>> {
        if text.split_whitespace().next().is_none() {
            return Err(Error::Empty("cannot score empty text".into()));
        }
        let ids = self.encode(text);
        let h = self.order - 1;
        Ok((h..ids.len())
            .map(|i| -self.prob_ids(&ids[i - h..i], ids[i]).ln())
            .collect())
    }
}

/// Train an interpolated Kneser-Ney model of the given order.
pub fn train_ngram_lm<S: AsRef<str>>(corpus: &[S], order: usize, discount: f64) -> Result<NgramLm> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!(
            "n-gram order must be at least 2, got {order}"
        )));
    }
    if !(discount > 0.0 && discount < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "discount must lie in (0, 1), got {discount}"
        )));
    }
    let sentences: Vec<Vec<&str>> = corpus
        .iter()
        .map(|s| s.as_ref().split_whitespace().collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect();
    if sentences.is_empty() {
        return Err(Error::Empty("language model training corpus".into()));
    }
    if sentences.len() < RECOMMENDED_SENTENCES {
        log::warn!(
            "training a language model on {} sentences; at least {RECOMMENDED_SENTENCES} are recommended",
            sentences.len()
        );
    }

    let mut freq: BTreeMap<&str, usize> = BTreeMap::new();
    for w in sentences.iter().flatten() {
        *freq.entry(w).or_insert(0) += 1;
    }
    let mut words: Vec<String> = vec![BOS.into(), EOS.into(), UNK.into()];
    words.extend(
        freq.into_iter()
            .filter(|&(w, c)| c > 1 && ![BOS, EOS, UNK].contains(&w))
            .map(|(w, _)| w.to_string()),
    );
    let ids: HashMap<String, u32> = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
    let mut lm = NgramLm {
        order,
        discount,
        ids,
        words,
        levels: vec![Level::default(); order],
    };

    let mut top: HashMap<Vec<u32>, f64> = HashMap::new();
    for sentence in &sentences {
        let ids = lm.encode(&sentence.join(" "));
        for gram in ids.windows(order) {
            *top.entry(gram.to_vec()).or_insert(0.0) += 1.0;
        }
    }
    // Continuation counts: each distinct (k+1)-gram adds one to its k-gram suffix.
    let mut grams: Vec<Vec<u32>> = top.keys().cloned().collect();
    for (gram, count) in &top {
        lm.levels[order - 1].add(&gram[..order - 1], gram[order - 1], *count);
    }
    for k in (1..order).rev() {
        let mut suffixes: Vec<Vec<u32>> = Vec::new();
        for gram in &grams {
            let suffix = &gram[1..];
            lm.levels[k - 1].add(&suffix[..k - 1], suffix[k - 1], 1.0);
            suffixes.push(suffix.to_vec());
        }
        suffixes.sort_unstable();
        suffixes.dedup();
        grams = suffixes;
    }
    for level in &mut lm.levels {
        level.finish();
    }
    Ok(lm)
}

/// `exp` of the mean per-token negative log-likelihood.
pub fn perplexity(lm: &dyn LanguageModel, text: &str) -> Result<f64> {
    let nlls = lm.token_nlls(text)?;
    if nlls.is_empty() {
        return Err(Error::Empty("scorer returned no tokens".into()));
    }
    Ok((nlls.iter().sum::<f64>() / nlls.len() as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus() -> Vec<&'static str> {
        vec![
            "the cat sat on the mat",
            "the dog sat on the rug",
            "a cat saw the dog",
            "the cat ate",
            "a dog ate the food",
        ]
    }

    #[test]
    fn uniform_perplexity_is_vocab_size() {
        let lm = UniformLm { vocab_size: 17 };
        assert!((perplexity(&lm, "any text at all").unwrap() - 17.0).abs() < 1e-9);
    }

    #[test]
    fn distributions_sum_to_one() {
        let lm = train_ngram_lm(&corpus(), 3, 0.75).unwrap();
        let vocab: Vec<&str> = lm.vocabulary().collect();
        for ctx in [[BOS, BOS], [BOS, "the"], ["the", "cat"], ["zzz", "qqq"], ["sat", "on"]] {
            let total: f64 = vocab.iter().map(|w| lm.probability(&ctx, w)).sum();
            assert!((total - 1.0).abs() < 1e-9, "{ctx:?}: {total}");
        }
    }

    #[test]
    fn singletons_map_to_unk() {
        let lm = train_ngram_lm(&corpus(), 2, 0.75).unwrap();
        assert!(lm.vocabulary().any(|w| w == UNK));
        assert!(!lm.vocabulary().any(|w| w == "mat"));
        assert_eq!(lm.probability(&["the"], "mat"), lm.probability(&["the"], "xyz"));
    }

    #[test]
    fn deterministic_training() {
        assert_eq!(
            train_ngram_lm(&corpus(), 3, 0.75).unwrap(),
            train_ngram_lm(&corpus(), 3, 0.75).unwrap()
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(train_ngram_lm::<&str>(&[], 3, 0.75).is_err());
        assert!(train_ngram_lm(&corpus(), 1, 0.75).is_err());
        assert!(train_ngram_lm(&corpus(), 3, 1.5).is_err());
        let lm = train_ngram_lm(&corpus(), 3, 0.75).unwrap();
        assert!(perplexity(&lm, "  ").is_err());
    }
}
