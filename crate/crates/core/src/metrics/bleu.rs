use std::collections::HashMap;

use crate::error::{Error, Result};

use super::EvalPair;

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    for gram in tokens.windows(n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

/// Clipped n-gram matches and the number of hypothesis n-grams.
fn modified_precision(hyp: &[&str], reference: &[&str], n: usize) -> (usize, usize) {
    let hyp_counts = ngram_counts(hyp, n);
    let ref_counts = ngram_counts(reference, n);
    let matched = hyp_counts
        .iter()
        .map(|(gram, &c)| c.min(ref_counts.get(gram).copied().unwrap_or(0)))
        .sum();
    let total = hyp.len().saturating_sub(n - 1);
    (matched, total)
}

/// Corpus BLEU with uniform weights over 1..=`max_n` and no smoothing.
///
/// Counts are pooled over the corpus before taking the geometric mean. Any
/// pooled precision of zero gives 0. An order for which no hypothesis is
/// long enough has nothing to contradict it and counts as precision 1.
pub fn corpus_bleu(pairs: &[EvalPair], max_n: usize) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Empty("BLEU needs at least one pair".into()));
    }
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let mut matched = vec![0usize; max_n];
    let mut totals = vec![0usize; max_n];
    let (mut hyp_len, mut ref_len) = (0usize, 0usize);
    for pair in pairs {
        let hyp: Vec<&str> = pair.hypothesis.split_whitespace().collect();
        let reference: Vec<&str> = pair.reference.split_whitespace().collect();
        hyp_len += hyp.len();
        ref_len += reference.len();
        for n in 1..=max_n {
            let (m, t) = modified_precision(&hyp, &reference, n);
            matched[n - 1] += m;
            totals[n - 1] += t;
        }
    }
    if hyp_len == 0 {
        return Ok(0.0);
    }
    if let Some(n) = (0..max_n).find(|&n| matched[n] == 0 && totals[n] > 0) {
        log::warn!("corpus BLEU: no matching {}-grams, score is 0", n + 1);
        return Ok(0.0);
    }
    let log_precision: f64 = matched
        .iter()
        .zip(&totals)
        .filter(|(_, &t)| t > 0)
        .map(|(&m, &t)| (m as f64 / t as f64).ln())
        .sum::<f64>()
        / max_n as f64;
    let brevity = if hyp_len > ref_len {
        1.0
    } else {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    };
    Ok(brevity * log_precision.exp())
}
