//! Automatic evaluation: corpus BLEU, METEOR, ROUGE-L, embedding cosine
//! similarity and relative perplexity.
//!
//! All scoring tokenizes on whitespace after [`normalize`] and placeholder
//! substitution (`@CN@` becomes `bob`, `@SCN@` becomes `john`), identically
//! for hypothesis and reference.

mod bleu;
mod embeddings;
mod lm;
mod meteor;
mod rouge;

use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{normalize, substitute_placeholders};
use crate::error::{Error, Result};

pub use bleu::corpus_bleu;
pub use embeddings::{cosine_similarity, Embeddings};
pub use lm::{perplexity, train_ngram_lm, LanguageModel, NgramLm, UniformLm, BOS, EOS, UNK};
pub use meteor::{align, meteor, meteor_with, MatchStage, DEFAULT_STAGES};
pub use rouge::rouge_l_f1;

/// Names substituted for the placeholders before scoring.
pub const EVAL_CONTACT: &str = "bob";
pub const EVAL_SOURCE: &str = "john";

/// Normalize and substitute placeholders, as done for every scored text.
pub fn prepare_text(text: &str) -> String {
    normalize(&substitute_placeholders(&normalize(text), EVAL_CONTACT, EVAL_SOURCE))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalPair {
    pub hypothesis: String,
    pub reference: String,
}

impl EvalPair {
    /// Normalize both sides and substitute placeholders.
    pub fn new(hypothesis: impl AsRef<str>, reference: impl AsRef<str>) -> Result<Self> {
        let pair = EvalPair {
            hypothesis: prepare_text(hypothesis.as_ref()),
            reference: prepare_text(reference.as_ref()),
        };
        pair.check().map_err(Error::Empty)?;
        Ok(pair)
    }

    fn check(&self) -> std::result::Result<(), String> {
        if self.hypothesis.trim().is_empty() {
            return Err("hypothesis is empty".into());
        }
        if self.reference.trim().is_empty() {
            return Err("reference is empty".into());
        }
        Ok(())
    }
}

/// Build pairs from raw lines, naming the first empty sample by index.
pub fn make_pairs<H, R>(hypotheses: &[H], references: &[R]) -> Result<Vec<EvalPair>>
where
    H: AsRef<str>,
    R: AsRef<str>,
{
    if hypotheses.len() != references.len() {
        return Err(Error::LineCountMismatch {
            hypotheses: hypotheses.len(),
            references: references.len(),
        });
    }
    hypotheses
        .iter()
        .zip(references)
        .enumerate()
        .map(|(index, (h, r))| {
            EvalPair::new(h, r).map_err(|e| Error::Sample {
                index,
                message: e.to_string(),
            })
        })
        .collect()
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().map(str::to_string).collect())
}

/// Read `hypothesis<TAB>reference` lines.
pub fn read_tsv_pairs(path: impl AsRef<Path>) -> Result<Vec<EvalPair>> {
    let path = path.as_ref();
    let lines = read_lines(path)?;
    if lines.is_empty() {
        return Err(Error::Empty(format!("{} has no lines", path.display())));
    }
    let mut hyps = Vec::with_capacity(lines.len());
    let mut refs = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::FieldCount {
                path: path.into(),
                line: i + 1,
                expected: 2,
                found: fields.len(),
            });
        }
        hyps.push(fields[0]);
        refs.push(fields[1]);
    }
    make_pairs(&hyps, &refs)
}

/// Pair a hypothesis file with a reference file line by line.
pub fn read_paired_files(hypotheses: impl AsRef<Path>, references: impl AsRef<Path>) -> Result<Vec<EvalPair>> {
    let hyps = read_lines(hypotheses.as_ref())?;
    let refs = read_lines(references.as_ref())?;
    if hyps.is_empty() || refs.is_empty() {
        return Err(Error::Empty("hypothesis and reference files must not be empty".into()));
    }
    make_pairs(&hyps, &refs)
}

/// Mean of `ppl(reference) / ppl(hypothesis)` over the pairs.
pub fn relative_perplexity(pairs: &[EvalPair], lm: &dyn LanguageModel) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Empty("relative perplexity needs at least one pair".into()));
    }
    let ratios = pairs
        .par_iter()
        .enumerate()
        .map(|(index, p)| sample_ratio(lm, p, index))
        .collect::<Result<Vec<f64>>>()?;
    Ok(mean(&ratios))
}

fn sample_ratio(lm: &dyn LanguageModel, pair: &EvalPair, index: usize) -> Result<f64> {
    let wrap = |e: Error| Error::Sample {
        index,
        message: e.to_string(),
    };
    if pair.hypothesis == pair.reference {
        // Same text, same score: avoid any floating-point asymmetry.
        perplexity(lm, &pair.reference).map_err(wrap)?;
        return Ok(1.0);
    }
    let reference = perplexity(lm, &pair.reference).map_err(wrap)?;
    let hypothesis = perplexity(lm, &pair.hypothesis).map_err(wrap)?;
    Ok(reference / hypothesis)
}

/// Sequential sum in input order, so the result does not depend on
/// scheduling.
fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub bleu: f64,
    pub meteor_mean: f64,
    pub rouge_l_f1_mean: f64,
    pub relative_perplexity_mean: f64,
    pub cosine_mean: Option<f64>,
    pub n_samples: usize,
}

impl EvalReport {
    /// Single-line `key=value` record.
    pub fn to_record(&self) -> String {
        let mut out = format!(
            "n_samples={} bleu={:.6} meteor={:.6} rouge_l_f1={:.6} relative_perplexity={:.6}",
            self.n_samples, self.bleu, self.meteor_mean, self.rouge_l_f1_mean, self.relative_perplexity_mean
        );
        if let Some(c) = self.cosine_mean {
            out.push_str(&format!(" cosine={c:.6}"));
        }
        out
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22}{:>10}", "metric", "value")?;
        writeln!(f, "{:<22}{:>10.4}", "BLEU", self.bleu)?;
        writeln!(f, "{:<22}{:>10.4}", "METEOR (mean)", self.meteor_mean)?;
        writeln!(f, "{:<22}{:>10.4}", "ROUGE-L F1 (mean)", self.rouge_l_f1_mean)?;
        writeln!(
            f,
            "{:<22}{:>10.4}",
            "relative perplexity", self.relative_perplexity_mean
        )?;
        if let Some(c) = self.cosine_mean {
            writeln!(f, "{:<22}{:>10.4}", "cosine (mean)", c)?;
        }
        write!(f, "{:<22}{:>10}", "samples", self.n_samples)
    }
}

struct SampleScores {
    meteor: f64,
    rouge: f64,
    ratio: f64,
    cosine: Option<f64>,
}

/// Score every metric over `pairs`. Per-sample work runs in parallel and is
/// reduced in input order.
pub fn evaluate(pairs: &[EvalPair], lm: &dyn LanguageModel, embeddings: Option<&Embeddings>) -> Result<EvalReport> {
    if pairs.is_empty() {
        return Err(Error::Empty("evaluation needs at least one pair".into()));
    }
    if let Some((index, message)) = pairs
        .iter()
        .enumerate()
        .find_map(|(i, p)| p.check().err().map(|m| (i, m)))
    {
        return Err(Error::Sample { index, message });
    }
    let bleu = corpus_bleu(pairs, 4)?;
    let scores = pairs
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let wrap = |e: Error| Error::Sample {
                index,
                message: e.to_string(),
            };
            Ok(SampleScores {
                meteor: meteor(&p.hypothesis, &p.reference).map_err(wrap)?,
                rouge: rouge_l_f1(&p.hypothesis, &p.reference).map_err(wrap)?,
                ratio: sample_ratio(lm, p, index)?,
                cosine: embeddings
                    .map(|e| cosine_similarity(&p.hypothesis, &p.reference, e))
                    .transpose()
                    .map_err(wrap)?,
            })
        })
        .collect::<Result<Vec<SampleScores>>>()?;
    let collect = |f: fn(&SampleScores) -> f64| mean(&scores.iter().map(f).collect::<Vec<_>>());
    Ok(EvalReport {
        bleu,
        meteor_mean: collect(|s| s.meteor),
        rouge_l_f1_mean: collect(|s| s.rouge),
        relative_perplexity_mean: collect(|s| s.ratio),
        cosine_mean: embeddings.map(|_| collect(|s| s.cosine.unwrap_or(0.0))),
        n_samples: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_substituted() {
        let p = EvalPair::new("hi @CN@, @SCN@ says hi.", "Hi @cn@,  @scn@ says hi").unwrap();
        assert_eq!(p.hypothesis, "hi bob, john says hi");
        assert_eq!(p.hypothesis, p.reference);
    }

    #[test]
    fn self_pairs_score_identity() {
        let pairs = make_pairs(&["a b c d", "the cat sat"], &["a b c d", "the cat sat"]).unwrap();
        let report = evaluate(&pairs, &UniformLm { vocab_size: 10 }, None).unwrap();
        assert_eq!(report.bleu, 1.0);
        assert_eq!(report.rouge_l_f1_mean, 1.0);
        assert_eq!(report.relative_perplexity_mean, 1.0);
        assert!(report.to_record().starts_with("n_samples=2 bleu=1.000000"));
    }

    #[test]
    fn empty_sample_is_named() {
        let err = make_pairs(&["a", ""], &["a", "b"]).unwrap_err();
        assert!(matches!(err, Error::Sample { index: 1, .. }));
        let bad = vec![
            EvalPair::new("a", "a").unwrap(),
            EvalPair {
                hypothesis: String::new(),
                reference: "b".into(),
            },
        ];
        let err = evaluate(&bad, &UniformLm { vocab_size: 3 }, None).unwrap_err();
        assert!(matches!(err, Error::Sample { index: 1, .. }));
    }

    #[test]
    fn line_count_mismatch_names_both_counts() {
        let err = make_pairs(&["a", "b"], &["a"]).unwrap_err();
        assert!(err.to_string().contains("2 hypotheses but 1 references"));
    }
}
