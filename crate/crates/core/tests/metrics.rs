//! Metric values checked against hand-computed oracles.

use std::collections::HashMap;

use pov::metrics::{
    corpus_bleu, cosine_similarity, evaluate, make_pairs, meteor, perplexity, read_paired_files, read_tsv_pairs,
    relative_perplexity, rouge_l_f1, train_ngram_lm, Embeddings, EvalPair, LanguageModel, UniformLm,
};
use pov::{Error, Result};

const TOL: f64 = 1e-6;

fn pair(h: &str, r: &str) -> EvalPair {
    EvalPair::new(h, r).unwrap()
}

#[test]
fn bleu_brevity_case() {
    // p1 = p2 = p3 = 1, c = 3, r = 4
    let expected = (1.0f64 - 4.0 / 3.0).exp();
    let got = corpus_bleu(&[pair("the cat sat", "the cat sat down")], 3).unwrap();
    assert!((got - expected).abs() < TOL);
    assert!((got - 0.716_531_3).abs() < TOL);
}

#[test]
fn bleu_pools_counts_over_the_corpus() {
    // Pair 1: hyp `a b c d`, ref `a b c e` -> unigrams 3/4, bigrams 2/3.
    // Pair 2: hyp `x y`, ref `x y` -> unigrams 2/2, bigrams 1/1.
    // Pooled: p1 = 5/6, p2 = 3/4; c = 6 = r, so no brevity penalty.
    let pairs = [pair("a b c d", "a b c e"), pair("x y", "x y")];
    let expected = ((5.0f64 / 6.0).ln() / 2.0 + (3.0f64 / 4.0).ln() / 2.0).exp();
    assert!((corpus_bleu(&pairs, 2).unwrap() - expected).abs() < TOL);
}

#[test]
fn meteor_identity() {
    let expected = 1.0 - 0.5 * (1.0f64 / 4.0).powi(3);
    let got = meteor("we are on our way", "we are on our way").unwrap();
    // five tokens here; the four-token case below is the documented one
    assert!((got - (1.0 - 0.5 * (1.0f64 / 5.0).powi(3))).abs() < TOL);
    assert!((meteor("see you at noon", "see you at noon").unwrap() - expected).abs() < TOL);
    assert!((expected - 0.992_187_5).abs() < 1e-12);
}

#[test]
fn meteor_fragmentation_and_stems() {
    // All four words match in two chunks: penalty 0.5 * (2/4)^3.
    assert!((meteor("a b c d", "c d a b").unwrap() - (1.0 - 0.5 * 0.125)).abs() < TOL);
    // `runs`/`run` match by stem: m = 3 in one chunk.
    let expected = 1.0 - 0.5 * (1.0f64 / 3.0).powi(3);
    assert!((meteor("he runs fast", "he run fast").unwrap() - expected).abs() < TOL);
    // Partial match: m = 2 of 3 hyp / 4 ref words, one chunk.
    let (p, r) = (2.0 / 3.0, 2.0 / 4.0);
    let f = p * r / (0.9 * p + 0.1 * r);
    let expected = f * (1.0 - 0.5 * (1.0f64 / 2.0).powi(3));
    assert!((meteor("the cat sat", "the cat lay down").unwrap() - expected).abs() < TOL);
}

#[test]
fn rouge_l() {
    assert!((rouge_l_f1("a c d", "a b c d").unwrap() - 6.0 / 7.0).abs() < TOL);
    assert_eq!(rouge_l_f1("a b", "a b").unwrap(), 1.0);
    assert_eq!(rouge_l_f1("a b", "c d").unwrap(), 0.0);
}

#[test]
fn cosine() {
    let e = Embeddings::parse("a 1 0\nb 0 1\n").unwrap();
    assert!((cosine_similarity("a b", "a", &e).unwrap() - 1.0 / 2f64.sqrt()).abs() < TOL);
    assert!(cosine_similarity("a", "b", &e).unwrap().abs() < TOL);
    assert!((cosine_similarity("a b a", "a b a", &e).unwrap() - 1.0).abs() < 1e-9);
}

/// Unigram model with a fixed table and no end-of-sentence token.
struct Unigram(HashMap<&'static str, f64>);

impl LanguageModel for Unigram {
    fn token_nlls(&self, text: &str) -> Result<Vec<f64>> {
        let nlls: Vec<f64> = text.split_whitespace().map(|w| -self.0[w].ln()).collect();
        if nlls.is_empty() {
            return Err(Error::Empty("text".into()));
        }
        Ok(nlls)
    }
}

#[test]
fn relative_perplexity_with_a_unigram_model() {
    let lm = Unigram(HashMap::from([("a", 0.5), ("b", 0.25), ("c", 0.25)]));
    // ppl(a a) = 2, ppl(b c) = 4, ppl(b) = 4, ppl(a) = 2
    assert!((perplexity(&lm, "a a").unwrap() - 2.0).abs() < TOL);
    assert!((perplexity(&lm, "b c").unwrap() - 4.0).abs() < TOL);
    let pairs = [pair("a a", "b c"), pair("b", "a")];
    let expected = (4.0 / 2.0 + 2.0 / 4.0) / 2.0;
    assert!((relative_perplexity(&pairs, &lm).unwrap() - expected).abs() < TOL);
}

#[test]
fn kneser_ney_on_a_single_repeated_sentence() {
    let d = 0.75;
    let corpus = vec!["the cat sat"; 100];
    let lm = train_ngram_lm(&corpus, 3, d).unwrap();
    // Every predicted token (cat, sat, </s> and the first `the`) sees the
    // same counts: one trigram type with count 100 under its context, one
    // left extension for the bigram, one for the unigram. Four bigram types
    // feed the unigram level; the vocabulary is the three words, <unk> and
    // </s>.
    let p1 = (1.0 - d) / 4.0 + d / 5.0;
    let p2 = (1.0 - d) + d * p1;
    let p3 = (100.0 - d) / 100.0 + d / 100.0 * p2;
    let expected = 1.0 / p3;
    let got = perplexity(&lm, "the cat sat").unwrap();
    assert!((got - expected).abs() < TOL, "{got} vs {expected}");
    assert!(got > 1.0 && got < 1.0 + d / 100.0 * 2.0);
    assert_eq!(got, perplexity(&lm, "the cat sat").unwrap());
}

#[test]
fn uniform_model_perplexity() {
    let lm = UniformLm { vocab_size: 42 };
    for text in ["a", "some longer text here"] {
        assert!((perplexity(&lm, text).unwrap() - 42.0).abs() < 1e-9);
    }
}

#[test]
fn evaluate_self_pairs() {
    let texts = [
        "hi @CN@, @SCN@ says dinner is ready",
        "@SCN@ asks if you are coming for dinner",
    ];
    let pairs = make_pairs(&texts, &texts).unwrap();
    let lm = train_ngram_lm(&texts, 3, 0.75).unwrap();
    let emb = Embeddings::parse("dinner 1 0\nready 0 1\ncoming 1 1\n").unwrap();
    let report = evaluate(&pairs, &lm, Some(&emb)).unwrap();
    assert_eq!(report.bleu, 1.0);
    assert_eq!(report.rouge_l_f1_mean, 1.0);
    assert_eq!(report.relative_perplexity_mean, 1.0);
    let meteor_identity = |n: f64| 1.0 - 0.5 * (1.0 / n).powi(3);
    let expected = (meteor_identity(7.0) + meteor_identity(8.0)) / 2.0;
    assert!((report.meteor_mean - expected).abs() < TOL);
    assert!((report.cosine_mean.unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(report.n_samples, 2);
}

#[test]
fn hypothesis_files() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("pairs.tsv");
    std::fs::write(&tsv, "a b\ta b\n@SCN@ says hi\tjohn says hi\n").unwrap();
    let pairs = read_tsv_pairs(&tsv).unwrap();
    assert_eq!(pairs[1].hypothesis, pairs[1].reference);

    let hyp = dir.path().join("hyp.txt");
    let refs = dir.path().join("ref.txt");
    std::fs::write(&hyp, "a\nb\nc\n").unwrap();
    std::fs::write(&refs, "a\nb\n").unwrap();
    let err = read_paired_files(&hyp, &refs).unwrap_err();
    assert!(matches!(
        err,
        Error::LineCountMismatch {
            hypotheses: 3,
            references: 2
        }
    ));

    std::fs::write(&tsv, "only one field\n").unwrap();
    assert!(matches!(read_tsv_pairs(&tsv), Err(Error::FieldCount { line: 1, .. })));
}
