//! Property tests for the evaluation metrics and the n-gram model.

use proptest::prelude::*;

use pov::metrics::{
    corpus_bleu, evaluate, meteor, relative_perplexity, rouge_l_f1, train_ngram_lm, EvalPair, UniformLm, BOS, EOS, UNK,
};

fn sentence(vocab: &'static [&'static str], max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vocab), 1..max).prop_map(|w| w.join(" "))
}

const LEFT: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const RIGHT: [&str; 6] = ["u", "v", "w", "x", "y", "z"];

fn pair() -> impl Strategy<Value = EvalPair> {
    (sentence(&LEFT, 10), sentence(&LEFT, 10)).prop_map(|(h, r)| EvalPair::new(h, r).unwrap())
}

fn pairs() -> impl Strategy<Value = Vec<EvalPair>> {
    prop::collection::vec(pair(), 1..8)
}

fn meteor_identity(n: usize) -> f64 {
    1.0 - 0.5 * (1.0 / n as f64).powi(3)
}

proptest! {
    #[test]
    fn scores_stay_in_range(p in pairs()) {
        let bleu = corpus_bleu(&p, 4).unwrap();
        prop_assert!((0.0..=1.0).contains(&bleu));
        for x in &p {
            let m = meteor(&x.hypothesis, &x.reference).unwrap();
            let r = rouge_l_f1(&x.hypothesis, &x.reference).unwrap();
            prop_assert!((0.0..=1.0).contains(&m) && (0.0..=1.0).contains(&r));
        }
    }

    #[test]
    fn self_pairs_score_identity(s in prop::collection::vec(sentence(&LEFT, 12), 1..6)) {
        let p: Vec<EvalPair> = s.iter().map(|t| EvalPair::new(t, t).unwrap()).collect();
        prop_assert_eq!(corpus_bleu(&p, 4).unwrap(), 1.0);
        for (x, t) in p.iter().zip(&s) {
            prop_assert_eq!(rouge_l_f1(&x.hypothesis, &x.reference).unwrap(), 1.0);
            let n = t.split_whitespace().count();
            prop_assert!((meteor(&x.hypothesis, &x.reference).unwrap() - meteor_identity(n)).abs() < 1e-12);
        }
        prop_assert_eq!(relative_perplexity(&p, &UniformLm { vocab_size: 7 }).unwrap(), 1.0);
        let lm = train_ngram_lm(&s, 3, 0.75).unwrap();
        prop_assert_eq!(relative_perplexity(&p, &lm).unwrap(), 1.0);
    }

    #[test]
    fn disjoint_pairs_score_zero(h in sentence(&LEFT, 10), r in sentence(&RIGHT, 10)) {
        let p = EvalPair::new(&h, &r).unwrap();
        prop_assert_eq!(corpus_bleu(std::slice::from_ref(&p), 4).unwrap(), 0.0);
        prop_assert_eq!(meteor(&h, &r).unwrap(), 0.0);
        prop_assert_eq!(rouge_l_f1(&h, &r).unwrap(), 0.0);
    }

    #[test]
    fn corpus_scores_ignore_pair_order(p in pairs(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut shuffled = p.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(corpus_bleu(&shuffled, 4).unwrap(), corpus_bleu(&p, 4).unwrap());
        let lm = UniformLm { vocab_size: 9 };
        let a = evaluate(&p, &lm, None).unwrap();
        let b = evaluate(&shuffled, &lm, None).unwrap();
        prop_assert!((a.meteor_mean - b.meteor_mean).abs() < 1e-12);
        prop_assert!((a.rouge_l_f1_mean - b.rouge_l_f1_mean).abs() < 1e-12);
    }

    #[test]
    fn evaluation_is_deterministic(p in pairs()) {
        let lm = train_ngram_lm(&p.iter().map(|x| x.reference.clone()).collect::<Vec<_>>(), 3, 0.75).unwrap();
        let a = evaluate(&p, &lm, None).unwrap();
        let b = evaluate(&p, &lm, None).unwrap();
        prop_assert_eq!(a.to_record(), b.to_record());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn appending_a_self_pair_never_lowers_bleu(p in pairs(), extra in sentence(&LEFT, 10)) {
        let hyp: usize = p.iter().map(|x| x.hypothesis.split_whitespace().count()).sum();
        let reference: usize = p.iter().map(|x| x.reference.split_whitespace().count()).sum();
        prop_assume!(hyp >= reference);
        let before = corpus_bleu(&p, 4).unwrap();
        prop_assume!(before < 1.0);
        let mut more = p.clone();
        more.push(EvalPair::new(&extra, &extra).unwrap());
        prop_assert!(corpus_bleu(&more, 4).unwrap() >= before - 1e-12);
    }

    #[test]
    fn kneser_ney_distributions_sum_to_one(
        corpus in prop::collection::vec(sentence(&LEFT, 8), 1..30),
        contexts in prop::collection::vec(prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "q", BOS]), 2), 1..10),
        order in 2usize..5,
    ) {
        let lm = train_ngram_lm(&corpus, order, 0.75).unwrap();
        let vocab: Vec<&str> = lm.vocabulary().collect();
        prop_assert!(vocab.contains(&UNK) && vocab.contains(&EOS));
        for ctx in contexts {
            let total: f64 = vocab.iter().map(|w| lm.probability(&ctx, w)).sum();
            prop_assert!((total - 1.0).abs() < 1e-6, "{:?}: {}", ctx, total);
        }
    }
}
