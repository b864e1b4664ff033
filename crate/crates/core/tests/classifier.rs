//! Training on the bundled seed corpus.

use pov::classifier::{
    build_feature_space, evaluate_classifier, labeled, select_learning_rate, train_sgd, Hyperparams, LinearModel,
    StopWords, DEFAULT_LEARNING_RATES, DEFAULT_MAX_FEATURES,
};
use pov::corpus::{seed_corpus, split_dataset};
use pov::MessageType::{self, *};

fn train(seed: u64) -> (LinearModel, Vec<(String, MessageType)>) {
    let split = split_dataset(&seed_corpus(), seed).unwrap();
    let train = labeled(&split.train).unwrap();
    let validation = labeled(&split.validation).unwrap();
    let fs = build_feature_space(&train, StopWords::default(), DEFAULT_MAX_FEATURES, 0.0).unwrap();
    let base = Hyperparams {
        seed,
        ..Hyperparams::default()
    };
    let (model, _) = select_learning_rate(&train, &validation, &fs, &base, &DEFAULT_LEARNING_RATES).unwrap();
    (model, labeled(&split.test).unwrap())
}

#[test]
fn message_type_examples() {
    let (model, _) = train(0);
    for (text, expected) in [
        ("tell @CN@ dinner is ready", Stmt),
        ("ask @CN@ if dinner is ready", AskYN),
        ("ask @CN@ when dinner will be ready", AskWH),
        ("ask @CN@ to join us for dinner", Req),
    ] {
        assert_eq!(model.predict(text), expected, "{text}");
    }
}

#[test]
fn held_out_accuracy() {
    let (model, test) = train(0);
    let report = evaluate_classifier(&model, &test).unwrap();
    println!("{report}");
    assert!(report.accuracy >= 0.8, "accuracy {}", report.accuracy);
}

#[test]
fn training_is_reproducible() {
    let a = train(7).0.to_json().unwrap();
    let b = train(7).0.to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn model_file_round_trip() {
    let (model, test) = train(1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    model.save(&path).unwrap();
    let loaded = LinearModel::load(&path).unwrap();
    assert_eq!(loaded, model);
    for (text, _) in &test {
        assert_eq!(loaded.predict(text), model.predict(text));
    }
}

#[test]
fn unlabeled_rows_are_rejected() {
    let mut samples = seed_corpus();
    samples[3].message_type = None;
    let err = labeled(&samples).unwrap_err();
    assert!(err.to_string().starts_with("sample 3"));
    let data = labeled(&seed_corpus()).unwrap();
    let fs = build_feature_space(&data, StopWords::default(), 100, 0.0).unwrap();
    assert!(train_sgd(&[], &fs, &Hyperparams::default()).is_err());
}
