use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use log::{info, warn};
use pov::classifier::{build_feature_space, evaluate_classifier, select_learning_rate, LinearModel};
use pov::corpus::{
    load_dataset, normalize, parse_dataset_str, render_dataset, seed_corpus, split_dataset, Sample, Split,
};
use pov::metrics::{evaluate, prepare_text, read_paired_files, read_tsv_pairs, train_ngram_lm, Embeddings};
use pov::transform::Converter;
use pov::{Error, MessageType};
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{read_lines, write_all_or_nothing};
use crate::{ClassifyArgs, ConvertArgs, EvalArgs, SplitArgs, TrainArgs};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub trace: bool,
    pub strict: bool,
    pub verbose: bool,
}

fn finish_config(config: RunConfig, opts: Options) -> Result<RunConfig> {
    config.validate()?;
    if opts.verbose {
        let text = toml::to_string(&config).context("cannot render configuration")?;
        eprintln!("# effective configuration\n{text}");
    }
    Ok(config)
}

fn required<'a>(value: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    value.as_deref().ok_or_else(|| anyhow!("no {what} given"))
}

#[derive(Serialize)]
struct Manifest<'a> {
    input: &'a Path,
    seed: u64,
    sizes: Sizes,
}

#[derive(Serialize)]
struct Sizes {
    train: usize,
    validation: usize,
    test: usize,
}

pub fn split(mut config: RunConfig, args: &SplitArgs, opts: Options) -> Result<ExitCode> {
    if args.input.is_some() {
        config.data.input.clone_from(&args.input);
    }
    if args.out_dir.is_some() {
        config.data.out_dir.clone_from(&args.out_dir);
    }
    let config = finish_config(config, opts)?;
    let input = required(&config.data.input, "input dataset (--input)")?;
    let out_dir = required(&config.data.out_dir, "output directory (--out-dir)")?;

    let samples = load_dataset(input, &config.data.columns)?;
    let split = split_dataset(&samples, config.seed)?;
    let mut files = Vec::new();
    for (name, part, tag) in [
        ("train.tsv", &split.train, Split::Train),
        ("validation.tsv", &split.validation, Split::Validation),
        ("test.tsv", &split.test, Split::Test),
    ] {
        let tagged: Vec<Sample> = part.iter().cloned().map(|s| Sample { split: Some(tag), ..s }).collect();
        let mut bytes = Vec::new();
        render_dataset(&mut bytes, &tagged)?;
        files.push((out_dir.join(name), bytes));
    }
    let [train, validation, test] = split.sizes();
    let manifest = Manifest {
        input,
        seed: config.seed,
        sizes: Sizes {
            train,
            validation,
            test,
        },
    };
    let mut json = serde_json::to_vec_pretty(&manifest)?;
    json.push(b'\n');
    files.push((out_dir.join("manifest.json"), json));

    fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    write_all_or_nothing(&files)?;
    println!("train={train} validation={validation} test={test} seed={}", config.seed);
    Ok(ExitCode::SUCCESS)
}

fn labeled_file(path: &Path, config: &RunConfig) -> Result<Vec<(String, MessageType)>> {
    let samples = load_dataset(path, &config.data.columns)?;
    pov::classifier::labeled(&samples).map_err(|e| match e {
        Error::Sample { index, message } => anyhow!("{}: row {}: {message}", path.display(), index + 1),
        other => other.into(),
    })
}

pub fn train(mut config: RunConfig, args: &TrainArgs, opts: Options) -> Result<ExitCode> {
    let c = &mut config.classifier;
    if args.model.is_some() {
        c.model.clone_from(&args.model);
    }
    if let Some(k) = args.max_features {
        c.max_features = k;
    }
    if let Some(n) = args.iterations {
        c.iterations = n;
    }
    if let Some(l) = args.l2_lambda {
        c.l2_lambda = l;
    }
    if let Some(grid) = &args.learning_rates {
        c.learning_rates.clone_from(grid);
    }
    if args.train.is_some() {
        config.data.train.clone_from(&args.train);
    }
    if args.validation.is_some() {
        config.data.validation.clone_from(&args.validation);
    }
    let config = finish_config(config, opts)?;
    let model_path = required(&config.classifier.model, "model output path (--model)")?;
    let train = labeled_file(required(&config.data.train, "training file (--train)")?, &config)?;
    let validation = labeled_file(
        required(&config.data.validation, "validation file (--validation)")?,
        &config,
    )?;

    let fs = build_feature_space(
        &train,
        config.stop_words()?,
        config.classifier.max_features,
        config.classifier.min_idf_threshold,
    )?;
    info!("feature space: {} n-grams", fs.len());
    let (model, _) = select_learning_rate(
        &train,
        &validation,
        &fs,
        &config.hyperparams(),
        &config.classifier.learning_rates,
    )?;
    let report = evaluate_classifier(&model, &validation)?;
    write_all_or_nothing(&[(model_path.to_path_buf(), model.to_json()?.into_bytes())])?;
    println!("eta0={}", model.hyperparams.eta0);
    println!("{report}");
    Ok(ExitCode::SUCCESS)
}

/// Classifier trained on the bundled seed corpus, for conversions run
/// without `--type` or `--model`.
fn seed_model(config: &RunConfig) -> Result<LinearModel> {
    info!("no --type or --model given; training a classifier on the bundled seed corpus");
    let split = split_dataset(&seed_corpus(), config.seed)?;
    let train = pov::classifier::labeled(&split.train)?;
    let validation = pov::classifier::labeled(&split.validation)?;
    let c = &config.classifier;
    let fs = build_feature_space(&train, config.stop_words()?, c.max_features, c.min_idf_threshold)?;
    let (model, _) = select_learning_rate(&train, &validation, &fs, &config.hyperparams(), &c.learning_rates)?;
    Ok(model)
}

fn load_model(path: &Path) -> Result<LinearModel> {
    LinearModel::load(path).with_context(|| format!("cannot load model {}", path.display()))
}

fn input_lines(input: &Option<PathBuf>, text: &[String]) -> Result<Vec<String>> {
    if text.is_empty() {
        read_lines(input.as_deref())
    } else {
        Ok(text.to_vec())
    }
}

pub fn classify(mut config: RunConfig, args: &ClassifyArgs, opts: Options) -> Result<ExitCode> {
    if args.model.is_some() {
        config.classifier.model.clone_from(&args.model);
    }
    let config = finish_config(config, opts)?;
    let model = load_model(required(&config.classifier.model, "model (--model)")?)?;
    let mut failed = false;
    for (i, line) in input_lines(&args.input, &args.text)?.iter().enumerate() {
        if normalize(line).is_empty() {
            eprintln!("line {}: empty utterance", i + 1);
            if opts.strict {
                return Ok(ExitCode::FAILURE);
            }
            failed = true;
            println!();
            continue;
        }
        println!("{}\t{line}", model.predict(line));
    }
    Ok(exit_code(failed))
}

fn exit_code(failed: bool) -> ExitCode {
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

struct LineConverter<'a> {
    converter: Converter,
    model: Option<LinearModel>,
    message_type: Option<MessageType>,
    config: &'a RunConfig,
}

impl LineConverter<'_> {
    fn convert(&self, index: usize, line: &str) -> Result<(String, Vec<String>)> {
        let (utterance, line_type) = match line.split_once('\t') {
            Some((u, t)) => (u, Some(t.parse::<MessageType>()?)),
            None => (line, None),
        };
        if normalize(utterance).is_empty() {
            bail!("empty utterance");
        }
        let message_type = match (line_type.or(self.message_type), &self.model) {
            (Some(t), _) => t,
            (None, Some(model)) => model.predict(utterance),
            (None, None) => unreachable!("a model is loaded whenever no type is given"),
        };
        let c = &self.config.convert;
        let mut request = self
            .converter
            .request_for_utterance(utterance, message_type, c.source.as_str())
            .gender(c.gender)
            .greeting(c.greeting);
        if !self.config.deterministic {
            request = request.seed(self.config.seed.wrapping_add(index as u64));
        }
        let result = self.converter.convert(&request)?;
        Ok((result.output, result.trace))
    }
}

pub fn convert(mut config: RunConfig, args: &ConvertArgs, opts: Options) -> Result<ExitCode> {
    if args.model.is_some() {
        config.classifier.model.clone_from(&args.model);
    }
    if let Some(scn) = &args.scn {
        config.convert.source.clone_from(scn);
    }
    if let Some(g) = args.gender {
        config.convert.gender = g;
    }
    if args.greeting {
        config.convert.greeting = true;
    }
    if args.no_greeting {
        config.convert.greeting = false;
    }
    let config = finish_config(config, opts)?;
    let model = match (&args.message_type, &config.classifier.model) {
        (Some(_), _) => None,
        (None, Some(path)) => Some(load_model(path)?),
        (None, None) => Some(seed_model(&config)?),
    };
    let lines = LineConverter {
        converter: config.converter()?,
        model,
        message_type: args.message_type,
        config: &config,
    };

    let mut failed = false;
    for (i, line) in input_lines(&args.input, &args.text)?.iter().enumerate() {
        match lines.convert(i, line) {
            Ok((output, trace)) if opts.trace => println!("{output}\t{}", trace.join(" ")),
            Ok((output, _)) => println!("{output}"),
            Err(e) => {
                eprintln!("line {}: {e:#}", i + 1);
                if opts.strict {
                    return Ok(ExitCode::FAILURE);
                }
                failed = true;
                println!();
            }
        }
    }
    Ok(exit_code(failed))
}

/// Sentences for language-model training: the output column of a dataset,
/// or every non-empty line of a plain text file.
fn lm_sentences(path: &Path, config: &RunConfig) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let columns = &config.data.columns;
    let header: Vec<&str> = text
        .lines()
        .next()
        .unwrap_or("")
        .split(columns.delimiter)
        .map(str::trim)
        .collect();
    let raw: Vec<String> = if header.contains(&columns.input.as_str()) && header.contains(&columns.output.as_str()) {
        parse_dataset_str(&text, columns)
            .with_context(|| format!("cannot parse {}", path.display()))?
            .into_iter()
            .map(|s| s.output)
            .collect()
    } else {
        text.lines().map(str::to_string).collect()
    };
    Ok(raw.iter().map(|s| prepare_text(s)).filter(|s| !s.is_empty()).collect())
}

pub fn eval(mut config: RunConfig, args: &EvalArgs, opts: Options) -> Result<ExitCode> {
    if args.lm_corpus.is_some() {
        config.lm.corpus.clone_from(&args.lm_corpus);
    }
    if let Some(order) = args.lm_order {
        config.lm.order = order;
    }
    if let Some(d) = args.lm_discount {
        config.lm.discount = d;
    }
    if args.embeddings.is_some() {
        config.eval.embeddings.clone_from(&args.embeddings);
    }
    if args.record.is_some() {
        config.eval.record.clone_from(&args.record);
    }
    let config = finish_config(config, opts)?;

    let pairs = match &args.references {
        Some(refs) => read_paired_files(&args.hypotheses, refs)?,
        None => read_tsv_pairs(&args.hypotheses)?,
    };
    let sentences = match &config.lm.corpus {
        Some(path) => lm_sentences(path, &config)?,
        None => {
            warn!("no language-model corpus given; training on the references");
            pairs.iter().map(|p| p.reference.clone()).collect()
        }
    };
    let lm = train_ngram_lm(&sentences, config.lm.order, config.lm.discount)?;
    let embeddings = config.eval.embeddings.as_deref().map(Embeddings::load).transpose()?;
    let report = evaluate(&pairs, &lm, embeddings.as_ref())?;
    let record = report.to_record();
    println!("{report}");
    println!("{record}");
    if let Some(path) = &config.eval.record {
        write_all_or_nothing(&[(path.clone(), format!("{record}\n").into_bytes())])?;
    }
    Ok(ExitCode::SUCCESS)
}
