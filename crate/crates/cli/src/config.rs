//! Run configuration: defaults, overlaid by a TOML file, overlaid by flags.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pov::classifier::{Hyperparams, StopWords, DEFAULT_LEARNING_RATES, DEFAULT_MAX_FEATURES};
use pov::corpus::{FormatConfig, CONTACT_PLACEHOLDER, SOURCE_PLACEHOLDER};
use pov::syntax::Lexicon;
use pov::transform::{Converter, Gender};
use serde::{Deserialize, Serialize};

/// Seed used when neither the config file nor `--seed` sets one.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub deterministic: bool,
    pub data: DataConfig,
    pub classifier: ClassifierConfig,
    pub lexicon: LexiconConfig,
    pub convert: ConvertConfig,
    pub lm: LmConfig,
    pub eval: EvalConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            deterministic: false,
            data: DataConfig::default(),
            classifier: ClassifierConfig::default(),
            lexicon: LexiconConfig::default(),
            convert: ConvertConfig::default(),
            lm: LmConfig::default(),
            eval: EvalConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataConfig {
    /// Full dataset, for `split`.
    pub input: Option<PathBuf>,
    pub train: Option<PathBuf>,
    pub validation: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub columns: FormatConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    pub model: Option<PathBuf>,
    pub stop_words: Option<PathBuf>,
    pub max_features: usize,
    pub min_idf_threshold: f64,
    pub l2_lambda: f64,
    pub iterations: usize,
    pub learning_rates: Vec<f64>,
    pub tol: Option<f64>,
    pub n_iter_no_change: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        let h = Hyperparams::default();
        ClassifierConfig {
            model: None,
            stop_words: None,
            max_features: DEFAULT_MAX_FEATURES,
            min_idf_threshold: 0.0,
            l2_lambda: h.l2_lambda,
            iterations: h.iterations,
            learning_rates: DEFAULT_LEARNING_RATES.to_vec(),
            tol: h.tol,
            n_iter_no_change: h.n_iter_no_change,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LexiconConfig {
    pub names: Option<PathBuf>,
    pub auxiliaries: Option<PathBuf>,
    pub wh_words: Option<PathBuf>,
    pub carriers: Option<PathBuf>,
    pub pronouns: Option<PathBuf>,
    pub prepend_rules: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvertConfig {
    /// Sender name put into the prepend phrase.
    pub source: String,
    pub gender: Gender,
    pub greeting: bool,
}

impl Default for ConvertConfig {
    fn default() -> Self {
        ConvertConfig {
            source: SOURCE_PLACEHOLDER.to_string(),
            gender: Gender::Neutral,
            greeting: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LmConfig {
    pub order: usize,
    pub discount: f64,
    /// Training text: a dataset with an output column, or one sentence per
    /// line. Defaults to the references being scored.
    pub corpus: Option<PathBuf>,
}

impl Default for LmConfig {
    fn default() -> Self {
        LmConfig {
            order: 3,
            discount: 0.75,
            corpus: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    pub embeddings: Option<PathBuf>,
    pub record: Option<PathBuf>,
}

impl RunConfig {
    /// Read a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        let mut config: RunConfig =
            toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))?;
        if let Some(base) = path.parent() {
            config.rebase(base);
        }
        Ok(config)
    }

    fn rebase(&mut self, base: &Path) {
        for p in self.paths_mut().into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }

    fn paths_mut(&mut self) -> [&mut Option<PathBuf>; 15] {
        [
            &mut self.data.input,
            &mut self.data.train,
            &mut self.data.validation,
            &mut self.data.out_dir,
            &mut self.classifier.model,
            &mut self.classifier.stop_words,
            &mut self.lexicon.names,
            &mut self.lexicon.auxiliaries,
            &mut self.lexicon.wh_words,
            &mut self.lexicon.carriers,
            &mut self.lexicon.pronouns,
            &mut self.lexicon.prepend_rules,
            &mut self.lm.corpus,
            &mut self.eval.embeddings,
            &mut self.eval.record,
        ]
    }

    /// Check that every file read by a command exists.
    pub fn validate(&self) -> Result<()> {
        let inputs = [
            ("data.input", &self.data.input),
            ("data.train", &self.data.train),
            ("data.validation", &self.data.validation),
            ("classifier.stop_words", &self.classifier.stop_words),
            ("lexicon.names", &self.lexicon.names),
            ("lexicon.auxiliaries", &self.lexicon.auxiliaries),
            ("lexicon.wh_words", &self.lexicon.wh_words),
            ("lexicon.carriers", &self.lexicon.carriers),
            ("lexicon.pronouns", &self.lexicon.pronouns),
            ("lexicon.prepend_rules", &self.lexicon.prepend_rules),
            ("lm.corpus", &self.lm.corpus),
            ("eval.embeddings", &self.eval.embeddings),
        ];
        for (key, path) in inputs {
            if let Some(p) = path {
                if !p.is_file() {
                    bail!("{key}: no such file {}", p.display());
                }
            }
        }
        if self.classifier.learning_rates.is_empty() {
            bail!("classifier.learning_rates must not be empty");
        }
        Ok(())
    }

    pub fn lexicon(&self) -> Result<Lexicon> {
        let l = &self.lexicon;
        Ok(Lexicon::load(
            l.names.as_deref(),
            l.auxiliaries.as_deref(),
            l.wh_words.as_deref(),
            l.carriers.as_deref(),
        )?)
    }

    pub fn converter(&self) -> Result<Converter> {
        Ok(Converter::load(
            self.lexicon()?,
            self.lexicon.pronouns.as_deref(),
            self.lexicon.prepend_rules.as_deref(),
        )?)
    }

    pub fn stop_words(&self) -> Result<StopWords> {
        match &self.classifier.stop_words {
            None => Ok(StopWords::default()),
            Some(p) => {
                let listed = StopWords::load(p)?;
                let words = listed.iter().chain([CONTACT_PLACEHOLDER, SOURCE_PLACEHOLDER]);
                Ok(StopWords::new(words).with_names(&self.lexicon()?))
            }
        }
    }

    pub fn hyperparams(&self) -> Hyperparams {
        let c = &self.classifier;
        Hyperparams {
            l2_lambda: c.l2_lambda,
            iterations: c.iterations,
            seed: self.seed,
            tol: c.tol,
            n_iter_no_change: c.n_iter_no_change,
            ..Hyperparams::default()
        }
    }
}
