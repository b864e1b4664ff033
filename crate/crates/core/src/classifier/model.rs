use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::eval::evaluate_classifier;
use super::features::{featurize, FeatureSpace, SparseVector};
use super::MessageType;
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// SGD settings. The step size at update `t` is `eta0 / (1 + eta0 * l2_lambda * t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyperparams {
    /// Weight of the `λ‖w‖²` penalty.
    pub l2_lambda: f64,
    /// Maximum number of epochs.
    pub iterations: usize,
    pub eta0: f64,
    pub seed: u64,
    /// Stop a class early once its mean epoch loss has failed to improve by
    /// `tol` for `n_iter_no_change` consecutive epochs. `None` always runs
    /// all epochs.
    pub tol: Option<f64>,
    pub n_iter_no_change: usize,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            l2_lambda: 1e-4,
            iterations: 5000,
            eta0: 0.01,
            seed: 0,
            tol: Some(1e-3),
            n_iter_no_change: 5,
        }
    }
}

impl Hyperparams {
    pub fn learning_rate(&self, t: u64) -> f64 {
        self.eta0 / (1.0 + self.eta0 * self.l2_lambda * t as f64)
    }
}

/// One-vs-rest linear classifier over a TF-IDF feature space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub format_version: u32,
    pub classes: Vec<MessageType>,
    pub feature_space: FeatureSpace,
    /// One dense weight vector per class, in `classes` order.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    pub hyperparams: Hyperparams,
}

/// Modified Huber loss and its derivative with respect to the margin.
fn modified_huber(z: f64) -> (f64, f64) {
    if z >= 1.0 {
        (0.0, 0.0)
    } else if z >= -1.0 {
        ((1.0 - z) * (1.0 - z), -2.0 * (1.0 - z))
    } else {
        (-4.0 * z, -4.0)
    }
}

fn sparse_dot(weights: &[f64], x: &SparseVector) -> f64 {
    x.iter().map(|&(i, v)| weights[i] * v).sum()
}

/// Binary learner state; `weights = scale * raw` keeps the L2 decay O(1).
struct Learner {
    raw: Vec<f64>,
    scale: f64,
    bias: f64,
    best_loss: f64,
    stale_epochs: usize,
    done: bool,
}

impl Learner {
    fn new(dim: usize) -> Self {
        Learner {
            raw: vec![0.0; dim],
            scale: 1.0,
            bias: 0.0,
            best_loss: f64::INFINITY,
            stale_epochs: 0,
            done: false,
        }
    }

    fn decision(&self, x: &SparseVector) -> f64 {
        self.scale * sparse_dot(&self.raw, x) + self.bias
    }

    fn step(&mut self, x: &SparseVector, y: f64, eta: f64, lambda: f64) -> f64 {
        let (loss, dloss) = modified_huber(y * self.decision(x));
        let decay = 1.0 - 2.0 * eta * lambda;
        if decay > 0.0 {
            self.scale *= decay;
        } else {
            self.raw.iter_mut().for_each(|w| *w = 0.0);
            self.scale = 1.0;
        }
        if dloss != 0.0 {
            let g = eta * dloss * y;
            for &(i, v) in x {
                self.raw[i] -= g * v / self.scale;
            }
            self.bias -= g;
        }
        if self.scale < 1e-9 {
            self.raw.iter_mut().for_each(|w| *w *= self.scale);
            self.scale = 1.0;
        }
        loss
    }

    fn weights(&self) -> Vec<f64> {
        self.raw.iter().map(|w| w * self.scale).collect()
    }
}

/// Train four one-vs-rest binary classifiers with a shared, seeded
/// per-epoch shuffle.
pub fn train_sgd(train: &[(String, MessageType)], fs: &FeatureSpace, hyperparams: &Hyperparams) -> Result<LinearModel> {
    if train.is_empty() {
        return Err(Error::Empty("training set".into()));
    }
    if hyperparams.iterations < 1 {
        return Err(Error::InvalidArgument("iterations must be at least 1".into()));
    }
    let examples: Vec<(SparseVector, MessageType)> = train.iter().map(|(t, c)| (featurize(t, fs), *c)).collect();
    let classes = MessageType::ALL;
    let mut learners: Vec<Learner> = classes.iter().map(|_| Learner::new(fs.len())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(hyperparams.seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut t: u64 = 0;

    for _ in 0..hyperparams.iterations {
        order.shuffle(&mut rng);
        let mut epoch_loss = vec![0.0; classes.len()];
        for &i in &order {
            let (x, label) = &examples[i];
            let eta = hyperparams.learning_rate(t);
            for (k, learner) in learners.iter_mut().enumerate() {
                if learner.done {
                    continue;
                }
                let y = if *label == classes[k] { 1.0 } else { -1.0 };
                epoch_loss[k] += learner.step(x, y, eta, hyperparams.l2_lambda);
            }
            t += 1;
        }
        if let Some(tol) = hyperparams.tol {
            for (k, learner) in learners.iter_mut().enumerate() {
                if learner.done {
                    continue;
                }
                let mean = epoch_loss[k] / examples.len() as f64;
                if mean > learner.best_loss - tol {
                    learner.stale_epochs += 1;
                } else {
                    learner.stale_epochs = 0;
                }
                learner.best_loss = learner.best_loss.min(mean);
                if learner.stale_epochs >= hyperparams.n_iter_no_change {
                    learner.done = true;
                }
            }
            if learners.iter().all(|l| l.done) {
                break;
            }
        }
    }

    Ok(LinearModel {
        format_version: MODEL_FORMAT_VERSION,
        classes: classes.to_vec(),
        feature_space: fs.clone(),
        weights: learners.iter().map(Learner::weights).collect(),
        bias: learners.iter().map(|l| l.bias).collect(),
        hyperparams: hyperparams.clone(),
    })
}

impl LinearModel {
    /// `dot(weights[c], x) + bias[c]` for every class.
    pub fn decision_values(&self, x: &SparseVector) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| sparse_dot(w, x) + b)
            .collect()
    }

    pub fn predict_vector(&self, x: &SparseVector) -> MessageType {
        let scores = self.decision_values(x);
        let mut best = 0;
        for (k, s) in scores.iter().enumerate() {
            if *s > scores[best] {
                best = k;
            }
        }
        self.classes[best]
    }

    pub fn predict(&self, text: &str) -> MessageType {
        self.predict_vector(&featurize(text, &self.feature_space))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Model(e.to_string()))
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let mut model: LinearModel = serde_json::from_str(json).map_err(|e| Error::Model(e.to_string()))?;
        if model.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Model(format!(
                "unsupported format version {} (expected {MODEL_FORMAT_VERSION})",
                model.format_version
            )));
        }
        if model.classes.len() != model.weights.len() || model.classes.len() != model.bias.len() {
            return Err(Error::Model("class, weight and bias counts differ".into()));
        }
        if model
            .weights
            .iter()
            .any(|w| w.len() != model.feature_space.vocabulary.len())
        {
            return Err(Error::Model("weight vector length differs from vocabulary size".into()));
        }
        model.feature_space.rebuild_index();
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let json = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        LinearModel::from_json(&json)
    }
}

pub fn predict(model: &LinearModel, text: &str) -> MessageType {
    model.predict(text)
}

/// Train once per candidate `eta0` and keep the model with the best
/// validation macro F1 (the earliest candidate wins ties).
pub fn select_learning_rate(
    train: &[(String, MessageType)],
    validation: &[(String, MessageType)],
    fs: &FeatureSpace,
    base: &Hyperparams,
    grid: &[f64],
) -> Result<(LinearModel, f64)> {
    let mut best: Option<(LinearModel, f64)> = None;
    for &eta0 in grid {
        let hyperparams = Hyperparams { eta0, ..base.clone() };
        let model = train_sgd(train, fs, &hyperparams)?;
        let f1 = evaluate_classifier(&model, validation)?.macro_f1;
        if best.as_ref().is_none_or(|(_, b)| f1 > *b) {
            best = Some((model, f1));
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("empty learning-rate grid".into()))
}
