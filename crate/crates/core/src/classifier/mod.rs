//! Message-type classification.
//!
//! Utterances are reduced to bags of 1-5-grams over stop-word-filtered
//! whitespace tokens, weighted by TF-IDF, and scored by four one-vs-rest
//! linear models trained with SGD on the modified Huber loss.

mod eval;
mod features;
mod model;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Sample;
use crate::error::{Error, Result};

pub use eval::{evaluate_classifier, ClassMetrics, ClassificationReport};
pub use features::{build_feature_space, featurize, ngrams, FeatureSpace, SparseVector, StopWords};
pub use model::{predict, select_learning_rate, train_sgd, Hyperparams, LinearModel, MODEL_FORMAT_VERSION};

/// Candidate initial learning rates tried by [`select_learning_rate`].
pub const DEFAULT_LEARNING_RATES: [f64; 3] = [0.001, 0.01, 0.1];

/// Default number of n-gram features kept by [`build_feature_space`].
pub const DEFAULT_MAX_FEATURES: usize = 188;

/// `(input, type)` pairs for training; every sample must be labelled.
pub fn labeled(samples: &[Sample]) -> Result<Vec<(String, MessageType)>> {
    samples
        .iter()
        .enumerate()
        .map(|(index, s)| {
            s.message_type
                .map(|t| (s.input.clone(), t))
                .ok_or_else(|| Error::Sample {
                    index,
                    message: format!("no message type for {:?}", s.input),
                })
        })
        .collect()
}

/// The four kinds of voice message.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MessageType {
    /// A statement: *tell Bob dinner is ready*.
    Stmt,
    /// A yes/no question: *ask Bob if dinner is ready*.
    AskYN,
    /// A wh-question: *ask Bob when dinner will be ready*.
    AskWH,
    /// A request: *ask Bob to join us for dinner*.
    Req,
}

impl MessageType {
    /// Fixed class order; argmax ties resolve to the earliest entry.
    pub const ALL: [MessageType; 4] = [
        MessageType::Stmt,
        MessageType::AskYN,
        MessageType::AskWH,
        MessageType::Req,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MessageType::Stmt => "Stmt",
            MessageType::AskYN => "AskYN",
            MessageType::AskWH => "AskWH",
            MessageType::Req => "Req",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MessageType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MessageType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        MessageType::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownMessageType(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn message_type_strings() {
        for t in MessageType::ALL {
            assert_eq!(t.as_str().parse::<MessageType>().unwrap(), t);
        }
        assert_eq!("askyn".parse::<MessageType>().unwrap(), MessageType::AskYN);
        assert!("Question".parse::<MessageType>().is_err());
        assert_eq!(serde_json::to_string(&MessageType::AskWH).unwrap(), "\"AskWH\"");
    }
}
