//! Point-of-view conversion for messages dictated to a virtual assistant.
//!
//! A user says *tell Bob I'm running late*; the assistant should deliver
//! *Joe says he's running late*. This crate implements the rule-based
//! pipeline behind that conversion and the tooling around it:
//!
//! * [`corpus`]: dataset rows, text normalization, placeholder handling
//!   (`@CN@` for the recipient, `@SCN@` for the sender) and 70/15/15 splits.
//! * [`classifier`]: TF-IDF over 1-5-grams and a one-vs-rest linear model
//!   trained by SGD with modified Huber loss, predicting one of four
//!   [`MessageType`]s.
//! * [`syntax`]: a closed-class tagger and a shallow clause analyzer that
//!   tells direct questions from indirect ones, plus carrier-phrase
//!   stripping.
//! * [`transform`]: the rule service (contact recovery, question
//!   reordering, pronoun swapping, verb agreement, prepend rules).
//! * [`metrics`]: corpus BLEU, METEOR, ROUGE-L, embedding cosine similarity
//!   and relative perplexity under a pluggable language model.

pub mod classifier;
pub mod corpus;
mod error;
pub mod metrics;
pub mod syntax;
pub mod text;
pub mod transform;

pub use classifier::MessageType;
pub use corpus::Sample;
pub use error::{Error, Result};
