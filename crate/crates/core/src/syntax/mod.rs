//! Shallow syntax for message content.
//!
//! Instead of full constituency trees, the analyzer computes exactly the
//! facts the rewrite rules consume: whether the clause is a direct
//! (inverted) question, where its subject is, which auxiliary governs it,
//! and where the wh-word sits.

mod carrier;
mod clause;
pub mod lexicon;
mod tagger;

pub use carrier::{strip_carrier, CarrierMatch, CarrierPattern};
pub use clause::{analyze_clause, is_direct_question, ClauseAnalysis, QuestionForm};
pub use lexicon::{Auxiliary, Lexicon};
pub(crate) use tagger::{is_participle, looks_third_person};
pub use tagger::{tag, Tag, TaggedToken};
