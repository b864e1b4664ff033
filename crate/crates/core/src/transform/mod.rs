//! Rule-based point-of-view conversion.
//!
//! A message (the utterance with its carrier phrase removed) is rewritten
//! in five steps: recover the contact, put direct questions into embedded
//! order, swap pronouns, repair agreement, and prepend a sender phrase
//! chosen by message type.

mod agreement;
mod contact;
mod pronouns;
mod reorder;
mod rules;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifier::MessageType;
use crate::corpus::{normalize, CONTACT_PLACEHOLDER};
use crate::error::{Error, Result};
use crate::syntax::{analyze_clause, strip_carrier, tag, Lexicon, QuestionForm};
use crate::text::tokenize;

pub use agreement::{fix_agreement, Agreed};
pub use contact::recover_contact;
pub use pronouns::{swap_pronouns, Swapped};
pub use reorder::{reorder_question, Reordered};
pub use rules::{
    select_prepend, Gender, PrependInventory, PrependRule, PronounTable, Role, Selection, DEFAULT_PREPEND_RULES,
    DEFAULT_PRONOUNS,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionRequest {
    pub message: String,
    pub message_type: MessageType,
    /// Name substituted into the prepend template.
    pub source_contact: String,
    /// Recipient named by the carrier, if any.
    pub contact: Option<String>,
    pub sender_gender: Gender,
    /// `None` selects the first compatible prepend rule.
    pub rng_seed: Option<u64>,
    pub greeting_enabled: bool,
}

impl ConversionRequest {
    pub fn new(message: impl Into<String>, message_type: MessageType, source_contact: impl Into<String>) -> Self {
        ConversionRequest {
            message: message.into(),
            message_type,
            source_contact: source_contact.into(),
            contact: None,
            sender_gender: Gender::Neutral,
            rng_seed: None,
            greeting_enabled: true,
        }
    }

    pub fn contact(mut self, contact: impl Into<String>) -> Self {
        self.contact = Some(contact.into());
        self
    }

    pub fn gender(mut self, gender: Gender) -> Self {
        self.sender_gender = gender;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.rng_seed = Some(seed);
        self
    }

    pub fn greeting(mut self, enabled: bool) -> Self {
        self.greeting_enabled = enabled;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionResult {
    pub output: String,
    /// Rule applications in order.
    pub trace: Vec<String>,
    pub rule_id: String,
}

/// Lexicon and rule tables used by [`Converter::convert`].
#[derive(Clone, Debug, Default)]
pub struct Converter {
    pub lexicon: Lexicon,
    pub pronouns: PronounTable,
    pub prepends: PrependInventory,
}

impl Converter {
    pub fn new(lexicon: Lexicon, pronouns: PronounTable, prepends: PrependInventory) -> Self {
        Converter {
            lexicon,
            pronouns,
            prepends,
        }
    }

    /// Replace the bundled tables with files where given.
    pub fn load(lexicon: Lexicon, pronouns: Option<&Path>, prepends: Option<&Path>) -> Result<Self> {
        Ok(Converter {
            lexicon,
            pronouns: pronouns.map(PronounTable::load).transpose()?.unwrap_or_default(),
            prepends: prepends.map(PrependInventory::load).transpose()?.unwrap_or_default(),
        })
    }

    pub fn convert(&self, request: &ConversionRequest) -> Result<ConversionResult> {
        convert_with(self, request)
    }

    /// Request for a full utterance: the carrier phrase is stripped and the
    /// contact it names (if any) is bound.
    pub fn request_for_utterance(
        &self,
        utterance: &str,
        message_type: MessageType,
        source_contact: impl Into<String>,
    ) -> ConversionRequest {
        let carrier = strip_carrier(&normalize(utterance), &self.lexicon);
        ConversionRequest {
            contact: carrier.contact,
            ..ConversionRequest::new(carrier.message, message_type, source_contact)
        }
    }
}

/// Convert with the bundled tables.
pub fn convert(request: &ConversionRequest) -> Result<ConversionResult> {
    convert_with(&Converter::default(), request)
}

fn convert_with(conv: &Converter, request: &ConversionRequest) -> Result<ConversionResult> {
    let lex = &conv.lexicon;
    let message = normalize(&request.message);
    if message.is_empty() {
        return Err(Error::Empty("message".into()));
    }
    let mut trace = Vec::new();

    let contact = match &request.contact {
        Some(c) => Some(normalize(c)),
        None => {
            let found = recover_contact(&message, None, lex)?;
            if let Some(c) = &found {
                trace.push(format!("contact:recovered({c})"));
            }
            found
        }
    };

    let analysis = analyze_clause(&tag(&tokenize(&message), lex)?, lex);
    let mut form = analysis.question_form;
    let mut text = message.clone();
    if matches!(request.message_type, MessageType::AskYN | MessageType::AskWH) && form == QuestionForm::DirectQuestion {
        let reordered = reorder_question(&analysis, lex)?;
        text = reordered.text;
        trace.extend(reordered.trace);
        form = analyze_clause(&tag(&tokenize(&text), lex)?, lex).question_form;
    }

    let swapped = swap_pronouns(&text, request.sender_gender, contact.as_deref(), &conv.pronouns, lex)?;
    trace.extend(swapped.trace);
    let agreed = fix_agreement(&swapped.text, lex);
    trace.extend(agreed.trace);
    let text = agreed.text;

    let first = text.split_whitespace().next().unwrap_or("");
    let opens_with_if = matches!(first, "if" | "whether");
    let selection = request.rng_seed.map_or(Selection::Deterministic, Selection::Seeded);
    let rule = conv
        .prepends
        .select(request.message_type, form, opens_with_if, selection)?;
    trace.push(format!("prepend:{}", rule.id));

    let body = match text.split_once(' ') {
        Some((head, rest)) if head == rule.last_word() && matches!(head, "to" | "if" | "whether" | "that") => {
            trace.push(format!("prepend:dropped_duplicate({head})"));
            rest.to_string()
        }
        None if text == rule.last_word() => String::new(),
        _ => text,
    };
    let mut output = String::new();
    if request.greeting_enabled {
        output.push_str("hi ");
        output.push_str(contact.as_deref().unwrap_or(CONTACT_PLACEHOLDER));
        output.push_str(", ");
        trace.push("greeting".into());
    }
    output.push_str(&rule.render(&normalize(&request.source_contact)));
    if !body.is_empty() {
        output.push(' ');
        output.push_str(&body);
    }
    Ok(ConversionResult {
        output,
        trace,
        rule_id: rule.id.clone(),
    })
}
