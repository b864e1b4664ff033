use log::debug;
use serde::{Deserialize, Serialize};

use super::lexicon::Lexicon;
use crate::corpus::CONTACT_PLACEHOLDER;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Element {
    Word(String),
    Contact,
    Optional(Vec<String>),
}

/// A leading carrier construction such as `tell {X} (that)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierPattern {
    pub verb_phrase: String,
    elements: Vec<Element>,
}

impl CarrierPattern {
    /// Parse `verb_phrase<TAB>pattern`.
    pub fn parse(line: &str) -> Result<Self, String> {
        let (verb_phrase, pattern) = line
            .split_once('\t')
            .ok_or_else(|| format!("expected `verb_phrase<TAB>pattern`, got {line:?}"))?;
        let mut elements = Vec::new();
        for part in pattern.split_whitespace() {
            let element = if part == "{X}" {
                Element::Contact
            } else if let Some(inner) = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')) {
                Element::Optional(inner.split('|').map(str::to_string).collect())
            } else {
                Element::Word(part.to_string())
            };
            elements.push(element);
        }
        if !matches!(elements.first(), Some(Element::Word(_))) {
            return Err(format!("pattern must start with a literal word: {pattern:?}"));
        }
        Ok(CarrierPattern {
            verb_phrase: verb_phrase.trim().to_string(),
            elements,
        })
    }

    /// Match against the start of `tokens`; returns (contact, complementizer,
    /// tokens consumed).
    fn match_prefix(&self, tokens: &[&str], lex: &Lexicon) -> Option<(Option<String>, Option<String>, usize)> {
        let mut pos = 0;
        let mut contact = None;
        let mut complementizer = None;
        for element in &self.elements {
            match element {
                Element::Word(w) => {
                    if tokens.get(pos) != Some(&w.as_str()) {
                        return None;
                    }
                    pos += 1;
                }
                Element::Contact => {
                    let n = bind_contact(&tokens[pos.min(tokens.len())..], lex)?;
                    contact = Some(tokens[pos..pos + n].join(" ").trim_end_matches(',').to_string());
                    pos += n;
                }
                Element::Optional(options) => {
                    if let Some(t) = tokens.get(pos).filter(|t| options.iter().any(|o| o == *t)) {
                        complementizer = Some(t.to_string());
                        pos += 1;
                    }
                }
            }
        }
        (pos < tokens.len()).then_some((contact, complementizer, pos))
    }
}

/// Number of tokens bound as the contact: the placeholder, the longest
/// lexicon name, or one open-class word.
fn bind_contact(tokens: &[&str], lex: &Lexicon) -> Option<usize> {
    let first = tokens.first()?.trim_end_matches(',');
    if first == CONTACT_PLACEHOLDER {
        return Some(1);
    }
    if let Some(n) = lex.match_name(tokens) {
        return Some(n);
    }
    let open = !lex.is_closed_class(first) && first.chars().all(|c| c.is_alphabetic() || c == '\'' || c == '-');
    open.then_some(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierMatch {
    /// Reporting verb of the carrier (`tell`, `let…know`); empty when no
    /// carrier matched.
    pub verb_phrase: String,
    pub contact: Option<String>,
    pub message: String,
    /// `if`, `whether`, `that` or `to` consumed after the contact.
    pub complementizer: Option<String>,
}

/// Strip a leading carrier phrase from a normalized utterance. The first
/// matching pattern wins; without a match the whole utterance is the
/// message.
pub fn strip_carrier(utterance: &str, lex: &Lexicon) -> CarrierMatch {
    let tokens: Vec<&str> = utterance.split_whitespace().collect();
    for pattern in lex.carriers() {
        if let Some((contact, complementizer, consumed)) = pattern.match_prefix(&tokens, lex) {
            return CarrierMatch {
                verb_phrase: pattern.verb_phrase.clone(),
                contact,
                message: tokens[consumed..].join(" "),
                complementizer,
            };
        }
    }
    debug!("no carrier pattern matched {utterance:?}");
    CarrierMatch {
        verb_phrase: String::new(),
        contact: None,
        message: utterance.to_string(),
        complementizer: None,
    }
}
