//! Rule data: the prepend inventory and the pronoun mapping table.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::MessageType;
use crate::corpus::SOURCE_PLACEHOLDER;
use crate::error::{Error, Result};
use crate::syntax::lexicon::parse_word_list;
use crate::syntax::QuestionForm;

pub const DEFAULT_PREPEND_RULES: &str = include_str!("../../data/prepend_rules.tsv");
pub const DEFAULT_PRONOUNS: &str = include_str!("../../data/pronouns.tsv");

/// Grammatical gender used for the sender's pronouns.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
    #[default]
    Neutral,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "male",
            Gender::Female => "female",
            Gender::Neutral => "neutral",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "male" | "m" => Ok(Gender::Male),
            "female" | "f" => Ok(Gender::Female),
            "neutral" | "n" | "they" => Ok(Gender::Neutral),
            other => Err(Error::InvalidArgument(format!("unknown gender `{other}`"))),
        }
    }
}

/// Whose pronoun a form is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// First person of the sender.
    Sender,
    /// Third person taken to refer to the recipient.
    Contact,
}

/// Targets for one source form: `(gender or any, target)`.
type Targets = Vec<(Option<Gender>, String)>;

/// `(source form, role, gender) -> target form`. Source forms may carry a
/// `:det`, `:obj` or `:pro` suffix to separate `her`/`his` readings.
#[derive(Clone, Debug)]
pub struct PronounTable {
    entries: HashMap<(String, Role), Targets>,
}

impl Default for PronounTable {
    fn default() -> Self {
        PronounTable::parse(DEFAULT_PRONOUNS).expect("bundled pronoun table is well-formed")
    }
}

impl PronounTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: HashMap<(String, Role), Targets> = HashMap::new();
        for (i, line) in parse_word_list(text).iter().enumerate() {
            let err = |message: String| Error::Parse {
                path: "pronouns".into(),
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [source, role, gender, target] = fields.as_slice() else {
                return Err(err(format!("expected 4 tab-separated fields, got {line:?}")));
            };
            let role = match *role {
                "sender" => Role::Sender,
                "contact" => Role::Contact,
                other => return Err(err(format!("unknown role `{other}`"))),
            };
            let gender = match *gender {
                "any" => None,
                g => Some(g.parse().map_err(|e: Error| err(e.to_string()))?),
            };
            entries
                .entry((source.to_string(), role))
                .or_default()
                .push((gender, target.to_string()));
        }
        Ok(PronounTable { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        PronounTable::parse(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    /// Target for `source` in `role`; a gender-specific entry wins over `any`.
    pub fn lookup(&self, source: &str, role: Role, gender: Gender) -> Option<&str> {
        let candidates = self.entries.get(&(source.to_string(), role))?;
        candidates
            .iter()
            .find(|(g, _)| *g == Some(gender))
            .or_else(|| candidates.iter().find(|(g, _)| g.is_none()))
            .map(|(_, t)| t.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrependRule {
    pub id: String,
    pub message_type: MessageType,
    /// The template introduces the clause with `if`/`whether`.
    pub requires_if: bool,
    /// Text with exactly one `@SCN@` slot.
    pub template: String,
}

impl PrependRule {
    pub fn render(&self, source_contact: &str) -> String {
        self.template.replace(SOURCE_PLACEHOLDER, source_contact)
    }

    /// Final word of the template (`to`, `if`, `says`, ...).
    pub fn last_word(&self) -> &str {
        self.template.split_whitespace().last().unwrap_or("")
    }
}

/// How to choose among compatible prepend rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// First compatible rule in id order.
    Deterministic,
    /// Uniform choice driven by a seeded generator.
    Seeded(u64),
}

/// Prepend rules sorted by id.
#[derive(Clone, Debug)]
pub struct PrependInventory {
    rules: Vec<PrependRule>,
}

impl Default for PrependInventory {
    fn default() -> Self {
        PrependInventory::parse(DEFAULT_PREPEND_RULES).expect("bundled prepend rules are well-formed")
    }
}

impl PrependInventory {
    /// Parse `id<TAB>type<TAB>requires_if<TAB>template` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for (i, line) in parse_word_list(text).iter().enumerate() {
            let err = |message: String| Error::Parse {
                path: "prepend rules".into(),
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [id, message_type, requires_if, template] = fields.as_slice() else {
                return Err(err(format!("expected 4 tab-separated fields, got {line:?}")));
            };
            let message_type: MessageType = message_type.parse().map_err(|e: Error| err(e.to_string()))?;
            let requires_if: bool = requires_if
                .parse()
                .map_err(|_| err(format!("requires_if must be true or false, got `{requires_if}`")))?;
            if template.matches(SOURCE_PLACEHOLDER).count() != 1 {
                return Err(err(format!("template must contain {SOURCE_PLACEHOLDER} exactly once")));
            }
            if requires_if && message_type != MessageType::AskYN {
                return Err(err("only AskYN rules may require `if`".into()));
            }
            rules.push(PrependRule {
                id: id.to_string(),
                message_type,
                requires_if,
                template: template.to_string(),
            });
        }
        rules.sort_by(|a, b| a.id.cmp(&b.id));
        if rules.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(Error::InvalidArgument("duplicate prepend rule id".into()));
        }
        Ok(PrependInventory { rules })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        PrependInventory::parse(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }

    pub fn rules(&self) -> &[PrependRule] {
        &self.rules
    }

    /// Rules usable for a message. AskYN needs an `if`-bearing template
    /// unless the message already opens with `if`/`whether`.
    pub fn candidates(&self, message_type: MessageType, opens_with_if: bool) -> Vec<&PrependRule> {
        let want_if = message_type == MessageType::AskYN && !opens_with_if;
        self.rules
            .iter()
            .filter(|r| r.message_type == message_type && r.requires_if == want_if)
            .collect()
    }

    pub fn select(
        &self,
        message_type: MessageType,
        question_form: QuestionForm,
        opens_with_if: bool,
        selection: Selection,
    ) -> Result<&PrependRule> {
        let candidates = self.candidates(message_type, opens_with_if);
        let chosen = match selection {
            Selection::Deterministic => candidates.first().copied(),
            Selection::Seeded(seed) => candidates.choose(&mut ChaCha8Rng::seed_from_u64(seed)).copied(),
        };
        chosen.ok_or_else(|| Error::NoPrependRule {
            message_type: message_type.to_string(),
            form: format!(
                "{question_form:?}{}",
                if opens_with_if { ", opens with if" } else { "" }
            ),
        })
    }
}

/// Choose the prepend rule for a message type and clause form.
pub fn select_prepend(
    inventory: &PrependInventory,
    message_type: MessageType,
    question_form: QuestionForm,
    opens_with_if: bool,
    selection: Selection,
) -> Result<&PrependRule> {
    inventory.select(message_type, question_form, opens_with_if, selection)
}
