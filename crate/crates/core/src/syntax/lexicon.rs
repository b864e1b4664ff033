//! Closed-class word lists.
//!
//! Names, auxiliaries, wh-words and carrier patterns are data files (one
//! entry per line, `#` comments); the bundled copies are compiled in and
//! can be replaced at load time. Pronouns, determiners and prepositions are
//! fixed.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use super::carrier::CarrierPattern;
use super::tagger::Tag;
use crate::corpus::{CONTACT_PLACEHOLDER, SOURCE_PLACEHOLDER};
use crate::error::{Error, Result};

pub const DEFAULT_NAMES: &str = include_str!("../../data/names.txt");
pub const DEFAULT_AUXILIARIES: &str = include_str!("../../data/auxiliaries.txt");
pub const DEFAULT_WH_WORDS: &str = include_str!("../../data/wh_words.txt");
pub const DEFAULT_CARRIERS: &str = include_str!("../../data/carriers.txt");

pub const NOMINATIVE_PRONOUNS: [&str; 7] = ["i", "you", "he", "she", "it", "we", "they"];

const OTHER_PRONOUNS: [&str; 21] = [
    "me",
    "him",
    "us",
    "them",
    "myself",
    "yourself",
    "himself",
    "herself",
    "itself",
    "ourselves",
    "yourselves",
    "themselves",
    "themself",
    "mine",
    "yours",
    "hers",
    "ours",
    "theirs",
    "everyone",
    "someone",
    "anyone",
];

const POSSESSIVES: [&str; 5] = ["my", "your", "our", "their", "its"];

const DETERMINERS: [&str; 17] = [
    "the", "a", "an", "this", "these", "those", "some", "any", "every", "each", "no", "all", "another", "both",
    "either", "neither", "that",
];

const PREPOSITIONS: [&str; 34] = [
    "if", "whether", "for", "on", "in", "at", "with", "about", "from", "of", "by", "after", "before", "because",
    "since", "until", "so", "than", "as", "into", "over", "near", "without", "during", "through", "and", "or", "but",
    "while", "unless", "though", "although", "once", "around",
];

/// Adverbs and predicate words that may sit between a subject and its verb
/// or follow a clitic `'s` that means *is*.
pub const ADVERBS: [&str; 45] = [
    "not",
    "n't",
    "also",
    "always",
    "never",
    "just",
    "really",
    "still",
    "finally",
    "actually",
    "already",
    "probably",
    "definitely",
    "totally",
    "usually",
    "sometimes",
    "often",
    "only",
    "even",
    "seriously",
    "honestly",
    "almost",
    "now",
    "then",
    "too",
    "so",
    "very",
    "ready",
    "home",
    "here",
    "there",
    "late",
    "early",
    "done",
    "back",
    "okay",
    "ok",
    "fine",
    "busy",
    "free",
    "gone",
    "asleep",
    "awake",
    "outside",
    "inside",
];

/// A form from the auxiliary lexicon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Auxiliary {
    pub lemma: String,
    pub tag: Tag,
}

/// Parse a one-entry-per-line list, dropping blank lines and `#` comments.
pub fn parse_word_list(text: &str) -> Vec<String> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Clone, Debug)]
pub struct Lexicon {
    names: BTreeSet<String>,
    auxiliaries: HashMap<String, Auxiliary>,
    wh_words: BTreeSet<String>,
    carriers: Vec<CarrierPattern>,
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon::from_sources(DEFAULT_NAMES, DEFAULT_AUXILIARIES, DEFAULT_WH_WORDS, DEFAULT_CARRIERS)
            .expect("bundled lexicon files are well-formed")
    }
}

impl Lexicon {
    pub fn from_sources(names: &str, auxiliaries: &str, wh_words: &str, carriers: &str) -> Result<Self> {
        let mut aux_map = HashMap::new();
        for (i, line) in parse_word_list(auxiliaries).iter().enumerate() {
            let fields: Vec<&str> = line.split('\t').collect();
            let parsed = match fields.as_slice() {
                [form, lemma, tag] => tag.parse::<Tag>().ok().map(|tag| (form, lemma, tag)),
                _ => None,
            };
            let (form, lemma, tag) = parsed.ok_or_else(|| Error::Parse {
                path: "auxiliaries".into(),
                line: i + 1,
                message: format!("expected `form<TAB>lemma<TAB>VBP|VBZ|MD`, got {line:?}"),
            })?;
            aux_map.insert(
                form.to_string(),
                Auxiliary {
                    lemma: lemma.to_string(),
                    tag,
                },
            );
        }
        let carriers = parse_word_list(carriers)
            .iter()
            .enumerate()
            .map(|(i, line)| {
                CarrierPattern::parse(line).map_err(|message| Error::Parse {
                    path: "carriers".into(),
                    line: i + 1,
                    message,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Lexicon {
            names: parse_word_list(names).into_iter().map(|n| n.to_lowercase()).collect(),
            auxiliaries: aux_map,
            wh_words: parse_word_list(wh_words).into_iter().collect(),
            carriers,
        })
    }

    /// Load any subset of the four files; missing entries use the bundled
    /// defaults.
    pub fn load(
        names: Option<&Path>,
        auxiliaries: Option<&Path>,
        wh_words: Option<&Path>,
        carriers: Option<&Path>,
    ) -> Result<Self> {
        let read = |path: Option<&Path>, default: &str| -> Result<String> {
            match path {
                Some(p) => fs::read_to_string(p).map_err(|e| Error::io(p, e)),
                None => Ok(default.to_string()),
            }
        };
        Lexicon::from_sources(
            &read(names, DEFAULT_NAMES)?,
            &read(auxiliaries, DEFAULT_AUXILIARIES)?,
            &read(wh_words, DEFAULT_WH_WORDS)?,
            &read(carriers, DEFAULT_CARRIERS)?,
        )
    }

    pub fn with_names<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.names.extend(names.into_iter().map(|n| n.as_ref().to_lowercase()));
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn is_name(&self, word: &str) -> bool {
        self.names.contains(word)
    }

    pub fn is_placeholder(word: &str) -> bool {
        word == CONTACT_PLACEHOLDER || word == SOURCE_PLACEHOLDER
    }

    pub fn auxiliary(&self, word: &str) -> Option<&Auxiliary> {
        self.auxiliaries.get(word)
    }

    pub fn is_do_support(&self, word: &str) -> bool {
        self.auxiliary(word).is_some_and(|a| a.lemma == "do")
    }

    pub fn is_wh(&self, word: &str) -> bool {
        self.wh_words.contains(word)
    }

    pub fn carriers(&self) -> &[CarrierPattern] {
        &self.carriers
    }

    /// Longest name (up to three tokens) starting at `tokens[0]`, as a
    /// token count.
    pub fn match_name<S: AsRef<str>>(&self, tokens: &[S]) -> Option<usize> {
        (1..=tokens.len().min(3)).rev().find(|&n| {
            let joined: Vec<&str> = tokens[..n].iter().map(AsRef::as_ref).collect();
            self.is_name(&joined.join(" "))
        })
    }

    pub fn is_closed_class(&self, word: &str) -> bool {
        NOMINATIVE_PRONOUNS.contains(&word)
            || OTHER_PRONOUNS.contains(&word)
            || POSSESSIVES.contains(&word)
            || matches!(word, "her" | "his" | "to" | "please")
            || DETERMINERS.contains(&word)
            || PREPOSITIONS.contains(&word)
            || matches!(word, "not" | "n't")
            || self.auxiliary(word).is_some()
            || self.is_wh(word)
    }
}

pub(crate) fn is_nominative(word: &str) -> bool {
    NOMINATIVE_PRONOUNS.contains(&word)
}

pub(crate) fn is_other_pronoun(word: &str) -> bool {
    OTHER_PRONOUNS.contains(&word)
}

pub(crate) fn is_possessive(word: &str) -> bool {
    POSSESSIVES.contains(&word)
}

pub(crate) fn is_determiner(word: &str) -> bool {
    DETERMINERS.contains(&word)
}

pub(crate) fn is_preposition(word: &str) -> bool {
    PREPOSITIONS.contains(&word)
}

pub(crate) fn is_adverb(word: &str) -> bool {
    ADVERBS.contains(&word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_lists_skip_comments() {
        assert_eq!(
            parse_word_list("# header\nbob\n\n  ann # trailing\n"),
            vec!["bob", "ann"]
        );
    }

    #[test]
    fn bundled_lexicon_loads() {
        let lex = Lexicon::default();
        assert!(lex.is_name("bob") && lex.is_name("mom"));
        assert_eq!(lex.auxiliary("is").unwrap().tag, Tag::VBZ);
        assert_eq!(lex.auxiliary("are").unwrap().tag, Tag::VBP);
        assert_eq!(lex.auxiliary("can").unwrap().tag, Tag::MD);
        assert!(lex.is_do_support("does"));
        assert!(lex.is_wh("when"));
        assert!(!lex.carriers().is_empty());
        assert!(lex.is_closed_class("will") && !lex.is_closed_class("blade"));
    }

    #[test]
    fn longest_name_wins() {
        let lex = Lexicon::default().with_names(["aunt sally"]);
        assert_eq!(lex.match_name(&["aunt", "sally", "is"]), Some(2));
        assert_eq!(lex.match_name(&["bob", "is"]), Some(1));
        assert_eq!(lex.match_name(&["dinner"]), None);
    }

    #[test]
    fn malformed_auxiliary_line() {
        let err = Lexicon::from_sources("", "am\tbe\n", "", "").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
