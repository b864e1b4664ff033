use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::lexicon::{self, Lexicon};
use crate::error::{Error, Result};

/// Closed tag inventory. Participles, adjectives and adverbs fold into `NN`;
/// a possessive `'s` is tagged `PRP$`.
#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    NNP,
    VB,
    VBP,
    VBZ,
    WRB,
    PRP,
    MD,
    #[serde(rename = "PRP$")]
    PRPS,
    NN,
    TO,
    IN,
    DT,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::NNP => "NNP",
            Tag::VB => "VB",
            Tag::VBP => "VBP",
            Tag::VBZ => "VBZ",
            Tag::WRB => "WRB",
            Tag::PRP => "PRP",
            Tag::MD => "MD",
            Tag::PRPS => "PRP$",
            Tag::NN => "NN",
            Tag::TO => "TO",
            Tag::IN => "IN",
            Tag::DT => "DT",
        }
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, Tag::VB | Tag::VBP | Tag::VBZ | Tag::MD)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        use Tag::*;
        [NNP, VB, VBP, VBZ, WRB, PRP, MD, PRPS, NN, TO, IN, DT]
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown tag `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub text: String,
    pub tag: Tag,
}

impl TaggedToken {
    pub fn new(text: impl Into<String>, tag: Tag) -> Self {
        TaggedToken { text: text.into(), tag }
    }
}

/// True for words that look like an -ing or -ed form.
pub(crate) fn is_participle(word: &str) -> bool {
    let has_vowel = |stem: &str| stem.chars().any(|c| "aeiouy".contains(c));
    if let Some(stem) = word.strip_suffix("ing") {
        return stem.len() > 1 && has_vowel(stem);
    }
    if let Some(stem) = word.strip_suffix("ed") {
        return stem.len() > 1
            && has_vowel(stem)
            && !matches!(
                word,
                "need" | "feed" | "seed" | "bleed" | "speed" | "breed" | "weed" | "shed" | "sled"
            );
    }
    false
}

/// Whether `word` can head a noun phrase after `her`/`his` or `'s`.
fn is_open_class(lex: &Lexicon, word: &str) -> bool {
    !lex.is_closed_class(word)
        && !lexicon::is_adverb(word)
        && !crate::text::is_clitic(word)
        && word.chars().next().is_some_and(char::is_alphanumeric)
        && !matches!(
            word,
            "know"
                | "go"
                | "come"
                | "out"
                | "up"
                | "off"
                | "tomorrow"
                | "today"
                | "tonight"
                | "later"
                | "soon"
                | "again"
        )
}

fn closed_class_tag(lex: &Lexicon, tokens: &[&str], i: usize) -> Option<Tag> {
    let word = tokens[i];
    let next = tokens.get(i + 1).copied();
    let prev = i.checked_sub(1).map(|p| tokens[p]);
    let tag = match word {
        "her" | "his" => {
            if next.is_some_and(|n| is_open_class(lex, n)) {
                Tag::PRPS
            } else {
                Tag::PRP
            }
        }
        "'s" => {
            let after_nominal = prev.is_some_and(|p| {
                !lex.is_closed_class(p) && !lex.is_wh(p) && !matches!(p, "it" | "that" | "there" | "here" | "let")
            });
            if after_nominal && next.is_some_and(|n| is_open_class(lex, n) && !is_participle(n)) {
                Tag::PRPS
            } else if prev == Some("let") {
                Tag::PRP
            } else {
                Tag::VBZ
            }
        }
        "that" => {
            if next.is_some_and(|n| lexicon::is_nominative(n) || lexicon::is_determiner(n) || lex.is_name(n)) {
                Tag::IN
            } else {
                Tag::DT
            }
        }
        "to" => Tag::TO,
        w if Lexicon::is_placeholder(w) => Tag::NNP,
        w if lexicon::is_nominative(w) || lexicon::is_other_pronoun(w) => Tag::PRP,
        w if lexicon::is_possessive(w) => Tag::PRPS,
        w if lex.auxiliary(w).is_some() => lex.auxiliary(w)?.tag,
        w if lex.is_wh(w) => Tag::WRB,
        w if lexicon::is_determiner(w) => Tag::DT,
        w if lexicon::is_preposition(w) => Tag::IN,
        _ => return None,
    };
    Some(tag)
}

/// Assign one tag per token: closed-class lexicon first, then names and
/// capitalization, then verb heuristics by position, else `NN`.
pub fn tag<S: AsRef<str>>(tokens: &[S], lex: &Lexicon) -> Result<Vec<TaggedToken>> {
    if tokens.is_empty() {
        return Err(Error::Empty("token list".into()));
    }
    let originals: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    let lowered: Vec<String> = originals
        .iter()
        .map(|t| {
            if Lexicon::is_placeholder(t) {
                t.to_string()
            } else {
                t.to_lowercase()
            }
        })
        .collect();
    let words: Vec<&str> = lowered.iter().map(String::as_str).collect();

    let mut tags: Vec<Option<Tag>> = (0..words.len()).map(|i| closed_class_tag(lex, &words, i)).collect();

    let mut i = 0;
    while i < words.len() {
        if tags[i].is_none() {
            if let Some(n) = lex.match_name(&words[i..]) {
                for t in &mut tags[i..i + n] {
                    *t = Some(Tag::NNP);
                }
                i += n;
                continue;
            }
            let original = originals[i];
            if i > 0 && original.chars().next().is_some_and(char::is_uppercase) {
                tags[i] = Some(Tag::NNP);
            }
        }
        i += 1;
    }

    for i in 0..words.len() {
        if tags[i].is_some() {
            continue;
        }
        let word = words[i];
        let prev = (0..i)
            .rev()
            .find(|&j| !lexicon::is_adverb(words[j]))
            .map(|j| (words[j], tags[j]));
        let guess = match prev {
            _ if is_participle(word) || lexicon::is_adverb(word) => Tag::NN,
            Some((_, Some(Tag::TO))) | Some((_, Some(Tag::MD))) => Tag::VB,
            Some((p, Some(Tag::PRP))) if lexicon::is_nominative(p) => verb_form(word),
            Some((_, Some(Tag::NNP))) => verb_form(word),
            _ => Tag::NN,
        };
        tags[i] = Some(guess);
    }

    Ok(originals
        .into_iter()
        .zip(tags)
        .map(|(text, tag)| TaggedToken::new(text, tag.unwrap_or(Tag::NN)))
        .collect())
}

fn verb_form(word: &str) -> Tag {
    if looks_third_person(word) {
        Tag::VBZ
    } else {
        Tag::VBP
    }
}

/// Heuristic for a VBZ-looking lexical verb.
pub(crate) fn looks_third_person(word: &str) -> bool {
    word.len() > 2 && word.ends_with('s') && !word.ends_with("ss") && !word.ends_with("us") && !word.ends_with("is")
}
