//! Subject-verb agreement after pronouns have changed person.

use crate::syntax::looks_third_person;
use crate::syntax::{lexicon, Lexicon};
use crate::text::{detokenize, tokenize};

/// Clitic auxiliaries and their full spelling.
pub(crate) const EXPANDED_CLITICS: [(&str, &str); 6] = [
    ("'s", "is"),
    ("'re", "are"),
    ("'m", "am"),
    ("'ll", "will"),
    ("'ve", "have"),
    ("'d", "would"),
];

const IRREGULAR_PAST: [&str; 62] = [
    "went",
    "got",
    "made",
    "said",
    "took",
    "saw",
    "came",
    "left",
    "bought",
    "sent",
    "told",
    "found",
    "thought",
    "forgot",
    "lost",
    "ate",
    "won",
    "ran",
    "gave",
    "knew",
    "heard",
    "felt",
    "paid",
    "met",
    "brought",
    "fell",
    "kept",
    "slept",
    "wrote",
    "drove",
    "rode",
    "sat",
    "stood",
    "understood",
    "meant",
    "caught",
    "taught",
    "began",
    "spent",
    "built",
    "broke",
    "chose",
    "spoke",
    "woke",
    "wore",
    "tore",
    "threw",
    "grew",
    "drew",
    "flew",
    "hid",
    "held",
    "let",
    "put",
    "set",
    "cut",
    "shut",
    "quit",
    "read",
    "hurt",
    "hit",
    "cost",
];

/// Words that commonly follow a pronoun without being its verb.
const NON_VERBS: [&str; 12] = [
    "guys", "all", "both", "two", "three", "gonna", "wanna", "gotta", "alone", "together", "yourself", "again",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Person {
    Third,
    Plural,
}

/// Third-person singular of a base-form verb.
pub(crate) fn third_person(verb: &str) -> String {
    match verb {
        "have" => return "has".into(),
        "do" => return "does".into(),
        "go" => return "goes".into(),
        "be" => return "is".into(),
        _ => {}
    }
    if looks_third_person(verb) {
        return verb.into();
    }
    let bytes = verb.as_bytes();
    if verb.len() > 1 && verb.ends_with('y') && !b"aeiou".contains(&bytes[bytes.len() - 2]) {
        return format!("{}ies", &verb[..verb.len() - 1]);
    }
    if ["s", "sh", "ch", "x", "z", "o"].iter().any(|s| verb.ends_with(s)) {
        return format!("{verb}es");
    }
    format!("{verb}s")
}

/// Base form of a third-person singular verb.
pub(crate) fn base_form(verb: &str) -> String {
    match verb {
        "has" => return "have".into(),
        "does" => return "do".into(),
        "goes" => return "go".into(),
        _ => {}
    }
    if verb.len() > 4 && verb.ends_with("ies") {
        return format!("{}y", &verb[..verb.len() - 3]);
    }
    for suffix in ["sses", "shes", "ches", "xes", "zes", "oes"] {
        if verb.ends_with(suffix) {
            return verb[..verb.len() - 2].into();
        }
    }
    verb.strip_suffix('s').unwrap_or(verb).into()
}

fn is_perfect_participle(word: &str) -> bool {
    matches!(word, "been" | "got" | "gotten" | "done" | "gone") || (word.len() > 3 && word.ends_with("ed"))
}

/// Agreeing form of `word` for a subject of `person`, or `None` when it
/// does not inflect (modals, past forms, non-verbs).
fn inflect(word: &str, next: Option<&str>, following: Option<&str>, person: Person, lex: &Lexicon) -> Option<String> {
    let third = person == Person::Third;
    let form = match word {
        "am" | "is" | "are" => {
            if third {
                "is"
            } else {
                "are"
            }
        }
        "was" | "were" => {
            if third {
                "was"
            } else {
                "were"
            }
        }
        "has" | "have" => {
            if third {
                "has"
            } else {
                "have"
            }
        }
        "does" | "do" => {
            if third {
                "does"
            } else {
                "do"
            }
        }
        "'ve" => {
            if third {
                "'s"
            } else {
                "'ve"
            }
        }
        "'m" | "'re" => {
            if third {
                "'s"
            } else {
                "'re"
            }
        }
        "'s" => {
            if next.is_some_and(is_perfect_participle) {
                if third {
                    "'s"
                } else {
                    "'ve"
                }
            } else if third {
                "'s"
            } else if following.is_some_and(crate::syntax::is_participle)
                && following.is_some_and(|n| n.ends_with("ing"))
            {
                "are"
            } else {
                "'re"
            }
        }
        w if lex.is_closed_class(w)
            || lexicon::is_adverb(w)
            || crate::text::is_clitic(w)
            || crate::syntax::is_participle(w)
            || IRREGULAR_PAST.contains(&w)
            || NON_VERBS.contains(&w)
            || !w.chars().all(|c| c.is_ascii_alphabetic()) =>
        {
            return None
        }
        w if third => return Some(third_person(w)),
        w if looks_third_person(w) => return Some(base_form(w)),
        _ => return None,
    };
    Some(form.to_string())
}

fn is_finite_aux(word: &str) -> bool {
    matches!(
        word,
        "am" | "is" | "are" | "was" | "were" | "has" | "have" | "does" | "do" | "'s" | "'re" | "'m" | "'ve"
    )
}

/// Words after which `you` opens a clause.
fn opens_clause(word: &str) -> bool {
    matches!(
        word,
        "," | "if"
            | "whether"
            | "that"
            | "and"
            | "but"
            | "or"
            | "so"
            | "because"
            | "since"
            | "while"
            | "when"
            | "where"
            | "what"
            | "why"
            | "how"
            | "who"
            | "which"
            | "until"
            | "unless"
            | "once"
            | "though"
            | "although"
            | "before"
            | "after"
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreed {
    pub text: String,
    pub trace: Vec<String>,
}

/// Re-inflect verbs whose subject is `he`, `she`, `they` or `you`.
///
/// The verb is the first non-adverb token after the subject, or the
/// auxiliary just before it when the clause is inverted. `you` counts as a
/// subject at a clause boundary or when a finite auxiliary follows it. A
/// clitic `'s` before an -ing form is spelled out as `are` for plural
/// subjects. A stray `am` or `'m` with no `i` before it becomes `is`/`'s`.
pub fn fix_agreement(message: &str, lex: &Lexicon) -> Agreed {
    let mut tokens = tokenize(message);
    let mut trace = Vec::new();
    let lower: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    let next_content = |from: usize| (from..lower.len()).find(|&j| !lexicon::is_adverb(&lower[j]));

    for i in 0..lower.len() {
        let person = match lower[i].as_str() {
            "he" | "she" => Person::Third,
            "they" => Person::Plural,
            "you" => {
                let prev = i.checked_sub(1).map(|p| lower[p].as_str());
                let next_aux = next_content(i + 1).is_some_and(|j| is_finite_aux(&lower[j]));
                let inverted = prev.is_some_and(is_finite_aux);
                if prev.is_none() || prev.is_some_and(opens_clause) || next_aux || inverted {
                    Person::Plural
                } else {
                    continue;
                }
            }
            _ => continue,
        };
        let target = match i.checked_sub(1) {
            Some(p) if is_finite_aux(&lower[p]) && !crate::text::is_clitic(&lower[p]) => Some(p),
            _ => next_content(i + 1),
        };
        let Some(v) = target else { continue };
        let after = next_content(v + 1).map(|j| lower[j].as_str());
        let following = lower.get(v + 1).map(String::as_str);
        if let Some(form) = inflect(&lower[v], after, following, person, lex) {
            if form != lower[v] {
                trace.push(format!("agree:{}→{}", lower[v], form));
                tokens[v] = form;
            }
        }
    }

    for i in 0..tokens.len() {
        let orphan = match tokens[i].as_str() {
            "am" => "is",
            "'m" => "'s",
            _ => continue,
        };
        if i == 0 || tokens[i - 1] != "i" {
            trace.push(format!("agree:{}→{}", tokens[i], orphan));
            tokens[i] = orphan.into();
        }
    }
    Agreed {
        text: detokenize(&tokens),
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix(text: &str) -> String {
        fix_agreement(text, &Lexicon::default()).text
    }

    #[test]
    fn be_forms() {
        assert_eq!(fix("he am running late"), "he is running late");
        assert_eq!(fix("he'm running late"), "he's running late");
        assert_eq!(fix("you is bringing chips"), "you are bringing chips");
        assert_eq!(fix("if you's still having a party"), "if you're still having a party");
        assert_eq!(fix("you's coming for dinner"), "you are coming for dinner");
        assert_eq!(fix("what you's doing tonight"), "what you are doing tonight");
        assert_eq!(fix("they was late"), "they were late");
    }

    #[test]
    fn have_and_do() {
        assert_eq!(fix("you has a key"), "you have a key");
        assert_eq!(fix("he've finished"), "he's finished");
        assert_eq!(fix("you's finished"), "you've finished");
        assert_eq!(fix("she do n't know"), "she doesn't know");
        assert_eq!(fix("does you want tea"), "do you want tea");
    }

    #[test]
    fn lexical_verbs() {
        assert_eq!(fix("she need a ride"), "she needs a ride");
        assert_eq!(fix("he finally watch the game"), "he finally watches the game");
        assert_eq!(fix("if you likes sushi"), "if you like sushi");
        assert_eq!(fix("they carries bags"), "they carry bags");
    }

    #[test]
    fn leaves_non_verbs_alone() {
        assert_eq!(fix("he can come"), "he can come");
        assert_eq!(fix("she mailed your package"), "she mailed your package");
        assert_eq!(fix("he went home"), "he went home");
        assert_eq!(fix("thank you so much"), "thank you so much");
        assert_eq!(fix("i told you guys"), "i told you guys");
        assert_eq!(fix("she is coming"), "she is coming");
    }

    #[test]
    fn inflection_helpers() {
        for (base, third) in [
            ("watch", "watches"),
            ("carry", "carries"),
            ("play", "plays"),
            ("go", "goes"),
            ("need", "needs"),
        ] {
            assert_eq!(third_person(base), third);
            assert_eq!(base_form(third), base);
        }
    }
}
