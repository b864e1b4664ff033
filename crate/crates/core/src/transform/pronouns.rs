//! Pronoun and contact-name substitution.

use crate::corpus::CONTACT_PLACEHOLDER;
use crate::error::Result;
use crate::syntax::{tag, Lexicon, Tag};
use crate::text::{detokenize, tokenize};

use super::rules::{Gender, PronounTable, Role};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Swapped {
    pub text: String,
    pub trace: Vec<String>,
}

/// Source key for a contact-role form, splitting `her`/`his` by reading.
fn contact_key(word: &str, tag: Tag) -> Option<String> {
    match word {
        "her" if tag == Tag::PRPS => Some("her:det".into()),
        "her" => Some("her:obj".into()),
        "his" if tag == Tag::PRPS => Some("his:det".into()),
        "his" => Some("his:pro".into()),
        "he" | "she" | "him" | "hers" | "himself" | "herself" | "themself" => Some(word.into()),
        _ => None,
    }
}

/// Rewrite the sender's first person into `gender`, the recipient's third
/// person into second person, and the contact's name into `you`/`your`.
///
/// Each token is rewritten at most once, so a form produced for the sender
/// (*her*) is never reinterpreted as referring to the contact.
pub fn swap_pronouns(
    message: &str,
    gender: Gender,
    contact: Option<&str>,
    table: &PronounTable,
    lex: &Lexicon,
) -> Result<Swapped> {
    let tokens = tokenize(message);
    if tokens.is_empty() {
        return Ok(Swapped {
            text: String::new(),
            trace: Vec::new(),
        });
    }
    let tagged = tag(&tokens, lex)?;
    let contact_tokens: Vec<String> = contact.map(tokenize).unwrap_or_default();
    let mut out: Vec<String> = Vec::with_capacity(tokens.len());
    let mut trace = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let word = tokens[i].as_str();
        let name_len = if word == CONTACT_PLACEHOLDER {
            Some(1)
        } else if !contact_tokens.is_empty()
            && tokens.len() - i >= contact_tokens.len()
            && tokens[i..i + contact_tokens.len()] == contact_tokens[..]
        {
            Some(contact_tokens.len())
        } else {
            None
        };
        if let Some(n) = name_len {
            let name = tokens[i..i + n].join(" ");
            if tokens.get(i + n).map(String::as_str) == Some("'s") && tagged[i + n].tag == Tag::PRPS {
                out.push("your".into());
                trace.push(format!("contact:{name} 's→your"));
                i += n + 1;
            } else {
                out.push("you".into());
                trace.push(format!("contact:{name}→you"));
                i += n;
            }
            continue;
        }
        let replacement = table
            .lookup(word, Role::Sender, gender)
            .or_else(|| contact_key(word, tagged[i].tag).and_then(|k| table.lookup(&k, Role::Contact, gender)));
        match replacement {
            Some(target) => {
                trace.push(format!("pronoun:{word}→{target}"));
                out.push(target.to_string());
            }
            None => out.push(tokens[i].clone()),
        }
        i += 1;
    }
    Ok(Swapped {
        text: detokenize(&out),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap(text: &str, gender: Gender, contact: Option<&str>) -> String {
        swap_pronouns(text, gender, contact, &PronounTable::default(), &Lexicon::default())
            .unwrap()
            .text
    }

    #[test]
    fn sender_forms_follow_gender() {
        assert_eq!(swap("i'm running late", Gender::Male, None), "he'm running late");
        assert_eq!(swap("can you pick me up", Gender::Female, None), "can you pick her up");
        assert_eq!(swap("my car broke down", Gender::Neutral, None), "their car broke down");
    }

    #[test]
    fn her_and_his_readings() {
        assert_eq!(
            swap("i finally mailed her package", Gender::Female, None),
            "she finally mailed your package"
        );
        assert_eq!(swap("i called her", Gender::Male, None), "he called you");
        assert_eq!(swap("the book is his", Gender::Male, None), "the book is yours");
        assert_eq!(
            swap("to grab apples on his way home", Gender::Male, None),
            "to grab apples on your way home"
        );
    }

    #[test]
    fn produced_forms_are_not_swapped_again() {
        assert_eq!(swap("tell me", Gender::Female, None), "tell her");
    }

    #[test]
    fn contact_name_becomes_you() {
        assert_eq!(
            swap("nate is bringing chips", Gender::Female, Some("nate")),
            "you is bringing chips"
        );
        assert_eq!(swap("@CN@ should call", Gender::Male, None), "you should call");
        assert_eq!(
            swap("nate's car is here", Gender::Male, Some("nate")),
            "your car is here"
        );
    }
}
