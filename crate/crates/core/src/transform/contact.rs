//! Recovering the recipient when the carrier did not name one.

use crate::error::{Error, Result};
use crate::syntax::{analyze_clause, tag, Lexicon, Tag};
use crate::text::tokenize;

/// Bind the contact for `message`.
///
/// An explicit contact passes through. Otherwise the message is searched
/// for lexicon names (and the `@CN@` placeholder) that are not preceded by
/// a determiner or possessive. Two different names are ambiguous; a single
/// name is bound only when it is the clause subject.
pub fn recover_contact(message: &str, contact: Option<&str>, lex: &Lexicon) -> Result<Option<String>> {
    if let Some(c) = contact {
        return Ok(Some(c.to_string()));
    }
    let tokens = tokenize(message);
    if tokens.is_empty() {
        return Ok(None);
    }
    let tagged = tag(&tokens, lex)?;
    let mut found: Vec<(usize, String)> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let after_modifier = i > 0 && matches!(tagged[i - 1].tag, Tag::DT | Tag::PRPS);
        if tagged[i].tag == Tag::NNP && !after_modifier {
            let len = if Lexicon::is_placeholder(&tokens[i]) {
                Some(1)
            } else {
                lex.match_name(&tokens[i..])
            };
            if let Some(n) = len {
                let name = tokens[i..i + n].join(" ");
                if let Some((_, first)) = found.iter().find(|(_, f)| *f != name) {
                    return Err(Error::AmbiguousContact {
                        first: first.clone(),
                        second: name,
                    });
                }
                found.push((i, name));
                i += n;
                continue;
            }
        }
        i += 1;
    }
    let Some((_, name)) = found.first() else {
        return Ok(None);
    };
    let analysis = analyze_clause(&tagged, lex);
    let is_subject = analysis
        .subject_span
        .as_ref()
        .is_some_and(|span| found.iter().any(|(pos, _)| span.contains(pos)));
    Ok(is_subject.then(|| name.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_contact_wins() {
        let lex = Lexicon::default();
        assert_eq!(
            recover_contact("nate is late", Some("bob"), &lex).unwrap().as_deref(),
            Some("bob")
        );
    }

    #[test]
    fn subject_name_is_bound() {
        let lex = Lexicon::default();
        let got = recover_contact("nate is bringing anything to the party", None, &lex).unwrap();
        assert_eq!(got.as_deref(), Some("nate"));
    }

    #[test]
    fn two_names_are_ambiguous() {
        let lex = Lexicon::default();
        let err = recover_contact("nate told ben already", None, &lex).unwrap_err();
        assert!(matches!(err, Error::AmbiguousContact { ref first, ref second } if first == "nate" && second == "ben"));
    }

    #[test]
    fn non_subject_or_modified_names_are_ignored() {
        let lex = Lexicon::default();
        assert_eq!(recover_contact("dinner is ready", None, &lex).unwrap(), None);
        assert_eq!(recover_contact("your mom called", None, &lex).unwrap(), None);
        assert_eq!(recover_contact("i will be late", None, &lex).unwrap(), None);
        assert_eq!(recover_contact("i saw nate", None, &lex).unwrap(), None);
    }
}
