//! Turning a direct question into embedded (declarative) order.

use crate::error::{Error, Result};
use crate::syntax::{lexicon, ClauseAnalysis, Lexicon, QuestionForm};
use crate::text::detokenize;

use super::agreement::{third_person, EXPANDED_CLITICS};

/// Result of reordering, with the operations applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reordered {
    pub text: String,
    pub trace: Vec<String>,
}

/// Reorder a direct question; anything else is returned verbatim.
///
/// * `do`/`does` without negation is deleted and the main verb carries the
///   tense: *what do you want* becomes *what you want*.
/// * Past `did` cannot be deleted without re-inflecting the verb, so it
///   falls back to reversal (*you did go*) and the trace says so.
/// * Any other auxiliary (with a following `n't`) moves after the subject.
///   A clitic auxiliary is spelled out: *where's the party* becomes
///   *where the party is*.
pub fn reorder_question(analysis: &ClauseAnalysis, lex: &Lexicon) -> Result<Reordered> {
    let words: Vec<String> = analysis.tokens.iter().map(|t| t.text.clone()).collect();
    if analysis.question_form != QuestionForm::DirectQuestion {
        return Ok(Reordered {
            text: detokenize(&words),
            trace: Vec::new(),
        });
    }
    let (Some(aux), Some(subject)) = (analysis.aux_index, analysis.subject_span.clone()) else {
        return Err(Error::InconsistentAnalysis(
            "direct question without auxiliary or subject".into(),
        ));
    };
    if aux >= subject.start || subject.end > words.len() {
        return Err(Error::InconsistentAnalysis(format!(
            "auxiliary at {aux} does not precede subject {subject:?}"
        )));
    }
    let aux_word = words[aux].to_lowercase();
    let negated = words.get(aux + 1).is_some_and(|w| w == "n't" || w == "not") && aux + 1 < subject.start;
    let aux_end = if negated { aux + 2 } else { aux + 1 };
    let mut trace = Vec::new();

    let mut out: Vec<String> = words[..aux].to_vec();
    out.extend_from_slice(&words[aux_end..subject.end]);

    if lex.is_do_support(&aux_word) && !negated && aux_word != "did" {
        let mut rest: Vec<String> = words[subject.end..].to_vec();
        if aux_word == "does" {
            if let Some(verb) = rest.iter_mut().find(|w| !lexicon::is_adverb(w)) {
                *verb = third_person(verb);
            }
        }
        out.extend(rest);
        trace.push(format!("reorder:do_deletion({aux_word})"));
    } else {
        let moved: Vec<String> = words[aux..aux_end]
            .iter()
            .map(|w| {
                EXPANDED_CLITICS
                    .iter()
                    .find(|(c, _)| *c == w.as_str())
                    .map_or_else(|| w.clone(), |(_, full)| full.to_string())
            })
            .collect();
        out.extend(moved);
        out.extend_from_slice(&words[subject.end..]);
        if aux_word == "did" && !negated {
            trace.push("reorder:do_deletion_past_fallback(did)".to_string());
        } else {
            trace.push(format!("reorder:subject_aux_reversal({aux_word})"));
        }
    }
    Ok(Reordered {
        text: detokenize(&out),
        trace,
    })
}
