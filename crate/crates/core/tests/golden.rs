//! Worked examples of the conversion, reproduced exactly in deterministic
//! mode. Expected outputs are compared after normalization, so sentence
//! case and final punctuation do not matter.

mod common;

use common::{Golden, ASSISTANT_INTERACTION, BY_MESSAGE_TYPE, PRONOMINAL_CHANGE};
use pov::transform::{Converter, Gender};
use pov::MessageType::*;

fn check(cases: &[Golden]) {
    for case in cases {
        assert_eq!(case.convert(), case.expected(), "input: {}", case.input);
    }
}

#[test]
fn assistant_interaction_examples() {
    check(&ASSISTANT_INTERACTION);
}

#[test]
fn pronominal_change_examples() {
    check(&PRONOMINAL_CHANGE);
}

#[test]
fn conversion_by_message_type() {
    check(&BY_MESSAGE_TYPE);
}

#[test]
fn placeholder_sender_and_greeting() {
    let conv = Converter::default();
    let req = conv.request_for_utterance("tell @CN@ dinner is ready", Stmt, "@SCN@");
    assert_eq!(
        conv.convert(&req).unwrap().output,
        "hi @CN@, @SCN@ says dinner is ready"
    );
    let out = conv.convert(&req.greeting(false)).unwrap().output;
    assert_eq!(out, "@SCN@ says dinner is ready");
}

#[test]
fn trace_records_the_fired_rules() {
    let conv = Converter::default();
    let req = conv
        .request_for_utterance("Ask Haley can I borrow your juicer?", AskYN, "teresa")
        .gender(Gender::Female)
        .greeting(false);
    let trace = conv.convert(&req).unwrap().trace;
    assert_eq!(
        trace,
        vec!["reorder:subject_aux_reversal(can)", "pronoun:i→she", "prepend:askyn_01"]
    );
}
